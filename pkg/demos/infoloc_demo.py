"""Where the logical information of the [[4,2,2]] code sits."""
import itertools

from quditgraph.codes import additive_code
from quditgraph.graph import cycle_graph
from quditgraph.infoloc import InfoLocator

for D in (2, 3):
    loc = InfoLocator(additive_code(cycle_graph(4, D), [[1, 1, 0, 0], [0, 0, 1, 1]]))
    print(f"D={D}")
    for B in itertools.combinations(range(4), 2):
        rep = loc.report(B)
        print(f"  B={[b + 1 for b in B]} {rep.classification:11s} generators={rep.names}")
