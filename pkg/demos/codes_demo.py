"""Search graph codes on small qubit and qutrit graphs and verify them."""
from quditgraph.codes import search_code_clique, star_code, verify_code
from quditgraph.graph import cycle_graph, hypercube_graph

for n in range(4, 9):
    code = search_code_clique(cycle_graph(n, 2), 2)
    print(f"qubit cycle n={n} delta=2: K={code.K} verified={verify_code(code).ok}")

for n in (4, 5, 6):
    code = search_code_clique(cycle_graph(n, 3, double_edge=True), 3)
    print(f"qutrit cycle n={n} delta=3: K={code.K}")

print("3-cube delta=2: K =", search_code_clique(hypercube_graph(3, 2), 2).K)
for n in (3, 5, 7, 9):
    print(f"star n={n}: K={star_code(n).K}")
