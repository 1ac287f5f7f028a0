"""Smith normal form of a coding group and the resulting encoding circuit."""
import numpy as np

from quditgraph.encode import CodingGroup, normalize_coding_group

norm = normalize_coding_group(CodingGroup(3, 6, np.array([[4, 3, 3], [0, 3, 3]])))
print("diagonal:", [int(v) for v in norm.smith.diagonal()])
print("m =", norm.m, "d =", norm.d)
print("W =", norm.W)
