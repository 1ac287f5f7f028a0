"""Deterministic and probabilistic conversion of Schmidt spectra."""
from quditgraph.entangle import entropy, g_concurrence, majorized_by, p_max

pairs = [([0.8, 0.2], [0.5, 0.5]), ([0.5, 0.5], [0.8, 0.2]), ([0.5, 0.25, 0.25], [0.4, 0.4, 0.2])]
for a, b in pairs:
    print(f"{a} -> {b}: majorized={majorized_by(a, b)} p_max={p_max(a, b):.4f}")
    print(f"   E={entropy(a):.4f} C_G={g_concurrence(a):.4f}")
