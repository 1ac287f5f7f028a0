"""Entanglement along the Gauss and graph families of equientangled bases."""
from quditgraph.equibases import family_sweep, sweep_csv

print(sweep_csv(family_sweep("graph", 3, [0.0, 0.25, 0.5, 0.75, 1.0])))
for row in family_sweep("gauss", 5, [0.0, 0.5, 1.0]):
    print(f"gauss D=5 t={row['t']:.2f} entropy={row['entropy']:.4f}")
