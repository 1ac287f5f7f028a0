"""Local cloning of a group-shifted family with a maximally entangled blank."""
from quditgraph.cloning import GroupShiftedFamily, cyclic_group, entanglement_gap, gamma_min_bound, s3_group
from quditgraph.cloning import simulate_clone_protocol

fam = GroupShiftedFamily(cyclic_group(2), (0.8, 0.2))
rep = simulate_clone_protocol(fam)
print("Z2: min fidelity", rep.min_fidelity, "bound", gamma_min_bound(fam))
print("Z2 entanglement gap", entanglement_gap(fam))
rep = simulate_clone_protocol(GroupShiftedFamily(s3_group(), (0.3, 0.2, 0.2, 0.1, 0.1, 0.1)))
print("S3: min fidelity", rep.min_fidelity, "outcomes", len(rep.outcomes))
