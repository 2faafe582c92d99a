"""
Maximum DoF versus UAV antenna count
====================================

With N occupied GBSs and M < N antennas, each stream must be nulled at every
GBS that does not decode it. The closed form ``floor(N/(N-M+1))`` gives the
largest number of streams for which that is possible. Here it is checked
against brute-force enumeration of group sizes.
"""

from uavnoma import SimConfig, dof_oracle, max_dof, run_dof_experiment

# %%
# The table for the 8-GBS network, next to the full-cooperation upper bound
# (M) and the no-NOMA lower bound (0).
for row in run_dof_experiment(SimConfig(n_gbs=8)):
    print(row)

# %%
# Closed form and enumeration agree on every small network.
for n in range(2, 9):
    print(n, [max_dof(n, m) for m in range(1, n)], [dof_oracle(n, m) for m in range(1, n)])
