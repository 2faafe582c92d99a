"""
Sum rate versus UAV transmit power
==================================

A reduced version of the rate experiment: 20 paired channel draws, power
from 13 to 43 dBm, effective-SINR association against random grouping. The
full 100-trial run is ``uavnoma sweep``.
"""

from uavnoma import SimConfig, run_rate_sweep

config = SimConfig(n_trials=20, master_seed=1)
result = run_rate_sweep(config)

# %%
print("P [dBm]  effective_sinr  random")
for p, a, b in zip(result.powers_dbm, result.mean_sum_rate("effective_sinr"), result.mean_sum_rate("random")):
    print(f"{p:6.1f}  {a:14.3f}  {b:6.3f}")

# %%
# The same numbers as CSV, as written by the CLI.
print(result.to_csv())
