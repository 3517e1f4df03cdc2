# coding: utf-8

# # Averaging over random channels
#
# M = 4 clusters, N = 3 antennas per user, users uniformly 1..3 m away with
# path-loss exponent 3.8.  Signal alignment plus zero forcing reduces each
# draw to four scalar clusters.

# In[1]:

from mimo_noma import SystemConfig
from mimo_noma.experiments import (ExperimentConfig, rho_sweep_claims, run_montecarlo,
                                   simulate_gains)

system = SystemConfig(num_clusters=4, user_antennas=3)
samples = simulate_gains(system, trials=500, seed=1, workers=4)
print(samples.gamma1.shape, "max residual %.2e, max leakage %.2e" % (
    samples.max_residual, samples.max_cross_gain))


# Worker count never changes the numbers: trial t always uses seed + t.

# In[2]:

again = simulate_gains(system, trials=500, seed=1, workers=1)
print((again.gamma1 == samples.gamma1).all())


# In[3]:

cfg = ExperimentConfig(experiment="montecarlo", rho_range=(0, 40, 10), seed=1)
table = run_montecarlo(cfg, samples=samples)
for row in table.records():
    print("%4.0f dB  sum NOMA3 %.3f +- %.3f  OMA %.3f  violations %d" % (
        row["rho_db"], row["noma3_sum_mean"], row["noma3_sum_stderr"],
        row["oma_sum_mean"], row["dominance_violations"]))

for claim in rho_sweep_claims(table):
    print(claim.line())
