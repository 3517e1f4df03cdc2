# coding: utf-8

# # Checking the closed forms by brute force
#
# Bisection on the rate gap and a grid scan of the dominance set only use the
# rate formulas.  Both should land on the closed-form interval.

# In[1]:

import numpy as np

from mimo_noma import DofMode, EffectiveCluster, PowerSplit, pa_interval
from mimo_noma.oracle import bisect_parity, grid_max_oma_sum, scan_dominance
from mimo_noma.rates import oma_sum_bound, optimal_dof

ec = EffectiveCluster(0.052, 0.0052, 1000.0)
ps = PowerSplit(0.5, 0.5)
for mode in DofMode:
    iv = pa_interval(ec, ps, mode)
    print(mode.value, "closed form", (iv.lo, iv.hi))
    print(mode.value, "bisection  ", (bisect_parity(ec, ps, 1, mode), bisect_parity(ec, ps, 2, mode)))
    scan = scan_dominance(ec, ps, mode)
    print(mode.value, "grid scan  ", (scan.lo, scan.hi))


# The OMA sum rate over the DoF split peaks where each share is proportional
# to the power-weighted gain.

# In[2]:

df, best = grid_max_oma_sum(ec, ps)
print(df.lam1, optimal_dof(ec, ps).lam1, best, oma_sum_bound(ec, ps))


# The grid misses the peak by more when a user's optimal share is tiny: the
# curve is steep there.

# In[3]:

tiny = EffectiveCluster(1.0, 0.001, 1e4)
skew = PowerSplit.from_weak(0.2)
df, best = grid_max_oma_sum(tiny, skew)
print("share", optimal_dof(tiny, skew).lam2, "gap", oma_sum_bound(tiny, skew) - best)


# `mimo-noma verify` runs all of this over random instances.

# In[4]:

from mimo_noma.experiments import ExperimentConfig, verify

for line in verify(ExperimentConfig(experiment="verify", trials=200)).lines():
    print(line)
