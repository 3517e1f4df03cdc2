# coding: utf-8

# # Individual rates against OMA with equal DoF
#
# Fixed gains G1 = 0.052, G2 = 0.0052 at rho = 30 dB.  For each OMA power
# split we place NOMA at both ends of the feasible interval:
# NOMA1 matches the strong user's OMA rate, NOMA2 the weak user's.

# In[1]:

import numpy as np

from mimo_noma.experiments import ExperimentConfig, fig1_claims, run_fig1

table = run_fig1(ExperimentConfig(grid=201))
len(table), table.columns[:6]


# In[2]:

for row in table.records()[::40]:
    print("a2'=%.1f  a1 in [%.4f, %.4f]  OMA (%.3f, %.3f)  NOMA1 (%.3f, %.3f)  NOMA2 (%.3f, %.3f)" % (
        row["oma_alpha2"], row["noma1_alpha1"], row["noma2_alpha1"],
        row["oma_r1"], row["oma_r2"], row["noma1_r1"], row["noma1_r2"],
        row["noma2_r1"], row["noma2_r2"]))


# The claims are checked, not only drawn.

# In[3]:

for claim in fig1_claims(table):
    print(claim.line())


# NOMA1 is also fairer than OMA over most of the range.

# In[4]:

jain = table.column("noma1_jain") - table.column("oma_jain")
print("fraction of grid where NOMA1 is fairer:", np.mean(jain >= 0))
