# coding: utf-8

# # When NOMA is unfair to the weak user
#
# Put the same power fractions on both schemes, give OMA its sum-rate optimal
# DoF split, and the weak user can end up slower under NOMA.  Here
# rho*a1*G1 = rho*a2*G2 = 0.25 with a1 = a2/2.

# In[1]:

import math

from mimo_noma import EffectiveCluster, PowerSplit, noma_rates, oma_rates, optimal_dof

ec = EffectiveCluster(gamma1=0.75, gamma2=0.375, rho=1.0)
ps = PowerSplit(1 / 3, 2 / 3)


# In[2]:

noma = noma_rates(ec, ps)
df = optimal_dof(ec, ps)
oma = oma_rates(ec, ps, df)
print("DoF split", df)
print("weak user, NOMA: %.6f  (log2(11/9) = %.6f)" % (noma.r2, math.log2(11 / 9)))
print("weak user, OMA:  %.6f  (log2(1.5)/2 = %.6f)" % (oma.r2, 0.5 * math.log2(1.5)))


# The arguments of the logarithms are 1.2222 and 1.2247.

# In[3]:

print(2 ** noma.r2, 2 ** oma.r2)
assert noma.r2 < oma.r2
