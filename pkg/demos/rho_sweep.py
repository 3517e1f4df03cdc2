# coding: utf-8

# # Rates versus rho with optimal OMA DoF
#
# NOMA3 sits at the weak user's parity point, NOMA4 at the strong user's.
# OMA uses the sum-rate optimal DoF split with a2' = 0.5; OMA-equal is the
# equal power and equal DoF baseline.

# In[1]:

from mimo_noma.experiments import ExperimentConfig, rho_sweep_claims, run_rho_sweep

table = run_rho_sweep(ExperimentConfig(experiment="rho-sweep", rho_range=(0, 40, 5)))
for row in table.records():
    print("%4.0f dB  R1 %s  R2 %s" % (
        row["rho_db"],
        " ".join("%6.3f" % row[s + "_r1"] for s in ("noma3", "noma4", "oma", "oma_equal")),
        " ".join("%6.3f" % row[s + "_r2"] for s in ("noma3", "noma4", "oma", "oma_equal"))))


# Columns are NOMA3, NOMA4, OMA, OMA-equal.  One ordering does not hold:
# OMA-equal hands the weak user half of the resource, which beats NOMA4's
# weak-user rate once rho is large.

# In[2]:

for claim in rho_sweep_claims(table):
    print(claim.line())
