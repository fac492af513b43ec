# # Numerical bound checks
#
# Each check evaluates both sides of an inequality by quadrature and records
# the slack.  A randomized suite draws exponential, Weibull and Rayleigh
# models and reports how many configurations satisfy each bound.

from collections import Counter

from wfgcri import Exponential, THEOREMS, random_suite
from wfgcri.theory import check_mixture_bound_T2_9, check_weight_power_bound_T2_8

comps = [(0.3, Exponential(1.2)), (0.4, Exponential(1.5)), (0.3, Exponential(2.5))]
c = check_mixture_bound_T2_9(comps, Exponential(1.0), beta=1.0, weight=1.0)
print(f"hazard mixture: lhs={c.lhs:.6f} rhs={c.rhs:.6f} holds={c.holds}")

for theorem in THEOREMS:
    counts = Counter(chk.status for chk in random_suite(theorem, 50, seed=42))
    print(f"{theorem:7s} {dict(counts)}")

# ## A failing case
#
# The power-weight bound compares the inaccuracy with weight zeta^beta against
# the beta-th power of the zeta-weighted inaccuracy.  A slowly decaying true
# model breaks the stated direction.

bad = check_weight_power_bound_T2_8(Exponential(0.1), Exponential(1.0), beta=2.0,
                                    zeta_exponent=1.0)
print(f"power-weight bound: lhs={bad.lhs:.1f} rhs={bad.rhs:.1f} status={bad.status}")
