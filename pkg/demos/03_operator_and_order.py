"""
The operator R_n and the stochastic order
=========================================

R_n(f, x) averages f(k/n) against the urn law, like the Bernstein operator
does against the binomial law.  As x grows the urn law moves up in the
usual stochastic order, so monotone f give monotone R_n(f, .).
"""

from fractions import Fraction

import numpy as np

from polya_bernstein import (bernstein_eval, dominates, exponential, identity, rn_eval, rn_grid,
                             square, step, verify_theorem2, verify_theorem3)

x = Fraction(1, 3)
print("R_3(t^2, 1/3)  =", rn_eval(3, square(), x))
print("B_3(t^2, 1/3)  =", bernstein_eval(3, square(), x))
print("R_3(t, 1/3)    =", rn_eval(3, identity(), x))

r = dominates(2, Fraction(1, 10), Fraction(2, 5))
print("X_0.1 <=st X_0.4:", r.dominated, " worst margin", r.worst_margin, "at k =", r.worst_k)

# a step function turns R_n into a tail probability
xs = np.linspace(0, 1, 6)
print("R_6(1[t>=1/2], x):", np.round(rn_grid(6, step(3, 6), xs), 6))

print(verify_theorem2(8, 201).summary())
for f in (identity(), square(), exponential(), step(4, 8)):
    print(verify_theorem3(8, f).summary(), f.name)
