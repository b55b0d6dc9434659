"""
The urn law with negative replacement
=====================================

Start with white mass x and black mass 1-x.  After each draw the drawn
colour loses min(x, 1-x)/(n-1), so the scarcer colour is exhausted exactly
after n-1 draws of it.
"""

from fractions import Fraction

import numpy as np

from polya_bernstein import UrnParams, enumerate_paths_pmf, pmf_grid, pmf_vector, urn_pmf

# exact arithmetic: Fractions in, Fractions out
law = pmf_vector(3, Fraction(1, 3))
print("n=3, x=1/3:", [str(p) for p in law.probs])
print("total", law.total(), " mean", law.mean())

# the closed form agrees with walking every colour sequence
params = UrnParams.special(3, Fraction(1, 3))
print("replacement c =", params.c)
print("by enumeration:", [str(p) for p in enumerate_paths_pmf(params).probs])

# any a, b, c with c >= -min(a,b)/(n-1) is allowed
print("a=3, b=5, c=-1:", [str(p) for p in urn_pmf(UrnParams(4, 3, 5, -1)).probs])

# doubles for speed; the rows of a grid table sum to one
xs = np.linspace(0, 1, 11)
table = pmf_grid(8, xs)
print("row sums:", np.round(table.sum(axis=1), 15))
print("p_{8,8}(x) on the grid:", table[:, 8])
