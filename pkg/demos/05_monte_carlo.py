"""
Simulating the urn
==================

Draw balls one at a time and compare the white-count histogram with the
exact law.  Blocks of trials use fixed child seeds, so the counts do not
depend on the number of worker threads.
"""

from fractions import Fraction

import numpy as np

from polya_bernstein import (SampleConfig, UrnParams, empirical_pmf, gof_chi_square,
                             pmf_vector)

x = Fraction(3, 10)
config = SampleConfig(UrnParams.special(5, x), trials=1_000_000)
emp = empirical_pmf(config)
exact = pmf_vector(5, x)

print(" k   empirical    exact")
for k, (f, p) in enumerate(zip(emp.frequencies, exact.probs)):
    print(f"{k:2d}  {f:.6f}  {float(p):.6f}")
print("max deviation:", np.max(np.abs(emp.frequencies - [float(p) for p in exact.probs])))
print(gof_chi_square(emp, exact, level=0.999))

# four threads, same counts
print("worker independent:", empirical_pmf(config, workers=4) == emp)
