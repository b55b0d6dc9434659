"""
Where does p_{n,k}(x) peak?
===========================

For fixed n and k the probability of k whites is unimodal in x.  Its peak
x* sits at the sign change of phi_{n,k}, inside [(k-1)/(n-1), k/(n-1)].
"""

import math

from polya_bernstein import locate_root, phi, verify_unimodal, x_star_table

n = 3
r = locate_root(n, 1)
print(f"root of phi_3,1: {r.x_root!r} after {r.iterations} bisections")
print("closed form     :", 2 - 2 * math.sqrt(6) / 3)

# phi is positive left of the root and negative right of it
for x in (0.0, 0.2, r.x_root, 0.45):
    print(f"  phi_3,1({x:.4f}) = {phi(n, 1, x): .3e}")

n = 10
table = x_star_table(n)
for k, xs in enumerate(table.entries):
    lo, hi = max(0, (k - 1) / (n - 1)), min(1, k / (n - 1))
    print(f"k={k:2d}  x*={xs:.6f}  bracket=[{lo:.4f}, {hi:.4f}]")

# mirror image: x*_{n,k} + x*_{n,n-k} = 1
print("worst reflection error:",
      max(abs(table.entries[k] + table.entries[n - k] - 1) for k in range(n + 1)))

report = verify_unimodal(10, 4)
print(report.summary(), report.details)
