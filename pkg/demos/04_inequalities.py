"""
Two sums-of-squares inequalities and a trapezoid bound
======================================================

If a_1..a_n are all below b_1..b_{n-k} and both lists have the same sum,
the a's have the smaller sum of squares.  Separately, for f with
f, f', f'', f''' >= 0 the trapezoid rule overshoots by at most
(f'(1) - f'(0)) / (4N).
"""

from fractions import Fraction

from polya_bernstein import (SequencePair, check_aux7, check_refined_reversed_cbs,
                             exp_descriptor, generate_lemma1_instance, polya_szego_ratio,
                             polynomial_descriptor, trapezoid_gap, verify_lemma1, verify_lemma2)

p = SequencePair((1, 1, 2), (2, 2), k=1)
print(check_refined_reversed_cbs(p))
print(check_aux7(p))

# a random exact instance
q = generate_lemma1_instance(6, 2, seed=1)
print("a =", [str(v) for v in q.a])
print("b =", [str(v) for v in q.b])
print("strict:", check_refined_reversed_cbs(q).strict_holds)

print("Polya-Szego:", polya_szego_ratio((1, 4), (1, 1)))
print(verify_lemma1(trials=2000, seed=7).summary())

print("t^2, N=2:", trapezoid_gap(polynomial_descriptor([0, 0, 1]), 2))
print("e^t, N=1:", trapezoid_gap(exp_descriptor(1.0), 1))
print("f=1, N=9:", trapezoid_gap(polynomial_descriptor([Fraction(1)]), 9))
print(verify_lemma2(200).summary())
