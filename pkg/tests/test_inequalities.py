import math
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from polya_bernstein.errors import GenerationFailure, InvalidInputError
from polya_bernstein.inequalities import (SequencePair, check_aux7, check_refined_reversed_cbs,
                                          exp_descriptor, gap_shrinks_on_refinement,
                                          generate_lemma1_instance, inverse_linear_descriptor,
                                          lemma2_families, polya_szego_coefficient,
                                          polya_szego_ratio, polynomial_descriptor,
                                          refinement_check, trapezoid_gap, verify_lemma1,
                                          verify_lemma2)


def test_cbs_examples():
    assert check_refined_reversed_cbs(SequencePair((1, 1), (2,), 1)) == (2, 4, True)
    assert check_refined_reversed_cbs(SequencePair((1, 1, 2), (2, 2), 1)) == (6, 8, True)


@pytest.mark.parametrize("a, b, k, fragment", [
    ((3, 1), (2, 2), 0, "1 <= k"),
    ((3, 1), (2,), 1, "max a <= min b"),
    ((1, 1), (3,), 1, "sum a = sum b"),
    ((1, 1, 1), (3,), 1, "len(b)"),
    ((0, 2), (2,), 1, "positivity"),
    ((1,), (), 1, "n >= 2"),
])
def test_hypothesis_violations_name_the_hypothesis(a, b, k, fragment):
    with pytest.raises(InvalidInputError, match=fragment.replace("(", r"\(").replace(")", r"\)")):
        SequencePair(a, b, k)


def test_ordering_violation_is_invalid():
    # (3,1) against (2,2) has no admissible k; a consistent shape still fails on max a
    with pytest.raises(InvalidInputError):
        SequencePair((3, 1), (2, 2), 0)
    with pytest.raises(InvalidInputError, match="max a"):
        SequencePair((3, 1, 1), (F(5, 2), F(5, 2)), 1)


def test_double_pair_is_rescaled():
    p = SequencePair((0.1, 0.2, 0.3), (0.3, 0.3), 1)
    assert math.fsum(p.a) == math.fsum(p.b)


def test_aux7_examples():
    c = check_aux7(SequencePair((1, 1), (2,), 1))
    assert (c.lhs, c.bound, c.holds) == (2, 4, True)
    c = check_aux7(SequencePair((1, 1, 2), (2, 2), 1))
    assert (c.lhs, c.bound, c.holds) == (6, 8, True)


def test_aux7_equality_probe_reports_slack():
    c = check_aux7(SequencePair((1, 1, 1), (F(3, 2), F(3, 2)), 1))
    assert c.holds and c.slack == F(3, 2)
    # slack stays positive for every constant a admitted by the hypotheses
    for n in range(2, 12):
        for k in range(1, n):
            s = F(n)
            c = check_aux7(SequencePair((1,) * n, (s / (n - k),) * (n - k), k))
            assert c.slack == F(n * n, n - k) - n > 0


def test_polya_szego_examples():
    r = polya_szego_ratio((1, 2), (1, 1))
    assert r == (F(10, 9), F(9, 8), True)
    r = polya_szego_ratio((3, 3, 3), (3, 3, 3))
    assert r == (1, 1, True)
    r = polya_szego_ratio((1, 4), (1, 1))
    assert r.lhs_ratio == F(34, 25) and r.ps_bound == F(25, 16) and r.holds
    with pytest.raises(InvalidInputError):
        polya_szego_ratio((1, 0), (1, 1))
    with pytest.raises(InvalidInputError):
        polya_szego_ratio((1, 2), (1,))


def test_polya_szego_coefficient_matches_square_root_form():
    for r in (1.0, 2.0, 7.5, 100.0):
        assert math.isclose(polya_szego_coefficient(r),
                            (math.sqrt(r) + 1 / math.sqrt(r)) ** 2 / 4, rel_tol=1e-14)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.fractions(F(1, 20), 20, max_denominator=20), min_size=1, max_size=8),
       st.data())
def test_polya_szego_always_holds(a, data):
    b = data.draw(st.lists(st.fractions(F(1, 20), 20, max_denominator=20),
                           min_size=len(a), max_size=len(a)))
    assert polya_szego_ratio(a, b).holds


@pytest.mark.parametrize("n, k, seed", [(2, 1, 7), (10, 3, 1), (20, 1, 5), (20, 19, 5)])
def test_generator_examples(n, k, seed):
    p = generate_lemma1_instance(n, k, seed)
    assert p.n == n and p.k == k and p.mode == "rational"
    assert max(p.a) <= min(p.b) and sum(p.a) == sum(p.b)


def test_generator_is_deterministic():
    assert generate_lemma1_instance(9, 4, 123) == generate_lemma1_instance(9, 4, 123)


def test_generator_forced_infeasible_b():
    with pytest.raises(GenerationFailure):
        generate_lemma1_instance(3, 1, 0, b=(1, 1000))
    with pytest.raises(InvalidInputError):
        generate_lemma1_instance(2, 1, 0, b=(1, 1000))


def test_generator_forced_feasible_b():
    p = generate_lemma1_instance(4, 2, 3, b=(F(3, 2), 2))
    assert p.b == (F(3, 2), F(2)) and sum(p.a) == F(7, 2)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 20).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))),
       st.integers(0, 2 ** 32))
def test_sum_of_squares_properties(nk, seed):
    n, k = nk
    p = generate_lemma1_instance(n, k, seed)
    assert check_refined_reversed_cbs(p).strict_holds
    assert check_aux7(p).holds
    assert refinement_check(p).holds


@settings(max_examples=100, deadline=None)
@given(st.lists(st.fractions(F(1, 10), 1, max_denominator=10), min_size=2, max_size=10),
       st.integers(1, 9))
def test_sum_of_squares_on_hand_built_pairs(a, k):
    n = len(a)
    assume(k <= n - 1)
    total, cap = sum(a), max(a)
    # spread the total evenly over n-k entries; valid when that share is >= max a
    share = total / (n - k)
    assume(share >= cap)
    p = SequencePair(tuple(a), (share,) * (n - k), k)
    assert check_refined_reversed_cbs(p).strict_holds
    assert check_aux7(p).holds


def test_random_instance_suite_small():
    r = verify_lemma1(trials=500, seed=3)
    assert r.passed and r.seed == 3


def test_trapezoid_examples():
    sq = polynomial_descriptor([0, 0, 1])
    assert trapezoid_gap(sq, 2) == (F(1, 12), F(1, 4), True)
    g = trapezoid_gap(exp_descriptor(1.0), 1)
    assert abs(g.gap - (3 - math.e) / 2) < 1e-14 and g.gap == pytest.approx(0.14086, abs=1e-5)
    assert abs(g.upper_bound - (math.e - 1) / 4) < 1e-15 and g.holds
    one = polynomial_descriptor([1])
    for N in (1, 2, 17, 200):
        assert trapezoid_gap(one, N) == (0, 0, True)


def test_trapezoid_rejects_unqualified():
    with pytest.raises(InvalidInputError):
        trapezoid_gap(polynomial_descriptor([0, -1]), 3)
    with pytest.raises(InvalidInputError):
        trapezoid_gap(polynomial_descriptor([0, 1]), 0)


def test_descriptor_derivatives_match_finite_differences():
    for f in lemma2_families():
        assert max(f.derivative_errors()) <= 1e-5, f.name
        assert f.qualifies_for_lemma2


def test_descriptor_integrals_against_quadrature():
    from scipy import integrate
    for f in lemma2_families():
        ref, _ = integrate.quad(lambda t: float(f.value(t)), 0, 1, epsabs=1e-14)
        assert abs(float(f.integral_01) - ref) < 1e-12, f.name


def test_inverse_linear_integral():
    d = inverse_linear_descriptor(0.5)
    assert math.isclose(d.integral_01, 2 * math.log(2), rel_tol=1e-15)


def test_trapezoid_suite():
    assert verify_lemma2(n_max=50).passed


def test_gap_shrinks_observed():
    # observational only
    for f in lemma2_families():
        for N in (1, 2, 5, 25, 100):
            assert gap_shrinks_on_refinement(f, N)
