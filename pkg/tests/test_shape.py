import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import optimize

from polya_bernstein.errors import DomainError, InvalidInputError
from polya_bernstein.shape import (PhiSpec, certify_bracket, domain_sup, locate_root,
                                   log_pmf_slope, phi, phi_prime, phi_prime_rearranged,
                                   verify_unimodal, x_star, x_star_table)
from polya_bernstein.urn import pmf_special

from oracles import central_difference, x31_closed_form


def test_phi_examples():
    assert phi(5, 3, F(0)) == 3
    assert phi(2, 1, F(3, 10)) == 1
    assert abs(phi(3, 1, x31_closed_form())) < 1e-12


def test_phi_at_zero_is_k():
    for n in range(2, 51):
        for k in range(n):
            assert phi(n, k, F(0)) == k


def test_phi_domain():
    assert domain_sup(4, 3) == 1
    assert domain_sup(5, 1) == F(4, 7)
    assert PhiSpec(5, 1).domain_sup == F(4, 7)
    with pytest.raises(DomainError):
        phi(5, 1, F(4, 7))
    with pytest.raises(DomainError):
        phi(5, 1, -0.01)
    with pytest.raises(InvalidInputError):
        phi(5, 5, 0.1)
    with pytest.raises(DomainError):
        phi_prime(5, 1, 0.0)


def test_phi_prime_examples():
    for x in (0.1, 0.5, 0.9):
        assert phi_prime(2, 1, x) == 0
    assert phi_prime(3, 1, x31_closed_form()) < 0
    fd = central_difference(lambda t: phi(6, 2, t), 0.2)
    assert abs(phi_prime(6, 2, 0.2) - fd) <= 1e-6


def test_phi_prime_rearrangement_is_exact():
    for n, k in [(4, 1), (6, 2), (9, 5)]:
        sup = domain_sup(n, k)
        for i in range(1, 6):
            x = sup * F(i, 7)
            assert phi_prime(n, k, x) == phi_prime_rearranged(n, k, x)


def test_x31_is_root_of_quadratic():
    # clearing denominators in phi_{3,1}(x) = 0 gives 3x^2 - 12x + 4 = 0
    r = x31_closed_form()
    assert abs(3 * r * r - 12 * r + 4) < 1e-14


@pytest.mark.parametrize("n, k, expected", [(2, 0, 0), (4, 0, 0), (4, 3, 1), (7, 6, 1)])
def test_locate_root_closed_forms(n, k, expected):
    res = locate_root(n, k)
    assert res.x_root == expected and res.exact_case


def test_locate_root_x31():
    res = locate_root(3, 1, 1e-13)
    assert abs(res.x_root - x31_closed_form()) < 1e-12
    assert res.bracket_lo <= res.x_root <= res.bracket_hi
    assert res.residual < 1e-12
    assert not res.exact_case


def test_roots_agree_with_brentq():
    for n in range(3, 31):
        for k in range(1, n - 1):
            lo, hi = max(0, (k - 1) / (n - 1)), k / (n - 1)
            ref = optimize.brentq(lambda t: phi(n, k, t), lo, hi, xtol=1e-15)
            assert abs(locate_root(n, k).x_root - ref) < 1e-12


def test_brackets_certified_exactly():
    for n in range(3, 26):
        for k in range(1, n - 1):
            assert certify_bracket(n, k)


def test_sign_pattern():
    tol = 1e-10
    for n in (3, 7, 12, 30, 50):
        for k in range(1, n - 1):
            root = locate_root(n, k).x_root
            sup = float(domain_sup(n, k))
            for x in np.arange(1000) * (sup / 1000):
                v = phi(n, k, float(x))
                if x < root:
                    assert v > -tol
                elif x > root:
                    assert v < tol


def test_phi_prime_negative_at_roots():
    for n in range(3, 20):
        for k in range(1, n - 1):
            assert phi_prime(n, k, locate_root(n, k).x_root) < 0


def test_log_derivative_identity():
    h = 1e-6
    for n, k in [(4, 1), (6, 2), (8, 5), (10, 4)]:
        for x in (0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.85):
            fd = (math.log(pmf_special(n, x + h, k)) - math.log(pmf_special(n, x - h, k))) / (2 * h)
            assert abs(fd - log_pmf_slope(n, k, x)) <= 1e-5


def test_log_slope_domain():
    with pytest.raises(DomainError):
        log_pmf_slope(5, 3, 0.5)
    with pytest.raises(DomainError):
        log_pmf_slope(5, 5, 0.2)


def test_even_center_positive():
    for m in range(1, 26):
        assert phi(2 * m, m, F(1, 2)) > 0


def test_x_star_examples():
    assert x_star(2, 1) == 0.5
    assert x_star(4, 2) == 0.5
    assert abs(x_star(3, 2) - (1 - x31_closed_form())) < 1e-12
    assert x_star(6, 0) == 0.0 and x_star(6, 6) == 1.0
    with pytest.raises(InvalidInputError):
        x_star(6, 7)


def test_x_star_table_shape():
    for n in range(2, 40):
        e = x_star_table(n).entries
        assert len(e) == n + 1 and e[0] == 0 and e[n] == 1
        assert all(u <= v for u, v in zip(e, e[1:]))
        for k in range(1, n):
            assert (k - 1) / (n - 1) <= e[k] <= k / (n - 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 50).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
def test_reflection(nk):
    n, k = nk
    assert abs(x_star(n, k) + x_star(n, n - k) - 1) <= 2e-13


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 40).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 2))))
def test_root_in_bracket(nk):
    n, k = nk
    res = locate_root(n, k)
    assert (k - 1) / (n - 1) <= res.x_root <= k / (n - 1)
    assert res.residual <= 1e-9


def test_verify_unimodal_examples():
    r = verify_unimodal(2, 1, grid_points=101)
    assert r.passed and r.details["argmax"] == 0.5
    r = verify_unimodal(2, 0, grid_points=101)
    assert r.passed and r.details["argmax"] == 0.0
    assert verify_unimodal(10, 4).passed
    with pytest.raises(InvalidInputError):
        verify_unimodal(4, 1, grid_points=2)


def test_verify_unimodal_catches_bimodal_table():
    from polya_bernstein.shape import _unimodal_report, unit_grid
    xs = unit_grid(11)
    values = np.array([0, 1, 2, 1, 0, 1, 2, 1, 0, 0, 0], dtype=float)
    assert not _unimodal_report(4, 1, xs, values, 1e-12).passed
