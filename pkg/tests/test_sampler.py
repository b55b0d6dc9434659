from fractions import Fraction as F

import numpy as np
import pytest

from polya_bernstein.errors import InvalidInputError
from polya_bernstein.sampler import (BLOCK, EmpiricalPmf, SampleConfig, draw_path, empirical_pmf,
                                     gof_chi_square, mass_tables)
from polya_bernstein.urn import UrnParams, pmf_vector, urn_pmf


def special(n, x):
    return UrnParams.special(n, x)


def test_draw_path_degenerate_colours():
    rng = np.random.default_rng(0)
    assert {draw_path(special(4, F(0)), rng) for _ in range(200)} == {0}
    assert {draw_path(special(4, F(1)), rng) for _ in range(200)} == {4}


def test_draw_path_never_two_whites():
    rng = np.random.default_rng(1)
    params = UrnParams(2, F(1, 4), F(3, 4), F(-1, 4))
    assert 2 not in {draw_path(params, rng) for _ in range(5000)}


def test_mass_tables_are_exact_zeros():
    # the smaller colour is exhausted after n-1 draws of it
    for n in (3, 4, 5, 7):
        white, black = mass_tables(special(n, 0.3))
        assert white[n - 1] == 0.0 and np.all(white[: n - 1] > 0)
        white, black = mass_tables(special(n, 0.7))
        assert black[n - 1] == 0.0


def test_config_validation():
    with pytest.raises(InvalidInputError):
        SampleConfig(special(3, F(1, 3)), 0)
    with pytest.raises(InvalidInputError):
        SampleConfig(special(3, F(1, 3)), 10, seed=-1)
    with pytest.raises(InvalidInputError):
        EmpiricalPmf((1, 2), 4)


def test_impossible_outcome_never_drawn():
    emp = empirical_pmf(SampleConfig(UrnParams(2, F(1, 4), F(3, 4), F(-1, 4)), 10 ** 6, 7))
    assert emp.counts[2] == 0


def test_bernoulli_half():
    p = F(1, 2)
    emp = empirical_pmf(SampleConfig(UrnParams(1, p, 1 - p, 0), 10 ** 6, 11))
    assert abs(emp.counts[1] / emp.trials - 0.5) <= 0.002


def test_single_trial():
    emp = empirical_pmf(SampleConfig(special(3, 0.4), 1))
    assert sum(emp.counts) == 1


def test_seed_determinism_and_worker_independence():
    cfg = SampleConfig(special(6, 0.35), 3 * BLOCK + 17, seed=99)
    one = empirical_pmf(cfg)
    assert empirical_pmf(cfg) == one
    assert empirical_pmf(cfg, workers=3) == one
    other = empirical_pmf(SampleConfig(special(6, 0.35), 3 * BLOCK + 17, seed=100))
    assert other != one


def test_gof_examples():
    exact = pmf_vector(3, F(1, 3))            # (1/5, 3/5, 1/5, 0)
    proportional = EmpiricalPmf((200, 600, 200, 0), 1000)
    r = gof_chi_square(proportional, exact)
    assert r.statistic == 0 and r.dof == 2 and r.passed
    tainted = EmpiricalPmf((200, 599, 200, 1), 1000)
    assert not gof_chi_square(tainted, exact).passed
    with pytest.raises(InvalidInputError):
        gof_chi_square(EmpiricalPmf((1, 1), 2), exact)


def test_gof_quantile_value():
    # 0.999 quantile of chi-square with 4 degrees of freedom
    r = gof_chi_square(EmpiricalPmf((1, 1, 1, 1, 1, 0), 5), pmf_vector(5, F(3, 10)))
    assert r.dof == 4 and abs(r.quantile - 18.46682695) < 1e-6


def test_gof_regression_default_seed():
    exact = pmf_vector(5, F(3, 10))
    emp = empirical_pmf(SampleConfig(special(5, F(3, 10)), 10 ** 6))
    r = gof_chi_square(emp, exact)
    assert r.passed
    assert emp.counts[5] == 0
    # frozen after the first run with the default seed
    assert r.statistic == pytest.approx(4.06, abs=0.01)


@pytest.mark.slow
@pytest.mark.parametrize("n", range(1, 9))
def test_agreement_small_n(n):
    for i in range(1, 10):
        x = F(i, 10)
        params = special(n, x) if n > 1 else UrnParams(1, x, 1 - x, 0)
        emp = empirical_pmf(SampleConfig(params, 10 ** 6, seed=1000 * n + i))
        exact = np.array([float(p) for p in urn_pmf(params).probs])
        assert np.max(np.abs(emp.frequencies - exact)) <= 0.005
        assert all(c == 0 for c, p in zip(emp.counts, exact) if p == 0)
