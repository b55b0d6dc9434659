"""Where ``p_{n,k}(x)`` peaks as a function of the urn composition ``x``.

On ``(0, 1/2)`` the logarithmic derivative of ``p_{n,k}`` equals
``phi_{n,k}(x) / x`` with

    phi_{n,k}(x) = sum_{i<n} 1/(1 - i x/(n-1)) - sum_{i<n-k} 1/(1 - x - i x/(n-1)),

defined for ``0 <= x < (n-1)/(2n-k-2)``.  ``phi_{n,k}`` starts at ``k`` and
changes sign exactly once, at a root that lies in ``[(k-1)/(n-1), k/(n-1)]``.
The mode of ``p_{n,k}`` follows from those roots and the reflection
``p_{n,k}(x) = p_{n,n-k}(1-x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, InternalInconsistencyError, InvalidInputError
from .reports import Stopwatch, VerificationReport, combine
from .scalar import RATIONAL, Scalar, coerce, resolve_mode
from .urn import pmf_grid, pmf_special

DEFAULT_ROOT_TOL = 1e-13
PLATEAU_TOL = 1e-12


def _check_nk(n, k) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise InvalidInputError(f"n must be an integer >= 2, got {n!r}")
    if not isinstance(k, int) or isinstance(k, bool) or not 0 <= k <= n - 1:
        raise InvalidInputError(f"k must be an integer in 0..{n - 1}, got {k!r}")


@dataclass(frozen=True)
class PhiSpec:
    n: int
    k: int

    def __post_init__(self):
        _check_nk(self.n, self.k)

    @property
    def domain_sup(self) -> Fraction:
        return Fraction(self.n - 1, 2 * self.n - self.k - 2)

    def __call__(self, x):
        return phi(self.n, self.k, x)


def domain_sup(n: int, k: int) -> Fraction:
    """Right end (excluded) of the domain of ``phi_{n,k}``."""
    _check_nk(n, k)
    return Fraction(n - 1, 2 * n - k - 2)


def _prepare(n, k, x, allow_zero=True):
    _check_nk(n, k)
    mode = resolve_mode(x)
    x = coerce(x, mode)
    sup = domain_sup(n, k)
    ok_left = x >= 0 if allow_zero else x > 0
    if not ok_left or not x < sup:
        lo = "[0" if allow_zero else "(0"
        raise DomainError(f"x={x} outside {lo}, {sup}) for phi_{{{n},{k}}}")
    return mode, x


def _sum(mode, terms):
    terms = list(terms)
    return sum(terms, Fraction(0)) if mode == RATIONAL else math.fsum(terms)


def _terms(n, k, x, mode):
    """Ratios ``i/(n-1)`` and the two families of denominators of ``phi``."""
    if mode == RATIONAL:
        r = [Fraction(i, n - 1) for i in range(n)]
    else:
        r = [i / (n - 1) for i in range(n)]
    u = [1 - ri * x for ri in r]
    v = [1 - x - r[i] * x for i in range(n - k)]
    return r, u, v


def phi(n: int, k: int, x: Scalar) -> Scalar:
    """Evaluate ``phi_{n,k}(x)``; exact for Fraction input."""
    mode, x = _prepare(n, k, x)
    _, u, v = _terms(n, k, x, mode)
    return _sum(mode, (1 / t for t in u)) - _sum(mode, (1 / t for t in v))


def phi_prime(n: int, k: int, x: Scalar) -> Scalar:
    """Derivative of ``phi_{n,k}`` from the termwise formula."""
    mode, x = _prepare(n, k, x, allow_zero=False)
    r, u, v = _terms(n, k, x, mode)
    return (_sum(mode, (r[i] / u[i] ** 2 for i in range(n)))
            - _sum(mode, ((1 + r[i]) / v[i] ** 2 for i in range(n - k))))


def phi_prime_rearranged(n: int, k: int, x: Scalar) -> Scalar:
    """Same derivative written as ``(-phi + sum 1/u^2 - sum 1/v^2) / x``.

    At a root of ``phi`` only the squared sums survive, which is how the sign
    of the derivative at a root is pinned down.
    """
    mode, x = _prepare(n, k, x, allow_zero=False)
    _, u, v = _terms(n, k, x, mode)
    squares = _sum(mode, (1 / t ** 2 for t in u)) - _sum(mode, (1 / t ** 2 for t in v))
    return (-phi(n, k, x) + squares) / x


def log_pmf_slope(n: int, k: int, x: float) -> float:
    """``d/dx ln p_{n,k}(x)`` expressed through ``phi``; ``x`` in ``(0,1/2)`` or ``(1/2,1)``."""
    if 0 < x < 0.5:
        if k > n - 1:
            raise DomainError("p_{n,n} vanishes on (0, 1/2)")
        return phi(n, k, x) / x
    if 0.5 < x < 1:
        if k < 1:
            raise DomainError("p_{n,0} vanishes on (1/2, 1)")
        return -phi(n, n - k, 1 - x) / (1 - x)
    raise DomainError(f"x={x} must lie in (0, 1/2) or (1/2, 1)")


@dataclass(frozen=True)
class RootResult:
    n: int
    k: int
    x_root: float
    bracket_lo: float
    bracket_hi: float
    residual: float
    iterations: int
    exact_case: bool


def locate_root(n: int, k: int, tolerance: float = DEFAULT_ROOT_TOL) -> RootResult:
    """Find the sign change of ``phi_{n,k}`` by bisection.

    ``k = 0`` and ``k = n-1`` have closed forms (0 and 1).  Otherwise the
    bracket ``[max(0,(k-1)/(n-1)), k/(n-1)]`` is checked to have ``phi > 0``
    on the left and ``phi < 0`` on the right, then halved until narrower
    than ``tolerance``.  For ``k = n-1`` the root sits on the domain
    boundary, so ``residual`` is NaN.
    """
    _check_nk(n, k)
    if not tolerance > 0:
        raise InvalidInputError("tolerance must be positive")
    if k == 0:
        return RootResult(n, k, 0.0, 0.0, 0.0, 0.0, 0, True)
    if k == n - 1:
        return RootResult(n, k, 1.0, (n - 2) / (n - 1), 1.0, math.nan, 0, True)
    lo0, hi0 = max(0.0, (k - 1) / (n - 1)), k / (n - 1)
    lo, hi = lo0, hi0
    f_lo, f_hi = phi(n, k, lo), phi(n, k, hi)
    if not (f_lo > 0 and f_hi < 0):
        raise InternalInconsistencyError(
            f"no sign change for phi_{{{n},{k}}} on [{lo}, {hi}]: {f_lo}, {f_hi}")
    iterations = 0
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        iterations += 1
        s = phi(n, k, mid)
        if s > 0:
            lo = mid
        elif s < 0:
            hi = mid
        else:
            lo = hi = mid
    x_root = 0.5 * (lo + hi)
    return RootResult(n, k, x_root, lo0, hi0, abs(phi(n, k, x_root)), iterations, False)


def certify_bracket(n: int, k: int) -> bool:
    """Exact rational check that ``phi_{n,k}`` changes sign on its bracket (1 <= k <= n-2)."""
    _check_nk(n, k)
    if not 1 <= k <= n - 2:
        raise InvalidInputError("certification applies to 1 <= k <= n-2")
    lo = Fraction(max(0, k - 1), n - 1)
    return phi(n, k, lo) > 0 and phi(n, k, Fraction(k, n - 1)) < 0


def x_star(n: int, k: int, tolerance: float = DEFAULT_ROOT_TOL) -> float:
    """Mode of ``x -> p_{n,k}(x)`` on ``[0, 1]``."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise InvalidInputError(f"n must be an integer >= 2, got {n!r}")
    if not isinstance(k, int) or isinstance(k, bool) or not 0 <= k <= n:
        raise InvalidInputError(f"k must be an integer in 0..{n}, got {k!r}")
    if k == 0:
        return 0.0
    if k == n:
        return 1.0
    if 2 * k <= n - 1:
        return locate_root(n, k, tolerance).x_root
    if 2 * k == n:
        return 0.5
    return 1.0 - locate_root(n, n - k, tolerance).x_root


@dataclass(frozen=True)
class XStarTable:
    n: int
    entries: tuple


def x_star_table(n: int, tolerance: float = DEFAULT_ROOT_TOL) -> XStarTable:
    return XStarTable(n, tuple(x_star(n, k, tolerance) for k in range(n + 1)))


def unit_grid(points: int) -> np.ndarray:
    """``i/(points-1)`` for ``i = 0..points-1``, each correctly rounded."""
    if points < 2:
        raise InvalidInputError("a grid needs at least 2 points")
    return np.arange(points) / (points - 1)


def _unimodal_report(n, k, xs, values, tolerance) -> VerificationReport:
    grid_points = len(xs)
    step = 1.0 / (grid_points - 1)
    report = VerificationReport(
        "theorem1", {"n": n, "k": k, "grid_points": grid_points, "tolerance": tolerance})
    diffs = np.diff(values)
    descending = False
    worst = 0.0
    for i, d in enumerate(diffs):
        if not descending:
            if d < -tolerance:
                descending = True
            continue
        report.observe(-d)
        if d > tolerance:
            report.flag(-d, check="ascent_after_descent", x=float(xs[i]))
        worst = max(worst, d)
    arg = int(np.argmax(values))
    argmax = float(xs[arg])
    lo, hi = (k - 1) / (n - 1) - step, k / (n - 1) + step
    bracket_margin = min(argmax - lo, hi - argmax)
    report.observe(bracket_margin)
    if bracket_margin < 0:
        report.flag(bracket_margin, check="argmax_outside_bracket", x=argmax)
    mode_x = x_star(n, k)
    mode_margin = step + PLATEAU_TOL - abs(argmax - mode_x)
    report.observe(mode_margin)
    if mode_margin < 0:
        report.flag(mode_margin, check="argmax_far_from_x_star", x=argmax)
    report.details.update(argmax=argmax, x_star=mode_x, worst_violation=float(worst))
    return report


def verify_unimodal(n: int, k: int, grid_points: int = 2001,
                    tolerance: float = PLATEAU_TOL) -> VerificationReport:
    """Check that ``p_{n,k}`` rises then falls on a uniform grid of ``[0, 1]``.

    Differences within ``tolerance`` count as plateaus.  Also checks that the
    grid argmax lies within one grid step of ``[(k-1)/(n-1), k/(n-1)]`` and of
    the computed mode ``x_star(n, k)``.  Values come from :func:`pmf_special`
    at each node.
    """
    if grid_points < 3:
        raise InvalidInputError("grid_points must be at least 3")
    if not isinstance(n, int) or n < 2 or not isinstance(k, int) or not 0 <= k <= n:
        raise InvalidInputError(f"need n >= 2 and 0 <= k <= n, got n={n!r}, k={k!r}")
    with Stopwatch() as sw:
        xs = unit_grid(grid_points)
        values = np.array([pmf_special(n, float(x), k) for x in xs])
        report = _unimodal_report(n, k, xs, values, tolerance)
    report.elapsed_ms = sw.elapsed_ms
    return report


def verify_theorem1(n_max: int, grid_points: int = 2001,
                    tolerance: float = PLATEAU_TOL) -> VerificationReport:
    """Unimodality for every ``2 <= n <= n_max`` and ``0 <= k <= n``.

    Grid values come from :func:`pmf_grid` (one vectorised pass per ``n``).
    """
    if not isinstance(n_max, int) or n_max < 2:
        raise InvalidInputError("n_max must be an integer >= 2")
    if grid_points < 3:
        raise InvalidInputError("grid_points must be at least 3")
    with Stopwatch() as sw:
        xs = unit_grid(grid_points)
        subs = []
        for n in range(2, n_max + 1):
            table = pmf_grid(n, xs)
            subs.extend(_unimodal_report(n, k, xs, table[:, k], tolerance)
                        for k in range(n + 1))
        report = combine("theorem1", {"n_max": n_max, "grid_points": grid_points,
                                      "tolerance": tolerance}, subs)
    report.elapsed_ms = sw.elapsed_ms
    return report
