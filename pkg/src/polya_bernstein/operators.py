"""The urn operator ``R_n`` and the stochastic ordering behind its monotonicity.

``R_n(f, x) = E f(X/n)`` where ``X`` counts white draws from the special urn
at composition ``x``; with ``c = 0`` the same construction gives the
classical Bernstein operator.  ``X`` increases in the usual stochastic order
as ``x`` grows, which is the same statement as ``R_n`` mapping monotone
functions to monotone functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import InvalidInputError, ModeError
from .reports import Stopwatch, VerificationReport, combine
from .scalar import RATIONAL, Scalar, coerce, is_exact, resolve_mode
from .shape import unit_grid
from .urn import cdf_vector, pmf_grid, pmf_vector

INCREASING = "increasing"
DECREASING = "decreasing"
TAG_GRID = 1001
TAG_TOL = 1e-12


@dataclass(frozen=True)
class SampledFunction:
    """A function on ``[0, 1]`` with an optional monotonicity tag.

    ``exact`` marks evaluators that map Fractions to Fractions, which is what
    rational-mode operator evaluation needs.  A tag is confirmed on a
    1001-point grid at construction.
    """

    evaluator: Callable[[Scalar], Scalar]
    monotone: Optional[str] = None
    name: str = "f"
    exact: bool = False

    def __post_init__(self):
        if self.monotone not in (None, INCREASING, DECREASING):
            raise InvalidInputError(f"unknown monotonicity tag {self.monotone!r}")
        if self.monotone is not None:
            ys = [float(self.evaluator(float(t))) for t in unit_grid(TAG_GRID)]
            d = np.diff(ys)
            bad = d < -TAG_TOL if self.monotone == INCREASING else d > TAG_TOL
            if np.any(bad):
                raise InvalidInputError(f"{self.name} is not {self.monotone} on [0, 1]")

    def __call__(self, t):
        return self.evaluator(t)

    def reflected(self) -> "SampledFunction":
        """``t -> f(1 - t)``; the tag flips."""
        flip = {INCREASING: DECREASING, DECREASING: INCREASING, None: None}
        return SampledFunction(lambda t: self.evaluator(1 - t), flip[self.monotone],
                               f"{self.name}(1-t)", self.exact)


def identity() -> SampledFunction:
    return SampledFunction(lambda t: t, INCREASING, "identity", exact=True)


def square() -> SampledFunction:
    return SampledFunction(lambda t: t * t, INCREASING, "square", exact=True)


def constant(value: Scalar = 1) -> SampledFunction:
    return SampledFunction(lambda t: value + 0 * t, INCREASING, f"constant({value})",
                           exact=is_exact(value))


def affine(slope: Scalar, intercept: Scalar = 0) -> SampledFunction:
    tag = DECREASING if slope < 0 else INCREASING
    return SampledFunction(lambda t: intercept + slope * t, tag,
                           f"affine({slope},{intercept})",
                           exact=is_exact(slope) and is_exact(intercept))


def exponential(rate: float = 1.0) -> SampledFunction:
    """``e^{rate t}``; increasing for ``rate > 0``."""
    if not rate > 0:
        raise InvalidInputError("rate must be positive")
    return SampledFunction(lambda t: math.exp(rate * float(t)), INCREASING,
                           "exp" if rate == 1 else f"exp({rate}t)")


def inverse_linear(q: float) -> SampledFunction:
    """``1/(1 - q t)`` for ``0 < q < 1``."""
    if not 0 < q < 1:
        raise InvalidInputError("q must lie in (0, 1)")
    return SampledFunction(lambda t: 1.0 / (1.0 - q * float(t)), INCREASING, f"inv({q})")


def step(j: int, n: int) -> SampledFunction:
    """Indicator ``1[t >= j/n]``."""
    if not 0 <= j <= n:
        raise InvalidInputError(f"need 0 <= j <= n, got j={j}, n={n}")
    threshold = Fraction(j, n)

    def ind(t):
        hit = (t >= threshold) if is_exact(t) else (t >= j / n)
        return Fraction(int(hit)) if is_exact(t) else float(hit)

    return SampledFunction(ind, INCREASING, f"step({j}/{n})", exact=True)


def table(xs: Sequence[float], ys: Sequence[float], monotone: Optional[str] = None,
          name: str = "table") -> SampledFunction:
    """Piecewise-linear interpolation of ``(xs, ys)``; ``xs`` must span ``[0, 1]``."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 2:
        raise InvalidInputError("table needs matching 1-d arrays with at least 2 points")
    if np.any(np.diff(xs) <= 0) or xs[0] > 0 or xs[-1] < 1:
        raise InvalidInputError("table abscissae must increase and cover [0, 1]")
    return SampledFunction(lambda t: float(np.interp(float(t), xs, ys)), monotone, name)


def builtin_family(n: int) -> list[SampledFunction]:
    """Monotone test functions: ``t``, ``t^2``, ``e^t`` and every step ``1[t >= j/n]``."""
    return [identity(), square(), exponential()] + [step(j, n) for j in range(n + 1)]


def builtin_functions(n: int) -> list[SampledFunction]:
    """Every builtin, including the affine, constant and ``1/(1-qt)`` families."""
    return builtin_family(n) + [
        exponential(2.5), inverse_linear(0.5), inverse_linear(0.9),
        affine(Fraction(-2), Fraction(3)), affine(Fraction(1, 2), Fraction(1, 4)),
        constant(Fraction(1)), constant(Fraction(-3, 7)),
    ]


def _check_n(n) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise InvalidInputError(f"n must be an integer >= 2, got {n!r}")


def _nodes(n: int, mode: str, f: SampledFunction):
    if mode == RATIONAL:
        if not f.exact:
            raise ModeError(f"{f.name} is not exact; evaluate at a float x")
        return [f(Fraction(k, n)) for k in range(n + 1)]
    return [float(f(k / n)) for k in range(n + 1)]


def _weighted(values, weights, mode):
    if mode == RATIONAL:
        return sum((v * w for v, w in zip(values, weights)), Fraction(0))
    return math.fsum(v * w for v, w in zip(values, weights))


def rn_eval(n: int, f: SampledFunction, x: Scalar) -> Scalar:
    """``R_n(f, x) = sum_k f(k/n) p_{n,k}(x)``.

    Exact when ``x`` is a Fraction and ``f`` is exact; a non-exact ``f`` at
    a rational ``x`` raises :class:`ModeError`.
    """
    _check_n(n)
    mode = resolve_mode(x)
    return _weighted(_nodes(n, mode, f), pmf_vector(n, x).probs, mode)


def bernstein_eval(n: int, f: SampledFunction, x: Scalar) -> Scalar:
    """Classical Bernstein operator ``sum_k f(k/n) C(n,k) x^k (1-x)^(n-k)``."""
    _check_n(n)
    mode = resolve_mode(x)
    x = coerce(x, mode)
    if not 0 <= x <= 1:
        raise InvalidInputError(f"x must lie in [0, 1], got {x!r}")
    weights = [math.comb(n, k) * x ** k * (1 - x) ** (n - k) for k in range(n + 1)]
    return _weighted(_nodes(n, mode, f), weights, mode)


def rn_grid(n: int, f: SampledFunction, xs) -> np.ndarray:
    """Double-mode ``R_n(f, x)`` over an array of ``x`` values."""
    _check_n(n)
    values = np.array(_nodes(n, "double", f))
    return pmf_grid(n, xs) @ values


@dataclass(frozen=True)
class OrderReport:
    n: int
    x: Scalar
    y: Scalar
    dominated: bool
    worst_margin: Scalar
    worst_k: int


def dominates(n: int, x: Scalar, y: Scalar, tolerance: float = 1e-12) -> OrderReport:
    """Test ``X_x <=_st X_y``, i.e. ``F_x(k) >= F_y(k) - tolerance`` for every ``k``.

    ``worst_margin`` is ``min_k (F_x(k) - F_y(k))``; exact for Fraction input.
    """
    _check_n(n)
    resolve_mode(x, y)
    if x > y:
        raise InvalidInputError(f"need x <= y, got x={x}, y={y}")
    fx, fy = cdf_vector(n, x), cdf_vector(n, y)
    margins = [fx[k] - fy[k] for k in range(n + 1)]
    worst_k = min(range(n + 1), key=margins.__getitem__)
    worst = margins[worst_k]
    return OrderReport(n, x, y, worst >= -tolerance, worst, worst_k)


def _cdf_table(n, xs):
    return np.cumsum(pmf_grid(n, xs), axis=1)


def verify_theorem2(n: int, x_grid_points: int = 201, tolerance: float = 1e-12,
                    mode: str = "double") -> VerificationReport:
    """Stochastic ordering between consecutive points of a uniform ``x`` grid.

    Consecutive pairs suffice because the order is transitive.  In rational
    mode the grid is ``i/(m-1)`` exactly and the CDFs are exact.
    """
    _check_n(n)
    if not isinstance(x_grid_points, int) or x_grid_points < 2:
        raise InvalidInputError("x_grid_points must be at least 2")
    with Stopwatch() as sw:
        report = VerificationReport(
            "theorem2", {"n": n, "x_grid_points": x_grid_points, "tolerance": tolerance},
            mode=mode)
        if mode == RATIONAL:
            xs = [Fraction(i, x_grid_points - 1) for i in range(x_grid_points)]
            cdfs = [cdf_vector(n, x).values for x in xs]
        else:
            xs = unit_grid(x_grid_points)
            cdfs = _cdf_table(n, xs)
        for i in range(x_grid_points - 1):
            for k in range(n + 1):
                margin = cdfs[i][k] - cdfs[i + 1][k]
                report.observe(margin)
                if margin < -tolerance:
                    report.flag(margin, x=_loc(xs[i]), y=_loc(xs[i + 1]), k=k)
    report.elapsed_ms = sw.elapsed_ms
    return report


def _loc(v):
    return v if is_exact(v) else float(v)


def verify_theorem3(n: int, f: SampledFunction, grid_points: int = 1001,
                    tolerance: float = 1e-12) -> VerificationReport:
    """Check that ``x -> R_n(f, x)`` follows ``f``'s monotonicity tag on a grid.

    Also checks endpoint interpolation ``R_n(f,0) = f(0)`` and ``R_n(f,1) = f(1)``.
    """
    _check_n(n)
    if f.monotone is None:
        raise InvalidInputError(f"{f.name} carries no monotonicity tag")
    if grid_points < 2:
        raise InvalidInputError("grid_points must be at least 2")
    with Stopwatch() as sw:
        report = VerificationReport(
            "theorem3", {"n": n, "f": f.name, "grid_points": grid_points,
                         "tolerance": tolerance})
        xs = unit_grid(grid_points)
        values = rn_grid(n, f, xs)
        d = np.diff(values)
        margins = d if f.monotone == INCREASING else -d
        for i in np.flatnonzero(margins < -tolerance):
            report.flag(float(margins[i]), check="monotone", x=float(xs[i]))
        if margins.size:
            report.observe(float(margins.min()))
        for end in (0.0, 1.0):
            gap = -abs(float(rn_eval(n, f, end)) - float(f(end)))
            report.observe(gap)
            if gap < -tolerance:
                report.flag(gap, check="endpoint", x=end)
    report.elapsed_ms = sw.elapsed_ms
    return report


def verify_theorem3_family(n_max: int, grid_points: int = 1001,
                           tolerance: float = 1e-12) -> VerificationReport:
    """:func:`verify_theorem3` over :func:`builtin_family` for ``2 <= n <= n_max``."""
    if not isinstance(n_max, int) or n_max < 2:
        raise InvalidInputError("n_max must be an integer >= 2")
    with Stopwatch() as sw:
        subs = [verify_theorem3(n, f, grid_points, tolerance)
                for n in range(2, n_max + 1) for f in builtin_family(n)]
        report = combine("theorem3", {"n_max": n_max, "grid_points": grid_points,
                                      "tolerance": tolerance}, subs)
    report.elapsed_ms = sw.elapsed_ms
    return report


def verify_theorem2_range(n_max: int, x_grid_points: int = 201,
                          tolerance: float = 1e-12) -> VerificationReport:
    if not isinstance(n_max, int) or n_max < 2:
        raise InvalidInputError("n_max must be an integer >= 2")
    with Stopwatch() as sw:
        subs = [verify_theorem2(n, x_grid_points, tolerance) for n in range(2, n_max + 1)]
        report = combine("theorem2", {"n_max": n_max, "x_grid_points": x_grid_points,
                                      "tolerance": tolerance}, subs)
    report.elapsed_ms = sw.elapsed_ms
    return report
