"""Polya urn distribution with (possibly negative) replacement.

An urn holds white mass ``a`` and black mass ``b``.  Each of ``n`` draws picks
white with probability proportional to the current white mass, then the
drawn colour's mass changes by ``c``.  The number of white draws has law

    P(X = k) = C(n, k) * a^(k,c) * b^(n-k,c) / (a+b)^(n,c)

where ``x^(k,h) = x (x+h) ... (x+(k-1)h)`` is the rising factorial with
increment ``h``.  The special family used by the operator sets ``a = x``,
``b = 1 - x`` and ``c = -min(x, 1-x)/(n-1)``, the most negative increment
that keeps all ``n`` draws well defined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DegenerateParametersError, InvalidInputError, TooLargeError
from .scalar import (DOUBLE, RATIONAL, Scalar, coerce, is_exact, one, resolve_mode,
                     snap_zero, zero)

ENUMERATION_CAP = 16
# Above this many draws the double-mode product is accumulated in log space.
_LOG_SPACE_N = 200
# Slack allowed on the validity bound for float inputs (bound itself is rounded).
_BOUND_RTOL = 4 * 2.220446049250313e-16


def rising_factorial(x: Scalar, k: int, h: Scalar) -> Scalar:
    """``x (x+h) ... (x+(k-1)h)``; the empty product (k=0) is 1.

    >>> rising_factorial(2, 3, 1)
    Fraction(24, 1)
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise InvalidInputError(f"k must be a nonnegative integer, got {k!r}")
    mode = resolve_mode(x, h)
    x, h = coerce(x, mode), coerce(h, mode)
    result = one(mode)
    for i in range(k):
        factor = x + i * h
        if mode == DOUBLE:
            factor = snap_zero(factor, abs(x) + i * abs(h))
        if factor == 0:
            return zero(mode)
        result *= factor
    return result


def replacement_param(n: int, x: Scalar) -> Scalar:
    """Minimal admissible increment ``-min(x, 1-x)/(n-1)`` for the special urn."""
    _check_special(n, x)
    mode = resolve_mode(x)
    x = coerce(x, mode)
    m = min(x, 1 - x)
    if m == 0:
        return zero(mode)
    return -m / (n - 1)


def _check_special(n, x) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise InvalidInputError(f"n must be an integer >= 2, got {n!r}")
    resolve_mode(x)
    if not 0 <= x <= 1:
        raise InvalidInputError(f"x must lie in [0, 1], got {x}")


@dataclass(frozen=True)
class UrnParams:
    """Urn configuration ``(n, a, b, c)``.

    Valid when ``a, b >= 0`` with at most one of them zero and, for
    ``n >= 2``, ``c >= -min(a, b)/(n-1)``.  That bound forces every
    intermediate total mass ``a + b + i c`` (``i < n``) to stay at least
    ``max(a, b) > 0``.
    """

    n: int
    a: Scalar
    b: Scalar
    c: Scalar

    def __post_init__(self):
        n, a, b, c = self.n, self.a, self.b, self.c
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InvalidInputError(f"n must be a positive integer, got {n!r}")
        mode = resolve_mode(a, b, c)
        object.__setattr__(self, "a", coerce(a, mode))
        object.__setattr__(self, "b", coerce(b, mode))
        object.__setattr__(self, "c", coerce(c, mode))
        a, b, c = self.a, self.b, self.c
        if mode == DOUBLE and not all(math.isfinite(v) for v in (a, b, c)):
            raise InvalidInputError("urn parameters must be finite")
        if a < 0 or b < 0:
            raise InvalidInputError(f"masses must be nonnegative, got a={a}, b={b}")
        if a == 0 and b == 0:
            raise InvalidInputError("at most one of a, b may be zero")
        if n >= 2:
            bound = -min(a, b) / (n - 1)
            slack = _BOUND_RTOL * abs(bound) if mode == DOUBLE else 0
            if c < bound - slack:
                raise InvalidInputError(
                    f"c={c} is below the validity bound -min(a,b)/(n-1)={bound}")
            if a + b + (n - 1) * c <= 0:
                raise DegenerateParametersError("total mass reaches zero before the last draw")

    @property
    def mode(self) -> str:
        return resolve_mode(self.a, self.b, self.c)

    @classmethod
    def special(cls, n: int, x: Scalar) -> "UrnParams":
        """The ``(x, 1-x, -min(x,1-x)/(n-1))`` urn."""
        c = replacement_param(n, x)
        mode = resolve_mode(x)
        x = coerce(x, mode)
        return cls(n, x, 1 - x, c)


@dataclass(frozen=True)
class Pmf:
    params: UrnParams
    probs: tuple

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def mode(self) -> str:
        return resolve_mode(*self.probs)

    def __getitem__(self, k: int) -> Scalar:
        return self.probs[k]

    def __len__(self) -> int:
        return len(self.probs)

    def total(self) -> Scalar:
        if self.mode == RATIONAL:
            return sum(self.probs, Fraction(0))
        return math.fsum(self.probs)

    def mean(self) -> Scalar:
        if self.mode == RATIONAL:
            return sum((k * p for k, p in enumerate(self.probs)), Fraction(0))
        return math.fsum(k * p for k, p in enumerate(self.probs))

    def cdf(self) -> "Cdf":
        return Cdf(self.params, _running_sum(self.probs))

    def as_array(self) -> np.ndarray:
        return np.array([float(p) for p in self.probs])


@dataclass(frozen=True)
class Cdf:
    """``values[k] = P(X <= k)`` for ``k = 0..n``."""

    params: UrnParams
    values: tuple

    def __getitem__(self, k: int) -> Scalar:
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)


def _running_sum(probs: Sequence[Scalar]) -> tuple:
    exact = all(is_exact(p) for p in probs)
    out = []
    if exact:
        acc = Fraction(0)
        for p in probs:
            acc += p
            out.append(acc)
        return tuple(out)
    acc = []
    for p in probs:
        acc.append(p)
        out.append(min(1.0, max(0.0, math.fsum(acc))))
    out[-1] = 1.0 if abs(out[-1] - 1.0) <= 1e-12 else out[-1]
    return tuple(out)


def _check_k(n: int, k: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or not 0 <= k <= n:
        raise InvalidInputError(f"k must be an integer in 0..{n}, got {k!r}")


def _double_product(n: int, k: int, white: list, black: list, denom: list) -> float:
    """``C(n,k) prod white_i/denom_i prod black_j/denom_{k+j}`` as paired ratios."""
    if any(w == 0.0 for w in white) or any(b == 0.0 for b in black):
        return 0.0
    ratios = [w / denom[i] for i, w in enumerate(white)]
    ratios += [b / denom[k + j] for j, b in enumerate(black)]
    if n <= _LOG_SPACE_N:
        return float(math.comb(n, k)) * math.prod(ratios)
    return math.exp(math.log(math.comb(n, k)) + math.fsum(math.log(r) for r in ratios))


def pmf_general(params: UrnParams, k: int) -> Scalar:
    """``P(X = k)`` for an arbitrary valid urn.

    The normaliser is ``(a+b)^(n,c)``, which reduces to ``1^(n,c)`` when
    ``a + b = 1``.  Any vanishing rising-factorial factor gives an exact zero.
    """
    n, a, b, c = params.n, params.a, params.b, params.c
    _check_k(n, k)
    total = a + b
    if params.mode == RATIONAL:
        den = rising_factorial(total, n, c)
        if den == 0:
            raise DegenerateParametersError("normalising constant (a+b)^(n,c) is zero")
        return math.comb(n, k) * rising_factorial(a, k, c) * rising_factorial(b, n - k, c) / den
    denom = [snap_zero(total + i * c, total + i * abs(c)) for i in range(n)]
    if any(d <= 0.0 for d in denom):
        raise DegenerateParametersError("normalising constant (a+b)^(n,c) is zero")
    white = [snap_zero(a + i * c, a + i * abs(c)) for i in range(k)]
    black = [snap_zero(b + j * c, b + j * abs(c)) for j in range(n - k)]
    return max(0.0, _double_product(n, k, white, black, denom))


def _special_factors(n: int, x: float, k: int):
    # Factor the smaller colour as m*(n-1-i)/(n-1) so the last factor is exactly 0.
    m = min(x, 1.0 - x)
    step = m / (n - 1)
    if x <= 0.5:
        white = [x * (n - 1 - i) / (n - 1) for i in range(k)]
        black = [(1.0 - x) - j * step for j in range(n - k)]
    else:
        white = [x - i * step for i in range(k)]
        black = [(1.0 - x) * (n - 1 - j) / (n - 1) for j in range(n - k)]
    denom = [1.0 - i * step for i in range(n)]
    return white, black, denom


def pmf_special(n: int, x: Scalar, k: int) -> Scalar:
    """``p_{n,k}(x)``: probability of ``k`` white draws from the special urn.

    At ``x = 0`` and ``x = 1`` this is the point mass at ``k = 0`` resp.
    ``k = n`` (the continuous extension).
    """
    _check_special(n, x)
    _check_k(n, k)
    if resolve_mode(x) == RATIONAL:
        return pmf_general(UrnParams.special(n, x), k)
    white, black, denom = _special_factors(n, float(x), k)
    return _double_product(n, k, white, black, denom)


def urn_pmf(params: UrnParams) -> Pmf:
    return Pmf(params, tuple(pmf_general(params, k) for k in range(params.n + 1)))


def pmf_vector(n: int, x: Scalar) -> Pmf:
    """Full law of the special urn at ``x``."""
    _check_special(n, x)
    params = UrnParams.special(n, x)
    return Pmf(params, tuple(pmf_special(n, x, k) for k in range(n + 1)))


def cdf_vector(n: int, x: Scalar) -> Cdf:
    return pmf_vector(n, x).cdf()


def cdf(n: int, x: Scalar, k: int) -> Scalar:
    """``F_x(k) = P(X <= k)`` for the special urn; clamped to [0, 1] in double mode."""
    _check_k(n, k)
    return cdf_vector(n, x)[k]


def enumerate_paths_pmf(params: UrnParams, cap: int = ENUMERATION_CAP) -> Pmf:
    """Brute-force law of the white count by walking every colour sequence.

    Independent of the closed form: each of the ``2**n`` draw sequences gets
    the product of its conditional draw probabilities (current colour mass
    over current total mass), and the products are pooled by white count.
    """
    n = params.n
    if n > cap:
        raise TooLargeError(f"n={n} exceeds the enumeration cap {cap}")
    mode = params.mode
    a, b, c = params.a, params.b, params.c
    acc = [zero(mode)] * (n + 1)

    def walk(depth, white_mass, black_mass, whites, prob):
        if depth == n:
            acc[whites] += prob
            return
        total = white_mass + black_mass
        if mode == DOUBLE:
            white_mass = snap_zero(white_mass, abs(a) + whites * abs(c))
            black_mass = snap_zero(black_mass, abs(b) + (depth - whites) * abs(c))
        if white_mass > 0:
            walk(depth + 1, white_mass + c, black_mass, whites + 1, prob * white_mass / total)
        if black_mass > 0:
            walk(depth + 1, white_mass, black_mass + c, whites, prob * black_mass / total)

    walk(0, a, b, 0, one(mode))
    return Pmf(params, tuple(acc))


def pmf_grid(n: int, xs) -> np.ndarray:
    """Double-mode ``p_{n,k}(x)`` for every grid point and every ``k``.

    Returns an array of shape ``(len(xs), n + 1)``.  Uses the same paired
    factorisation as :func:`pmf_special`, vectorised over ``xs``.
    """
    if not isinstance(n, int) or n < 2:
        raise InvalidInputError(f"n must be an integer >= 2, got {n!r}")
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 1 or np.any(xs < 0) or np.any(xs > 1):
        raise InvalidInputError("grid must be a 1-d array of points in [0, 1]")
    low = xs <= 0.5
    step = np.minimum(xs, 1.0 - xs) / (n - 1)
    idx = np.arange(n)
    white = np.where(low[:, None], xs[:, None] * (n - 1 - idx) / (n - 1),
                     xs[:, None] - idx * step[:, None])
    black = np.where(low[:, None], (1.0 - xs[:, None]) - idx * step[:, None],
                     (1.0 - xs[:, None]) * (n - 1 - idx) / (n - 1))
    denom = 1.0 - idx * step[:, None]
    out = np.empty((xs.size, n + 1))
    for k in range(n + 1):
        r = np.ones(xs.size)
        for i in range(k):
            r *= white[:, i] / denom[:, i]
        for j in range(n - k):
            r *= black[:, j] / denom[:, k + j]
        out[:, k] = math.comb(n, k) * r
    return out
