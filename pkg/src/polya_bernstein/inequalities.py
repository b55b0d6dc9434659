"""Checkers for the auxiliary inequalities behind the root-localisation argument.

* a strict reversed Cauchy-Schwarz comparison: if ``n`` positive numbers
  ``a`` are all below ``n - k`` positive numbers ``b`` with the same total,
  then ``sum a^2 < sum b^2``, via ``sum a^2 <= (sum a)^2 / (n-k)``;
* the Polya-Szego reverse Cauchy-Schwarz bound, for comparison;
* two-sided bounds on the trapezoid-rule excess ``sum f(i/N) - N int f -
  (f(0)+f(1))/2`` for ``f`` with nonnegative derivatives up to order three.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from .errors import GenerationFailure, InvalidInputError
from .reports import Stopwatch, VerificationReport
from .scalar import DOUBLE, RATIONAL, Scalar, coerce, is_exact, resolve_mode

SUM_RTOL = 1e-12
MAX_RETRIES = 1000
# Generated instances live on a dyadic grid so exact checks stay cheap.
_DYADIC = 2 ** 30


@dataclass(frozen=True)
class SequencePair:
    """``a`` (length ``n``) and ``b`` (length ``n - k``) with ``max a <= min b``, equal sums.

    Double-mode pairs are accepted when the sums agree to a relative 1e-12;
    ``a`` is then rescaled so the sums agree to the last bit.
    """

    a: tuple
    b: tuple
    k: int

    def __post_init__(self):
        a, b, k = tuple(self.a), tuple(self.b), self.k
        n = len(a)
        if n < 2:
            raise InvalidInputError("hypothesis n >= 2 fails: a needs at least 2 entries")
        if not isinstance(k, int) or not 1 <= k <= n - 1:
            raise InvalidInputError(f"hypothesis 1 <= k <= n-1 fails: k={k}, n={n}")
        if len(b) != n - k:
            raise InvalidInputError(f"hypothesis len(b) = n-k fails: {len(b)} != {n - k}")
        mode = resolve_mode(*a, *b)
        a = tuple(coerce(v, mode) for v in a)
        b = tuple(coerce(v, mode) for v in b)
        if min(a) <= 0 or min(b) <= 0:
            raise InvalidInputError("hypothesis positivity fails: all entries must be > 0")
        if max(a) > min(b):
            raise InvalidInputError(f"hypothesis max a <= min b fails: {max(a)} > {min(b)}")
        if mode == RATIONAL:
            if sum(a) != sum(b):
                raise InvalidInputError("hypothesis sum a = sum b fails")
        else:
            sa, sb = math.fsum(a), math.fsum(b)
            if abs(sa - sb) > SUM_RTOL * sb:
                raise InvalidInputError(f"hypothesis sum a = sum b fails: {sa} vs {sb}")
            a = tuple(v * (sb / sa) for v in a)
            if max(a) > min(b):
                raise InvalidInputError("hypothesis max a <= min b fails after rescaling")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def mode(self) -> str:
        return resolve_mode(*self.a, *self.b)


def _total(values, mode):
    return sum(values, Fraction(0)) if mode == RATIONAL else math.fsum(values)


class CBSCheck(NamedTuple):
    lhs: Scalar
    rhs: Scalar
    strict_holds: bool


class Aux7Check(NamedTuple):
    lhs: Scalar
    bound: Scalar
    holds: bool
    slack: Scalar


class PolyaSzegoCheck(NamedTuple):
    lhs_ratio: Scalar
    ps_bound: Scalar
    holds: bool


class TrapezoidCheck(NamedTuple):
    gap: Scalar
    upper_bound: Scalar
    holds: bool


def check_refined_reversed_cbs(p: SequencePair) -> CBSCheck:
    mode = p.mode
    lhs = _total([v * v for v in p.a], mode)
    rhs = _total([v * v for v in p.b], mode)
    return CBSCheck(lhs, rhs, lhs < rhs)


def check_aux7(p: SequencePair) -> Aux7Check:
    """``sum a^2 <= (sum a)^2 / (n - k)``; the slack is ``bound - lhs``."""
    mode = p.mode
    lhs = _total([v * v for v in p.a], mode)
    s = _total(p.a, mode)
    bound = s * s / (p.n - p.k)
    if mode == DOUBLE:
        holds = lhs <= bound * (1 + 4 * 2.220446049250313e-16)
    else:
        holds = lhs <= bound
    return Aux7Check(lhs, bound, holds, bound - lhs)


def polya_szego_coefficient(ratio: Scalar) -> Scalar:
    """``(sqrt(r) + 1/sqrt(r))^2 / 4`` written as ``(r + 2 + 1/r)/4`` (rational when ``r`` is)."""
    return (ratio + 2 + 1 / ratio) / 4


def polya_szego_ratio(a: Sequence[Scalar], b: Sequence[Scalar]) -> PolyaSzegoCheck:
    """Compare ``sum a^2 sum b^2 / (sum ab)^2`` with the Polya-Szego constant.

    The constant depends on ``M1 M2 / (m1 m2)`` only, through
    :func:`polya_szego_coefficient`, so rational input gives an exact verdict.
    """
    a, b = list(a), list(b)
    if len(a) != len(b) or not a:
        raise InvalidInputError("a and b must be nonempty and of equal length")
    mode = resolve_mode(*a, *b)
    a = [coerce(v, mode) for v in a]
    b = [coerce(v, mode) for v in b]
    if min(a) <= 0 or min(b) <= 0:
        raise InvalidInputError("all entries must be positive")
    lhs = (_total([v * v for v in a], mode) * _total([v * v for v in b], mode)
           / _total([u * v for u, v in zip(a, b)], mode) ** 2)
    bound = polya_szego_coefficient(max(a) * max(b) / (min(a) * min(b)))
    if mode == DOUBLE:
        return PolyaSzegoCheck(lhs, bound, lhs <= bound * (1 + 1e-12))
    return PolyaSzegoCheck(lhs, bound, lhs <= bound)


class RefinementCheck(NamedTuple):
    aux7_coefficient: Scalar
    ps_coefficient: Scalar
    holds: bool


def refinement_check(p: SequencePair) -> RefinementCheck:
    """Under the pair's hypotheses the ``1/(n-k)`` coefficient never exceeds Polya-Szego's."""
    mode = p.mode
    coeff = Fraction(1, p.n - p.k) if mode == RATIONAL else 1.0 / (p.n - p.k)
    ps = polya_szego_coefficient(max(p.a) / min(p.a))
    return RefinementCheck(coeff, ps, coeff <= ps)


def generate_lemma1_instance(n: int, k: int, seed, b: Optional[Sequence] = None,
                             max_retries: int = MAX_RETRIES) -> SequencePair:
    """Random exact-rational :class:`SequencePair` for property tests.

    ``b`` is a floor ``m ~ U[1, 2]`` plus nonnegative excesses whose total is
    at most ``k m`` (needed for feasibility: ``sum b <= n min b``).  ``a`` is
    drawn entry by entry, each uniform on the interval that keeps the
    remaining entries completable inside ``(0, min b]``; draws that land on a
    boundary after rounding are rejected.  ``seed`` is anything
    :class:`numpy.random.SeedSequence` accepts.
    """
    if not isinstance(n, int) or n < 2 or not isinstance(k, int) or not 1 <= k <= n - 1:
        raise InvalidInputError(f"need n >= 2 and 1 <= k <= n-1, got n={n}, k={k}")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    # Integer arithmetic in units of 1/_DYADIC; converted to Fractions at the end.
    forced = None
    if b is not None:
        if len(b) != n - k:
            raise InvalidInputError(f"forced b must have n-k={n - k} entries")
        fb = [Fraction(v) for v in b]
        if n * min(fb) < sum(fb, Fraction(0)):
            raise GenerationFailure(f"no valid a exists: sum b exceeds n * min b for b={fb}")
        forced = fb
    for _ in range(max_retries):
        if forced is None:
            m = int(rng.integers(_DYADIC, 2 * _DYADIC + 1))
            budget = rng.uniform() * k * m
            b_units = [m + int(budget * s) for s in rng.dirichlet(np.ones(n - k))]
            if n * min(b_units) < sum(b_units):
                continue
            a_units = _fill_below(rng, n, min(b_units), sum(b_units))
            if a_units is not None:
                a_vals = [Fraction(v, _DYADIC) for v in a_units]
                b_vals = [Fraction(v, _DYADIC) for v in b_units]
                return SequencePair(tuple(a_vals), tuple(b_vals), k)
        else:
            # rescale the forced b onto an integer lattice
            den = math.lcm(*(v.denominator for v in forced)) * _DYADIC
            b_units = [int(v * den) for v in forced]
            a_units = _fill_below(rng, n, min(b_units), sum(b_units))
            if a_units is not None:
                return SequencePair(tuple(Fraction(v, den) for v in a_units), tuple(forced), k)
    raise GenerationFailure(f"rejection sampling failed after {max_retries} tries")


def _fill_below(rng, n, cap, total):
    """``n`` integers in ``[1, cap]`` summing to ``total``, in random order.

    Each entry is uniform on the range that keeps the rest completable.
    Returns None when no such vector exists.
    """
    if not n <= total <= n * cap:
        return None
    out = []
    remaining = total
    for left in range(n, 1, -1):
        lo = max(1, remaining - (left - 1) * cap)
        hi = min(cap, remaining - (left - 1))
        v = int(rng.integers(lo, hi + 1))
        out.append(v)
        remaining -= v
    out.append(remaining)
    rng.shuffle(out)
    return out


def verify_lemma1(trials: int = 10_000, seed: int = 42, n_max: int = 20) -> VerificationReport:
    """Both inequalities on ``trials`` seeded random pairs with ``2 <= n <= n_max``."""
    if not isinstance(trials, int) or trials < 1:
        raise InvalidInputError("trials must be a positive integer")
    if not isinstance(n_max, int) or n_max < 2:
        raise InvalidInputError("n_max must be an integer >= 2")
    with Stopwatch() as sw:
        report = VerificationReport("lemma1", {"trials": trials, "n_max": n_max},
                                    mode=RATIONAL, seed=seed)
        picker = np.random.default_rng(np.random.SeedSequence([seed, 0]))
        for t in range(trials):
            n = int(picker.integers(2, n_max + 1))
            k = int(picker.integers(1, n))
            p = generate_lemma1_instance(n, k, [seed, 1, t])
            cbs = check_refined_reversed_cbs(p)
            aux = check_aux7(p)
            report.observe(cbs.rhs - cbs.lhs)
            report.observe(aux.slack)
            if not cbs.strict_holds:
                report.flag(cbs.rhs - cbs.lhs, check="strict_sum_squares", trial=t, n=n, k=k)
            if not aux.holds:
                report.flag(aux.slack, check="aux7", trial=t, n=n, k=k)
        report.details["checks"] = trials
    report.elapsed_ms = sw.elapsed_ms
    return report


# --- trapezoid excess ---------------------------------------------------------

SPOT_GRID = (0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9)
QUALIFY_GRID = 1001


@dataclass(frozen=True)
class FunctionDescriptor:
    """A function on ``[0, 1]`` with its first three derivatives and exact integral.

    ``exact`` marks descriptors whose callables map Fractions to Fractions.
    """

    name: str
    value: Callable
    d1: Callable
    d2: Callable
    d3: Callable
    integral_01: Scalar
    exact: bool = False
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def qualifies_for_lemma2(self) -> bool:
        """``f, f', f'', f''' >= 0`` on a 1001-point grid."""
        if "q" not in self._cache:
            ts = np.arange(QUALIFY_GRID) / (QUALIFY_GRID - 1)
            self._cache["q"] = all(
                float(g(float(t))) >= 0 for g in (self.value, self.d1, self.d2, self.d3)
                for t in ts)
        return self._cache["q"]

    def derivative_errors(self, h: float = 1e-6) -> list[float]:
        """Relative central-difference mismatch of ``d1``, ``d2``, ``d3`` at spot points."""
        errs = []
        chain = (self.value, self.d1, self.d2, self.d3)
        for lower, upper in zip(chain, chain[1:]):
            for t in SPOT_GRID:
                fd = (float(lower(t + h)) - float(lower(t - h))) / (2 * h)
                exact = float(upper(t))
                errs.append(abs(fd - exact) / max(1.0, abs(exact)))
        return errs


def exp_descriptor(rate: float = 1.0) -> FunctionDescriptor:
    r = float(rate)
    if not r > 0:
        raise InvalidInputError("rate must be positive")
    return FunctionDescriptor(
        f"exp({r}t)",
        lambda t: math.exp(r * t), lambda t: r * math.exp(r * t),
        lambda t: r * r * math.exp(r * t), lambda t: r ** 3 * math.exp(r * t),
        math.expm1(r) / r)


def inverse_linear_descriptor(q: float) -> FunctionDescriptor:
    """``1/(1 - q t)``, ``0 < q < 1``; integral ``-ln(1-q)/q``."""
    if not 0 < q < 1:
        raise InvalidInputError("q must lie in (0, 1)")
    return FunctionDescriptor(
        f"1/(1-{q}t)",
        lambda t: 1 / (1 - q * t), lambda t: q / (1 - q * t) ** 2,
        lambda t: 2 * q * q / (1 - q * t) ** 3, lambda t: 6 * q ** 3 / (1 - q * t) ** 4,
        -math.log1p(-q) / q)


def polynomial_descriptor(coefficients: Sequence[Scalar]) -> FunctionDescriptor:
    """``sum c_i t^i``; exact when every coefficient is an int or Fraction."""
    coeffs = list(coefficients)
    if not coeffs:
        raise InvalidInputError("need at least one coefficient")
    exact = all(is_exact(c) for c in coeffs)
    if exact:
        coeffs = [Fraction(c) for c in coeffs]

    def derive(cs):
        return [i * c for i, c in enumerate(cs)][1:] or [0 * cs[0]]

    def horner(cs):
        def ev(t):
            acc = 0 * cs[0]
            for c in reversed(cs):
                acc = acc * t + c
            return acc
        return ev

    c1 = derive(coeffs)
    c2 = derive(c1)
    c3 = derive(c2)
    integral = sum((c / (i + 1) for i, c in enumerate(coeffs)), 0 * coeffs[0])
    return FunctionDescriptor(
        "poly(" + ",".join(str(c) for c in coeffs) + ")",
        horner(coeffs), horner(c1), horner(c2), horner(c3), integral, exact=exact)


def lemma2_families() -> list[FunctionDescriptor]:
    """Builtin descriptors with ``f, f', f'', f''' >= 0``.

    Exponentials ``e^{at}``, ``a`` in (0, 3]; ``1/(1-qt)``, ``q`` in (0, 0.9];
    polynomials of degree <= 6 with nonnegative rational coefficients.
    """
    fams = [exp_descriptor(a) for a in (0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0)]
    fams += [inverse_linear_descriptor(q) for q in (0.05, 0.1, 0.3, 0.5, 0.7, 0.8, 0.9)]
    polys = [
        [1], [0, 1], [0, 0, 1], [0, 0, 0, 1], [1, 1, 1, 1, 1, 1, 1],
        [0, 0, 0, 0, 0, 0, 1], [2, 0, Fraction(1, 3), 0, Fraction(5, 2)],
        [Fraction(1, 7), 3, 0, Fraction(2, 9), 0, 0, Fraction(1, 11)],
    ]
    fams += [polynomial_descriptor(c) for c in polys]
    return fams


def trapezoid_gap(f: FunctionDescriptor, N: int, tolerance: float = 1e-12) -> TrapezoidCheck:
    """Excess of the node sum over ``N int f + (f(0)+f(1))/2``, with its upper bound.

    Uses the descriptor's closed-form integral; exact for exact descriptors.
    """
    if not isinstance(N, int) or N < 1:
        raise InvalidInputError("N must be a positive integer")
    if not f.qualifies_for_lemma2:
        raise InvalidInputError(f"{f.name} does not have f, f', f'', f''' >= 0 on [0, 1]")
    if f.exact:
        s = sum((f.value(Fraction(i, N)) for i in range(N + 1)), Fraction(0))
        gap = s - N * f.integral_01 - (f.value(Fraction(0)) + f.value(Fraction(1))) / 2
        bound = (f.d1(Fraction(1)) - f.d1(Fraction(0))) / (4 * N)
        return TrapezoidCheck(gap, bound, 0 <= gap <= bound)
    s = math.fsum(f.value(i / N) for i in range(N + 1))
    gap = math.fsum([s, -N * f.integral_01, -(f.value(0.0) + f.value(1.0)) / 2])
    bound = (f.d1(1.0) - f.d1(0.0)) / (4 * N)
    return TrapezoidCheck(gap, bound, -tolerance <= gap <= bound + tolerance)


def gap_shrinks_on_refinement(f: FunctionDescriptor, N: int, slack: float = 1e-12) -> bool:
    """Observed (not guaranteed) property: ``gap(f, 2N) <= gap(f, N) + slack``."""
    return float(trapezoid_gap(f, 2 * N).gap) <= float(trapezoid_gap(f, N).gap) + slack


def verify_lemma2(n_max: int = 200, tolerance: float = 1e-12,
                  families: Optional[Sequence[FunctionDescriptor]] = None) -> VerificationReport:
    """Trapezoid bounds for every family and every ``1 <= N <= n_max``."""
    if not isinstance(n_max, int) or n_max < 1:
        raise InvalidInputError("n_max must be a positive integer")
    fams = list(lemma2_families() if families is None else families)
    with Stopwatch() as sw:
        report = VerificationReport("lemma2", {"n_max": n_max, "tolerance": tolerance,
                                               "families": len(fams)})
        for f in fams:
            for N in range(1, n_max + 1):
                gap, bound, holds = trapezoid_gap(f, N, tolerance)
                margin = float(min(gap, bound - gap))
                report.observe(margin)
                if not holds:
                    report.flag(margin, f=f.name, N=N)
    report.elapsed_ms = sw.elapsed_ms
    return report
