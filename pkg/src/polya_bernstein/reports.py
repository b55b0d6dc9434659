"""Machine-readable pass/fail evidence produced by the verification suites."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Any, Iterable

from .scalar import jsonable


@dataclass(frozen=True)
class Violation:
    location: dict[str, Any]
    margin: Any


@dataclass
class VerificationReport:
    """Outcome of checking one claim over a grid of inputs.

    ``worst_margin`` is the smallest slack seen among all checked
    inequalities; a nonnegative value means every inequality held exactly,
    a value in ``[-tolerance, 0)`` means it held within tolerance.
    """

    suite: str
    params: dict[str, Any]
    violations: list[Violation] = field(default_factory=list)
    worst_margin: Any = math.inf
    elapsed_ms: float | None = None
    mode: str = "double"
    seed: int | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def observe(self, margin) -> None:
        if margin < self.worst_margin:
            self.worst_margin = margin

    def flag(self, margin, **location) -> None:
        self.violations.append(Violation(location, margin))
        self.observe(margin)

    def to_dict(self) -> dict[str, Any]:
        out = {
            "suite": self.suite,
            "params": {k: _plain(v) for k, v in self.params.items()},
            "violations": [
                {"location": {k: _plain(v) for k, v in v.location.items()},
                 "margin": jsonable(v.margin)}
                for v in self.violations
            ],
            "worst_margin": jsonable(self.worst_margin),
            "elapsed_ms": self.elapsed_ms,
            "mode": self.mode,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.details:
            out["details"] = {k: _plain(v) for k, v in self.details.items()}
        return out

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{self.suite}: {status} ({len(self.violations)} violations, "
                f"worst margin {jsonable(self.worst_margin)})")


def _plain(value):
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, str):
        return value
    return jsonable(value)


def combine(suite: str, params: dict[str, Any], reports: Iterable[VerificationReport],
            mode: str = "double", seed: int | None = None) -> VerificationReport:
    """Merge sub-reports; violation locations carry the sub-report params."""
    merged = VerificationReport(suite, dict(params), mode=mode, seed=seed)
    count = 0
    for r in reports:
        count += 1
        merged.observe(r.worst_margin)
        for v in r.violations:
            merged.violations.append(Violation({**r.params, **v.location}, v.margin))
    merged.details["checks"] = count
    return merged


class Stopwatch:
    def __enter__(self):
        self._t0 = time.perf_counter()
        self.elapsed_ms = None
        return self

    def __exit__(self, *exc):
        self.elapsed_ms = round((time.perf_counter() - self._t0) * 1000.0, 3)
        return False
