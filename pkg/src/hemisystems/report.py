"""Check results and the aggregated verification report."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from .errors import VerificationFailure


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    message: str = ""
    elapsed: float = 0.0

    def raise_for_failure(self) -> "CheckResult":
        if not self.passed:
            raise VerificationFailure(self.name, self.message, self.details.get("witness"))
        return self

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "message": self.message,
            "details": self.details,
            "elapsed_s": round(self.elapsed, 6),
        }


@dataclass
class VerificationReport:
    p: int
    f: int
    q: int
    polynomial: tuple
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, result: CheckResult) -> CheckResult:
        self.checks.append(result)
        return result

    def __getitem__(self, name) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "f": self.f,
            "q": self.q,
            "polynomial": list(self.polynomial),
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


@contextmanager
def timed(result_holder: dict):
    t0 = time.perf_counter()
    try:
        yield
    finally:
        result_holder["elapsed"] = time.perf_counter() - t0


def histogram(values) -> dict:
    """{value: multiplicity} with JSON-friendly keys, sorted by value."""
    out: dict = {}
    for v in values:
        v = int(v)
        out[v] = out.get(v, 0) + 1
    return {str(k): out[k] for k in sorted(out)}
