"""Verification reports: named exact checks with counterexamples and timing."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import List, Optional

from .ambient import ConePoint, SuspensionPoint
from .exact import fmt


def fmt_point(x) -> str:
    if isinstance(x, tuple) and len(x) == 2:
        return f"({fmt(x[0])}, {fmt(x[1])})"
    if isinstance(x, (ConePoint, SuspensionPoint)):
        return str(x)
    return repr(x)


@dataclass
class CheckResult:
    name: str
    passed: bool
    samples: int
    counterexample: Optional[str] = None
    detail: str = ""


@dataclass
class VerificationReport:
    title: str
    seed: Optional[int] = None
    checks: List[CheckResult] = field(default_factory=list)
    seconds: float = 0.0

    def __post_init__(self):
        self._t0 = time.perf_counter()

    def add(self, name, samples, counterexample=None, detail="") -> CheckResult:
        """Record a check; it fails exactly when a counterexample is given."""
        c = CheckResult(name, counterexample is None, samples,
                        None if counterexample is None else str(counterexample), detail)
        self.checks.append(c)
        self.seconds = time.perf_counter() - self._t0
        return c

    def merge(self, other: "VerificationReport", prefix: str = ""):
        for c in other.checks:
            self.checks.append(CheckResult(prefix + c.name, c.passed, c.samples, c.counterexample, c.detail))
        self.seconds = time.perf_counter() - self._t0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def check(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)

    def to_text(self, timing: bool = False) -> str:
        lines = [f"# {self.title}" + (f" (seed {self.seed})" if self.seed is not None else "")]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            line = f"{status} {c.name} [{c.samples} samples]"
            if c.detail:
                line += f" {c.detail}"
            if not c.passed:
                line += f" counterexample: {c.counterexample}"
            lines.append(line)
        tail = f"{len(self.checks) - len(self.failures)}/{len(self.checks)} checks passed"
        if timing:
            tail += f" in {self.seconds:.2f}s"
        lines.append(tail)
        return "\n".join(lines) + "\n"

    def to_dict(self, timing: bool = False) -> dict:
        d = {"title": self.title, "seed": self.seed, "passed": self.passed,
             "checks": [asdict(c) for c in self.checks]}
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)
