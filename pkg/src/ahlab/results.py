"""Check results, the report container, and a cooperative time budget."""

from __future__ import annotations

import contextlib
import contextvars
import time
from dataclasses import dataclass, field
from typing import Any

from .errors import BudgetExceeded

PASS = "pass"
FAIL = "fail"
REFUTED = "refuted-instance"
SKIPPED = "skipped"
STATUSES = (PASS, FAIL, REFUTED, SKIPPED)

SCHEMA_VERSION = "1"

# Stable identifiers, in report order.
REGISTRY = (
    "u-recursion",
    "p-integrality",
    "digit-oracle",
    "mod-p-recursion",
    "prop-even-sum",
    "sk-relation",
    "closed-forms",
    "conjecture-k-odd",
    "conjecture-poly-forms",
    "lemma-pound0",
    "feq-gamma",
    "feq-gamma-sym",
    "gamma-parity",
    "gamma-reconstruction",
    "granville-pol",
    "nielsen",
    "faulhaber",
    "polylog-special-values",
    "numeric-sums",
    "corollary-sixth",
    "corollary-eighth",
    "zagier-identity",
    "wolstenholme",
    "lehmer",
)


@dataclass
class CheckResult:
    name: str
    prime: int
    params: dict[str, Any] = field(default_factory=dict)
    status: str = PASS
    witness: dict[str, Any] | None = None
    elapsed_ms: int = 0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status in (FAIL, REFUTED) and self.witness is None:
            raise ValueError(f"{self.name}: status {self.status} needs a witness")

    @property
    def ok(self) -> bool:
        return self.status in (PASS, SKIPPED)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "params": self.params,
            "status": self.status,
            "witness": self.witness,
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any], prime: int) -> CheckResult:
        return cls(d["name"], prime, d["params"], d["status"], d["witness"], d["elapsed_ms"])


def outcome(name, prime, params, witness=None, failed=FAIL) -> CheckResult:
    """Build a result that passes iff no witness was found."""
    return CheckResult(name, prime, params, PASS if witness is None else failed, witness)


def skipped(name, prime, reason, params=None) -> CheckResult:
    return CheckResult(name, prime, dict(params or {}), SKIPPED, {"reason": reason})


@dataclass
class VerificationReport:
    config_echo: dict[str, Any]
    primes: list[tuple[int, list[CheckResult]]]
    schema_version: str = SCHEMA_VERSION

    @property
    def totals(self) -> dict[str, int]:
        counts = dict.fromkeys(STATUSES, 0)
        for _, checks in self.primes:
            for c in checks:
                counts[c.status] += 1
        return counts

    def all_results(self):
        for _, checks in self.primes:
            yield from checks

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "config_echo": self.config_echo,
            "primes": [
                {"p": p, "checks": [c.to_dict() for c in checks]} for p, checks in self.primes
            ],
            "totals": self.totals,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> VerificationReport:
        primes = [
            (e["p"], [CheckResult.from_dict(c, e["p"]) for c in e["checks"]]) for e in d["primes"]
        ]
        return cls(d["config_echo"], primes, d["schema_version"])


_deadline: contextvars.ContextVar[float | None] = contextvars.ContextVar("deadline", default=None)


@contextlib.contextmanager
def budget(seconds: float | None):
    """Arm a wall-clock budget for the enclosed block; ``checkpoint`` enforces it."""
    token = _deadline.set(None if seconds is None else time.monotonic() + seconds)
    try:
        yield
    finally:
        _deadline.reset(token)


def checkpoint():
    deadline = _deadline.get()
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded("wall-time budget exhausted")
