"""Verification records shared by all scenarios."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any


class ParameterError(ValueError):
    """A scenario parameter is outside its allowed range."""


@dataclass
class Check:
    label: str
    passed: bool
    witness: str = ""


@dataclass
class VerificationResult:
    scenario_name: str
    params: dict[str, Any]
    status: str
    witness: str
    elapsed: float
    axioms_used: list[str] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def check(self, label: str) -> Check:
        for c in self.checks:
            if c.label == label:
                return c
        raise KeyError(label)

    def to_record(self) -> dict[str, Any]:
        return {
            "scenario": self.scenario_name,
            "params": dict(self.params),
            "status": self.status,
            "witness": self.witness,
            "axioms_used": list(self.axioms_used),
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
            "checks": [{"label": c.label, "passed": c.passed} for c in self.checks],
            "details": self.details,
        }


class Recorder:
    """Collects sub-checks and turns them into a :class:`VerificationResult`."""

    def __init__(self, name: str, params: dict[str, Any]):
        self.name = name
        self.params = params
        self.checks: list[Check] = []
        self.axioms: list[str] = []
        self.details: dict[str, Any] = {}
        self._start = time.perf_counter()

    def zero(self, label: str, residual) -> bool:
        """Record that ``residual`` (ScalarExpr or DiffForm) must be exactly zero."""
        ok = residual.is_zero()
        self.checks.append(Check(label, ok, "" if ok else str(residual)))
        return ok

    def truth(self, label: str, ok: bool, witness: str = "") -> bool:
        self.checks.append(Check(label, bool(ok), "" if ok else witness))
        return bool(ok)

    def axiom(self, text: str) -> None:
        if text not in self.axioms:
            self.axioms.append(text)

    def result(self) -> VerificationResult:
        failed = [c for c in self.checks if not c.passed]
        witness = "; ".join(f"{c.label}: {c.witness}" for c in failed)
        return VerificationResult(
            scenario_name=self.name,
            params=self.params,
            status="fail" if failed or not self.checks else "pass",
            witness=witness,
            elapsed=time.perf_counter() - self._start,
            axioms_used=list(self.axioms),
            checks=list(self.checks),
            details=self.details,
        )
