"""Structured pass/fail reports shared by every verification suite."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    identity_name: str
    max_residual: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "identity_name": self.identity_name,
            "max_residual": self.max_residual,
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    """Outcome of one verification suite.

    ``overall_pass`` is the conjunction of the individual check results;
    checks are kept in sorted order by name so report assembly is
    deterministic regardless of execution order.
    """

    suite_name: str
    checks: list[CheckResult] = field(default_factory=list)
    details: list[str] = field(default_factory=list)

    def add(self, identity_name: str, max_residual: float, tol: float) -> CheckResult:
        if tol <= 0:
            raise ValueError("tolerance must be positive")
        result = CheckResult(identity_name, float(max_residual), float(max_residual) <= tol)
        self.checks.append(result)
        self.checks.sort(key=lambda c: c.identity_name)
        return result

    def add_bool(self, identity_name: str, ok: bool) -> CheckResult:
        # For yes/no checks with no meaningful residual (residual 0 or inf).
        result = CheckResult(identity_name, 0.0 if ok else float("inf"), bool(ok))
        self.checks.append(result)
        self.checks.sort(key=lambda c: c.identity_name)
        return result

    def note(self, line: str) -> None:
        self.details.append(line)

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_residual(self) -> float:
        finite = [c.max_residual for c in self.checks if c.max_residual != float("inf")]
        return max(finite) if finite else 0.0

    def to_dict(self) -> dict:
        return {
            "suite_name": self.suite_name,
            "checks": [c.to_dict() for c in self.checks],
            "overall_pass": self.overall_pass,
        }

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{status}] {c.identity_name}  residual={c.max_residual:.3e}")
        lines.extend("  " + d for d in self.details)
        verdict = "pass" if self.overall_pass else "FAIL"
        lines.append(f"suite {self.suite_name}: {verdict} ({len(self.checks)} checks)")
        return "\n".join(lines)


# Shape of VerificationReport.to_dict(), published so scripts can validate
# reports without importing this package.
REPORT_SCHEMA = {
    "type": "object",
    "required": ["suite_name", "checks", "overall_pass"],
    "properties": {
        "suite_name": {"type": "string"},
        "overall_pass": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["identity_name", "max_residual", "pass"],
                "properties": {
                    "identity_name": {"type": "string"},
                    "max_residual": {"type": "number"},
                    "pass": {"type": "boolean"},
                },
            },
        },
    },
}


def validate_report_dict(data: dict) -> None:
    """Minimal structural validation against REPORT_SCHEMA; raises ValueError."""
    if not isinstance(data, dict):
        raise ValueError("report must be an object")
    for key in ("suite_name", "checks", "overall_pass"):
        if key not in data:
            raise ValueError(f"report missing key {key!r}")
    if not isinstance(data["suite_name"], str):
        raise ValueError("suite_name must be a string")
    if not isinstance(data["overall_pass"], bool):
        raise ValueError("overall_pass must be a boolean")
    if not isinstance(data["checks"], list):
        raise ValueError("checks must be an array")
    for item in data["checks"]:
        if not isinstance(item, dict):
            raise ValueError("check entries must be objects")
        for key in ("identity_name", "max_residual", "pass"):
            if key not in item:
                raise ValueError(f"check entry missing key {key!r}")
        if not isinstance(item["identity_name"], str):
            raise ValueError("identity_name must be a string")
        if not isinstance(item["max_residual"], (int, float)):
            raise ValueError("max_residual must be a number")
        if not isinstance(item["pass"], bool):
            raise ValueError("pass must be a boolean")
