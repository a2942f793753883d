"""Verification reports: named checks with pass/fail status and residuals."""

from __future__ import annotations

from dataclasses import dataclass, field

EXACT_ZERO = "exact-zero"
PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    # float, EXACT_ZERO for identities decided by exact arithmetic, or None
    max_residual: float | str | None = None
    samples_used: int = 0
    detail: str = ""

    def __post_init__(self):
        if self.status not in (PASS, FAIL, SKIPPED):
            raise ValueError(f"bad status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        r = self.max_residual
        if isinstance(r, float):
            r = float(f"{r:.6e}")
        return {
            "name": self.name,
            "status": self.status,
            "max_residual": r,
            "samples_used": self.samples_used,
            "detail": self.detail,
        }


def check_from(name: str, ok: bool, residual=None, samples: int = 0, detail: str = "") -> Check:
    return Check(name, PASS if ok else FAIL, residual, samples, detail)


@dataclass
class VerificationReport:
    subject: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def add(self, chk: Check) -> Check:
        self.checks.append(chk)
        return chk

    def extend(self, other: "VerificationReport", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.max_residual, c.samples_used, c.detail))
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.status != FAIL for c in self.checks)

    @property
    def status(self) -> str:
        return PASS if self.passed else FAIL

    def failed(self) -> list:
        return [c.name for c in self.checks if c.status == FAIL]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name) -> bool:
        return any(c.name == name for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "status": self.status,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
            "metadata": _jsonable(self.metadata),
        }

    def format_text(self) -> str:
        lines = [f"[{self.status.upper()}] {self.subject}"]
        for c in self.checks:
            res = c.max_residual
            res = f"{res:.3e}" if isinstance(res, float) else (res or "-")
            extra = f"  ({c.detail})" if c.detail else ""
            lines.append(f"  {c.status:7s} {c.name:40s} residual={res} samples={c.samples_used}{extra}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)

    def __str__(self):
        return self.format_text()


def _jsonable(x):
    from fractions import Fraction

    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, float):
        return float(f"{x:.6e}")
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    if hasattr(x, "item"):
        return _jsonable(x.item())
    return str(x)
