"""Verification reports ("aqg-report v1") and residual bookkeeping."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field

from .scalar import ZERO, Gauss, default_tolerance, format_scalar

SCHEMA = "aqg-report v1"


@dataclass
class CheckRecord:
    check_id: str
    anchor: str
    group: str
    tier: str = "exact"
    status: str = "pass"
    residual: str = "0"
    witness: str | None = None
    count: int = 0
    detail: str | None = None
    wall_time: float = 0.0


@dataclass
class VerificationReport:
    suite: str
    environment: dict = field(default_factory=dict)
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if c.status == "fail"]

    def get(self, check_id: str) -> CheckRecord:
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise KeyError(check_id)

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)

    def to_dict(self, timing: bool = False) -> dict:
        checks = []
        for c in sorted(self.checks, key=lambda c: c.check_id):
            d = asdict(c)
            if not timing:
                d.pop("wall_time")
            checks.append(d)
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "environment": self.environment,
            "ok": self.ok,
            "checks": checks,
        }

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"

    def to_markdown(self) -> str:
        env = ", ".join(f"{k}={v}" for k, v in sorted(self.environment.items()))
        lines = [f"# {self.suite}", "", f"Environment: {env}", ""]
        groups: dict[str, list[CheckRecord]] = {}
        for c in sorted(self.checks, key=lambda c: c.check_id):
            groups.setdefault(c.group, []).append(c)
        for g in sorted(groups):
            lines += [f"## {g}", "", "| check | status | tier | residual | n | time (s) | anchor |",
                      "|---|---|---|---|---|---|---|"]
            for c in groups[g]:
                res = c.residual if len(c.residual) < 40 else c.residual[:37] + "..."
                lines.append(
                    f"| {c.check_id} | {c.status} | {c.tier} | {res} | {c.count} "
                    f"| {c.wall_time:.2f} | {c.anchor} |"
                )
                if c.witness and c.status == "fail":
                    lines.append(f"|  | witness: {c.witness} | | | | | |")
                if c.detail:
                    lines.append(f"|  | {c.detail} | | | | | |")
            lines.append("")
        n_fail = len(self.failures())
        lines.append(f"**{len(self.checks) - n_fail}/{len(self.checks)} checks passed**")
        return "\n".join(lines) + "\n"


class Tally:
    """Accumulates residuals of ``lhs == rhs`` comparisons for one check.

    Exact comparisons must vanish identically; float ones must stay within
    ``tol``.  The first failing comparison is kept as the witness.
    """

    def __init__(self, exact: bool = True, tol: float | None = None):
        self.exact = exact
        self.tol = default_tolerance() if tol is None else tol
        self.count = 0
        self.max_residual = 0.0
        self.failed = False
        self.witness: str | None = None
        self.residual_text = "0"
        self.detail: str | None = None

    def compare(self, lhs, rhs, witness: str = "") -> bool:
        self.count += 1
        diff = _difference(lhs, rhs)
        if all(type(v) is Gauss for v in diff):
            if not any(diff):
                return True
            if self.exact:
                self._fail(witness, _render(lhs, rhs))
                return False
        mag = max((abs(complex(v)) for v in diff), default=0.0)
        self.max_residual = max(self.max_residual, mag)
        # an exact-tier check fed float data only passes on bit-exact agreement
        ok = mag == 0 if self.exact else mag <= self.tol
        if not ok:
            self._fail(witness, f"{mag:.3e}")
        return ok

    def _fail(self, witness: str, residual: str) -> None:
        if not self.failed:
            self.failed = True
            self.witness = witness
            self.residual_text = residual

    def require(self, condition: bool, witness: str = "", residual: str = "") -> bool:
        self.count += 1
        if not condition:
            self._fail(witness, residual or "violated")
        return condition

    def residual(self) -> str:
        if self.failed and self.exact:
            return self.residual_text
        if not self.exact or self.max_residual:
            return f"{self.max_residual:.3e}"
        return "0"


def _difference(lhs, rhs) -> list:
    """Coefficient list of lhs - rhs for scalars, Elements and tensors."""
    if hasattr(lhs, "coeffs") or hasattr(rhs, "coeffs"):
        a = getattr(lhs, "coeffs", {})
        b = getattr(rhs, "coeffs", {})
        keys = set(a) | set(b)
        return [a.get(k, ZERO) - b.get(k, ZERO) for k in keys]
    return [lhs - rhs]


def _render(lhs, rhs) -> str:
    try:
        return f"lhs={_short(lhs)} rhs={_short(rhs)}"
    except Exception:  # pragma: no cover - rendering must never mask a failure
        return "nonzero"


def _short(x) -> str:
    s = str(x) if hasattr(x, "coeffs") else format_scalar(x)
    return s if len(s) < 200 else s[:197] + "..."


@contextmanager
def timed_check(report: VerificationReport, check_id: str, anchor: str, group: str,
                exact: bool = True, tol: float | None = None):
    """Run a check body with a fresh Tally and append its record."""
    tally = Tally(exact=exact, tol=tol)
    start = time.perf_counter()
    rec = CheckRecord(check_id=check_id, anchor=anchor, group=group,
                      tier="exact" if exact else "float")
    try:
        yield tally
    except Exception as exc:  # a crashing check is a failing check
        tally.failed = True
        tally.witness = f"{type(exc).__name__}: {exc}"
        tally.residual_text = "error"
    rec.wall_time = time.perf_counter() - start
    rec.count = tally.count
    rec.status = "fail" if tally.failed else "pass"
    rec.residual = tally.residual()
    rec.witness = tally.witness
    rec.detail = tally.detail
    if rec.status == "pass" and tally.detail and tally.detail.startswith("info:"):
        rec.status = "info"
    report.checks.append(rec)
