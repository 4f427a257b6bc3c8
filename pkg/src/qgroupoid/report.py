"""Violation records and the aggregated verification report."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    axiom: str
    instance: tuple = ()
    detail: str = ""

    def __str__(self):
        inst = ",".join(map(str, self.instance))
        return f"{self.axiom}[{inst}]: {self.detail}" if self.detail else f"{self.axiom}[{inst}]"


@dataclass
class Check:
    name: str
    ok: bool
    witness: str = ""


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)
    timing: float | None = None

    @property
    def status(self) -> str:
        return "pass" if all(c.ok for c in self.checks) else "fail"

    def add(self, name: str, violations_or_ok, witness: str = "") -> None:
        if isinstance(violations_or_ok, bool):
            self.checks.append(Check(name, violations_or_ok, witness))
        else:
            vs = list(violations_or_ok)
            self.checks.append(Check(name, not vs, witness or (str(vs[0]) if vs else "")))

    def to_dict(self, with_timing: bool = True) -> dict:
        out = {
            "status": self.status,
            "checks": [{"name": c.name, "outcome": "pass" if c.ok else "fail", "witness": c.witness}
                       for c in self.checks],
        }
        if with_timing and self.timing is not None:
            out["timing"] = round(self.timing, 3)
        return out

    def to_text(self, with_timing: bool = True) -> str:
        lines = [f"{'PASS' if c.ok else 'FAIL'}  {c.name}" + (f"  ({c.witness})" if c.witness else "")
                 for c in self.checks]
        lines.append(f"status: {self.status}")
        if with_timing and self.timing is not None:
            lines.append(f"time: {self.timing:.3f}s")
        return "\n".join(lines)
