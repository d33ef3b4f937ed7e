"""Check reports shared by every verifier and by the CLI."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any


class VerificationError(AssertionError):
    """Raised when an internal consistency check fails (a theorem would be contradicted)."""


@dataclass
class Check:
    id: str
    ok: bool
    witness: Any = None
    detail: str = ""
    seconds: float | None = None

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def to_json(self, timings: bool = False) -> dict:
        out: dict[str, Any] = {"id": self.id, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        if timings and self.seconds is not None:
            out["seconds"] = round(self.seconds, 6)
        return out


@dataclass
class Report:
    name: str
    checks: list[Check] = field(default_factory=list)
    # results that are not pass/fail, e.g. the dimension of a solution space
    findings: list[tuple[str, Any]] = field(default_factory=list)

    def add(self, id: str, ok: bool, witness: Any = None, detail: str = "") -> Check:
        c = Check(id, bool(ok), witness, detail)
        self.checks.append(c)
        return c

    def note(self, key: str, value: Any) -> None:
        self.findings.append((key, value))

    @contextmanager
    def timed(self, id: str):
        """Context manager yielding a mutable holder; record ``ok``/``witness``/``detail`` on it."""
        holder = Check(id, True)
        t0 = time.perf_counter()
        yield holder
        holder.seconds = time.perf_counter() - t0
        self.checks.append(holder)

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.ok, c.witness, c.detail, c.seconds))
        self.findings.extend(other.findings)
        return self

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def __getitem__(self, id: str) -> Check:
        for c in self.checks:
            if c.id == id:
                return c
        raise KeyError(id)

    def summary(self) -> dict[str, int]:
        n_pass = sum(c.ok for c in self.checks)
        return {"total": len(self.checks), "passed": n_pass, "failed": len(self.checks) - n_pass}

    def to_json(self, timings: bool = False) -> dict:
        return {
            "instance": self.name,
            "checks": [c.to_json(timings) for c in self.checks],
            "findings": [{"key": k, "value": v} for k, v in self.findings],
            "summary": self.summary(),
        }

    def dumps(self, timings: bool = False) -> str:
        return json.dumps(self.to_json(timings), indent=2, sort_keys=False)

    def to_text(self, timings: bool = False) -> str:
        lines = [f"instance: {self.name}"]
        for c in self.checks:
            line = f"  {c.id}: {c.status}"
            if c.detail:
                line += f"  ({c.detail})"
            if not c.ok and c.witness is not None:
                line += f"  witness={json.dumps(c.witness)}"
            if timings and c.seconds is not None:
                line += f"  [{c.seconds:.3f}s]"
            lines.append(line)
        if self.findings:
            lines.append("findings:")
            lines.extend(f"  {k}: {_text_value(v)}" for k, v in self.findings)
        s = self.summary()
        lines.append(f"summary: {s['passed']}/{s['total']} passed, {s['failed']} failed")
        return "\n".join(lines) + "\n"

    def require(self) -> "Report":
        """Raise :class:`VerificationError` listing the failing checks."""
        if not self.passed:
            bad = ", ".join(f"{c.id} (witness {c.witness})" for c in self.failures)
            raise VerificationError(f"{self.name}: {bad}")
        return self


def _text_value(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, str)):
        return str(v)
    return json.dumps(v)
