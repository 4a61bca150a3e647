"""Pass/fail reports shared by every verification suite."""

from __future__ import annotations

import json
import traceback
from dataclasses import dataclass, field

from . import __version__


@dataclass
class Check:
    name: str
    status: str  # "pass", "fail" or "skip"
    witness: str | None = None

    def to_dict(self):
        d = {"name": self.name, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class Report:
    suite: str
    seed: int | None = None
    checks: list = field(default_factory=list)
    version: str = __version__

    def add(self, name, ok, witness=None):
        status = "pass" if ok else "fail"
        self.checks.append(Check(name, status, None if ok else _text(witness)))
        return ok

    def skip(self, name, why):
        self.checks.append(Check(name, "skip", why))

    def run(self, name, fn):
        """Record fn() as a check: truthy passes, a (bool, witness) tuple is
        unpacked, and exceptions fail with the traceback tail as witness."""
        try:
            result = fn()
        except Exception as exc:  # a crashing check is a failing check
            tb = traceback.format_exception_only(type(exc), exc)[-1].strip()
            return self.add(name, False, tb)
        if isinstance(result, tuple):
            return self.add(name, bool(result[0]), result[1])
        return self.add(name, bool(result))

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.witness))

    @property
    def summary(self):
        counts = {"pass": 0, "fail": 0, "skip": 0}
        for c in self.checks:
            counts[c.status] += 1
        return counts

    @property
    def ok(self):
        return self.summary["fail"] == 0

    def failures(self):
        return [c for c in self.checks if c.status == "fail"]

    def to_dict(self):
        return {
            "suite": self.suite,
            "version": self.version,
            "seed": self.seed,
            "checks": [c.to_dict() for c in self.checks],
            "summary": self.summary,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_table(self):
        width = max([len(c.name) for c in self.checks] + [10])
        lines = [f"suite {self.suite} (version {self.version}, seed {self.seed})"]
        for c in self.checks:
            line = f"  {c.name:<{width}}  {c.status.upper()}"
            if c.witness:
                line += f"  [{c.witness}]"
            lines.append(line)
        s = self.summary
        lines.append(f"{s['pass']} passed, {s['fail']} failed, {s['skip']} skipped")
        return "\n".join(lines)


REPORT_SCHEMA = {
    "type": "object",
    "required": ["suite", "version", "seed", "checks", "summary"],
    "properties": {
        "suite": {"type": "string"},
        "version": {"type": "string"},
        "seed": {"type": ["integer", "null"]},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "status"],
                "properties": {
                    "name": {"type": "string"},
                    "status": {"enum": ["pass", "fail", "skip"]},
                    "witness": {"type": "string"},
                },
            },
        },
        "summary": {
            "type": "object",
            "required": ["pass", "fail", "skip"],
        },
    },
}


def _text(w):
    if w is None:
        return None
    return w if isinstance(w, str) else str(w)
