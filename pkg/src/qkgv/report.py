"""Verification reports with exact, deterministic JSON serialization."""

import json
from fractions import Fraction

from .exact.arith import format_rational


def exact_str(x):
    """Exact string form of a value; floats are rejected."""
    if isinstance(x, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, Fraction)):
        return format_rational(x)
    return str(x)


def _loc_item(x):
    if isinstance(x, (list, tuple)):
        return [_loc_item(y) for y in x]
    if isinstance(x, bool) or isinstance(x, int):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not allowed in reports")
    return str(x)


class Check:
    __slots__ = ("name", "location", "passed", "witness")

    def __init__(self, name, location=(), passed=True, witness=None):
        self.name = name
        self.location = tuple(location)
        self.passed = bool(passed)
        self.witness = {k: exact_str(v) for k, v in (witness or {}).items()}

    def to_dict(self):
        return {
            "name": self.name,
            "location": _loc_item(list(self.location)),
            "passed": self.passed,
            "witness": dict(sorted(self.witness.items())),
        }

    def __repr__(self):
        state = "pass" if self.passed else "FAIL"
        return f"Check({self.name}, {self.location}, {state}, {self.witness})"


class Report:
    """Ordered collection of checks for one command or suite."""

    def __init__(self, command, echo=None):
        self.command = command
        self.echo = dict(echo or {})
        self.checks = []
        self.data = {}

    def add(self, name, location=(), passed=True, witness=None):
        chk = Check(name, location, passed, witness)
        self.checks.append(chk)
        return chk

    def extend(self, other):
        self.checks.extend(other.checks)
        for k, v in other.data.items():
            self.data[k] = v
        return self

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def summary(self):
        fails = len(self.failures())
        return {"total": len(self.checks), "passed": len(self.checks) - fails, "failed": fails}

    def to_dict(self):
        return {
            "command": self.command,
            "echo": {k: _loc_item(v) for k, v in sorted(self.echo.items())},
            "checks": [c.to_dict() for c in self.checks],
            "data": self.data,
            "summary": self.summary(),
            "status": "pass" if self.passed else "fail",
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, ensure_ascii=False) + "\n"

    def __repr__(self):
        s = self.summary()
        return f"Report({self.command}: {s['passed']}/{s['total']} passed)"
