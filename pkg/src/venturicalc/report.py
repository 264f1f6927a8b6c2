"""Check / report plumbing used by the verification suites and the CLI."""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field

import numpy as np


def _scalar(x):
    if x is None:
        return None
    if isinstance(x, complex):
        return abs(x)
    return float(x)


@dataclass
class Check:
    """One verified quantity.

    passed=None marks an informational entry (recorded constants, known
    reference discrepancies); such entries do not count against a report's
    overall pass/fail.
    """

    name: str
    measured: float
    expected: float | None = None
    tolerance: float | None = None
    passed: bool | None = None
    detail: str = ""

    @classmethod
    def against(cls, name, measured, expected, tolerance, detail="", relative=False):
        measured = _scalar(measured)
        expected = _scalar(expected)
        err = abs(measured - expected)
        if relative and expected:
            err /= abs(expected)
        return cls(name, measured, expected, tolerance, bool(err <= tolerance), detail)

    @classmethod
    def bound(cls, name, measured, bound, detail=""):
        """measured <= bound, one-sided."""
        measured = _scalar(measured)
        bound = _scalar(bound)
        return cls(name, measured, bound, None, bool(measured <= bound), detail)

    @classmethod
    def residual(cls, name, measured, tolerance, detail=""):
        measured = _scalar(measured)
        return cls(name, measured, 0.0, tolerance, bool(measured <= tolerance), detail)

    @classmethod
    def info(cls, name, measured, detail=""):
        return cls(name, _scalar(measured), None, None, None, detail)


@dataclass
class CheckReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, check):
        self.checks.append(check)
        return check

    def extend(self, other):
        self.checks.extend(other.checks)

    def __iter__(self):
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def all_pass(self):
        graded = [c for c in self.checks if c.passed is not None]
        return bool(graded) and all(c.passed for c in graded)

    @property
    def failures(self):
        return [c for c in self.checks if c.passed is False]

    def to_dicts(self):
        """CLI report schema: one dict per check."""
        return [
            {
                "name": c.name,
                "detail": c.detail,
                "measured": c.measured,
                "expected": c.expected,
                "tolerance": c.tolerance,
                "pass": c.passed,
            }
            for c in self.checks
        ]

    def to_bound_dicts(self):
        """Operator-calculus report schema: {check, measured, bound, tol, pass}."""
        return [
            {
                "check": c.name,
                "measured": c.measured,
                "bound": c.expected,
                "tol": c.tolerance,
                "pass": c.passed,
            }
            for c in self.checks
        ]


def write_json_atomic(path, obj):
    """Serialize deterministically (sorted keys, no timestamps) via temp+rename."""
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path, header, columns):
    """Two-or-more column CSV, comma separated, 17 significant digits."""
    cols = [np.asarray(c) for c in columns]
    rows = len(cols[0])
    lines = [",".join(header)]
    for i in range(rows):
        lines.append(",".join(f"{c[i]:.17g}" for c in cols))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
