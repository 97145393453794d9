r"""Experiment reports with reproducible, byte-stable serialization.

Every experiment in the package produces an ExperimentReport: named
scalar results, boolean pass/fail flags, a text log, and the inputs
that produced them (model hash, grid sizes, seeds, tolerances).  The
JSON encoding is canonical - sorted keys, fixed separators, shortest
round-trip floats, no timestamps - so identical runs produce identical
bytes, which is itself one of the checked guarantees.
"""

import json
import os
import tempfile
from dataclasses import dataclass, field

from . import __version__


# ---------------------------------------------------------------------------
# Canonical JSON
# ---------------------------------------------------------------------------

def _plain(obj):
    r"""Recursively convert numpy scalars/arrays and tuples to JSON types."""
    if hasattr(obj, "item") and getattr(obj, "shape", None) == ():
        return obj.item()
    if hasattr(obj, "tolist"):
        return _plain(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (str, int, bool)) or obj is None:
        return obj
    if isinstance(obj, float):
        if obj != obj or obj in (float("inf"), float("-inf")):
            return repr(obj)          # JSON has no IEEE specials
        return obj
    return str(obj)


def canonical_json(obj) -> str:
    return json.dumps(_plain(obj), sort_keys=True, separators=(",", ":"))


def atomic_write_bytes(path, payload: bytes):
    r"""Write via a temp file + rename so readers never see torn output."""
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path, columns, rows):
    r"""CSV with repr-formatted floats (shortest round-trip, stable)."""
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(
            repr(float(x)) if isinstance(x, float) or hasattr(x, "item")
            else str(x) for x in row))
    atomic_write_bytes(path, ("\n".join(lines) + "\n").encode())


# ---------------------------------------------------------------------------
# ExperimentReport
# ---------------------------------------------------------------------------

@dataclass
class ExperimentReport:
    r"""Outcome of one experiment: scalars, pass/fail flags and a log."""

    name: str
    inputs: dict = field(default_factory=dict)
    scalars: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    log: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(bool(v) for v in self.flags.values())

    def note(self, fmt, *args):
        self.log.append(fmt % args if args else fmt)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "tool_version": __version__,
            "inputs": _plain(self.inputs),
            "scalars": _plain(self.scalars),
            "flags": {k: bool(v) for k, v in self.flags.items()},
            "passed": self.passed,
            "log": list(self.log),
        }

    def to_json(self) -> str:
        return canonical_json(self.as_dict())

    def write(self, path):
        atomic_write_bytes(path, (self.to_json() + "\n").encode())

    def summary_line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        bad = [k for k, v in self.flags.items() if not v]
        tail = "" if not bad else " (" + ", ".join(sorted(bad)) + ")"
        return "[%s] %s%s" % (verdict, self.name, tail)
