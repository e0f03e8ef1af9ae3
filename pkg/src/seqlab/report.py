"""Deterministic analysis reports and plot-data emission.

Every CLI run produces one AnalysisReport serialized as JSON: the command
line, a digest of the input, the parameters, named high-precision scalars
(decimal strings with a digit count and an uncertainty spread), named
sequences, and any identifications.  Serialization is deterministic for
identical inputs and parameters; the report digest excludes timestamps so
reruns are diffable.  Plot data goes to RFC-4180-style CSV side files.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import mpmath


def decimal_str(value, digits: Optional[int] = None) -> str:
    """Full-precision decimal rendering; never a binary float repr."""
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        with mpmath.workdps(digits or mpmath.mp.dps):
            return mpmath.nstr(
                mpmath.mpf(value.numerator) / value.denominator,
                digits or mpmath.mp.dps,
            )
    with mpmath.workdps(max(mpmath.mp.dps, digits or 0) + 5):
        return mpmath.nstr(mpmath.mpf(value), digits or mpmath.mp.dps)


def scalar_entry(value, digits: int, spread=None) -> dict:
    entry = {"value": decimal_str(value, digits), "digits": digits}
    if spread is not None:
        entry["spread"] = decimal_str(spread, 5)
    return entry


def sequence_entry(offset: int, values, digits: Optional[int] = None) -> dict:
    return {
        "offset": offset,
        "values": [decimal_str(v, digits) for v in values],
    }


def identification_entry(kind: str, payload_str: str, certified_digits: int) -> dict:
    return {
        "kind": kind,
        "payload": payload_str,
        "certified_digits": certified_digits,
    }


def text_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class AnalysisReport:
    command: str
    input_digest: str
    parameters: dict = field(default_factory=dict)
    scalars: dict = field(default_factory=dict)
    sequences: dict = field(default_factory=dict)
    identifications: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    created_at: str = field(
        default_factory=lambda: _dt.datetime.now(_dt.timezone.utc).isoformat()
    )

    def _canonical_body(self) -> dict:
        return {
            "command": self.command,
            "input_digest": self.input_digest,
            "parameters": self.parameters,
            "scalars": self.scalars,
            "sequences": self.sequences,
            "identifications": self.identifications,
            "notes": self.notes,
        }

    def digest(self) -> str:
        """Digest of everything except timestamps (rerun-stable)."""
        body = json.dumps(self._canonical_body(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(body.encode("utf-8")).hexdigest()

    def to_json(self) -> str:
        doc = dict(self._canonical_body())
        doc["created_at"] = self.created_at
        doc["report_digest"] = self.digest()
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def emit_csv(points: Iterable[tuple], header: tuple[str, str] = ("x", "y")) -> str:
    """RFC-4180-style two-column CSV with full-precision decimal values.

    Non-finite points are dropped; an empty input yields just the header.
    """
    lines = [",".join(header)]
    for x, y in points:
        xs, ys = decimal_str(x), decimal_str(y)
        if _finite(x) and _finite(y):
            lines.append(f"{xs},{ys}")
    return "\n".join(lines) + "\n"


def _finite(v) -> bool:
    if isinstance(v, (int, Fraction)):
        return True
    return bool(mpmath.isfinite(mpmath.mpf(v)))
