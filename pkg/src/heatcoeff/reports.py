"""Report containers shared by the coefficient evaluators and the CLI.

A ``CoefficientReport`` records one asymptotic coefficient split into
labeled parts (per region / per boundary component) whose float sum *is*
the reported value; serialization is deterministic so repeated runs are
byte-identical.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Part:
    label: str
    value: float


@dataclass(frozen=True)
class CoefficientReport:
    """One coefficient ``a_n`` (or ``beta_n``) with its decomposition.

    ``normalization`` is the exponent ``e`` such that every part already
    includes the global factor ``(4 pi)^e``; ``value`` equals
    ``math.fsum(part values)`` by construction.
    """

    n: int
    value: float
    parts: tuple[Part, ...]
    normalization: float
    conjectural: bool = False

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "value": self.value,
            "normalization": self.normalization,
            "conjectural": self.conjectural,
            "parts": [{"label": p.label, "value": p.value} for p in self.parts],
        }

    def csv_rows(self) -> list[list[str]]:
        rows = []
        for p in self.parts:
            rows.append(
                [
                    str(self.n),
                    repr(self.value),
                    p.label,
                    repr(p.value),
                    repr(self.normalization),
                    str(self.conjectural).lower(),
                ]
            )
        if not self.parts:
            rows.append(
                [
                    str(self.n),
                    repr(self.value),
                    "total",
                    repr(self.value),
                    repr(self.normalization),
                    str(self.conjectural).lower(),
                ]
            )
        return rows


COEFF_CSV_HEADER = ["n", "value", "part", "part_value", "normalization", "conjectural"]


def make_report(
    n: int,
    normalization: float,
    parts: list[tuple[str, float]],
    conjectural: bool = False,
) -> CoefficientReport:
    """Assemble a report; the value is the fsum of the parts."""
    tup = tuple(Part(label, float(v)) for label, v in parts)
    return CoefficientReport(
        n=n,
        value=math.fsum(p.value for p in tup),
        parts=tup,
        normalization=float(normalization),
        conjectural=conjectural,
    )


def reports_to_json(reports: list[CoefficientReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True)


def reports_to_csv(reports: list[CoefficientReport]) -> str:
    lines = [",".join(COEFF_CSV_HEADER)]
    for r in reports:
        for row in r.csv_rows():
            lines.append(",".join(row))
    return "\n".join(lines) + "\n"
