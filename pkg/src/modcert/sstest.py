"""Semistabilization test: reduction at every place above 3, plus the
quadratic-twist search that the both-reducible certification route runs."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .certify import (
    ExternalCurveData,
    curve_json,
    field_json,
    find_semistabilizing_twist,
    slot_title,
    twist_candidates,
)
from .localred import tate
from .model import Curve, elem_json


@dataclass
class SemistabilizationReport:
    curve: dict
    field: dict
    entries: list  # reduction of the curve itself at each place above 3
    twist: dict | None
    verdict: str  # "AlreadySemistable" | "Semistabilized" | "NoTwistFound"

    def to_payload(self) -> dict:
        return {
            "curve": self.curve,
            "field": self.field,
            "entries": self.entries,
            "twist": self.twist,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), indent=2, sort_keys=True) + "\n"


def semistabilization_report(curve: Curve) -> SemistabilizationReport:
    if isinstance(curve, ExternalCurveData):
        raise ValueError(
            "the semistabilization test needs curve coefficients, not external local data"
        )
    entries = []
    already = True
    for slot in curve.field.slots(3):
        _, inv = tate(curve, slot)
        entries.append({"label": slot_title(slot), **inv.as_dict()})
        already = already and inv.kodaira.series == "I"

    found = find_semistabilizing_twist(curve)
    if found is None:
        twist = {
            "candidates": [
                elem_json(curve.field.coerce(c)) for c in twist_candidates(curve.field)
            ]
        }
        verdict = "NoTwistFound"
    else:
        d, locals3 = found
        twist = {
            "d": elem_json(curve.field.coerce(d)),
            "entries": [
                {"label": slot_title(inv.slot), **inv.as_dict()} for _, inv in locals3
            ],
        }
        verdict = "AlreadySemistable" if d == 1 else "Semistabilized"

    return SemistabilizationReport(
        curve_json(curve), field_json(curve.field), entries, twist, verdict
    )
