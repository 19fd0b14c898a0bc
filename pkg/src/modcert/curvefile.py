"""Curve input files.

A curve file is a JSON object:

    {
      "field": {"type": "rational"}
               | {"type": "real_quadratic", "d": 13}
               | {"type": "external", "label": "my-field"},
      "a": [0, 1, 1, "-1", {"x": "1", "y": "2"}],
      "assume": ["reducible-5"],
      "local_data": [ ... ]          # external fields only
    }

Coefficient entries are integers, exact rationals written as strings
("num/den"), or -- over a real quadratic field -- {"x": ..., "y": ...}
pairs meaning x + y*sqrt(d).  Floats are rejected: every computation
downstream is exact.

External fields carry no coefficients; instead each "local_data" entry
declares the minimal local invariants at one place:

    {"p": 7, "e": 1, "f": 1, "kodaira": "IV", "v_disc": 4, "v_c4": 2,
     "v_c6": 2, "v_j": 2, "j_residue": null,
     "reduction": "AdditivePotGoodOrdinary"}

"inf" is the valuation of zero.  For f = 2, j_residue may be a pair
[a, b] over the basis 1, w of the residue field, w^2 the smallest
nonresidue mod p.  Declared entries are cross-checked (v_j = 3 v_c4 -
v_disc, minimality, and the reduction class is recomputed); everything
that survives enters certificates with status "assumed".
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .certify import ExternalCurveData
from .exact import INF, PrimeSlot, QuadElem, is_squarefree
from .localred import KodairaType, LocalInvariants, ReductionClass, classify_reduction
from .model import BaseField, Curve

_RAT_RE = re.compile(r"[+-]?\d+(/[1-9]\d*)?\Z")
_KODAIRA_RE = re.compile(r"(IV|III|II|I)(\d*)(\*?)\Z")

ASSUME_FLAGS = frozenset(
    {
        "reducible-5",
        "reducible-7",
        "irreducible-5",
        "irreducible-7",
        "totally-real",
        "abelian",
        "unramified-3",
        "unramified-5",
        "unramified-7",
        "zeta-disjoint-7",
        "no-sqrt5",
    }
)

LOCAL_KEYS = {
    "p", "e", "f", "kodaira", "v_disc", "v_c4", "v_c6", "v_j",
    "j_residue", "reduction",
}


class CurveFileError(ValueError):
    pass


@dataclass
class CurveFile:
    source: object  # Curve | ExternalCurveData
    assume: tuple


def _fail(where: str, message: str):
    raise CurveFileError(f"{where}: {message}")


def _parse_rat(raw, where: str) -> Fraction:
    if isinstance(raw, bool):
        _fail(where, "booleans are not numbers")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, float):
        _fail(where, "floats are not exact; write the value as a string 'num/den'")
    if isinstance(raw, str):
        if not _RAT_RE.match(raw):
            _fail(where, f"not an exact rational literal: {raw!r}")
        return Fraction(raw)
    _fail(where, f"cannot read a rational number from {type(raw).__name__}")


def _parse_entry(raw, field: BaseField, where: str):
    if isinstance(raw, dict):
        if field.kind != "quadratic":
            _fail(where, "coordinate pairs need a real_quadratic field")
        if set(raw) != {"x", "y"}:
            _fail(where, "a coordinate pair has exactly the keys 'x' and 'y'")
        return QuadElem(
            _parse_rat(raw["x"], where + ".x"),
            _parse_rat(raw["y"], where + ".y"),
            field.d,
        )
    return _parse_rat(raw, where)


def _parse_field(raw) -> BaseField:
    if not isinstance(raw, dict):
        _fail("field", "must be an object")
    kind = raw.get("type")
    if kind == "rational":
        extra = set(raw) - {"type"}
        if extra:
            _fail("field", f"unknown key {sorted(extra)[0]!r}")
        return BaseField.rational()
    if kind == "real_quadratic":
        extra = set(raw) - {"type", "d"}
        if extra:
            _fail("field", f"unknown key {sorted(extra)[0]!r}")
        d = raw.get("d")
        if not isinstance(d, int) or isinstance(d, bool) or d <= 1 or not is_squarefree(d):
            _fail("field.d", "must be a squarefree integer > 1")
        return BaseField.quadratic(d)
    if kind == "external":
        extra = set(raw) - {"type", "label"}
        if extra:
            _fail("field", f"unknown key {sorted(extra)[0]!r}")
        label = raw.get("label")
        if not isinstance(label, str) or not label:
            _fail("field.label", "must be a nonempty string")
        return BaseField.external(label)
    _fail("field.type", f"unknown field type {kind!r}")


def _parse_val(raw, where: str, allow_inf: bool = True):
    if raw == "inf":
        if not allow_inf:
            _fail(where, "must be a finite valuation")
        return INF
    if isinstance(raw, int) and not isinstance(raw, bool):
        if raw < 0:
            _fail(where, "valuations of integral local data are non-negative")
        return raw
    _fail(where, f"expected an integer valuation or 'inf', got {raw!r}")


def parse_kodaira(symbol, where: str = "kodaira") -> KodairaType:
    if not isinstance(symbol, str):
        _fail(where, "must be a string Kodaira symbol")
    m = _KODAIRA_RE.match(symbol)
    if not m:
        _fail(where, f"unrecognized Kodaira symbol {symbol!r}")
    series, digits, star = m.groups()
    if star:
        series += "*"
    if digits and not series.startswith("I"):
        _fail(where, f"unrecognized Kodaira symbol {symbol!r}")
    if series in ("I", "I*") and not digits:
        _fail(where, f"the {series} series needs an index, e.g. {series.replace('*', '')}0{'*' if '*' in series else ''}")
    try:
        return KodairaType(series, int(digits) if digits else 0)
    except ValueError as exc:
        _fail(where, str(exc))


def _parse_local_entry(raw, idx: int, index_by_p: dict) -> LocalInvariants:
    where = f"local_data[{idx}]"
    if not isinstance(raw, dict):
        _fail(where, "must be an object")
    extra = set(raw) - LOCAL_KEYS
    if extra:
        _fail(where, f"unknown key {sorted(extra)[0]!r}")
    missing = LOCAL_KEYS - {"j_residue"} - set(raw)
    if missing:
        _fail(where, f"missing key {sorted(missing)[0]!r}")

    p = raw["p"]
    if not isinstance(p, int) or isinstance(p, bool) or p < 2:
        _fail(where + ".p", "must be a prime number >= 2")
    e, f = raw["e"], raw["f"]
    if e not in (1, 2) or f not in (1, 2):
        _fail(where, "ramification and residue degrees must be 1 or 2")

    kod = parse_kodaira(raw["kodaira"], where + ".kodaira")
    v_disc = _parse_val(raw["v_disc"], where + ".v_disc", allow_inf=False)
    v_c4 = _parse_val(raw["v_c4"], where + ".v_c4")
    v_c6 = _parse_val(raw["v_c6"], where + ".v_c6")
    v_j = raw["v_j"]
    if v_j == "inf":
        v_j = INF
    elif not isinstance(v_j, int) or isinstance(v_j, bool):
        _fail(where + ".v_j", f"expected an integer or 'inf', got {v_j!r}")

    j_residue = raw.get("j_residue")
    if j_residue is not None:
        if isinstance(j_residue, bool):
            _fail(where + ".j_residue", "must be an integer or a pair")
        elif isinstance(j_residue, int):
            j_residue = j_residue % p if f == 1 else (j_residue % p, 0)
        elif isinstance(j_residue, list) and len(j_residue) == 2 and all(
            isinstance(c, int) and not isinstance(c, bool) for c in j_residue
        ):
            if f != 2:
                _fail(where + ".j_residue", "pairs describe degree-2 residue fields only")
            j_residue = (j_residue[0] % p, j_residue[1] % p)
        else:
            _fail(where + ".j_residue", "must be an integer or a pair [a, b]")

    try:
        reduction = ReductionClass(raw["reduction"])
    except ValueError:
        _fail(
            where + ".reduction",
            f"unknown reduction class {raw['reduction']!r}; one of "
            + ", ".join(sorted(c.value for c in ReductionClass)),
        )

    # cross-checks: the declared numbers must at least cohere
    expected_vj = 3 * v_c4 - v_disc if v_c4 != INF else INF
    if v_j != expected_vj:
        _fail(where, f"inconsistent local data: v_j must equal 3*v_c4 - v_disc = {expected_vj}")
    if v_disc >= 12 and v_c4 >= 4:  # INF compares greater, as it should
        _fail(where, "inconsistent local data: the model is not minimal (v_disc >= 12 and v_c4 >= 4)")
    if v_j == 0 and j_residue is None:
        _fail(where, "inconsistent local data: v_j = 0 requires j_residue")
    try:
        recomputed = classify_reduction(kod, p, f, v_j, j_residue)
    except ValueError as exc:
        _fail(where, f"inconsistent local data: {exc}")
    if recomputed is not reduction:
        _fail(
            where,
            "inconsistent local data: declared reduction class "
            f"{reduction.value!r} but the invariants give {recomputed.value!r}",
        )

    index = index_by_p.setdefault(p, 0)
    index_by_p[p] = index + 1
    slot = PrimeSlot(p=p, e=e, f=f, kind="external", index=index)
    return LocalInvariants(
        slot=slot,
        kodaira=kod,
        v_disc=v_disc,
        v_c4=v_c4,
        v_c6=v_c6,
        v_j=v_j,
        j_residue=j_residue,
        reduction=reduction,
    )


def parse_curve_payload(payload) -> CurveFile:
    if not isinstance(payload, dict):
        _fail("curve file", "top level must be a JSON object")
    extra = set(payload) - {"field", "a", "assume", "local_data"}
    if extra:
        _fail("curve file", f"unknown key {sorted(extra)[0]!r}")
    if "field" not in payload:
        _fail("curve file", "missing key 'field'")
    field = _parse_field(payload["field"])

    assume = payload.get("assume", [])
    if not isinstance(assume, list) or not all(isinstance(s, str) for s in assume):
        _fail("assume", "must be a list of strings")
    for flag in assume:
        if flag not in ASSUME_FLAGS:
            _fail("assume", f"unknown flag {flag!r}; known: " + ", ".join(sorted(ASSUME_FLAGS)))

    if field.kind == "external":
        if "a" in payload:
            _fail("a", "external fields carry local_data, not coefficients")
        raw_entries = payload.get("local_data")
        if not isinstance(raw_entries, list) or not raw_entries:
            _fail("local_data", "external fields need a nonempty local_data list")
        index_by_p: dict = {}
        entries = [
            _parse_local_entry(raw, i, index_by_p) for i, raw in enumerate(raw_entries)
        ]
        data = ExternalCurveData(
            label=field.label, flags=tuple(assume), entries=entries
        )
        return CurveFile(source=data, assume=tuple(assume))

    if "local_data" in payload:
        _fail("local_data", "only external fields declare local data")
    raw_a = payload.get("a")
    if not isinstance(raw_a, list) or len(raw_a) != 5:
        _fail("a", "expected exactly five coefficients [a1, a2, a3, a4, a6]")
    coeffs = [_parse_entry(raw, field, f"a[{i}]") for i, raw in enumerate(raw_a)]
    try:
        curve = Curve(coeffs, field=field)
    except ValueError as exc:
        _fail("a", str(exc))
    return CurveFile(source=curve, assume=tuple(assume))


def parse_curve_file(text: str) -> CurveFile:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CurveFileError(f"curve file: invalid JSON ({exc})") from None
    return parse_curve_payload(payload)


def load_curve_file(path) -> CurveFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_curve_file(fh.read())
