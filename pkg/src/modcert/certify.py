"""The certifying decision pipeline.

`certify` takes a curve over Q or an admissible real quadratic field (or
externally supplied local data) and produces a machine-checkable
`Certificate`: a verdict plus the ordered list of applied results, each
with its hypotheses marked "verified" (recomputed here, with evidence)
or "assumed" (taken from the input, and echoed in the certificate's
assumptions array).  A certificate never reaches the verdict "Modular"
through a hypothesis that is neither verified nor assumed.

Decision order:

  1. j = 0: complex multiplication, modular by base change.
  2. mod-7 irreducible: either some place above 7 is semistable, or the
     additive places are analyzed one by one -- a single place with a
     large-image inertia bound suffices; if every place is exceptional
     (necessarily potentially ordinary), nearly ordinary lifting closes
     the gap.
  3. mod-5 irreducible and sqrt(5) outside the field: direct lifting.
  4. both reducible: a quadratic twist that is semistable at every place
     above 3 is searched for and re-verified, and modularity transfers
     back through twist invariance.
  5. anything else: Inconclusive, with the search bounds on record.

The `local_modularity_analysis` report exposes step 2's per-place
classification directly, including the two exceptional configurations,
without folding them into a global verdict.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field as dc_field

from .exact import INF, PrimeSlot, QuadElem
from .galois import IrreducibilityStatus, irreducibility_status
from .grouptheory import audit_borel, exceptional_threshold
from .inertia import InertiaDescriptor, kraus_descriptor
from .localred import KodairaType, LocalInvariants, ReductionClass, classify_reduction, tate
from .model import BaseField, Curve, elem_json, quadratic_twist

DEFAULT_L_BOUND = 1000

CITATIONS = {
    "tate-algorithm": (
        "Tate's algorithm for minimal models and reduction types "
        "(Silverman, Advanced Topics in the Arithmetic of Elliptic Curves, IV.9)"
    ),
    "kraus-inertia": (
        "Kraus, 'Sur le defaut de semi-stabilite des courbes elliptiques "
        "a reduction additive': the inertia action on p-torsion at an "
        "absolutely unramified additive place"
    ),
    "pgl2-subgroups": (
        "Dickson's classification of subgroups of PGL2(F_p): a cyclic "
        "subgroup of large enough order lies in no exceptional maximal subgroup"
    ),
    "fls-modularity-7": (
        "Freitas-Le Hung-Siksek, Theorem 7: an elliptic curve over a totally "
        "real field is modular once its mod-7 representation is irreducible "
        "and some completion above 7 is semistable"
    ),
    "fls-image-lifting": (
        "Freitas-Le Hung-Siksek, Theorems 3-4 and Proposition 9.1: "
        "modularity lifting once the mod-p image is large"
    ),
    "thorne-sqrt5": (
        "Thorne, Theorem 7.6: an elliptic curve over a totally real field "
        "not containing sqrt(5) is modular once its mod-5 representation "
        "is irreducible"
    ),
    "skinner-wiles-ordinary": (
        "Skinner-Wiles: modularity lifting for nearly ordinary "
        "representations, applied at 7 when every place above 7 is "
        "potentially ordinary"
    ),
    "freitas-twist": (
        "Freitas, Theorem 6.3: with both mod-5 and mod-7 representations "
        "reducible, a quadratic twist semistable at every place above 3 "
        "is modular"
    ),
    "twist-invariance": "invariance of modularity under quadratic twist",
    "cm-base-change": (
        "modularity of CM elliptic curves over totally real abelian fields "
        "via Hecke characters and solvable base change"
    ),
    "borel-gcd-audit": (
        "exhaustive count of the Borel subgroups of GL2(F_5) and GL2(F_7): "
        "gcd of their orders is 4 and B(F_7) has no element of order 4, so "
        "a simultaneously reducible level structure has Klein 2-part"
    ),
    "engine-diagnostic": "decision engine diagnostic (no theorem applied)",
}


# ---------------------------------------------------------------------------
# Certificate data model


@dataclass
class HypothesisRecord:
    description: str
    status: str  # "verified" | "assumed"
    evidence: object = None

    def as_dict(self) -> dict:
        return {
            "description": self.description,
            "status": self.status,
            "evidence": self.evidence,
        }


@dataclass
class CertStep:
    claim: str
    citation: str
    hypotheses: list

    def as_dict(self) -> dict:
        return {
            "claim": self.claim,
            "citation": self.citation,
            "hypotheses": [h.as_dict() for h in self.hypotheses],
        }


@dataclass
class Certificate:
    curve: dict
    field: dict
    verdict: str
    steps: list

    @property
    def assumptions(self) -> list:
        seen = []
        for step in self.steps:
            for h in step.hypotheses:
                if h.status == "assumed" and h.description not in seen:
                    seen.append(h.description)
        return sorted(seen)

    def to_payload(self) -> dict:
        return {
            "curve": self.curve,
            "field": self.field,
            "verdict": self.verdict,
            "steps": [s.as_dict() for s in self.steps],
            "assumptions": self.assumptions,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), indent=2, sort_keys=True) + "\n"


def verified(description: str, evidence=None) -> HypothesisRecord:
    return HypothesisRecord(description, "verified", evidence)


def assumed(description: str, evidence=None) -> HypothesisRecord:
    return HypothesisRecord(description, "assumed", evidence)


def status_hypothesis(st: IrreducibilityStatus) -> HypothesisRecord:
    desc = f"the mod-{st.p} representation is {st.kind}"
    make = assumed if st.assumed else verified
    return make(desc, st.as_dict())


# ---------------------------------------------------------------------------
# Input echoes


def field_json(field: BaseField) -> dict:
    if field.kind == "rational":
        return {"type": "rational"}
    if field.kind == "quadratic":
        return {"type": "real_quadratic", "d": field.d}
    return {"type": "external", "label": field.label}


def curve_json(curve: Curve) -> dict:
    return {"a": [elem_json(c) for c in curve.a_invariants]}


@dataclass
class ExternalCurveData:
    """Local data declared in an input file instead of computed from a
    model; everything taken from here enters certificates as assumed."""

    label: str
    flags: tuple
    entries: list  # list[LocalInvariants] with external slots

    @property
    def field(self) -> BaseField:
        return BaseField.external(self.label)

    def slots_over(self, p: int):
        return [inv for inv in self.entries if inv.p == p]

    def echo(self) -> dict:
        return {"local_data": [inv.as_dict() for inv in self.entries]}


EXTERNAL_BASE_FLAGS = (
    "totally-real",
    "abelian",
    "unramified-3",
    "unramified-5",
    "unramified-7",
)


# ---------------------------------------------------------------------------
# Field admissibility


def field_hypotheses(field: BaseField):
    """(hypotheses, None) for an admissible concrete field, else
    (partial, reason)."""
    if field.kind == "rational":
        return [
            verified(
                "the base field Q is totally real, abelian and unramified at 3, 5, 7",
                {"field": "Q"},
            ),
            verified("sqrt(5) is not in the base field", {"field": "Q"}),
            verified(
                "the base field meets Q(zeta_5) and Q(zeta_7) in Q",
                "no nontrivial subfield at all",
            ),
        ], None
    if field.kind == "quadratic":
        d = field.d
        if d == 5:
            return [], "unsupported field: ramified at 5, sqrt(5) in K"
        for bad in (3, 5, 7):
            if d % bad == 0:
                return [], f"unsupported field: ramified at {bad}"
        return [
            verified(
                f"K = Q(sqrt {d}) is real quadratic, hence totally real and abelian",
                {"d": d},
            ),
            verified(
                "K is unramified at 3, 5 and 7",
                {"d": d, "gcd(d, 105)": 1},
            ),
            verified("sqrt(5) is not in K", {"d": d}),
            verified(
                "K meets Q(zeta_5) and Q(zeta_7) in Q",
                "their quadratic subfields are Q(sqrt 5) and Q(sqrt -7), neither real quadratic of discriminant d",
            ),
        ], None
    raise ValueError("external fields are handled through their declared flags")


def external_field_hypotheses(flags):
    missing = [f for f in EXTERNAL_BASE_FLAGS if f not in flags]
    if missing:
        return [], f"missing field assumption '{missing[0]}' for external base field"
    hyps = [
        assumed(f"external base field is {flag}", "declared in input file")
        for flag in EXTERNAL_BASE_FLAGS
    ]
    return hyps, None


# ---------------------------------------------------------------------------
# Per-place analysis at an additive place


def slot_title(slot: PrimeSlot) -> str:
    if slot.kind == "rational":
        return f"p={slot.p}"
    if slot.kind == "split":
        return f"p={slot.p} (split slot {slot.index})"
    if slot.kind == "inert":
        return f"p={slot.p} (inert)"
    if slot.kind == "ramified":
        return f"p={slot.p} (ramified)"
    return f"p={slot.p} (external slot {slot.index})"


@dataclass
class LocalAnalysis:
    label: str
    invariants: LocalInvariants
    descriptor: InertiaDescriptor | None
    outcome: str  # "chain" | "exceptional-1" | "exceptional-2" | "semistable" | "cm"
    case: int | None
    steps: list

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "invariants": self.invariants.as_dict(),
            "descriptor": self.descriptor.as_dict() if self.descriptor else None,
            "outcome": self.outcome,
            "case": self.case,
            "steps": [s.as_dict() for s in self.steps],
        }


def analyze_additive_place(
    p: int,
    inv: LocalInvariants,
    irred_hyp: HypothesisRecord | None,
    data_status: str = "verified",
    zeta_hyp: HypothesisRecord | None = None,
) -> LocalAnalysis:
    """Classify one additive place above p: either a modularity chain
    through the inertia bound, or one of the two exceptional cases."""
    label = slot_title(inv.slot)
    mk = verified if data_status == "verified" else assumed
    data_hyp = mk(f"local invariants at {label}", inv.as_dict())

    if inv.v_c4 == INF:
        # c4 = 0 forces j = 0: the CM route, not an inertia argument
        step = CertStep(
            claim=f"j = 0 at {label}: complex multiplication, modular by base change",
            citation=CITATIONS["cm-base-change"],
            hypotheses=[data_hyp],
        )
        return LocalAnalysis(label, inv, None, "cm", None, [step])

    desc = kraus_descriptor(
        p, inv.reduction, inv.v_disc, v_A=inv.v_c4, v_B=inv.v_c6, e=inv.e
    )
    unram_hyp = verified(f"the place {label} is absolutely unramified", {"e": inv.e})

    if desc.contains_p_group:
        steps = [
            CertStep(
                claim=(
                    f"inertia at {label} is wild: the image contains the full "
                    f"{p}-Sylow subgroup, hence lies in no exceptional subgroup"
                ),
                citation=CITATIONS["kraus-inertia"],
                hypotheses=[data_hyp, unram_hyp, verified("wild valuation pattern", desc.as_dict())],
            )
        ]
        steps.append(_lifting_step(p, label, irred_hyp, zeta_hyp))
        return LocalAnalysis(label, inv, desc, "chain", None, steps)

    threshold = exceptional_threshold(p)
    inertia_step = CertStep(
        claim=(
            f"inertia at {label} acts through a tame character; its projective "
            f"image is cyclic of order {desc.bound}"
        ),
        citation=CITATIONS["kraus-inertia"],
        hypotheses=[data_hyp, unram_hyp, verified("inertia descriptor (matrix-certified bound)", desc.as_dict())],
    )

    if desc.bound >= threshold:
        exclusion = CertStep(
            claim=(
                f"no exceptional projective image at {label}: cyclic bound "
                f"{desc.bound} meets the threshold {threshold}"
            ),
            citation=CITATIONS["pgl2-subgroups"],
            hypotheses=[
                verified(
                    f"projective inertia bound {desc.bound} >= {threshold}",
                    {"bound": desc.bound, "threshold": threshold},
                )
            ],
        )
        steps = [inertia_step, exclusion, _lifting_step(p, label, irred_hyp, zeta_hyp)]
        return LocalAnalysis(label, inv, desc, "chain", None, steps)

    # exceptional configuration
    if p == 5 and inv.reduction is ReductionClass.ADDITIVE_POT_GOOD_SUPERSINGULAR:
        case = 1
        congruence = 1
        flavor = "supersingular"
    elif p == 7 and inv.reduction is ReductionClass.ADDITIVE_POT_GOOD_ORDINARY:
        case = 2
        congruence = 2
        flavor = "ordinary"
    else:
        raise ValueError(
            "inconsistent local data: sub-threshold inertia bound in an "
            f"impossible configuration ({p}, {inv.reduction.value})"
        )
    if inv.v_j % 3 != congruence:
        raise ValueError(
            "inconsistent local data: exceptional case %d needs v(j) == %d mod 3"
            % (case, congruence)
        )
    marker = CertStep(
        claim=(
            f"exceptional case {case} at {label}: tame bound {desc.bound} is "
            f"below the threshold {threshold}"
        ),
        citation=CITATIONS["pgl2-subgroups"],
        hypotheses=[
            data_hyp,
            verified("inertia descriptor (matrix-certified bound)", desc.as_dict()),
            verified(
                f"v(j) = {inv.v_j} is {congruence} mod 3",
                {"v_j": inv.v_j, "mod_3": inv.v_j % 3},
            ),
            verified(
                f"potentially good {flavor} reduction",
                {"reduction": inv.reduction.value},
            ),
        ],
    )
    return LocalAnalysis(label, inv, desc, f"exceptional-{case}", case, [inertia_step, marker])


def _lifting_step(p, label, irred_hyp, zeta_hyp):
    hyps = []
    if irred_hyp is not None:
        hyps.append(irred_hyp)
    if zeta_hyp is not None:
        hyps.append(zeta_hyp)
    return CertStep(
        claim=f"modular: the mod-{p} image is large (place {label}) and lifting applies",
        citation=CITATIONS["fls-image-lifting"],
        hypotheses=hyps,
    )


# ---------------------------------------------------------------------------
# The local report (CLI `local`)


@dataclass
class LocalReport:
    p: int
    curve: dict
    field: dict
    irreducibility: IrreducibilityStatus | None
    entries: list
    verdict: str

    def to_payload(self) -> dict:
        return {
            "prime": self.p,
            "curve": self.curve,
            "field": self.field,
            "irreducibility": self.irreducibility.as_dict() if self.irreducibility else None,
            "entries": [e.as_dict() for e in self.entries],
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), indent=2, sort_keys=True) + "\n"


def _semistable_analysis(inv: LocalInvariants) -> LocalAnalysis:
    label = slot_title(inv.slot)
    step = CertStep(
        claim=f"the curve is semistable at {label}; no inertia analysis is needed",
        citation=CITATIONS["tate-algorithm"],
        hypotheses=[verified(f"local invariants at {label}", inv.as_dict())],
    )
    return LocalAnalysis(label, inv, None, "semistable", None, [step])


def local_modularity_analysis(source, p: int, *, assume=(), l_bound=None) -> LocalReport:
    """Per-place report above p in {5, 7}: reduction data, inertia
    descriptors, and for each additive place either a modularity chain
    or its exceptional case."""
    if p not in (5, 7):
        raise ValueError("local analysis is computed for p in {5, 7}")
    l_bound = _resolve_l_bound(l_bound)
    flag = _assumption_for(assume, p)

    if isinstance(source, ExternalCurveData):
        st = (
            irreducibility_status(None, p, assume=flag) if flag else None
        )
        irred_hyp = status_hypothesis(st) if st and st.kind == "irreducible" else None
        entries = []
        for inv in source.slots_over(p):
            if inv.is_semistable:
                entries.append(_semistable_analysis(inv))
            else:
                entries.append(
                    analyze_additive_place(p, inv, irred_hyp, data_status="assumed")
                )
        return LocalReport(
            p, source.echo(), field_json(source.field), st, entries,
            _report_verdict(entries),
        )

    curve: Curve = source
    st = irreducibility_status(curve, p, l_bound=l_bound, assume=flag)
    irred_hyp = status_hypothesis(st) if st.kind == "irreducible" else None
    entries = []
    for slot in curve.field.slots(p):
        _, inv = tate(curve, slot)
        if inv.is_semistable:
            entries.append(_semistable_analysis(inv))
        else:
            entries.append(analyze_additive_place(p, inv, irred_hyp))
    return LocalReport(
        p, curve_json(curve), field_json(curve.field), st, entries,
        _report_verdict(entries),
    )


def _report_verdict(entries) -> str:
    outcomes = {e.outcome for e in entries}
    if "exceptional-1" in outcomes:
        return "ExceptionalCase1"
    if "exceptional-2" in outcomes:
        return "ExceptionalCase2"
    if "cm" in outcomes:
        return "CM"
    if outcomes <= {"semistable"}:
        return "Semistable"
    return "NonExceptional"


# ---------------------------------------------------------------------------
# Route: mod-7 irreducible


def certify_at_7(source, status7: IrreducibilityStatus, *, field_hyps=None, zeta_hyp=None):
    """Steps concluding modularity from an irreducible mod-7
    representation.  `source` is a Curve or ExternalCurveData.  Returns
    (steps, verdict): verdict is "Modular" unless external data is
    missing places above 7."""
    if status7.kind != "irreducible":
        raise ValueError("certify_at_7 needs an irreducible mod-7 status")
    irred_hyp = status_hypothesis(status7)
    field_hyps = field_hyps or []

    external = isinstance(source, ExternalCurveData)
    if external:
        pairs = [(inv, "assumed") for inv in source.slots_over(7)]
        if not pairs:
            return [
                CertStep(
                    claim="no local data above 7 was supplied",
                    citation=CITATIONS["engine-diagnostic"],
                    hypotheses=[],
                )
            ], "Inconclusive"
    else:
        pairs = []
        for slot in source.field.slots(7):
            _, inv = tate(source, slot)
            pairs.append((inv, "verified"))

    survey = CertStep(
        claim="minimal local data at every place above 7",
        citation=CITATIONS["tate-algorithm"],
        hypotheses=[
            (verified if st == "verified" else assumed)(
                f"local invariants at {slot_title(inv.slot)}", inv.as_dict()
            )
            for inv, st in pairs
        ],
    )

    for inv, data_status in pairs:
        if inv.is_semistable:
            make = verified if data_status == "verified" else assumed
            conclude = CertStep(
                claim=(
                    "modular: the mod-7 representation is irreducible and the "
                    f"curve is semistable at {slot_title(inv.slot)}"
                ),
                citation=CITATIONS["fls-modularity-7"],
                hypotheses=[irred_hyp]
                + field_hyps
                + [
                    make(
                        f"semistable reduction at {slot_title(inv.slot)}",
                        inv.as_dict(),
                    )
                ],
            )
            return [survey, conclude], "Modular"

    analyses = [
        analyze_additive_place(7, inv, irred_hyp, data_status=st, zeta_hyp=zeta_hyp)
        for inv, st in pairs
    ]
    for a in analyses:
        if a.outcome in ("chain", "cm"):
            return [survey] + a.steps, "Modular"

    # every place above 7 is exceptional case 2: potentially ordinary
    steps = [survey]
    for a in analyses:
        steps.extend(a.steps)
    ordinary_hyps = [
        (verified if st == "verified" else assumed)(
            f"potentially ordinary reduction at {slot_title(inv.slot)}",
            inv.as_dict(),
        )
        for inv, st in pairs
    ]
    sw = CertStep(
        claim=(
            "modular: every place above 7 is potentially ordinary, so nearly "
            "ordinary lifting applies despite the small inertia bounds"
        ),
        citation=CITATIONS["skinner-wiles-ordinary"],
        hypotheses=[irred_hyp] + field_hyps + ordinary_hyps,
    )
    steps.append(sw)
    return steps, "Modular"


# ---------------------------------------------------------------------------
# Route: both representations reducible -- semistabilizing twist


def _small_split_uniformizers(fieldK: BaseField):
    s0, s1 = fieldK.slots(3)
    found = {}
    for y in range(1, 7):
        for x in range(-40, 41):
            el = QuadElem.of(x, y, fieldK.d)
            pattern = (s0.valuation(el), s1.valuation(el))
            if pattern in ((1, 0), (0, 1)) and pattern not in found:
                found[pattern] = el
            if len(found) == 2:
                return found[(1, 0)], found[(0, 1)]
    raise RuntimeError("no small uniformizers above 3 were found")


def twist_candidates(fieldK: BaseField):
    """Deterministic candidate list for a semistabilizing quadratic
    twist: units times products of uniformizers above 3."""
    if fieldK.kind == "rational":
        return [1, -1, 3, -3]
    slots3 = fieldK.slots(3)
    if len(slots3) == 1:
        return [1, -1, 3, -3]
    pi0, pi1 = _small_split_uniformizers(fieldK)
    out = [1, -1]
    for base in (pi0, pi1, pi0 * pi1):
        out.extend([base, -1 * base])
    return out


def find_semistabilizing_twist(curve: Curve):
    """(d, [(minimal model, invariants)] at every slot above 3) for the
    first candidate twist semistable above 3, or None."""
    slots3 = curve.field.slots(3)
    for d in twist_candidates(curve.field):
        twisted = quadratic_twist(curve, d)
        locals3 = []
        for slot in slots3:
            minimal, inv = tate(twisted, slot)
            if inv.kodaira.series != "I":
                locals3 = None
                break
            locals3.append((minimal, inv))
        if locals3 is not None:
            return d, locals3
    return None


def _twist_route(curve: Curve, s5, s7, field_hyps):
    audit = audit_borel()
    audit_step = CertStep(
        claim=(
            "both representations reducible: the simultaneous level structure "
            f"is constrained by the Borel audit (gcd = {audit.gcd_value}, "
            "order-4 part Klein)"
        ),
        citation=CITATIONS["borel-gcd-audit"],
        hypotheses=[verified("Borel subgroup audit", audit.as_dict())],
    )
    found = find_semistabilizing_twist(curve)
    if found is None:
        diag = CertStep(
            claim="no semistabilizing twist among the candidate units and uniformizers above 3",
            citation=CITATIONS["engine-diagnostic"],
            hypotheses=[
                verified(
                    "candidates searched",
                    [elem_json(curve.field.coerce(c)) for c in twist_candidates(curve.field)],
                )
            ],
        )
        return [audit_step, diag], "Inconclusive"
    d, locals3 = found
    twist_step = CertStep(
        claim=f"the quadratic twist by {elem_json(curve.field.coerce(d))} is semistable at every place above 3",
        citation=CITATIONS["freitas-twist"],
        hypotheses=[status_hypothesis(s5), status_hypothesis(s7)]
        + field_hyps
        + [
            verified(
                f"twisted curve has multiplicative-or-good type {inv.kodaira.symbol} at {slot_title(inv.slot)}",
                inv.as_dict(),
            )
            for _, inv in locals3
        ],
    )
    transfer = CertStep(
        claim="modular: modularity of the semistable twist transfers back",
        citation=CITATIONS["twist-invariance"],
        hypotheses=[
            verified(
                "the curve and its twist differ by a quadratic twist",
                {"d": elem_json(curve.field.coerce(d))},
            )
        ],
    )
    return [audit_step, twist_step, transfer], "Modular"


# ---------------------------------------------------------------------------
# Main entry


def _resolve_l_bound(l_bound):
    if l_bound is not None:
        return int(l_bound)
    return int(os.environ.get("MODCERT_LBOUND", str(DEFAULT_L_BOUND)))


def _assumption_for(assume, p: int):
    flags = set(assume)
    red = f"reducible-{p}" in flags
    irr = f"irreducible-{p}" in flags
    if red and irr:
        raise ValueError(f"contradictory assumptions for mod-{p}")
    if red:
        return "reducible"
    if irr:
        return "irreducible"
    return None


def _diagnostic(claim: str, hyps=None) -> CertStep:
    return CertStep(claim, CITATIONS["engine-diagnostic"], hyps or [])


def certify(source, *, assume=(), l_bound=None) -> Certificate:
    """Decide modularity and emit the certificate."""
    l_bound = _resolve_l_bound(l_bound)
    if isinstance(source, ExternalCurveData):
        return _certify_external(source, extra_assume=assume)

    curve: Curve = source
    echo, fecho = curve_json(curve), field_json(curve.field)
    field_hyps, reason = field_hypotheses(curve.field)
    if reason is not None:
        return Certificate(
            echo, fecho, "Inconclusive", [_diagnostic(reason)]
        )

    if curve.j == 0:
        step = CertStep(
            claim="modular: j = 0, the curve has complex multiplication",
            citation=CITATIONS["cm-base-change"],
            hypotheses=field_hyps + [verified("j = 0", {"j": elem_json(curve.field.coerce(0))})],
        )
        return Certificate(echo, fecho, "Modular", [step])

    zeta7 = field_hyps[-1] if field_hyps else None  # cyclotomic disjointness
    s7 = irreducibility_status(curve, 7, l_bound=l_bound, assume=_assumption_for(assume, 7))
    if s7.kind == "irreducible":
        steps, verdict = certify_at_7(curve, s7, field_hyps=field_hyps, zeta_hyp=zeta7)
        return Certificate(echo, fecho, verdict, steps)

    s5 = irreducibility_status(curve, 5, l_bound=l_bound, assume=_assumption_for(assume, 5))
    if s5.kind == "irreducible":
        step = CertStep(
            claim="modular: the mod-5 representation is irreducible and sqrt(5) is not in the base field",
            citation=CITATIONS["thorne-sqrt5"],
            hypotheses=[status_hypothesis(s5)] + field_hyps,
        )
        return Certificate(echo, fecho, "Modular", [step])

    if s5.kind == "reducible" and s7.kind == "reducible":
        steps, verdict = _twist_route(curve, s5, s7, field_hyps)
        return Certificate(echo, fecho, verdict, steps)

    diag = _diagnostic(
        "no decision path applies within the search bounds",
        [status_hypothesis_raw(s5), status_hypothesis_raw(s7)],
    )
    return Certificate(echo, fecho, "Inconclusive", [diag])


def status_hypothesis_raw(st: IrreducibilityStatus) -> HypothesisRecord:
    """Status echo for diagnostics; 'unknown' is not an assumption."""
    return verified(
        f"the mod-{st.p} irreducibility search returned '{st.kind}'", st.as_dict()
    )


def _certify_external(data: ExternalCurveData, extra_assume=()) -> Certificate:
    flags = set(data.flags) | set(extra_assume)
    echo = data.echo()
    fecho = field_json(data.field)
    field_hyps, reason = external_field_hypotheses(flags)
    if reason is not None:
        return Certificate(echo, fecho, "Inconclusive", [_diagnostic(reason)])

    try:
        flag7 = _assumption_for(flags, 7)
        flag5 = _assumption_for(flags, 5)
    except ValueError as exc:
        return Certificate(echo, fecho, "Inconclusive", [_diagnostic(str(exc))])

    if flag7 == "irreducible":
        if "zeta-disjoint-7" not in flags:
            return Certificate(
                echo, fecho, "Inconclusive",
                [_diagnostic("missing field assumption 'zeta-disjoint-7' for the mod-7 route")],
            )
        zeta = assumed(
            "external base field meets Q(zeta_7) in Q", "declared in input file"
        )
        s7 = irreducibility_status(None, 7, assume="irreducible")
        steps, verdict = certify_at_7(
            data, s7, field_hyps=field_hyps + [zeta], zeta_hyp=zeta
        )
        return Certificate(echo, fecho, verdict, steps)

    if flag5 == "irreducible":
        if "no-sqrt5" not in flags:
            return Certificate(
                echo, fecho, "Inconclusive",
                [_diagnostic("missing field assumption 'no-sqrt5' for the mod-5 route")],
            )
        s5 = irreducibility_status(None, 5, assume="irreducible")
        step = CertStep(
            claim="modular: the mod-5 representation is irreducible and sqrt(5) is not in the base field",
            citation=CITATIONS["thorne-sqrt5"],
            hypotheses=[status_hypothesis(s5)]
            + field_hyps
            + [assumed("sqrt(5) is not in the external base field", "declared in input file")],
        )
        return Certificate(echo, fecho, "Modular", [step])

    if flag5 == "reducible" and flag7 == "reducible":
        return Certificate(
            echo, fecho, "Inconclusive",
            [_diagnostic(
                "twist verification is unavailable for externally supplied local data"
            )],
        )

    return Certificate(
        echo, fecho, "Inconclusive",
        [_diagnostic("externally supplied data fixes neither representation's irreducibility")],
    )
