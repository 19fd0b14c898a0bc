"""Base fields and Weierstrass models.

Curves are long Weierstrass equations

    y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6

with exact coefficients over Q or a real quadratic field.  The module
provides the standard invariants (b2 .. b8, c4, c6, discriminant, j),
coordinate changes (u, r, s, t), quadratic twisting, and the short model
y^2 = x^3 + Ax + B available away from residue characteristics 2 and 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    FieldElem,
    PrimeSlot,
    QuadElem,
    SlotDomainError,
    is_squarefree,
    slots_above,
)


@dataclass(frozen=True)
class BaseField:
    """Q ("rational"), Q(sqrt d) ("quadratic"), or an externally
    described totally real field ("external", no arithmetic)."""

    kind: str
    d: int | None = None
    label: str | None = None

    @staticmethod
    def rational() -> "BaseField":
        return BaseField(kind="rational")

    @staticmethod
    def quadratic(d: int) -> "BaseField":
        if d <= 1 or not is_squarefree(d):
            raise ValueError("quadratic field parameter must be squarefree and > 1")
        return BaseField(kind="quadratic", d=d)

    @staticmethod
    def external(label: str) -> "BaseField":
        return BaseField(kind="external", label=label)

    @property
    def degree(self) -> int | None:
        return {"rational": 1, "quadratic": 2}.get(self.kind)

    def slots(self, p: int) -> list[PrimeSlot]:
        if self.kind == "external":
            raise SlotDomainError("external fields carry no slot arithmetic")
        return slots_above(self.d if self.kind == "quadratic" else None, p)

    def ramified_at(self, p: int) -> bool:
        """Ramification at an odd rational prime."""
        if self.kind == "external":
            raise SlotDomainError("ramification of an external field is not computable")
        return self.kind == "quadratic" and self.d % p == 0

    def contains_sqrt(self, n: int) -> bool:
        return self.kind == "quadratic" and self.d == n

    def coerce(self, x) -> FieldElem:
        if isinstance(x, QuadElem):
            if self.kind != "quadratic" or x.d != self.d:
                raise ValueError("element does not belong to this field")
            return x
        return Fraction(x)

    def describe(self) -> str:
        if self.kind == "rational":
            return "Q"
        if self.kind == "quadratic":
            return f"Q(sqrt{self.d})"
        return f"external:{self.label}"


class Curve:
    """A nonsingular long Weierstrass model over a base field."""

    def __init__(self, a, field: BaseField | None = None):
        a = list(a)
        if len(a) != 5:
            raise ValueError("a curve needs coefficients (a1, a2, a3, a4, a6)")
        if field is None:
            ds = {c.d for c in a if isinstance(c, QuadElem)}
            if len(ds) > 1:
                raise ValueError("mixed quadratic fields in coefficients")
            field = BaseField.quadratic(ds.pop()) if ds else BaseField.rational()
        if field.kind == "external":
            raise ValueError("curves over external fields carry local data, not models")
        self.field = field
        self.a1, self.a2, self.a3, self.a4, self.a6 = (field.coerce(c) for c in a)
        self.last_transform = None  # (u, r, s, t) when produced by transform()
        if self.disc == 0:
            raise ValueError("singular model (discriminant zero)")

    # -- invariants ---------------------------------------------------------
    @property
    def a_invariants(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self):
        return self.a1 * self.a1 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 * self.a3 + 4 * self.a6

    @property
    def b8(self):
        return (
            self.a1 * self.a1 * self.a6
            + 4 * self.a2 * self.a6
            - self.a1 * self.a3 * self.a4
            + self.a2 * self.a3 * self.a3
            - self.a4 * self.a4
        )

    @property
    def c4(self):
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def c6(self):
        b2 = self.b2
        return -b2 * b2 * b2 + 36 * b2 * self.b4 - 216 * self.b6

    @property
    def disc(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j(self):
        c4 = self.c4
        return c4 * c4 * c4 / self.disc

    # -- coordinate changes -------------------------------------------------
    def transform(self, u=1, r=0, s=0, t=0) -> "Curve":
        """The standard change of variables x = u^2 x' + r, y = u^3 y' + u^2 s x' + t."""
        u = self.field.coerce(u)
        r = self.field.coerce(r)
        s = self.field.coerce(s)
        t = self.field.coerce(t)
        a1, a2, a3, a4, a6 = self.a_invariants
        u2 = u * u
        u3 = u2 * u
        na1 = (a1 + 2 * s) / u
        na2 = (a2 - s * a1 + 3 * r - s * s) / u2
        na3 = (a3 + r * a1 + 2 * t) / u3
        na4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / (u2 * u2)
        na6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / (u3 * u3)
        out = Curve([na1, na2, na3, na4, na6], self.field)
        out.last_transform = (u, r, s, t)  # audit trail for minimality checks
        return out

    def completed_square(self) -> "Curve":
        """Isomorphic model with a1 = a3 = 0 (residue characteristic is
        always odd here, so dividing by 2 is harmless)."""
        half = Fraction(1, 2)
        return self.transform(1, 0, -half * self.a1, -half * self.a3)

    # -- slot-local helpers -------------------------------------------------
    def is_integral_at(self, slot: PrimeSlot) -> bool:
        return all(slot.valuation(c) >= 0 for c in self.a_invariants)

    def reduction(self, slot: PrimeSlot):
        """Residue-field coefficient tuple, for point counting."""
        if not self.is_integral_at(slot):
            raise SlotDomainError("model is not integral at this slot")
        return tuple(slot.reduce(c) for c in self.a_invariants)

    # -- misc ---------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Curve):
            return NotImplemented
        return self.field == other.field and self.a_invariants == other.a_invariants

    def __hash__(self):
        return hash((self.field, self.a_invariants))

    def __repr__(self):
        return f"Curve({list(self.a_invariants)!r} over {self.field.describe()})"


def quadratic_twist(curve: Curve, dtw) -> Curve:
    """Twist by dtw: on a completed square y^2 = x^3 + a2 x^2 + a4 x + a6
    the twist is y^2 = x^3 + d a2 x^2 + d^2 a4 x + d^3 a6."""
    dtw = curve.field.coerce(dtw)
    if dtw == 0:
        raise ValueError("twisting parameter must be nonzero")
    c = curve.completed_square()
    return Curve(
        [0, dtw * c.a2, 0, dtw * dtw * c.a4, dtw * dtw * dtw * c.a6],
        curve.field,
    )


def rat_str(q) -> str:
    """Canonical string for a rational: "3", "-3/4"."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def elem_json(x):
    """JSON shape for a field element: a rational string, or an
    {"x": ..., "y": ...} pair for sqrt-d coordinates."""
    if isinstance(x, QuadElem):
        if x.y == 0:
            return rat_str(x.x)
        return {"x": rat_str(x.x), "y": rat_str(x.y)}
    return rat_str(x)


@dataclass(frozen=True)
class ShortModel:
    """Unit-equivalent short form y^2 = x^3 + Ax + B with its valuations."""

    A: object
    B: object
    v_A: int | float
    v_B: int | float
    v_disc: int | float

    @property
    def valuations(self):
        return (self.v_disc, self.v_A, self.v_B)


def short_model_at(curve: Curve, slot: PrimeSlot) -> ShortModel:
    """Short model with A = -c4/48, B = -c6/864 and its slot valuations.

    The short form shares (c4, c6, disc) with the input exactly, so v(A)
    and v(B) read off the valuations of c4 and c6.  Only meaningful at
    residue characteristic at least 5, where 48 and 864 are units.
    """
    if slot.p < 5:
        raise ValueError(
            "short form not unit-equivalent at residue characteristic %d" % slot.p
        )
    A = -curve.c4 / 48
    B = -curve.c6 / 864
    return ShortModel(
        A=A,
        B=B,
        v_A=slot.valuation(A),
        v_B=slot.valuation(B),
        v_disc=slot.valuation(curve.disc),
    )
