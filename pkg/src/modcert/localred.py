"""Local reduction analysis at odd places.

The centerpiece is a run of Tate's algorithm specialized to odd residue
characteristic: models are first put in completed-square form (a1 = a3 =
0), which keeps every translation step rational and makes the singular
point search a repeated-root search in the residue field.  The output is
the minimal model at the place together with the Kodaira type, the
valuations of the minimal discriminant, c4, c6 and j, and a coarse
reduction class:

  * Good
  * Multiplicative
  * AdditivePotMultiplicative   (additive, v(j) < 0)
  * AdditivePotGoodOrdinary     (additive, j integral, ordinary residue)
  * AdditivePotGoodSupersingular

Potentially good additive reduction is split by whether the reduced
j-invariant is a supersingular j-value of the residue characteristic;
those sets are computed from scratch by point counting, never hardcoded.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .exact import INF, Fq, PrimeSlot, SlotDomainError, ff_point_count, get_field
from .model import Curve


# ---------------------------------------------------------------------------
# Kodaira symbols


_ADDITIVE_SERIES = ("I*", "II", "III", "IV", "IV*", "III*", "II*")


@dataclass(frozen=True)
class KodairaType:
    series: str
    n: int = 0

    def __post_init__(self):
        if self.series not in ("I",) + _ADDITIVE_SERIES:
            raise ValueError(f"unknown Kodaira series {self.series!r}")
        if self.series not in ("I", "I*") and self.n:
            raise ValueError("only I and I* series carry an index")
        if self.n < 0:
            raise ValueError("negative Kodaira index")

    @property
    def symbol(self) -> str:
        if self.series == "I":
            return f"I{self.n}"
        if self.series == "I*":
            return f"I{self.n}*"
        return self.series

    @classmethod
    def parse(cls, s: str) -> "KodairaType":
        s = s.strip()
        star = s.endswith("*")
        core = s[:-1] if star else s
        if core in ("II", "III", "IV"):
            return cls(core + "*" if star else core)
        if core.startswith("I") and core[1:].isdigit():
            return cls("I*" if star else "I", int(core[1:]))
        raise ValueError(f"unrecognized Kodaira symbol {s!r}")

    @property
    def is_good(self) -> bool:
        return self.series == "I" and self.n == 0

    @property
    def is_multiplicative(self) -> bool:
        return self.series == "I" and self.n > 0

    @property
    def is_additive(self) -> bool:
        return not (self.is_good or self.is_multiplicative)

    def __repr__(self):
        return f"KodairaType({self.symbol!r})"


class ReductionClass(enum.Enum):
    GOOD = "Good"
    MULTIPLICATIVE = "Multiplicative"
    ADDITIVE_POT_MULT = "AdditivePotMultiplicative"
    ADDITIVE_POT_GOOD_ORDINARY = "AdditivePotGoodOrdinary"
    ADDITIVE_POT_GOOD_SUPERSINGULAR = "AdditivePotGoodSupersingular"


def _val_json(v):
    return "inf" if v == INF else int(v)


@dataclass(frozen=True)
class LocalInvariants:
    """Slot-local data of a minimal model."""

    slot: PrimeSlot
    kodaira: KodairaType
    v_disc: int
    v_c4: int | float
    v_c6: int | float
    v_j: int | float
    j_residue: object | None
    reduction: ReductionClass

    @property
    def p(self) -> int:
        return self.slot.p

    @property
    def e(self) -> int:
        return self.slot.e

    @property
    def f(self) -> int:
        return self.slot.f

    @property
    def is_semistable(self) -> bool:
        return not self.kodaira.is_additive

    @property
    def potentially_multiplicative(self) -> bool:
        return self.reduction in (
            ReductionClass.MULTIPLICATIVE,
            ReductionClass.ADDITIVE_POT_MULT,
        )

    def as_dict(self) -> dict:
        jr = self.j_residue
        if isinstance(jr, tuple):
            jr = list(jr)
        return {
            "p": self.p,
            "e": self.e,
            "f": self.f,
            "kind": self.slot.kind,
            "index": self.slot.index,
            "kodaira": self.kodaira.symbol,
            "v_disc": self.v_disc,
            "v_c4": _val_json(self.v_c4),
            "v_c6": _val_json(self.v_c6),
            "v_j": _val_json(self.v_j),
            "j_residue": jr,
            "reduction": self.reduction.value,
        }


def is_semistable(inv: LocalInvariants) -> bool:
    return inv.is_semistable


# ---------------------------------------------------------------------------
# Supersingular j-values


def _j_representative_coeffs(F: Fq, j):
    """Coefficients over F of a curve with the given j-invariant."""
    if F.p == 3:
        # y^2 = x^3 + x has j = 0; y^2 = x^3 + x^2 + c has j = -1/c
        if F.is_zero(j):
            return (F.zero, F.zero, F.zero, F.one, F.zero)
        return (F.zero, F.one, F.zero, F.zero, F.neg(F.inv(j)))
    if F.is_zero(j):
        return (F.zero, F.zero, F.zero, F.zero, F.one)
    j1728 = F.from_int(1728)
    if j == j1728:
        return (F.zero, F.zero, F.zero, F.one, F.zero)
    k = F.sub(j1728, j)
    a4 = F.smul(3, F.mul(j, k))
    a6 = F.smul(2, F.mul(j, F.mul(k, k)))
    return (F.zero, F.zero, F.zero, a4, a6)


@lru_cache(maxsize=None)
def supersingular_j_set(p: int, f: int = 1) -> frozenset:
    """All supersingular j-values in F_{p^f}, found by point counting.

    A curve over F_q is supersingular iff q + 1 - #E(F_q) is divisible by
    the characteristic; the j-line is scanned exhaustively.
    """
    if p < 3:
        raise ValueError("supersingular classification needs odd characteristic")
    F = get_field(p, f)
    out = set()
    for j in F.elements():
        a = F.q + 1 - ff_point_count(_j_representative_coeffs(F, j), F)
        if a % p == 0:
            out.add(j)
    return frozenset(out)


# ---------------------------------------------------------------------------
# Reduction classification


def classify_reduction(
    kodaira: KodairaType, p: int, f: int, v_j, j_residue=None
) -> ReductionClass:
    """Coarse reduction class from the Kodaira type and the j-invariant.

    j_residue is only consulted when v_j == 0; when v_j > 0 the reduced
    j-invariant is zero and nothing else is needed.
    """
    if kodaira.is_good:
        return ReductionClass.GOOD
    if kodaira.is_multiplicative:
        return ReductionClass.MULTIPLICATIVE
    if v_j < 0:
        return ReductionClass.ADDITIVE_POT_MULT
    F = get_field(p, f)
    if v_j > 0:
        jbar = F.zero
    else:
        if j_residue is None:
            raise ValueError("v(j) = 0 requires the reduced j-invariant")
        jbar = F.from_int(j_residue) if isinstance(j_residue, int) else j_residue
    if jbar in supersingular_j_set(p, f):
        return ReductionClass.ADDITIVE_POT_GOOD_SUPERSINGULAR
    return ReductionClass.ADDITIVE_POT_GOOD_ORDINARY


# ---------------------------------------------------------------------------
# Tate's algorithm (odd residue characteristic, completed square)


def _repeated_root_cubic(F: Fq, a, b, c):
    """A root of T^3 + aT^2 + bT + c shared with its derivative.

    Repeated roots of a cubic over F always lie in F (a double root is
    unique, hence Galois-stable; a triple root is -a/3, or the cube root
    of -c under the bijective Frobenius in characteristic 3)."""
    for t in F.elements():
        t2 = F.mul(t, t)
        ft = F.add(F.mul(t2, t), F.add(F.mul(a, t2), F.add(F.mul(b, t), c)))
        dft = F.add(F.smul(3, t2), F.add(F.smul(2, F.mul(a, t)), b))
        if F.is_zero(ft) and F.is_zero(dft):
            return t
    raise RuntimeError("singular reduction without a rational repeated root")


def _cubic_disc(F: Fq, a, b, c):
    """Discriminant of T^3 + aT^2 + bT + c."""
    t1 = F.smul(18, F.mul(a, F.mul(b, c)))
    t2 = F.smul(-4, F.mul(a, F.mul(a, F.mul(a, c))))
    t3 = F.mul(F.mul(a, a), F.mul(b, b))
    t4 = F.smul(-4, F.mul(b, F.mul(b, b)))
    t5 = F.smul(-27, F.mul(c, c))
    return F.add(t1, F.add(t2, F.add(t3, F.add(t4, t5))))


def tate(curve: Curve, slot: PrimeSlot) -> tuple[Curve, LocalInvariants]:
    """Minimal model and local invariants of the curve at the slot."""
    if slot.kind == "external":
        raise SlotDomainError("external slots carry no curve model")
    if slot.p == 2:
        raise ValueError("residue characteristic 2 is out of scope")
    v = slot.valuation
    F = slot.residue_field
    pi = slot.uniformizer()
    E = curve.completed_square()

    # clear slot denominators: u = pi^-m multiplies v(a_i) by i*m
    m = 0
    for i, c in zip((2, 4, 6), (E.a2, E.a4, E.a6)):
        vc = v(c)
        if vc < 0:
            m = max(m, (-int(vc) + i - 1) // i)
    if m:
        E = E.transform(u=pi**-m)

    kod: KodairaType | None = None
    while kod is None:
        vdisc = v(E.disc)
        if vdisc == 0:
            kod = KodairaType("I", 0)
            break

        xi = _repeated_root_cubic(F, slot.reduce(E.a2), slot.reduce(E.a4), slot.reduce(E.a6))
        if not F.is_zero(xi):
            E = E.transform(r=slot.lift(xi))

        if v(E.a2) == 0:
            kod = KodairaType("I", int(vdisc))
            break
        if v(E.a6) <= 1:
            kod = KodairaType("II")
            break
        if v(E.b8) <= 2:
            kod = KodairaType("III")
            break
        if v(E.b6) <= 2:
            kod = KodairaType("IV")
            break

        pi2 = pi * pi
        pi3 = pi2 * pi
        P2 = slot.reduce(E.a2 / pi)
        P1 = slot.reduce(E.a4 / pi2)
        P0 = slot.reduce(E.a6 / pi3)
        if not F.is_zero(_cubic_disc(F, P2, P1, P0)):
            kod = KodairaType("I*", 0)
            break

        delta = _repeated_root_cubic(F, P2, P1, P0)
        if not F.is_zero(delta):
            E = E.transform(r=pi * slot.lift(delta))
            P2 = slot.reduce(E.a2 / pi)

        if not F.is_zero(P2):
            # double root at the origin: walk the I_n* chain
            n = 1
            mx = my = pi2
            while True:
                a6y = slot.reduce(E.a6 / (mx * my))
                if not F.is_zero(a6y):
                    kod = KodairaType("I*", n)
                    break
                my = my * pi
                n += 1
                a2t = slot.reduce(E.a2 / pi)
                a4t = slot.reduce(E.a4 / (pi * mx))
                a6x = slot.reduce(E.a6 / (mx * my))
                disc2 = F.sub(F.mul(a4t, a4t), F.smul(4, F.mul(a2t, a6x)))
                if not F.is_zero(disc2):
                    kod = KodairaType("I*", n)
                    break
                root = F.mul(F.neg(a4t), F.inv(F.smul(2, a2t)))
                if not F.is_zero(root):
                    E = E.transform(r=mx * slot.lift(root))
                mx = mx * pi
                n += 1
            break

        # triple root at the origin
        if v(E.a6) == 4:
            kod = KodairaType("IV*")
            break
        if v(E.a4) == 3:
            kod = KodairaType("III*")
            break
        if v(E.a6) == 5:
            kod = KodairaType("II*")
            break
        E = E.transform(u=pi)  # model was non-minimal; shrink and restart

    v_disc = int(v(E.disc))
    v_c4 = v(E.c4)
    v_c6 = v(E.c6)
    v_j = 3 * v_c4 - v_disc if v_c4 != INF else INF
    j_residue = slot.reduce(E.j) if v_j >= 0 else None
    inv = LocalInvariants(
        slot=slot,
        kodaira=kod,
        v_disc=v_disc,
        v_c4=v_c4,
        v_c6=v_c6,
        v_j=v_j,
        j_residue=j_residue,
        reduction=classify_reduction(kod, slot.p, slot.f, v_j, j_residue),
    )
    return E, inv
