"""Inertia action on p-torsion at additive places, p in {5, 7}.

For an elliptic curve with additive reduction at an absolutely
unramified place above p, the image of inertia in GL2(F_p) is, outside
six explicit wild valuation patterns, a tame cyclic group whose
projective order is computable from the valuation of the minimal
discriminant alone:

  * potentially multiplicative: a fixed pair of tame character
    exponents ((p+1)/2, (p-1)/2), independent of the curve;
  * potentially good ordinary:  level-1 tame exponents (1-a, a) with
    a = (p-1) v(disc) / 12;
  * potentially good supersingular: a level-2 tame exponent
    e = a + p(p-a) with a = (p+1) v(disc) / 12, acting through the
    nonsplit torus of F_{p^2}.

The six wild triples (v(disc), v(A), v(B)) make inertia contain the full
p-Sylow subgroup instead; they are checked before anything else.  The
projective cyclic bound attached to a tame descriptor is never taken
from the closed gcd formula: it is recomputed by building the literal
diagonal matrices over F_p or F_{p^2} and brute-forcing their order
modulo scalars (`matrix_order_oracle`).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .exact import get_field
from .grouptheory import element_order
from .localred import ReductionClass

#: (v(disc), v(A), v(B)) patterns with wild inertia, same list for p = 5 and 7.
WILD_TRIPLES = frozenset(
    [(2, 1, 1), (3, 1, 2), (4, 2, 2), (8, 3, 4), (9, 3, 5), (10, 4, 5)]
)

_ADDITIVE = (
    ReductionClass.ADDITIVE_POT_MULT,
    ReductionClass.ADDITIVE_POT_GOOD_ORDINARY,
    ReductionClass.ADDITIVE_POT_GOOD_SUPERSINGULAR,
)


@dataclass(frozen=True)
class InertiaDescriptor:
    """Shape of the inertia image on p-torsion at one additive place.

    kind "tame1": exponents = (upper, lower) of the level-1 tame
    character, taken mod p-1.  kind "tame2": exponents = (e, p*e) of the
    level-2 tame character mod p^2-1.  kind "wild": wild_triple records
    the matching valuation pattern and contains_p_group is set.  For
    tame kinds, bound is the order of the projective image, certified by
    the matrix oracle."""

    kind: str
    p: int
    alpha: int | None
    exponents: tuple | None
    wild_triple: tuple | None
    contains_p_group: bool
    bound: int | None

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "alpha": self.alpha,
            "exponents": list(self.exponents) if self.exponents else None,
            "wild_triple": list(self.wild_triple) if self.wild_triple else None,
            "contains_p_group": self.contains_p_group,
            "bound": self.bound,
        }


def _coerce_class(reduction) -> ReductionClass:
    if isinstance(reduction, ReductionClass):
        return reduction
    return ReductionClass(reduction)


def kraus_descriptor(
    p: int,
    reduction,
    v_disc: int,
    v_A=None,
    v_B=None,
    *,
    e: int = 1,
    assume_tame: bool = False,
) -> InertiaDescriptor:
    """Inertia descriptor from the minimal valuation data at one place.

    v_A and v_B are the valuations of the short-model coefficients
    (equal to v(c4) and v(c6) away from 2 and 3; float("inf") when the
    coefficient vanishes).  assume_tame skips the wild-triple test and
    is only for tabulating the tame branch.
    """
    if p not in (5, 7):
        raise ValueError("inertia descriptors are computed for p in {5, 7}")
    if e != 1:
        raise ValueError("Kraus requires absolutely unramified base")
    red = _coerce_class(reduction)
    if red not in _ADDITIVE:
        raise ValueError("inertia analysis applies to additive reduction classes only")

    if red is ReductionClass.ADDITIVE_POT_MULT:
        upper = ((p + 1) // 2) % (p - 1)
        lower = ((p - 1) // 2) % (p - 1)
        desc = InertiaDescriptor("tame1", p, None, (upper, lower), None, False, None)
        return replace(desc, bound=matrix_order_oracle(p, desc))

    if not 1 <= v_disc <= 11:
        raise ValueError(
            "inconsistent local data: potentially good additive reduction "
            "needs 1 <= v(disc) <= 11, got %r" % (v_disc,)
        )

    if red is ReductionClass.ADDITIVE_POT_GOOD_SUPERSINGULAR and not assume_tame:
        if v_A is None or v_B is None:
            raise ValueError(
                "inconsistent local data: the supersingular branch needs "
                "v(A) and v(B) to rule out wild inertia"
            )
        if (v_disc, v_A, v_B) in WILD_TRIPLES:
            return InertiaDescriptor(
                "wild", p, None, None, (v_disc, v_A, v_B), True, None
            )

    if red is ReductionClass.ADDITIVE_POT_GOOD_ORDINARY:
        num = (p - 1) * v_disc
        if num % 12:
            raise ValueError(
                "inconsistent local data: (p-1) v(disc) = %d is not divisible "
                "by 12 for an ordinary place" % num
            )
        alpha = num // 12
        desc = InertiaDescriptor(
            "tame1", p, alpha, ((1 - alpha) % (p - 1), alpha % (p - 1)), None, False, None
        )
        return replace(desc, bound=matrix_order_oracle(p, desc))

    # potentially good supersingular, tame
    num = (p + 1) * v_disc
    if num % 12:
        raise ValueError(
            "inconsistent local data: (p+1) v(disc) = %d is not divisible "
            "by 12 for a supersingular place" % num
        )
    alpha = num // 12
    e1 = (alpha + p * (p - alpha)) % (p * p - 1)
    e2 = (p * e1) % (p * p - 1)
    desc = InertiaDescriptor("tame2", p, alpha, (e1, e2), None, False, None)
    return replace(desc, bound=matrix_order_oracle(p, desc))


def matrix_order_oracle(p: int, descriptor: InertiaDescriptor) -> int:
    """Order of the projective inertia image of a tame descriptor,
    obtained by building the literal diagonal matrix and brute-forcing
    its order modulo scalars.  Deliberately formula-free."""
    if descriptor.kind == "wild":
        raise ValueError("wild inertia image is not projectively cyclic")
    if descriptor.kind == "tame1":
        F = get_field(p, 1)
        g = F.generator()
        u, l = descriptor.exponents
        M = ((F.pow_(g, u), F.zero), (F.zero, F.pow_(g, l)))
        return element_order(F, M, projective=True)
    if descriptor.kind == "tame2":
        F = get_field(p, 2)
        g = F.generator()
        e1, e2 = descriptor.exponents
        M = ((F.pow_(g, e1), F.zero), (F.zero, F.pow_(g, e2)))
        return element_order(F, M, projective=True)
    raise ValueError(f"unknown descriptor kind {descriptor.kind!r}")


def order_table(p: int, reduction) -> dict:
    """Projective bounds for every admissible v(disc) in 1..11 of one
    tame branch, keyed by v(disc).  Valuations ruled out by the
    divisibility constraints are simply absent."""
    red = _coerce_class(reduction)
    out = {}
    for v_disc in range(1, 12):
        try:
            desc = kraus_descriptor(p, red, v_disc, assume_tame=True)
        except ValueError:
            continue
        out[v_disc] = desc.bound
    return out
