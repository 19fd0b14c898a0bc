"""Irreducibility decisions for the mod-5 and mod-7 representations.

Two independent mechanisms, used as cross-checks of one another:

* `frobenius_irreducibility` scans places of good reduction and looks
  for a Frobenius trace whose characteristic polynomial is irreducible
  mod p (discriminant a nonresidue).  A witness *proves* irreducibility;
  absence of one proves nothing.

* `isogeny_reducibility` decides reducibility outright (away from
  j = 0, 1728) by checking whether j lies in the image of the rational
  parameter line classifying p-isogenies:

      j5(t) = (t^2 + 250 t + 3125)^3 / t^5
      j7(t) = (t^2 + 13 t + 49)(t^2 + 245 t + 2401)^3 / t^7

  Membership is a root-finding problem for a monic polynomial with
  coefficients in the base field; over a real quadratic field it is
  pushed down to Q by multiplying with the conjugate polynomial.  Every
  candidate root is re-verified with exact arithmetic before it is
  believed, and the point t = 0 (a cusp, not a curve) is excluded.

`irreducibility_status` combines the two, treats j = 0, 1728 as
Frobenius-only (the parameter-line test is ambiguous for CM j-values),
and raises a soundness violation if the mechanisms ever disagree.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

import sympy

from .exact import QuadElem, get_field, primes_up_to, rational_square
from .localred import tate
from .model import Curve, elem_json

_T = sympy.Symbol("t")


@dataclass(frozen=True)
class IrreducibilityStatus:
    p: int
    kind: str  # "irreducible" | "reducible" | "unknown"
    assumed: bool = False
    method: str | None = None
    witness_l: int | None = None
    witness_a: int | None = None
    witness_t: object = None
    search_bound: int | None = None

    def as_dict(self) -> dict:
        witness = None
        if self.witness_l is not None:
            witness = {"l": self.witness_l, "a": self.witness_a}
        elif self.witness_t is not None:
            witness = {"t": elem_json(self.witness_t)}
        return {
            "p": self.p,
            "kind": self.kind,
            "assumed": self.assumed,
            "method": self.method,
            "witness": witness,
            "search_bound": self.search_bound,
        }


# ---------------------------------------------------------------------------
# Frobenius scan


def _is_nonresidue(n: int, p: int) -> bool:
    n %= p
    if n == 0:
        return False
    return pow(n, (p - 1) // 2, p) == p - 1


def frobenius_irreducibility(curve: Curve, p: int, l_bound: int = 1000):
    """First (l, a_slot) making the Frobenius characteristic polynomial
    x^2 - a x + Norm(slot) irreducible mod p, or None.

    Scans odd primes l != p in increasing order and, above each, the
    unramified slots of good reduction with residue norm <= l_bound.
    """
    for l in primes_up_to(l_bound):
        if l == 2 or l == p:
            continue
        for slot in curve.field.slots(l):
            if slot.e > 1 or slot.norm > l_bound:
                continue
            minimal, inv = tate(curve, slot)
            if not inv.kodaira.is_good:
                continue
            count = _good_point_count(minimal, slot)
            a = slot.norm + 1 - count
            if _is_nonresidue(a * a - 4 * slot.norm, p):
                return (l, a)
    return None


def _good_point_count(minimal: Curve, slot) -> int:
    from .exact import ff_point_count

    return ff_point_count(minimal.reduction(slot), get_field(slot.p, slot.f))


# ---------------------------------------------------------------------------
# The parameter-line test


@lru_cache(maxsize=None)
def _isogeny_numerator(p: int):
    if p == 5:
        return sympy.expand((_T**2 + 250 * _T + 3125) ** 3)
    if p == 7:
        return sympy.expand(
            (_T**2 + 13 * _T + 49) * (_T**2 + 245 * _T + 2401) ** 3
        )
    raise ValueError("parameter-line test exists for p in {5, 7}")


def isogeny_j_value(p: int, t):
    """j of the curve classified by parameter t (exact arithmetic)."""
    if p == 5:
        return (t * t + 250 * t + 3125) ** 3 / t**5
    if p == 7:
        return (t * t + 13 * t + 49) * (t * t + 245 * t + 2401) ** 3 / t**7
    raise ValueError("parameter-line test exists for p in {5, 7}")


def _sym_rational(q: Fraction):
    q = Fraction(q)
    return sympy.Rational(q.numerator, q.denominator)


def _frac(c) -> Fraction:
    return Fraction(int(sympy.numer(c)), int(sympy.denom(c)))


def isogeny_reducibility(curve: Curve, p: int) -> IrreducibilityStatus:
    """Reducible (with a verified parameter witness) or Irreducible.

    Decisive for j outside {0, 1728}; those two j-values raise, since
    extra automorphisms make the parameter count unreliable there.
    """
    j = curve.j
    if j == 0 or j == 1728:
        raise ValueError("CM-ambiguous, use dedicated branch")
    num = _isogeny_numerator(p)
    field = curve.field

    j_rational = isinstance(j, Fraction) or (isinstance(j, QuadElem) and j.y == 0)
    if j_rational:
        jr = j.x if isinstance(j, QuadElem) else Fraction(j)
        poly = sympy.Poly(num - _sym_rational(jr) * _T**p, _T)
    else:
        # push down to Q: multiply by the conjugate polynomial
        tr, nm = j.trace(), j.norm()
        poly = sympy.Poly(
            sympy.expand(
                num * num
                - _sym_rational(tr) * num * _T**p
                + _sym_rational(nm) * _T ** (2 * p)
            ),
            _T,
        )

    rational_roots = []
    quadratic_roots = []
    for factor, _mult in sympy.factor_list(poly)[1]:
        fac = sympy.Poly(factor, _T)
        if fac.degree() == 1:
            c1, c0 = (_frac(c) for c in fac.all_coeffs())
            rational_roots.append(-c0 / c1)
        elif fac.degree() == 2 and field.kind == "quadratic":
            c2, c1, c0 = (_frac(c) for c in fac.all_coeffs())
            disc = c1 * c1 - 4 * c2 * c0
            s = rational_square(disc / field.d)
            if s is not None:
                for sign in (1, -1):
                    quadratic_roots.append(
                        QuadElem(-c1 / (2 * c2), sign * s / (2 * c2), field.d)
                    )

    witnesses = []
    for t in sorted(rational_roots) + sorted(quadratic_roots, key=lambda z: (z.x, z.y)):
        if t == 0:
            continue  # cusp
        t = field.coerce(t)
        if isogeny_j_value(p, t) == j:
            witnesses.append(t)
    if witnesses:
        return IrreducibilityStatus(
            p, "reducible", method="isogeny", witness_t=witnesses[0]
        )
    return IrreducibilityStatus(p, "irreducible", method="isogeny")


# ---------------------------------------------------------------------------
# Combined status


def irreducibility_status(
    curve: Curve, p: int, l_bound: int = 1000, assume: str | None = None
) -> IrreducibilityStatus:
    """Final irreducibility verdict for the mod-p representation.

    assume may be "reducible" or "irreducible" (user-supplied flag,
    recorded as such).  Otherwise the parameter-line test decides where
    it applies, and the Frobenius scan corroborates: a curve that is
    reducible by parameter but has a Frobenius witness is a soundness
    violation and stops everything.
    """
    if assume is not None:
        if assume not in ("reducible", "irreducible"):
            raise ValueError(f"unknown irreducibility assumption {assume!r}")
        return IrreducibilityStatus(p, assume, assumed=True, method="flag")

    j = curve.j
    if j == 0 or j == 1728:
        found = frobenius_irreducibility(curve, p, l_bound)
        if found is not None:
            return IrreducibilityStatus(
                p, "irreducible", method="frobenius",
                witness_l=found[0], witness_a=found[1],
            )
        return IrreducibilityStatus(p, "unknown", search_bound=l_bound)

    status = isogeny_reducibility(curve, p)
    found = frobenius_irreducibility(curve, p, l_bound)
    if status.kind == "reducible":
        if found is not None:
            raise RuntimeError(
                "soundness violation: mod-%d parameter witness t=%r coexists "
                "with Frobenius witness (l=%d, a=%d)"
                % (p, status.witness_t, found[0], found[1])
            )
        return status
    if found is not None:
        return replace(
            status,
            method="isogeny+frobenius",
            witness_l=found[0],
            witness_a=found[1],
        )
    return status
