"""Finite matrix-group audits behind the decision thresholds.

Everything here is counted by brute force over actual finite groups:
Borel subgroups of GL2(F_p), projective linear groups PGL2(F_p), and
concrete realizations of the small projective images (Klein four-groups,
S3, dihedral of order 8) that block the cyclic-bound exclusion argument.
The numeric thresholds used by the certifying pipeline are recomputed
from these enumerations rather than quoted, so a regression in the group
theory shows up as a changed constant, not as a silently wrong
certificate.

Matrices are 2x2 tuples-of-tuples with entries in the element
representation of an `exact.Fq` field (ints for prime fields, pairs for
quadratic extensions).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .exact import Fq, get_field


def identity_mat(F: Fq):
    return ((F.one, F.zero), (F.zero, F.one))


def mat_mul(F: Fq, M, N):
    (a, b), (c, d) = M
    (e, f), (g, h) = N
    return (
        (F.add(F.mul(a, e), F.mul(b, g)), F.add(F.mul(a, f), F.mul(b, h))),
        (F.add(F.mul(c, e), F.mul(d, g)), F.add(F.mul(c, f), F.mul(d, h))),
    )


def mat_det(F: Fq, M):
    return F.sub(F.mul(M[0][0], M[1][1]), F.mul(M[0][1], M[1][0]))


def is_scalar_mat(F: Fq, M) -> bool:
    return M[0][1] == F.zero and M[1][0] == F.zero and M[0][0] == M[1][1]


def element_order(F: Fq, M, projective: bool = False) -> int:
    """Multiplicative order of an invertible 2x2 matrix, by brute force.

    With projective=True, the order of the image in PGL2 (first power
    that is scalar)."""
    if F.is_zero(mat_det(F, M)):
        raise ValueError("matrix is singular")
    P = M
    ident = identity_mat(F)
    # |GL2(F_q)| bounds every element order.
    for k in range(1, (F.q**2 - 1) * (F.q**2 - F.q) + 1):
        if is_scalar_mat(F, P) if projective else P == ident:
            return k
        P = mat_mul(F, P, M)
    raise RuntimeError("order search exceeded the group order")


def projective_canonical(F: Fq, M):
    """Scale a matrix so its first nonzero entry (row-major) is 1.

    Two invertible matrices have the same canonical form exactly when
    they agree in PGL2."""
    for entry in (M[0][0], M[0][1], M[1][0], M[1][1]):
        if not F.is_zero(entry):
            s = F.inv(entry)
            return (
                (F.mul(s, M[0][0]), F.mul(s, M[0][1])),
                (F.mul(s, M[1][0]), F.mul(s, M[1][1])),
            )
    raise ValueError("zero matrix has no projective class")


def projective_closure(F: Fq, gens):
    """Subgroup of PGL2 generated by the given matrices, as canonical
    forms.  Breadth-first: every word arises by right-multiplying a
    shorter word by a generator."""
    gens = [projective_canonical(F, g) for g in gens]
    seen = {projective_canonical(F, identity_mat(F))}
    frontier = [projective_canonical(F, identity_mat(F))]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = projective_canonical(F, mat_mul(F, a, g))
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# Borel subgroups and PGL2, counted exhaustively


def borel_elements(p: int):
    """Upper-triangular invertible matrices over F_p."""
    F = get_field(p, 1)
    out = []
    for a in range(1, p):
        for d in range(1, p):
            for b in range(p):
                out.append(((a, b), (0, d)))
    return out


def pgl2_order(p: int) -> int:
    """|PGL2(F_p)| by enumerating canonical forms of all invertible
    matrices -- deliberately not the closed formula."""
    F = get_field(p, 1)
    classes = set()
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    M = ((a, b), (c, d))
                    if F.is_zero(mat_det(F, M)):
                        continue
                    classes.add(projective_canonical(F, M))
    return len(classes)


# ---------------------------------------------------------------------------
# Concrete realizations of the exceptional projective images


def klein_realization():
    """An order-16 subgroup of GL2(F_5) whose projective image is the
    Klein four-group, found by searching monomial matrices.

    Returns (matrices, max_projective_order)."""
    F = get_field(5, 1)
    monomial = []
    for a in range(1, 5):
        for d in range(1, 5):
            monomial.append(((a, 0), (0, d)))
            monomial.append(((0, a), (d, 0)))
    # Greedy search: seed with the obvious involutions and close up.
    seeds = [((1, 0), (0, 4)), ((0, 1), (1, 0))]
    group = set()
    frontier = [identity_mat(F)] + seeds
    # scalars keep the subgroup order at 16 while the image stays Klein
    scalars = [((s, 0), (0, s)) for s in range(1, 5)]
    for M in frontier + scalars:
        group.add(M)
    changed = True
    while changed:
        changed = False
        for a in list(group):
            for b in list(group):
                c = mat_mul(F, a, b)
                if c not in group:
                    group.add(c)
                    changed = True
    for M in group:
        if M not in monomial and not is_scalar_mat(F, M):
            raise RuntimeError("Klein search left the monomial matrices")
    proj = {projective_canonical(F, M) for M in group}
    max_order = max(element_order(F, M, projective=True) for M in proj)
    return sorted(group), max_order


def s3_realization(p: int):
    """S3 inside PGL2(F_p): a 3-cycle (companion matrix of t^2 + t + 1)
    and a swap.  Returns (projective elements, max projective order)."""
    F = get_field(p, 1)
    three_cycle = ((0, (p - 1) % p), (1, (p - 1) % p))
    swap = ((0, 1), (1, 0))
    closure = projective_closure(F, [three_cycle, swap])
    return closure, max(element_order(F, M, projective=True) for M in closure)


def d4_realization(p: int):
    """Dihedral of order 8 inside PGL2(F_p): a projective rotation of
    order 4 (matrix square roots of -1 style) and a reflection."""
    F = get_field(p, 1)
    rot = ((1, 1), ((p - 1) % p, 1))  # square is a scalar times [[0,1],[-1,0]]
    refl = ((1, 0), (0, (p - 1) % p))
    closure = projective_closure(F, [rot, refl])
    return closure, max(element_order(F, M, projective=True) for M in closure)


@lru_cache(maxsize=None)
def exceptional_threshold(p: int) -> int:
    """Smallest cyclic bound that rules out every exceptional projective
    image at p: one more than the largest element order occurring in the
    concrete realizations of those images."""
    if p == 5:
        _, klein_max = klein_realization()
        return klein_max + 1
    if p == 7:
        _, s3_max = s3_realization(7)
        _, d4_max = d4_realization(7)
        return max(s3_max, d4_max) + 1
    raise ValueError("exceptional thresholds are computed for p in {5, 7}")


# ---------------------------------------------------------------------------
# The audit report consumed by certificates and the CLI


@dataclass(frozen=True)
class GroupAuditReport:
    borel_order_5: int
    borel_order_7: int
    gcd_value: int
    order4_cyclic_count_in_B7: int
    pgl_orders: dict
    threshold_5: int
    threshold_7: int

    def as_dict(self) -> dict:
        return {
            "borel_order_5": self.borel_order_5,
            "borel_order_7": self.borel_order_7,
            "gcd_value": self.gcd_value,
            "order4_cyclic_count_in_B7": self.order4_cyclic_count_in_B7,
            "pgl_orders": {str(k): v for k, v in sorted(self.pgl_orders.items())},
            "threshold_5": self.threshold_5,
            "threshold_7": self.threshold_7,
        }


def audit_borel() -> GroupAuditReport:
    """Count the Borel subgroups of GL2(F_5) and GL2(F_7), the gcd of
    their orders, and how many order-4 elements B(F_7) has.

    The gcd bounds the order of a subgroup landing in a Borel on both
    sides at once; the order-4 count shows any order-4 part of such a
    subgroup is Klein rather than cyclic."""
    b5 = borel_elements(5)
    b7 = borel_elements(7)
    F7 = get_field(7, 1)
    order4 = sum(1 for M in b7 if element_order(F7, M) == 4)
    return GroupAuditReport(
        borel_order_5=len(b5),
        borel_order_7=len(b7),
        gcd_value=gcd(len(b5), len(b7)),
        order4_cyclic_count_in_B7=order4,
        pgl_orders={5: pgl2_order(5), 7: pgl2_order(7)},
        threshold_5=exceptional_threshold(5),
        threshold_7=exceptional_threshold(7),
    )
