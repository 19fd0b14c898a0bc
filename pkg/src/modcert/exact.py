"""Exact arithmetic foundation.

Rationals (``fractions.Fraction`` in canonical reduced form), elements of
real quadratic fields, prime slots (the primes of the base field lying
over a rational prime) with exact valuations, residue fields and
reduction maps, and brute-force point counting over small finite fields.

Everything here is pure; the only caches hold immutable tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Union

Rat = Fraction

#: Valuation of zero: a distinguished value ordered above every integer.
INF = float("inf")

FieldElem = Union[int, Fraction, "QuadElem"]


class BadReductionError(ValueError):
    """Curve data reduces to a singular cubic over the residue field."""


class SlotDomainError(ValueError):
    """An element was used at a slot it does not belong to."""


def _int_val(n: int, p: int) -> int:
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def val_p(x, p: int) -> int | float:
    """Normalized p-adic valuation on Q.  val_p(0) is INF."""
    x = Fraction(x)
    if x == 0:
        return INF
    return _int_val(x.numerator, p) - _int_val(x.denominator, p)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n (simple sieve)."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for q in range(2, math.isqrt(n) + 1):
        if sieve[q]:
            sieve[q * q :: q] = bytearray(len(sieve[q * q :: q]))
    return [i for i, flag in enumerate(sieve) if flag]


def is_squarefree(n: int) -> bool:
    if n <= 0:
        return False
    from sympy import factorint

    return all(e == 1 for e in factorint(n).values())


def rational_square(x: Fraction) -> Fraction | None:
    """Exact square root of a rational square, else None."""
    x = Fraction(x)
    if x < 0:
        return None
    a = math.isqrt(x.numerator)
    b = math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


# ---------------------------------------------------------------------------
# Real quadratic field elements


@dataclass(frozen=True)
class QuadElem:
    """x + y*sqrt(d) with exact rational coordinates, d > 1 squarefree."""

    x: Fraction
    y: Fraction
    d: int

    @staticmethod
    def of(x, y, d: int) -> "QuadElem":
        return QuadElem(Fraction(x), Fraction(y), d)

    def _coerce(self, other):
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise SlotDomainError("elements of different quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(Fraction(other), Fraction(0), self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.x + o.x, self.y + o.y, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.x, -self.y, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.x - o.x, self.y - o.y, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(
            self.x * o.x + self.d * self.y * o.y,
            self.x * o.y + self.y * o.x,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero quadratic element")
        return QuadElem(self.x / n, -self.y / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = QuadElem(Fraction(1), Fraction(0), self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.x, -self.y, self.d)

    def norm(self) -> Fraction:
        return self.x * self.x - self.d * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    @property
    def is_rational(self) -> bool:
        return self.y == 0

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return (self.x, self.y, self.d) == (other.x, other.y, other.d)
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        return NotImplemented

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.x, self.y, self.d))

    def __repr__(self):
        if self.y == 0:
            return f"{self.x}"
        return f"({self.x}+{self.y}*sqrt{self.d})"


def conjugate_elem(a: FieldElem) -> FieldElem:
    return a.conjugate() if isinstance(a, QuadElem) else a


# ---------------------------------------------------------------------------
# Small finite fields


@lru_cache(maxsize=None)
def smallest_nonresidue(p: int) -> int:
    squares = {(i * i) % p for i in range(1, p)}
    for r in range(2, p):
        if r not in squares:
            return r
    raise ValueError(f"no quadratic nonresidue mod {p}")


class Fq:
    """F_p (elements: ints) or F_{p^2} for odd p (elements: pairs (a, b)
    over the basis 1, w with w^2 = r, r the smallest nonresidue mod p)."""

    def __init__(self, p: int, f: int = 1):
        if f not in (1, 2):
            raise ValueError("residue degree must be 1 or 2")
        if f == 2 and p == 2:
            raise ValueError("F_4 is not supported (even characteristic)")
        self.p = p
        self.f = f
        self.q = p**f
        self.r = smallest_nonresidue(p) if f == 2 else None
        self._squares: frozenset | None = None

    # representation helpers -------------------------------------------------
    @property
    def zero(self):
        return 0 if self.f == 1 else (0, 0)

    @property
    def one(self):
        return 1 if self.f == 1 else (1, 0)

    def from_int(self, n: int):
        n %= self.p
        return n if self.f == 1 else (n, 0)

    def elements(self) -> Iterator:
        if self.f == 1:
            yield from range(self.p)
        else:
            for a in range(self.p):
                for b in range(self.p):
                    yield (a, b)

    # arithmetic -------------------------------------------------------------
    def add(self, a, b):
        if self.f == 1:
            return (a + b) % self.p
        return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)

    def sub(self, a, b):
        if self.f == 1:
            return (a - b) % self.p
        return ((a[0] - b[0]) % self.p, (a[1] - b[1]) % self.p)

    def neg(self, a):
        if self.f == 1:
            return (-a) % self.p
        return ((-a[0]) % self.p, (-a[1]) % self.p)

    def mul(self, a, b):
        if self.f == 1:
            return (a * b) % self.p
        return (
            (a[0] * b[0] + self.r * a[1] * b[1]) % self.p,
            (a[0] * b[1] + a[1] * b[0]) % self.p,
        )

    def smul(self, n: int, a):
        return self.mul(self.from_int(n), a)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in finite field")
        if self.f == 1:
            return pow(a, self.p - 2, self.p)
        # (a0 + a1 w)^-1 = (a0 - a1 w) / (a0^2 - r a1^2)
        n = (a[0] * a[0] - self.r * a[1] * a[1]) % self.p
        ninv = pow(n, self.p - 2, self.p)
        return ((a[0] * ninv) % self.p, (-a[1] * ninv) % self.p)

    def pow_(self, a, k: int):
        out = self.one
        if k < 0:
            a, k = self.inv(a), -k
        while k:
            if k & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            k >>= 1
        return out

    def is_zero(self, a) -> bool:
        return a == self.zero

    # tables -----------------------------------------------------------------
    def squares(self) -> frozenset:
        """Nonzero squares, as an immutable lookup table."""
        if self._squares is None:
            self._squares = frozenset(
                self.mul(a, a) for a in self.elements() if not self.is_zero(a)
            )
        return self._squares

    def is_square(self, a) -> bool:
        return self.is_zero(a) or a in self.squares()

    def sqrt_of(self, a):
        for z in self.elements():
            if self.mul(z, z) == a:
                return z
        return None

    def mult_order(self, a) -> int:
        if self.is_zero(a):
            raise ValueError("zero has no multiplicative order")
        k, x = 1, a
        while x != self.one:
            x = self.mul(x, a)
            k += 1
        return k

    def generator(self):
        for a in self.elements():
            if not self.is_zero(a) and self.mult_order(a) == self.q - 1:
                return a
        raise RuntimeError("no generator found")

    def __repr__(self):
        return f"Fq({self.p}^{self.f})"


@lru_cache(maxsize=None)
def get_field(p: int, f: int = 1) -> Fq:
    return Fq(p, f)


# ---------------------------------------------------------------------------
# Prime slots


@dataclass(frozen=True)
class PrimeSlot:
    """A prime of the base field lying over the rational prime p.

    kind is one of "rational" (base field Q), "split", "inert",
    "ramified" (real quadratic base), or "external" (local data supplied
    from outside; no arithmetic available).
    """

    p: int
    e: int
    f: int
    kind: str
    d: int | None = None
    root: int | None = None  # split only: image of sqrt(d) in F_p
    index: int = 0

    @property
    def norm(self) -> int:
        return self.p**self.f

    @property
    def residue_field(self) -> Fq:
        return get_field(self.p, self.f)

    def uniformizer(self) -> FieldElem:
        if self.kind == "ramified":
            return QuadElem.of(0, 1, self.d)
        if self.kind == "external":
            raise SlotDomainError("external slots carry no arithmetic")
        return Fraction(self.p)

    # -- valuation ----------------------------------------------------------
    def valuation(self, a: FieldElem) -> int | float:
        if self.kind == "external":
            raise SlotDomainError("external slots carry no arithmetic")
        if isinstance(a, QuadElem) and a.y == 0:
            a = a.x
        if not isinstance(a, QuadElem):
            base = val_p(a, self.p)
            return 2 * base if self.kind == "ramified" else base
        if a.d != self.d:
            raise SlotDomainError("element of a different quadratic field")
        vx, vy = val_p(a.x, self.p), val_p(a.y, self.p)
        if self.kind == "inert":
            return min(vx, vy)
        if self.kind == "ramified":
            return min(2 * vx, 2 * vy + 1)
        # split: scale to coordinate-integral, then use norm + residue test
        m = min(vx, vy)
        b = a * Fraction(1, self.p) ** m if m else a
        nval = val_p(b.norm(), self.p)
        if nval == 0:
            return m
        if self._unit_residue(b) != 0:
            return m
        return m + nval

    def _unit_residue(self, b: QuadElem) -> int:
        """b has coordinate valuations >= 0, not both positive."""
        p = self.p
        num = b.x + b.y * self.root
        den = num.denominator
        return (num.numerator * pow(den, -1, p)) % p

    # -- reduction and lifting ----------------------------------------------
    def reduce(self, a: FieldElem):
        """Image of a slot-integral element in the residue field."""
        F = self.residue_field
        if isinstance(a, QuadElem) and a.y == 0:
            a = a.x
        if not isinstance(a, QuadElem):
            a = Fraction(a)
            if val_p(a, self.p) < 0:
                raise SlotDomainError("reduction of a non-integral element")
            return F.from_int(a.numerator * pow(a.denominator, -1, self.p))
        if a.d != self.d:
            raise SlotDomainError("element of a different quadratic field")
        if self.valuation(a) < 0:
            raise SlotDomainError("reduction of a non-integral element")
        p = self.p
        if self.kind == "inert":
            xb = (a.x.numerator * pow(a.x.denominator, -1, p)) % p
            yb = (a.y.numerator * pow(a.y.denominator, -1, p)) % p
            s = _sqrt_scale(self.d, p)
            return ((xb) % p, (yb * s) % p)
        if self.kind == "ramified":
            return F.from_int(a.x.numerator * pow(a.x.denominator, -1, p))
        # split: use a sqrt(d) lift of sufficient p-adic precision
        m = max(0, -_fin(val_p(a.x, p)), -_fin(val_p(a.y, p)))
        R = _hensel_sqrt(self.d, p, self.root, m + 1)
        t = a.x + a.y * R
        if val_p(t, p) < 0:
            raise SlotDomainError("reduction of a non-integral element")
        if t == 0:
            return F.zero
        return F.from_int(t.numerator * pow(t.denominator, -1, p))

    def lift(self, r) -> FieldElem:
        """A slot-integral preimage of a residue-field element."""
        if self.f == 1:
            return Fraction(int(r))
        s = _sqrt_scale(self.d, self.p)
        sinv = pow(s, -1, self.p)
        return QuadElem.of(r[0], (r[1] * sinv) % self.p, self.d)


def _fin(v) -> int:
    return 0 if v == INF else int(v)


@lru_cache(maxsize=None)
def _sqrt_scale(d: int, p: int) -> int:
    """s with (s*w)^2 = d in F_{p^2}, i.e. s = sqrt(d/r) in F_p."""
    r = smallest_nonresidue(p)
    target = (d * pow(r, -1, p)) % p
    for s in range(1, p):
        if (s * s) % p == target:
            return s
    raise ValueError("d/r should be a residue when both are nonresidues")


@lru_cache(maxsize=None)
def _hensel_sqrt(d: int, p: int, r: int, prec: int) -> int:
    """R with R^2 = d mod p^prec and R = r mod p (r a simple root mod p)."""
    R, k = r % p, 1
    while k < prec:
        k = min(2 * k, prec)
        mod = p**k
        R = (R - (R * R - d) * pow(2 * R, -1, mod)) % mod
    return R


def prime_split(d: int, p: int) -> list[PrimeSlot]:
    """Slots of Q(sqrt(d)) over the odd prime p.

    Split primes get two slots indexed 0 and 1, carrying the two square
    roots of d mod p (index 0 takes the smaller root).
    """
    if p == 2:
        raise ValueError("slots over 2 are out of scope")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if d <= 1 or not is_squarefree(d):
        raise ValueError("field discriminant parameter must be squarefree and > 1")
    if d % p == 0:
        return [PrimeSlot(p=p, e=2, f=1, kind="ramified", d=d)]
    dp = d % p
    roots = sorted(r for r in range(1, p) if (r * r) % p == dp)
    if roots:
        return [
            PrimeSlot(p=p, e=1, f=1, kind="split", d=d, root=roots[0], index=0),
            PrimeSlot(p=p, e=1, f=1, kind="split", d=d, root=roots[1], index=1),
        ]
    return [PrimeSlot(p=p, e=1, f=2, kind="inert", d=d)]


def rational_slot(p: int) -> PrimeSlot:
    return PrimeSlot(p=p, e=1, f=1, kind="rational")


def slots_above(d: int | None, p: int) -> list[PrimeSlot]:
    """All slots over p: one for Q, per prime_split for Q(sqrt(d))."""
    if d is None:
        return [rational_slot(p)]
    return prime_split(d, p)


def val_frak(x: FieldElem, slot: PrimeSlot) -> int | float:
    """Exact valuation of x at the slot (normalized, uniformizer has value 1)."""
    return slot.valuation(x)


# ---------------------------------------------------------------------------
# Point counting


def ff_point_count(coeffs, F: Fq) -> int:
    """Number of points (including infinity) of a Weierstrass curve over F.

    coeffs is the 5-tuple (a1, a2, a3, a4, a6) of residue-field elements
    (plain ints are coerced).  Raises BadReductionError on singular input.
    """
    a1, a2, a3, a4, a6 = (c if not isinstance(c, int) else F.from_int(c) for c in coeffs)
    if _ff_discriminant(coeffs, F) == F.zero:
        raise BadReductionError("bad reduction input")
    if F.p == 2:
        count = 1
        for x in F.elements():
            for y in F.elements():
                lhs = F.add(F.mul(y, y), F.add(F.mul(F.mul(a1, x), y), F.mul(a3, y)))
                x2 = F.mul(x, x)
                rhs = F.add(F.mul(x2, x), F.add(F.mul(a2, x2), F.add(F.mul(a4, x), a6)))
                if lhs == rhs:
                    count += 1
        return count
    if F.f == 1:
        return _count_prime_field(a1, a2, a3, a4, a6, F.p)
    squares = F.squares()
    count = 1
    for x in F.elements():
        x2 = F.mul(x, x)
        fx = F.add(F.mul(x2, x), F.add(F.mul(a2, x2), F.add(F.mul(a4, x), a6)))
        lin = F.add(F.mul(a1, x), a3)
        disc = F.add(F.mul(lin, lin), F.smul(4, fx))
        if F.is_zero(disc):
            count += 1
        elif disc in squares:
            count += 2
    return count


def _count_prime_field(a1, a2, a3, a4, a6, p: int) -> int:
    sq = bytearray(p)
    for i in range(1, p):
        sq[(i * i) % p] = 1
    count = 1
    for x in range(p):
        fx = (x * x * x + a2 * x * x + a4 * x + a6) % p
        lin = (a1 * x + a3) % p
        disc = (lin * lin + 4 * fx) % p
        if disc == 0:
            count += 1
        elif sq[disc]:
            count += 2
    return count


def _ff_discriminant(coeffs, F: Fq):
    a1, a2, a3, a4, a6 = (c if not isinstance(c, int) else F.from_int(c) for c in coeffs)
    b2 = F.add(F.mul(a1, a1), F.smul(4, a2))
    b4 = F.add(F.smul(2, a4), F.mul(a1, a3))
    b6 = F.add(F.mul(a3, a3), F.smul(4, a6))
    b8 = F.add(
        F.add(F.mul(F.mul(a1, a1), a6), F.smul(4, F.mul(a2, a6))),
        F.add(
            F.neg(F.mul(a1, F.mul(a3, a4))),
            F.sub(F.mul(a2, F.mul(a3, a3)), F.mul(a4, a4)),
        ),
    )
    t1 = F.neg(F.mul(F.mul(b2, b2), b8))
    t2 = F.neg(F.smul(8, F.mul(b4, F.mul(b4, b4))))
    t3 = F.neg(F.smul(27, F.mul(b6, b6)))
    t4 = F.smul(9, F.mul(b2, F.mul(b4, b6)))
    return F.add(F.add(t1, t2), F.add(t3, t4))
