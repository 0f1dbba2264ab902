"""Weierstrass curves y^2 = x^3 + a2 x^2 + a4 x + a6 and their points.

The coefficient ring is either F_{p^2} (a :class:`QuadExtField`) or a
truncated power series ring over it (an :class:`ArtinRing`); all formulas
below are written once for both.
"""
from __future__ import annotations

import random

from ..errors import ExcludedJInvariant, StructuralError
from ..ringarith import ArtinElement, ArtinRing, Fp2Elem, Poly, QuadExtField


class EllipticCurve:
    """The curve y^2 = x^3 + a2 x^2 + a4 x + a6 over ``ring``."""

    def __init__(self, ring, a2, a4, a6):
        self.ring = ring
        self.a2 = ring(a2)
        self.a4 = ring(a4)
        self.a6 = ring(a6)
        if not self.discriminant().is_unit():
            raise StructuralError("singular curve (discriminant is not a unit)")
        self._cache = {}

    def __repr__(self):
        return f"EllipticCurve(a2={self.a2}, a4={self.a4}, a6={self.a6})"

    def __eq__(self, other):
        return (isinstance(other, EllipticCurve) and self.a2 == other.a2
                and self.a4 == other.a4 and self.a6 == other.a6)

    def __hash__(self):
        return hash((self.a2, self.a4, self.a6))

    def __reduce__(self):
        return (EllipticCurve, (self.ring, self.a2, self.a4, self.a6))

    @property
    def field(self) -> QuadExtField:
        return self.ring.field if isinstance(self.ring, ArtinRing) else self.ring

    @property
    def over_artin(self) -> bool:
        return isinstance(self.ring, ArtinRing)

    # -- invariants ------------------------------------------------------
    def b_invariants(self):
        a2, a4, a6 = self.a2, self.a4, self.a6
        return a2 * 4, a4 * 2, a6 * 4, a2 * a6 * 4 - a4 * a4

    def discriminant(self):
        b2, b4, b6, b8 = self.b_invariants()
        return -(b2 * b2 * b8) - b4 * b4 * b4 * 8 - b6 * b6 * 27 + b2 * b4 * b6 * 9

    def j_invariant(self):
        b2, b4, _, _ = self.b_invariants()
        c4 = b2 * b2 - b4 * 24
        return c4 * c4 * c4 / self.discriminant()

    def short_coefficients(self):
        """(A, B) of the model y^2 = x^3 + A x + B reached by x -> x - a2/3."""
        a2, a4, a6 = self.a2, self.a4, self.a6
        third = self.field(3).inverse()
        A = a4 - a2 * a2 * third
        B = a6 - a2 * a4 * third + a2 * a2 * a2 * (self.field(27).inverse() * 2)
        return A, B

    def rhs(self, x):
        return ((x + self.a2) * x + self.a4) * x + self.a6

    def rhs_poly(self) -> Poly:
        return Poly(self.ring, [self.a6, self.a4, self.a2, self.ring.one])

    def residue(self) -> "EllipticCurve":
        """Reduction mod eps (identity for curves over F_{p^2})."""
        if not self.over_artin:
            return self
        return EllipticCurve(self.field, self.a2.residue(), self.a4.residue(), self.a6.residue())

    def truncate(self, precision: int) -> "EllipticCurve":
        ring = self.field.artin(precision)
        return EllipticCurve(ring, self.a2.truncate(precision), self.a4.truncate(precision),
                             self.a6.truncate(precision))

    def base_change(self, ring) -> "EllipticCurve":
        """Constant embedding of a curve over F_{p^2} into R."""
        return EllipticCurve(ring, ring(self.a2), ring(self.a4), ring(self.a6))

    # -- points ----------------------------------------------------------
    def zero(self) -> "Point":
        return Point(self, None, None)

    def __call__(self, x, y) -> "Point":
        x = self.ring(x)
        y = self.ring(y)
        if y * y != self.rhs(x):
            raise StructuralError("point is not on the curve")
        return Point(self, x, y)

    def random_point(self, rng: random.Random) -> "Point":
        if self.over_artin:
            raise StructuralError("random points are only sampled over F_p^2")
        F = self.ring
        while True:
            x = F.random(rng)
            r = self.rhs(x)
            if F.is_square(r):
                y = F.sqrt(r)
                if rng.randrange(2):
                    y = -y
                return Point(self, x, y)

    def two_torsion_polynomial(self) -> Poly:
        return self.rhs_poly()


def _unit(x) -> bool:
    return x.is_unit()


class Point:
    """An affine point, or the identity when ``x`` is None.

    ``xyz`` gives the projective triple, (0:1:0) for the identity.
    """

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve, x, y):
        self.curve = curve
        self.x = x
        self.y = y

    def is_zero(self) -> bool:
        return self.x is None

    @property
    def xyz(self):
        ring = self.curve.ring
        if self.x is None:
            return (ring.zero, ring.one, ring.zero)
        return (self.x, self.y, ring.one)

    def __repr__(self):
        return "O" if self.x is None else f"({self.x}, {self.y})"

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        if self.x is None or other.x is None:
            return self.x is None and other.x is None
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash(None) if self.x is None else hash((self.x, self.y))

    def __neg__(self):
        if self.x is None:
            return self
        return Point(self.curve, self.x, -self.y)

    def __add__(self, other: "Point") -> "Point":
        E = self.curve
        if self.x is None:
            return other
        if other.x is None:
            return self
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        dx = x2 - x1
        if _unit(dx):
            lam = (y2 - y1) / dx
        elif dx.is_zero():
            if (y1 + y2).is_zero():
                return E.zero()
            if y1 != y2:
                raise StructuralError("points collide modulo eps")
            return self.double()
        else:
            raise StructuralError("points collide modulo eps")
        x3 = lam * lam - E.a2 - x1 - x2
        y3 = lam * (x1 - x3) - y1
        return Point(E, x3, y3)

    def __sub__(self, other):
        return self + (-other)

    def double(self) -> "Point":
        E = self.curve
        if self.x is None:
            return self
        x1, y1 = self.x, self.y
        if y1.is_zero():
            return E.zero()
        if not _unit(y1):
            raise StructuralError("doubling a point whose y is not a unit")
        lam = (x1 * x1 * 3 + E.a2 * x1 * 2 + E.a4) / (y1 * 2)
        x3 = lam * lam - E.a2 - x1 * 2
        y3 = lam * (x1 - x3) - y1
        return Point(E, x3, y3)

    def __mul__(self, k: int) -> "Point":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (-self) * (-k)
        result = self.curve.zero()
        addend = self
        while k:
            if k & 1:
                result = result + addend
            k >>= 1
            if k:
                addend = addend.double()
        return result

    __rmul__ = __mul__

    def residue(self) -> "Point":
        E0 = self.curve.residue()
        if self.x is None:
            return E0.zero()
        return Point(E0, self.x.residue(), self.y.residue())

    def order_divides(self, n: int) -> bool:
        return (self * n).is_zero()


def exact_order_is(P: Point, n: int, prime_factors) -> bool:
    """True when P has order exactly n (``prime_factors`` lists the primes dividing n)."""
    if not (P * n).is_zero():
        return False
    return all(not (P * (n // r)).is_zero() for r in prime_factors)


def curve_from_j_deformation(jtilde: ArtinElement, anchor: EllipticCurve | None = None):
    """A curve over R whose j-invariant is exactly ``jtilde``.

    Without ``anchor`` the curve is y^2 = x^3 + A x + A with
    A = 27 j / (4 (1728 - j)).  With an ``anchor`` curve over F_{p^2} (whose
    j-invariant must be jtilde mod eps) the same family is twisted by the
    constant s = B/A of the anchor's short model and shifted by a2/3, so the
    result reduces mod eps to the anchor's equation exactly.

    Raises:
        ExcludedJInvariant: when jtilde mod eps is 0 or 1728.
    """
    ring = jtilde.ring
    j0 = jtilde.residue()
    if j0.is_zero() or j0 == 1728:
        raise ExcludedJInvariant(f"j = {j0} is excluded")
    A = jtilde * 27 / ((1728 - jtilde) * 4)
    if anchor is None:
        return EllipticCurve(ring, ring.zero, A, A)
    if anchor.j_invariant() != j0:
        raise StructuralError("anchor curve has the wrong j-invariant")
    A1, B1 = anchor.short_coefficients()
    s = B1 / A1
    a4s = A * (s * s)
    a6s = A * (s * s * s)
    r = anchor.a2 / 3
    a2 = ring(anchor.a2)
    a4 = a4s + r * r * 3
    a6 = a4s * r + r * r * r
    a6 = a6 + a6s
    return EllipticCurve(ring, a2, a4, a6)
