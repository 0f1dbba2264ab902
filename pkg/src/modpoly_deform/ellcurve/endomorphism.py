"""The endomorphism iota of E0: y^2 = x^3 + 6x^2 + x with iota^2 = -4."""
from __future__ import annotations

import random

from ..errors import StructuralError
from ..ringarith import Poly, QuadExtField, poly_roots
from .curve import EllipticCurve, Point
from .velu import dual_isogeny, velu_isogeny


def base_curve(field: QuadExtField) -> EllipticCurve:
    """The curve y^2 = x^3 + 6x^2 + x, of j-invariant 287496 = 66^3."""
    return EllipticCurve(field, 6, 1, 0)


class Endomorphism:
    """The endomorphism [a] + [b]*iota of E0.

    Attributes:
        a, b: integer coefficients.
        degree: a^2 + 4 b^2.
    """

    def __init__(self, iota: "Iota", a: int, b: int):
        self.iota = iota
        self.a = a
        self.b = b
        self.degree = a * a + 4 * b * b

    @property
    def domain(self):
        return self.iota.curve

    codomain = domain

    def __call__(self, P: Point) -> Point:
        if self.b == 0:
            return P * self.a
        return P * self.a + self.iota(P) * self.b

    def dual(self) -> "Endomorphism":
        # the dual of iota is -iota
        return Endomorphism(self.iota, self.a, -self.b)


class Iota:
    """iota = phi_dual o i o phi, phi the 2-isogeny with kernel (0, 0)."""

    def __init__(self, curve: EllipticCurve, rng: random.Random):
        F = curve.ring
        self.curve = curve
        self.degree = 4
        T0 = Point(curve, F.zero, F.zero)
        self.phi = velu_isogeny(curve, T0, 2)
        mid = self.phi.codomain
        if mid.j_invariant() != 1728:
            raise StructuralError("the 2-isogenous curve does not have j = 1728")
        # another 2-torsion point spans the kernel of the dual
        others = [r for r in poly_roots(curve.rhs_poly()) if not r.is_zero()]
        if not others:
            raise StructuralError("2-torsion of E0 is not rational")
        T1 = Point(curve, others[0], F.zero)
        test = curve.random_point(rng)
        while (test * 2).is_zero():
            test = curve.random_point(rng)
        self.phi_dual = dual_isogeny(self.phi, T1, test)
        self.sqrt_minus_one = F.sqrt(F(-1))
        self._shift = mid.a2 * 2 / 3
        self.mid = mid

    def automorphism(self, P: Point) -> Point:
        """The order-4 automorphism of the j = 1728 curve."""
        if P.is_zero():
            return P
        return Point(self.mid, -P.x - self._shift, P.y * self.sqrt_minus_one)

    def __call__(self, P: Point) -> Point:
        return self.phi_dual(self.automorphism(self.phi(P)))


def endomorphism_iota(curve: EllipticCurve, rng: random.Random | None = None, checks: int = 4):
    """Build iota on E0 and verify iota(iota(P)) = -4P on random points."""
    rng = rng or random.Random(0)
    iota = Iota(curve, rng)
    for _ in range(checks):
        P = curve.random_point(rng)
        if iota(iota(P)) != P * -4:
            raise StructuralError("iota o iota differs from [-4]")
    return iota
