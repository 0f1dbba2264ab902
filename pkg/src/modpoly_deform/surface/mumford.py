"""Mumford divisors on y^2 = h(x) over F_{p^2}, with the point maps of the chain.

Only the generic cases are implemented. Anything that would need a special
case (shared x-coordinates, a point at infinity, a degree drop) raises
DegenerateDivisor, and the caller retries with different choices.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import DegenerateDivisor, StructuralError
from ..ringarith import Poly, poly_gcd, poly_xgcd


@dataclass(frozen=True)
class Divisor:
    """Reduced divisor (u, v): u monic of degree <= 2, deg v < deg u, u | h - v^2."""

    u: Poly
    v: Poly

    @classmethod
    def zero(cls, field):
        return cls(Poly(field, [1]), Poly(field, []))

    @classmethod
    def normalised(cls, u: Poly, v: Poly) -> "Divisor":
        if u.is_zero() or not u.leading().is_unit():
            raise DegenerateDivisor("empty u")
        u = u.monic()
        return cls(u, v % u)

    def is_zero(self) -> bool:
        return self.u.degree() == 0

    def is_two_torsion(self) -> bool:
        return self.v.is_zero()

    def check(self, h: Poly) -> bool:
        return ((h - self.v * self.v) % self.u).is_zero()

    def __neg__(self):
        return Divisor(self.u, -self.v)

    def add(self, other: "Divisor", h: Poly) -> "Divisor":
        """Sum of two generic degree-2 divisors with coprime u's."""
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.u.degree() != 2 or other.u.degree() != 2:
            raise DegenerateDivisor("non-generic summand")
        g, s, t = poly_xgcd(self.u, other.u)
        if g.degree() != 0:
            raise DegenerateDivisor("summands share an x-coordinate")
        u = self.u * other.u
        # v = v1 mod u1, v = v2 mod u2
        v = (self.v * t * other.u + other.v * s * self.u) % u
        return _reduce(u, v, h)

    def mobius_inversion(self, t) -> "Divisor":
        """Image under x = t + 1/x', y = y' / x'^3."""
        if self.is_zero():
            return self
        field = self.u.parent
        U = self.u.mobius(t, field.one, field.one, field.zero, 2)
        if U.degree() != 2:
            raise DegenerateDivisor("divisor meets the point sent to infinity")
        V = self.v.mobius(t, field.one, field.one, field.zero, 3)
        return Divisor.normalised(U, V)


def _reduce(u: Poly, v: Poly, h: Poly) -> Divisor:
    while u.degree() > 2:
        q, r = (h - v * v).divmod(u)
        if not r.is_zero():
            raise StructuralError("composition is not a divisor")
        u = q
        if u.degree() < 2:
            raise DegenerateDivisor("reduction lost a point at infinity")
        v = (-v) % u
    return Divisor.normalised(u, v)


def glue_image(parent, shape, P1, P2):
    """Image of (P1, P2) on the glued Jacobian.

    Args:
        parent: F_{p^2}.
        shape: (h, s1, s2, t1, t2) from the gluing step.
        P1: point of the first curve, in the monic x^3 + ... model used for gluing.
        P2: point of the second curve, same convention.

    Returns:
        Divisor class pi_1^*(P1) + pi_2^*(P2).
    """
    h, s1, s2, t1, t2 = shape
    out = Divisor.zero(parent)
    if P1 is not None:
        x1, y1 = P1
        u = Poly(parent, [s2 - x1, 0, s1])
        v = Poly(parent, [y1 / s1])
        out = Divisor.normalised(u, v)
    if P2 is not None:
        x2, y2 = P2
        den = x2 - t2
        if den.is_zero():
            raise DegenerateDivisor("pullback meets x = 0")
        u = Poly(parent, [-t1, 0, den])
        v = Poly(parent, [0, 0, 0, y2 / t1])
        out = out.add(Divisor.normalised(u, v), h)
    return out


class RichelotCorrespondence:
    """The Richelot correspondence sending divisors on y^2 = G1 G2 G3 to y^2 = H1 H2 H3."""

    def __init__(self, G1: Poly, G2: Poly, H1: Poly, H2: Poly, hnew: Poly):
        self.G1, self.G2, self.H1, self.H2, self.hnew = G1, G2, H1, H2, hnew
        self.H11 = H1 * H1
        self.H12 = H1 * H2
        self.H22 = H2 * H2

    def __call__(self, D: Divisor) -> Divisor:
        if D.is_zero():
            return D
        U, V = D.u, D.v
        if U.degree() != 2:
            raise DegenerateDivisor("non-generic divisor")
        s = -U[1]
        p = U[0]
        g1red = self.G1 - U
        g2red = self.G2 - U
        g11, g10 = g1red[1], g1red[0]
        g21, g20 = g2red[1], g2red[0]
        v1, v0 = V[1], V[0]
        Px = (self.H11 * (g11 * g11 * p + g11 * g10 * s + g10 * g10)
              + self.H12 * (g11 * g21 * p * 2 + (g11 * g20 + g21 * g10) * s + g10 * g20 * 2)
              + self.H22 * (g21 * g21 * p + g21 * g20 * s + g20 * g20))
        if Px.degree() != 4:
            raise DegenerateDivisor("image meets infinity")
        Py2 = v1 * v1 * p + v1 * v0 * s + v0 * v0
        lin = Poly(U.parent, [
            -(v1 * g11 * s * p + v1 * g10 * p * 2 + v0 * g11 * (s * s - p * 2) + v0 * g10 * s),
            v1 * g11 * p * 2 + v1 * g10 * s + v0 * g11 * s + v0 * g10 * 2,
        ])
        Py1 = self.H1 * lin
        Py0 = self.H11 * U * (g11 * g11 * p + g11 * g10 * s + g10 * g10)
        g, inv, _ = poly_xgcd(Py1, Px)
        if g.degree() != 0:
            raise DegenerateDivisor("image y-coordinate is not determined")
        Py = (-(inv * (self.hnew * Py2 + Py0))) % Px
        Dx, r = (self.hnew - Py * Py).divmod(Px)
        if not r.is_zero():
            raise StructuralError("correspondence image is not a divisor")
        if Dx.degree() != 2:
            raise DegenerateDivisor("image has a point at infinity")
        return Divisor.normalised(Dx, -Py)


def roots_in(u: Poly, roots) -> list[int]:
    """Indices of the listed roots at which u vanishes."""
    return [i for i, r in enumerate(roots) if u(r).is_zero()]


__all__ = ["Divisor", "glue_image", "RichelotCorrespondence", "roots_in", "poly_gcd"]
