"""Vélu isogenies, isomorphisms and duals for curves with a1 = a3 = 0."""
from __future__ import annotations

from ..errors import StructuralError
from .curve import EllipticCurve, Point


class IsogenyRecord:
    """A normalised separable isogeny given by Vélu's formulas.

    Attributes:
        domain, codomain: the two curves.
        kernel: generator of the kernel.
        degree: order of the kernel.
    """

    def __init__(self, domain, codomain, kernel, degree, terms, post=None, velu_codomain=None):
        self.domain = domain
        self.codomain = codomain
        self.kernel = kernel
        self.degree = degree
        self._terms = terms
        # optional isomorphism applied after the Vélu map
        self._post = post
        self._velu_codomain = velu_codomain if velu_codomain is not None else codomain

    def __repr__(self):
        return f"IsogenyRecord(degree={self.degree}, codomain={self.codomain})"

    def __call__(self, P: Point) -> Point:
        if P.curve != self.domain:
            raise StructuralError("point is not on the domain curve")
        Q = self._velu_eval(P)
        return Q if self._post is None else self._post(Q)

    def _velu_eval(self, P):
        target = self._velu_codomain
        if P.is_zero():
            return target.zero()
        x, y = P.x, P.y
        X = x
        Y = y
        for xq, yq, gx, gy, v, u in self._terms:
            t = x - xq
            if not t.is_unit():
                if t.is_zero():
                    return target.zero()
                raise StructuralError("point collides with the kernel modulo eps")
            ti = t.inverse()
            ti2 = ti * ti
            X = X + v * ti + u * ti2
            Y = Y - (u * y * 2 * ti2 * ti + (v * (y - yq) - gx * gy) * ti2)
        return Point(target, X, Y)

    def with_post_isomorphism(self, iso: "Isomorphism") -> "IsogenyRecord":
        post = iso if self._post is None else _Compose(self._post, iso)
        return IsogenyRecord(self.domain, iso.codomain, self.kernel, self.degree, self._terms,
                             post, self._velu_codomain)

    def residue(self) -> "IsogenyRecord":
        """Reduction mod eps of a record computed over R."""
        return velu_isogeny(self.domain.residue(), self.kernel.residue(), self.degree)


class _Compose:
    def __init__(self, first, second):
        self.first = first
        self.second = second

    def __call__(self, P):
        return self.second(self.first(P))


def kernel_multiples(K: Point, degree: int):
    pts = [K]
    for _ in range(degree - 2):
        pts.append(pts[-1] + K)
    if not (pts[-1] + K).is_zero():
        raise StructuralError("kernel point does not have the stated order")
    return pts


def velu_isogeny(E: EllipticCurve, K: Point, degree: int) -> IsogenyRecord:
    """Isogeny with kernel generated by K of exact order ``degree``.

    Works over F_{p^2} and over R (for K a lifted torsion point).
    """
    if K.is_zero():
        raise StructuralError("kernel generator is the identity")
    pts = kernel_multiples(K, degree)
    if degree % 2 == 0:
        half = pts[: degree // 2]
    else:
        half = pts[: (degree - 1) // 2]
    a2, a4 = E.a2, E.a4
    v = E.ring.zero
    w = E.ring.zero
    terms = []
    for Q in half:
        xq, yq = Q.x, Q.y
        gx = xq * xq * 3 + a2 * xq * 2 + a4
        gy = yq * -2
        if yq.is_zero():
            vq = gx
        else:
            vq = gx * 2
        uq = gy * gy
        v = v + vq
        w = w + uq + xq * vq
        terms.append((xq, yq, gx, gy, vq, uq))
    b2 = a2 * 4
    codomain = EllipticCurve(E.ring, a2, a4 - v * 5, E.a6 - b2 * v - w * 7)
    return IsogenyRecord(E, codomain, K, degree, terms)


class Isomorphism:
    """(x, y) -> (u^2 x + r, u^3 y) between curves with a1 = a3 = 0."""

    def __init__(self, domain, codomain, u, r):
        self.domain = domain
        self.codomain = codomain
        self.u = u
        self.r = r

    def __call__(self, P: Point) -> Point:
        if P.is_zero():
            return self.codomain.zero()
        u2 = self.u * self.u
        return Point(self.codomain, u2 * P.x + self.r, u2 * self.u * P.y)


def isomorphisms(E1: EllipticCurve, E2: EllipticCurve):
    """Both isomorphisms E1 -> E2 differing by [-1] (curves with j not 0, 1728)."""
    F = E1.ring
    A1, B1 = E1.short_coefficients()
    A2, B2 = E2.short_coefficients()
    if A1.is_zero() or B1.is_zero():
        raise StructuralError("j-invariant 0 or 1728 has extra automorphisms")
    u2 = (B2 * A1) / (A2 * B1)
    if u2 * u2 * A1 != A2:
        raise StructuralError("curves are not isomorphic")
    u = F.sqrt(u2)
    third = F(3).inverse()
    r = u2 * E1.a2 * third - E2.a2 * third
    return [Isomorphism(E1, E2, u, r), Isomorphism(E1, E2, -u, r)]


def dual_isogeny(phi: IsogenyRecord, aux: Point, test: Point) -> IsogenyRecord:
    """The dual of a prime-degree isogeny over F_{p^2}.

    Args:
        phi: the isogeny E -> E'.
        aux: a point of E[deg] outside the kernel of phi.
        test: a point of E used to fix the sign so that dual(phi(P)) = deg * P.
    """
    d = phi.degree
    K = phi(aux)
    psi = velu_isogeny(phi.codomain, K, d)
    target = d * test
    img = psi(phi(test))
    for iso in isomorphisms(psi.codomain, phi.domain):
        if iso(img) == target:
            return psi.with_post_isomorphism(iso)
    raise StructuralError("could not normalise the dual isogeny")
