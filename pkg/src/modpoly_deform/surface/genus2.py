"""Principally polarised abelian surfaces and single (2,2)-isogeny steps.

A surface is either the Jacobian of y^2 = f(x) with f of degree 5 or 6, or a
product of two elliptic curves. Steps are written at the level of curve
equations and work verbatim over F_{p^2} and over R.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from ..ellcurve import EllipticCurve
from ..errors import NotSplit, SingularJacobian, StructuralError
from ..ringarith import Poly, newton_lift
from .formulas import (coefficient_matrix, det3, glue_equation, involution_form, kernel_vector,
                       richelot_codomain)


@dataclass(frozen=True)
class Jacobian:
    """Jacobian of y^2 = f(x); f has degree 5 or 6."""

    f: Poly

    @property
    def ring(self):
        return self.f.parent

    def residue(self) -> "Jacobian":
        return Jacobian(self.f.residue())


@dataclass(frozen=True)
class Product:
    first: EllipticCurve
    second: EllipticCurve

    @property
    def ring(self):
        return self.first.ring

    def residue(self) -> "Product":
        return Product(self.first.residue(), self.second.residue())


SurfaceState = Union[Jacobian, Product]


@dataclass(frozen=True)
class TwoTorsionRep:
    """A 2-torsion point given by two roots, each of its own defining polynomial.

    For a Jacobian both polynomials are the curve sextic and the point is the
    divisor supported on the two Weierstrass points. For a product each root
    is the x-coordinate of a 2-torsion point on one factor.
    """

    roots: tuple
    polys: tuple

    def residue(self) -> "TwoTorsionRep":
        return TwoTorsionRep(tuple(_residue(r) for r in self.roots),
                             tuple(f.residue() for f in self.polys))

    def is_valid(self) -> bool:
        return all(f(r).is_zero() for r, f in zip(self.roots, self.polys))


@dataclass(frozen=True)
class QuadraticSplitting:
    """f = G1 G2 G3 with G1, G2 monic; G3 carries the leading coefficient of f."""

    G1: Poly
    G2: Poly
    G3: Poly

    @property
    def matrix(self):
        return coefficient_matrix(self.G1, self.G2, self.G3)

    @property
    def determinant(self):
        return det3(self.matrix)


@dataclass(frozen=True)
class SplitDefect:
    """Terminal state of a Richelot step whose determinant is not a unit."""

    delta: object


def _residue(x):
    return x.residue() if hasattr(x, "residue") else x


def _polys_for(A: SurfaceState):
    if isinstance(A, Jacobian):
        return (A.f, A.f)
    return (A.first.rhs_poly(), A.second.rhs_poly())


def lift_2_torsion(A: SurfaceState, P: TwoTorsionRep, lifted: SurfaceState) -> TwoTorsionRep:
    """Lift a 2-torsion representation of A to the deformation ``lifted`` of A.

    Each root is Newton-lifted on the deformed polynomial playing the role of
    its defining polynomial; the branch (Jacobian or product) follows
    ``lifted``, which covers products glued into Jacobians as well.

    Raises:
        SingularJacobian: a root is repeated mod eps.
    """
    if type(A) is not type(lifted):
        raise StructuralError("surface and deformation have different shapes")
    polys = _polys_for(lifted)
    roots = tuple(newton_lift(r, f) for r, f in zip(P.roots, polys))
    return TwoTorsionRep(roots, polys)


def glue_22(A: Product, kernel_x):
    """Glue a product along the kernel given by paired 2-torsion x-coordinates.

    Args:
        A: product E x E' with monic (a2-form) models.
        kernel_x: (a, b), the three x-coordinates of E[2] and of E'[2], with
            (a[i], b[i]) the kernel pairing.

    Returns:
        (Jacobian, shape) with shape = (s1, s2, t1, t2) describing the covering maps.
    """
    a, b = kernel_x
    h, shape, _ = glue_equation(A.ring, a, b)
    return Jacobian(h), shape


def splitting_from_roots(C: Jacobian, pairs, roots) -> QuadraticSplitting:
    par = C.ring
    G1 = Poly.from_roots(par, [roots[i] for i in pairs[0]])
    G2 = Poly.from_roots(par, [roots[i] for i in pairs[1]])
    G3 = Poly.from_roots(par, [roots[i] for i in pairs[2]], lead=C.f.leading())
    return QuadraticSplitting(G1, G2, G3)


def richelot_step(C: Jacobian, kernel: QuadraticSplitting):
    """One Richelot step; returns (Jacobian, (H1, H2, H3)) or a SplitDefect."""
    if not (kernel.G1 * kernel.G2 * kernel.G3 - C.f).is_zero():
        raise StructuralError("kernel quadratics do not factor the curve polynomial")
    Hs, delta = richelot_codomain(kernel.G1, kernel.G2, kernel.G3)
    if Hs is None:
        return SplitDefect(delta)
    return Jacobian(Hs[0] * Hs[1] * Hs[2]), tuple(Hs)


@dataclass(frozen=True)
class SplitData:
    """Coordinate change z = (x - r)/L(x) taking the splitting involution to z -> -z."""

    r: object
    L: Poly

    def mobius(self):
        """Coefficients (a, b, c, d) with x = (a z + b)/(c z + d)."""
        par = self.L.parent
        return self.L[0], self.r, -self.L[1], par.one


def split_coordinates(kernel: QuadraticSplitting, fixed_point=None) -> SplitData:
    """Fixed points of the involution permuting the roots of each G_i.

    Args:
        kernel: a degenerate splitting (zero determinant).
        fixed_point: over R, the residue of the fixed point chosen over the
            base field; Newton-lifted so that both computations match.
    """
    M = kernel.matrix
    k = kernel_vector(M)
    coeffs, _ = involution_form(k)
    par = kernel.G1.parent
    Q = Poly(par, coeffs)
    x = Poly.x(par)
    if fixed_point is None:
        if Q.degree() == 2:
            from ..ringarith import quadratic_roots
            try:
                r = quadratic_roots(Q)[0]
            except ValueError:
                raise StructuralError("involution fixed points are not rational") from None
        elif Q.degree() == 1:
            r = -Q[0] / Q[1]
        else:
            raise StructuralError("degenerate involution")
    else:
        r = newton_lift(fixed_point, Q) if Q.degree() >= 1 else None
        if r is None:
            raise StructuralError("degenerate involution")
    L = Q.exact_quotient(x - r)
    if L.is_zero():
        raise StructuralError("degenerate involution")
    return SplitData(r, L)


def split_22(C: Jacobian, kernel: QuadraticSplitting, data: Optional[SplitData] = None) -> Product:
    """Split a Jacobian whose Richelot determinant vanishes.

    Returns the product of y^2 = F(X) and y^2 = X^3 F(1/X), where the curve
    equation in the coordinate z of ``split_coordinates`` reads y^2 = F(z^2).

    Raises:
        NotSplit: the determinant is a unit.
    """
    if kernel.determinant.is_unit():
        raise NotSplit("Richelot determinant is a unit")
    if not kernel.determinant.is_zero():
        raise NotSplit("Richelot determinant is nonzero")
    if data is None:
        data = split_coordinates(kernel)
    a, b, c, d = data.mobius()
    hz = C.f.mobius(a, b, c, d, 6)
    if any(not hz[i].is_zero() for i in (1, 3, 5)):
        raise StructuralError("transformed curve is not even")
    F = [hz[0], hz[2], hz[4], hz[6]]
    return Product(_cubic_curve(C.ring, F), _cubic_curve(C.ring, F[::-1]))


def _cubic_curve(ring, F):
    """Curve isomorphic to y^2 = F0 + F1 X + F2 X^2 + F3 X^3."""
    e, a, b, c = F
    if not c.is_unit():
        raise SingularJacobian("split factor is not a cubic")
    return EllipticCurve(ring, b, a * c, e * c * c)


def discriminant(f: Poly):
    """Polynomial discriminant via the Sylvester determinant of (f, f')."""
    n = f.degree()
    par = f.parent
    if n < 1:
        raise StructuralError("constant polynomial")
    g = f.derivative()
    m = n - 1
    size = n + m
    zero = par.zero
    rows = []
    fc = list(reversed(f.padded(n + 1)))
    gc = list(reversed(g.padded(m + 1)))
    for i in range(m):
        rows.append([zero] * i + fc + [zero] * (size - n - 1 - i))
    for i in range(n):
        rows.append([zero] * i + gc + [zero] * (size - m - 1 - i))
    res = determinant(rows)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return res * f.leading().inverse() * sign


def determinant(A):
    """Division-free determinant (Berkowitz characteristic polynomial)."""
    n = len(A)
    if n == 0:
        raise StructuralError("empty matrix")
    one = A[0][0] * 0 + 1
    poly = [one, -A[n - 1][n - 1]]
    for k in range(n - 2, -1, -1):
        R = A[k][k + 1:]
        Csub = [A[i][k] for i in range(k + 1, n)]
        sub = [row[k + 1:] for row in A[k + 1:]]
        m = n - k - 1
        col = [one, -A[k][k]]
        vec = Csub
        for _ in range(m):
            col.append(-_dot(R, vec))
            vec = [_dot(row, vec) for row in sub]
        poly = [_sum(col[i - j] * poly[j] for j in range(0, min(i, m) + 1)) for i in range(m + 2)]
    return poly[n] if n % 2 == 0 else -poly[n]


def _dot(a, b):
    return _sum(x * y for x, y in zip(a, b))


def _sum(it):
    it = iter(it)
    acc = next(it)
    for t in it:
        acc = acc + t
    return acc


def chi10(A: SurfaceState):
    """chi_10 of a product (zero) or of a Jacobian (-2^-12 disc f)."""
    if isinstance(A, Product):
        return A.ring.zero
    return -(discriminant(A.f) * A.ring(4096).inverse())
