"""(2,2)-isogeny formulas at the level of curve equations.

Every function here takes ring elements (field elements or truncated power
series) and is used both by the base-field chain and by its replay over R.
"""
from __future__ import annotations

from ..errors import NotAUnit, WouldSplit
from ..ringarith import Poly


def det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def adjugate3(m):
    """Transpose of the cofactor matrix, so that m * adj = det * I."""
    c = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            s = [k for k in range(3) if k != j]
            minor = m[r[0]][s[0]] * m[r[1]][s[1]] - m[r[0]][s[1]] * m[r[1]][s[0]]
            c[j][i] = minor if (i + j) % 2 == 0 else -minor
    return c


def glue_equation(parent, a, b):
    """Sextic of the genus-2 curve glued from two elliptic curves.

    Args:
        parent: coefficient ring.
        a: the three 2-torsion x-coordinates of the first curve (monic model).
        b: the matching 2-torsion x-coordinates of the second curve, b[i]
            paired with a[i] by the kernel.

    Returns:
        (h, (s1, s2, t1, t2)) where h = s1 * prod(x^2 - (a_i - s2)/s1) and the
        covering maps are x_1 = s1 x^2 + s2, x_2 = t1 / x^2 + t2.

    Raises:
        WouldSplit: when the kernel is the graph of an isomorphism.
    """
    M = [[a[i] * b[i], a[i], b[i]] for i in range(3)]
    det = det3(M)
    if not det.is_unit():
        raise WouldSplit("gluing matrix is singular")
    adj = adjugate3(M)
    # (R, S, T) = M^{-1} (1, 1, 1)
    RD = adj[0][0] + adj[0][1] + adj[0][2]
    SD = adj[1][0] + adj[1][1] + adj[1][2]
    TD = adj[2][0] + adj[2][1] + adj[2][2]
    if not RD.is_unit():
        raise WouldSplit("gluing quotient is a product")
    da = (a[0] - a[1]) * (a[1] - a[2]) * (a[2] - a[0])
    db = (b[0] - b[1]) * (b[1] - b[2]) * (b[2] - b[0])
    RD_inv = RD.inverse()
    s1 = -da * RD_inv
    t1 = db * RD_inv
    s2 = -TD * RD_inv
    t2 = -SD * RD_inv
    s1_inv = s1.inverse()
    at = [(ai - s2) * s1_inv for ai in a]
    h = Poly(parent, [s1])
    for c in at:
        h = h * Poly(parent, [-c, parent.zero, parent.one])
    return h, (s1, s2, t1, t2), at


def coefficient_matrix(G1, G2, G3):
    return [G.padded(3) for G in (G1, G2, G3)]


def richelot_codomain(G1, G2, G3):
    """Richelot dual quadratics (H1, H2, H3) and the determinant delta.

    Returns (None, delta) when delta is not a unit, i.e. when the quotient is
    (or deforms from) a product.
    """
    M = coefficient_matrix(G1, G2, G3)
    delta = det3(M)
    if not delta.is_unit():
        return None, delta
    adj = adjugate3(M)
    inv = delta.inverse()
    parent = G1.parent
    Hs = []
    for j in range(3):
        c0 = -(adj[2][j] * inv)
        c1 = adj[1][j] * inv * 2
        c2 = -(adj[0][j] * inv)
        Hs.append(Poly(parent, [c0, c1, c2]))
    return Hs, delta


def kernel_vector(M):
    """A generator of the right kernel of a rank-2 3x3 matrix, normalised so that
    its first unit coordinate (in a fixed scan order) equals 1."""
    rows = [(0, 1), (0, 2), (1, 2)]
    best = None
    for i, j in rows:
        r1, r2 = M[i], M[j]
        k = [r1[1] * r2[2] - r1[2] * r2[1],
             r1[2] * r2[0] - r1[0] * r2[2],
             r1[0] * r2[1] - r1[1] * r2[0]]
        if any(c.is_unit() for c in k):
            best = k
            break
    if best is None:
        raise NotAUnit("matrix rank drops below 2")
    for c in best:
        if c.is_unit():
            inv = c.inverse()
            return [x * inv for x in best]
    raise NotAUnit("no unit coordinate")  # pragma: no cover


def involution_form(k):
    """The quadratic whose roots are the fixed points of the splitting involution.

    A quadratic g0 + g1 x + g2 x^2 is annihilated by the kernel vector k exactly
    when its roots are swapped by the involution with these fixed points.
    """
    parent_elem = k[0]
    return [k[2], -(k[1] * 2), k[0]], parent_elem


def cubic_j(roots):
    """j-invariant of y^2 = (x - r1)(x - r2)(x - r3)."""
    r1, r2, r3 = roots
    a2 = -(r1 + r2 + r3)
    a4 = r1 * r2 + r1 * r3 + r2 * r3
    a6 = -(r1 * r2 * r3)
    b2 = a2 * 4
    b4 = a4 * 2
    b6 = a6 * 4
    b8 = a2 * a6 * 4 - a4 * a4
    c4 = b2 * b2 - b4 * 24
    disc = -(b2 * b2 * b8) - b4 * b4 * b4 * 8 - b6 * b6 * 27 + b2 * b4 * b6 * 9
    return c4 * c4 * c4 / disc
