"""Dense univariate polynomials over F_{p^2} or over an Artin ring R.

The same class serves both coefficient rings; products of long polynomials
over R go through a two-level Kronecker substitution.
"""
from __future__ import annotations

from ..errors import NotAUnit, SingularJacobian, StructuralError
from .artin import ArtinElement, ArtinRing, _pack, _unpack
from .fields import Fp2Elem, QuadExtField

# Polynomials over R with at least this many coefficients in both factors
# are multiplied through Kronecker substitution.
KRONECKER_MIN_TERMS = 4


class Poly:
    """A polynomial sum c_i x^i with coefficients in ``parent``."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent, coeffs):
        self.parent = parent
        cs = [parent(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs

    @classmethod
    def _raw(cls, parent, coeffs):
        obj = cls.__new__(cls)
        obj.parent = parent
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        obj.coeffs = coeffs
        return obj

    @classmethod
    def x(cls, parent):
        return cls._raw(parent, [parent.zero, parent.one])

    @classmethod
    def from_roots(cls, parent, roots, lead=None):
        out = cls._raw(parent, [parent.one if lead is None else parent(lead)])
        for r in roots:
            out = out * cls._raw(parent, [-parent(r), parent.one])
        return out

    # -- structure -------------------------------------------------------
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.parent.zero

    def leading(self):
        return self.coeffs[-1] if self.coeffs else self.parent.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def padded(self, length):
        return self.coeffs + [self.parent.zero] * (length - len(self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"[{c}]x^{i}" for i, c in enumerate(self.coeffs) if not c.is_zero())

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.coeffs))

    # -- arithmetic ------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        return Poly._raw(self.parent, [self.parent(other)])

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = [x + y for x, y in zip(a, b)] + a[len(b):]
        return Poly._raw(self.parent, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.parent, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c):
        return Poly._raw(self.parent, [x * c for x in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(self.parent, [])
        if (isinstance(self.parent, ArtinRing) and min(len(a), len(b)) >= KRONECKER_MIN_TERMS
                and self.parent.precision > 1):
            return Poly._raw(self.parent, _kronecker_rpoly(self.parent, a, b))
        out = [None] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                t = x * y
                k = i + j
                out[k] = t if out[k] is None else out[k] + t
        return Poly._raw(self.parent, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Poly._raw(self.parent, [self.parent.one])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, x):
        """Horner evaluation at a ring element."""
        cs = self.coeffs
        if not cs:
            return self.parent.zero
        acc = cs[-1]
        for c in reversed(cs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self):
        return Poly._raw(self.parent, [c * i for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other):
        """Euclidean division by a polynomial whose leading coefficient is a unit."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead_inv = other.leading().inverse()
        rem = list(self.coeffs)
        db = other.degree()
        bcs = other.coeffs
        if len(rem) - 1 < db:
            return Poly._raw(self.parent, []), self
        quot = [self.parent.zero] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * lead_inv
            quot[k] = c
            if c.is_zero():
                continue
            for j in range(db + 1):
                rem[k + j] = rem[k + j] - c * bcs[j]
        return Poly._raw(self.parent, quot), Poly._raw(self.parent, rem[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_quotient(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise StructuralError("division is not exact")
        return q

    def monic(self):
        return self.scale(self.leading().inverse())

    # -- conversions -----------------------------------------------------
    def truncate(self, precision):
        """Reduce coefficients over R to a lower precision (precision 1 stays over R)."""
        return Poly._raw(self.parent.field.artin(precision),
                         [c.truncate(precision) for c in self.coeffs])

    def residue(self):
        """Reduction mod eps as a polynomial over F_{p^2}."""
        if isinstance(self.parent, QuadExtField):
            return self
        return Poly._raw(self.parent.field, [c.residue() for c in self.coeffs])

    def change_ring(self, parent):
        """Embed a polynomial over F_{p^2} into R (or re-coerce)."""
        return Poly._raw(parent, [parent(c) for c in self.coeffs])

    def mobius(self, a, b, c, d, degree):
        """The binary form (c x + d)^degree * f((a x + b)/(c x + d))."""
        par = self.parent
        num = Poly._raw(par, [par(b), par(a)])
        den = Poly._raw(par, [par(d), par(c)])
        out = Poly._raw(par, [])
        cs = self.padded(degree + 1)
        for k in range(degree + 1):
            if cs[k].is_zero():
                continue
            out = out + (num ** k) * (den ** (degree - k)) * cs[k]
        return out


def _kronecker_rpoly(ring: ArtinRing, a, b):
    """Product of coefficient lists over R via packing into big integers."""
    n = ring.precision
    p, d = ring.p, ring.d
    stride = 2 * n - 1
    terms = min(len(a), len(b))
    bound = max(2, 1 + d) * n * terms * (p - 1) ** 2
    nb = max(1, (bound.bit_length() + 8) // 8)
    if nb <= 8:
        nb = 8

    def pack(cs, attr):
        vals = []
        pad = [0] * (stride - n)
        for c in cs:
            vals.extend(getattr(c, attr))
            vals.extend(pad)
        return _pack(vals, nb)

    A0, A1 = pack(a, "re"), pack(a, "im")
    B0, B1 = pack(b, "re"), pack(b, "im")
    uu = A0 * B0
    vv = A1 * B1
    cross = (A0 + A1) * (B0 + B1) - uu - vv
    count = (len(a) + len(b) - 1) * stride
    real = _unpack(uu + d * vv, count, nb, p)
    imag = _unpack(cross, count, nb, p)
    out = []
    for i in range(len(a) + len(b) - 1):
        s = i * stride
        out.append(ArtinElement(ring, real[s:s + n], imag[s:s + n]))
    return out


def newton_lift(alpha, f: Poly) -> ArtinElement:
    """Lift a simple root of f mod eps to the unique root of f in R.

    Args:
        alpha: root of f mod eps, as an element of F_{p^2} (or of R, in which
            case only its residue is used).
        f: polynomial over R.

    Returns:
        The root of f in R reducing to alpha.
    """
    return newton_lift_many([alpha], f)[0]


def _eval_with_derivative(cs, x):
    acc = cs[-1]
    dacc = None
    for c in reversed(cs[:-1]):
        dacc = acc if dacc is None else dacc * x + acc
        acc = acc * x + c
    return acc, dacc


def newton_lift_many(alphas, f: Poly):
    """Newton-lift several simple roots of the same polynomial, sharing the truncations."""
    ring = f.parent
    n = ring.precision
    base = f.residue()
    dbase = base.derivative()
    roots = []
    for alpha in alphas:
        if isinstance(alpha, ArtinElement):
            alpha = alpha.residue()
        if not base(alpha).is_zero():
            raise StructuralError("starting value is not a root mod eps")
        if dbase(alpha).is_zero():
            raise SingularJacobian("derivative vanishes at the root mod eps")
        roots.append(alpha)
    if n == 1 or f.degree() < 1:
        return [ring.constant(a) for a in roots]
    lifted = [ring.field.artin(1).constant(a) for a in roots]
    k = 1
    while k < n:
        k = min(2 * k, n)
        cs = [c.truncate(k) for c in f.coeffs]
        nxt = []
        for r in lifted:
            r = r.extend(k)
            val, der = _eval_with_derivative(cs, r)
            nxt.append(r - val * der.inverse())
        lifted = nxt
    return lifted


def product_tree(factors):
    """Product of a nonempty list of polynomials, multiplied pairwise in a balanced tree."""
    if not factors:
        raise StructuralError("empty product")
    layer = list(factors)
    while len(layer) > 1:
        nxt = [layer[i] * layer[i + 1] for i in range(0, len(layer) - 1, 2)]
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]


def quadratic_roots(poly: Poly):
    """Both roots of a degree-2 polynomial over F_{p^2}; ValueError if not split."""
    if poly.degree() != 2:
        raise StructuralError("not a quadratic")
    c0, c1, c2 = poly.coeffs
    field = poly.parent
    disc = c1 * c1 - c0 * c2 * 4
    s = field.sqrt(disc)
    inv = (c2 * 2).inverse()
    return [(-c1 + s) * inv, (-c1 - s) * inv]


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_xgcd(a: Poly, b: Poly):
    """Return (g, s, t) with s*a + t*b = g monic (over a field)."""
    par = a.parent
    one = Poly._raw(par, [par.one])
    zero = Poly._raw(par, [])
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = r0.leading().inverse()
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def poly_roots(f: Poly):
    """All roots in F_{p^2} of a squarefree polynomial over F_{p^2}, by equal-degree splitting.

    Only used on small degrees (cubics) off the hot path.
    """
    field = f.parent
    if f.degree() <= 0:
        return []
    if f.degree() == 1:
        return [-f[0] / f[1]]
    if f.degree() == 2:
        try:
            return quadratic_roots(f)
        except ValueError:
            return []
    q = field.p ** 2
    x = Poly.x(field)
    # keep only the part that splits over F_{p^2}
    xq = _powmod(x, q, f)
    g = poly_gcd(f, xq - x)
    if g.degree() <= 0:
        return []
    return _split_roots(g)


def _powmod(base: Poly, e: int, mod: Poly) -> Poly:
    par = base.parent
    result = Poly._raw(par, [par.one])
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        e >>= 1
        if e:
            base = (base * base) % mod
    return result


def _split_roots(g: Poly):
    import random
    field = g.parent
    if g.degree() == 1:
        return [-g[0] / g[1]]
    if g.degree() == 2:
        return quadratic_roots(g)
    rng = random.Random(g.degree() * 7919 + field.p)
    q = field.p ** 2
    while True:
        a = Poly._raw(field, [field.random(rng), field.one])
        h = _powmod(a, (q - 1) // 2, g) - Poly._raw(field, [field.one])
        d = poly_gcd(g, h)
        if 0 < d.degree() < g.degree():
            return _split_roots(d) + _split_roots(g.exact_quotient(d))


__all__ = ["Poly", "newton_lift", "newton_lift_many", "product_tree", "quadratic_roots", "poly_gcd",
           "poly_xgcd", "poly_roots", "NotAUnit", "Fp2Elem"]
