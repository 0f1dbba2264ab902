"""Truncated power series F_{p^2}[eps]/(eps^n).

An :class:`ArtinElement` keeps its coefficients as two lists of ints, the
t-free parts and the t-parts (t^2 = d).  Short elements are multiplied by
schoolbook convolution, longer ones by Kronecker substitution into a single
big-integer product per coordinate.
"""
from __future__ import annotations

from ..errors import NotAUnit, StructuralError
from .fields import Fp2Elem, QuadExtField

try:  # numpy only speeds up packing; results are identical without it
    import numpy as _np
except ImportError:  # pragma: no cover
    _np = None

# Precision at or below which schoolbook multiplication is used.  Chosen by
# microbenchmark; see tools/bench_mul.py.
SCHOOLBOOK_MAX = 6


def set_schoolbook_threshold(n: int) -> None:
    global SCHOOLBOOK_MAX
    SCHOOLBOOK_MAX = max(1, int(n))


class ArtinRing:
    """The ring R = F_{p^2}[eps]/(eps^precision)."""

    def __init__(self, field: QuadExtField, precision: int):
        if precision < 1:
            raise StructuralError("precision must be at least 1")
        self.field = field
        self.precision = precision
        self.p = field.p
        self.d = field.d
        p, n = self.p, precision
        bound = max(2, 1 + self.d) * n * (p - 1) ** 2
        self._slot_bytes = max(1, (bound.bit_length() + 8) // 8)
        self._use_numpy = _np is not None and self._slot_bytes <= 8
        if self._use_numpy:
            self._slot_bytes = 8

    def __repr__(self):
        return f"ArtinRing(p={self.p}, precision={self.precision})"

    def __eq__(self, other):
        return (isinstance(other, ArtinRing) and other.p == self.p
                and other.precision == self.precision)

    def __hash__(self):
        return hash(("R", self.p, self.precision))

    def __reduce__(self):
        return (_artin_ring, (self.field, self.precision))

    @property
    def zero(self):
        n = self.precision
        return ArtinElement(self, [0] * n, [0] * n)

    @property
    def one(self):
        return self.constant(1)

    def constant(self, c) -> "ArtinElement":
        n = self.precision
        re = [0] * n
        im = [0] * n
        if isinstance(c, Fp2Elem):
            re[0], im[0] = c.a, c.b
        else:
            re[0] = c % self.p
        return ArtinElement(self, re, im)

    def eps(self, power: int = 1) -> "ArtinElement":
        """The element eps^power (zero once power reaches the precision)."""
        n = self.precision
        re = [0] * n
        if power < n:
            re[power] = 1
        return ArtinElement(self, re, [0] * n)

    def from_coeffs(self, coeffs) -> "ArtinElement":
        """Build sum coeffs[k]*eps^k from ints or field elements (padded/truncated)."""
        n = self.precision
        re = [0] * n
        im = [0] * n
        p = self.p
        for k, c in enumerate(coeffs[:n]):
            if isinstance(c, Fp2Elem):
                re[k], im[k] = c.a, c.b
            else:
                re[k] = c % p
        return ArtinElement(self, re, im)

    def __call__(self, x) -> "ArtinElement":
        if isinstance(x, ArtinElement):
            if x.ring != self:
                raise StructuralError("element lives in a different Artin ring")
            return x
        if isinstance(x, (int, Fp2Elem)):
            return self.constant(x)
        return self.from_coeffs(list(x))

    def random(self, rng) -> "ArtinElement":
        n, p = self.precision, self.p
        return ArtinElement(self, [rng.randrange(p) for _ in range(n)],
                            [rng.randrange(p) for _ in range(n)])


def _artin_ring(field, precision):
    return field.artin(precision)


def _pack(values, nbytes):
    if nbytes == 8 and _np is not None:
        return int.from_bytes(_np.array(values, dtype=_np.uint64).tobytes(), "little")
    return int.from_bytes(b"".join(v.to_bytes(nbytes, "little") for v in values), "little")


def _unpack(value, count, nbytes, p):
    raw = value.to_bytes(count * nbytes, "little")
    if nbytes == 8 and _np is not None:
        return (_np.frombuffer(raw, dtype=_np.uint64) % p).tolist()
    fb = int.from_bytes
    return [fb(raw[k * nbytes:(k + 1) * nbytes], "little") % p for k in range(count)]


class ArtinElement:
    """A truncated power series sum_k (re[k] + im[k]*t) eps^k."""

    __slots__ = ("ring", "re", "im", "_packed")

    def __init__(self, ring: ArtinRing, re, im):
        self.ring = ring
        self.re = re
        self.im = im
        self._packed = None

    # -- basic accessors -------------------------------------------------
    @property
    def precision(self) -> int:
        return self.ring.precision

    @property
    def coeffs(self):
        f = self.ring.field
        return [Fp2Elem(f, a, b) for a, b in zip(self.re, self.im)]

    def __getitem__(self, k) -> Fp2Elem:
        return Fp2Elem(self.ring.field, self.re[k], self.im[k])

    def residue(self) -> Fp2Elem:
        """Reduction mod eps."""
        return Fp2Elem(self.ring.field, self.re[0], self.im[0])

    def valuation(self) -> int:
        """eps-adic valuation; equals the precision for the zero element."""
        for k, (a, b) in enumerate(zip(self.re, self.im)):
            if a or b:
                return k
        return self.ring.precision

    def is_zero(self) -> bool:
        return not (any(self.re) or any(self.im))

    def is_unit(self) -> bool:
        return bool(self.re[0] or self.im[0])

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for k, (a, b) in enumerate(zip(self.re, self.im)):
            if a or b:
                c = f"{a}" if not b else f"({a}+{b}t)"
                terms.append(c if k == 0 else f"{c}*e^{k}")
        return " + ".join(terms) if terms else "0"

    # -- precision management ------------------------------------------
    def truncate(self, precision: int) -> "ArtinElement":
        if precision > self.ring.precision:
            raise StructuralError("cannot truncate to a higher precision")
        if precision == self.ring.precision:
            return self
        return ArtinElement(self.ring.field.artin(precision),
                            self.re[:precision], self.im[:precision])

    def extend(self, precision: int) -> "ArtinElement":
        """Embed into a higher precision ring by padding with zeros."""
        n = self.ring.precision
        if precision < n:
            raise StructuralError("cannot extend to a lower precision")
        if precision == n:
            return self
        pad = [0] * (precision - n)
        return ArtinElement(self.ring.field.artin(precision), self.re + pad, self.im + pad)

    def shift(self, k: int) -> "ArtinElement":
        """Multiply by eps^k, staying at the same precision."""
        n = self.ring.precision
        if k >= n:
            return self.ring.zero
        z = [0] * k
        return ArtinElement(self.ring, z + self.re[:n - k], z + self.im[:n - k])

    # -- arithmetic ------------------------------------------------------
    def _same(self, other):
        if other.ring is not self.ring and other.ring != self.ring:
            raise StructuralError(
                f"precision/field mismatch: {self.ring} vs {other.ring}")

    def _scalar(self, other):
        if isinstance(other, int):
            return other % self.ring.p, 0
        if isinstance(other, Fp2Elem):
            if other.field.p != self.ring.p:
                raise StructuralError("field mismatch")
            return other.a, other.b
        return None

    def __add__(self, other):
        p = self.ring.p
        if isinstance(other, ArtinElement):
            self._same(other)
            return ArtinElement(self.ring, [(x + y) % p for x, y in zip(self.re, other.re)],
                                [(x + y) % p for x, y in zip(self.im, other.im)])
        s = self._scalar(other)
        if s is None:
            return NotImplemented
        re = list(self.re)
        im = list(self.im)
        re[0] = (re[0] + s[0]) % p
        im[0] = (im[0] + s[1]) % p
        return ArtinElement(self.ring, re, im)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return ArtinElement(self.ring, [-x % p for x in self.re], [-x % p for x in self.im])

    def __sub__(self, other):
        p = self.ring.p
        if isinstance(other, ArtinElement):
            self._same(other)
            return ArtinElement(self.ring, [(x - y) % p for x, y in zip(self.re, other.re)],
                                [(x - y) % p for x, y in zip(self.im, other.im)])
        s = self._scalar(other)
        if s is None:
            return NotImplemented
        re = list(self.re)
        im = list(self.im)
        re[0] = (re[0] - s[0]) % p
        im[0] = (im[0] - s[1]) % p
        return ArtinElement(self.ring, re, im)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def scale(self, c) -> "ArtinElement":
        """Multiply by a scalar from F_{p^2} (or an int)."""
        s = self._scalar(c)
        ring = self.ring
        p, d = ring.p, ring.d
        a, b = s
        if b == 0:
            return ArtinElement(ring, [x * a % p for x in self.re], [y * a % p for y in self.im])
        db = d * b
        return ArtinElement(ring, [(x * a + y * db) % p for x, y in zip(self.re, self.im)],
                            [(x * b + y * a) % p for x, y in zip(self.re, self.im)])

    def __mul__(self, other):
        if isinstance(other, ArtinElement):
            self._same(other)
            return _mul(self, other)
        if self._scalar(other) is None:
            return NotImplemented
        return self.scale(other)

    __rmul__ = __mul__

    def square(self):
        return _mul(self, self)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> "ArtinElement":
        """Inverse of a unit by Newton iteration x <- x(2 - a x)."""
        ring = self.ring
        a0 = self.residue()
        if a0.is_zero():
            raise NotAUnit("element has zero constant term")
        n = ring.precision
        x = ring.field.artin(1).constant(a0.inverse())
        k = 1
        while k < n:
            k = min(2 * k, n)
            x = x.extend(k)
            ax = self.truncate(k) * x
            x = x * (2 - ax)
        return x

    def __truediv__(self, other):
        if isinstance(other, ArtinElement):
            return self * other.inverse()
        s = self._scalar(other)
        if s is None:
            return NotImplemented
        return self.scale(Fp2Elem(self.ring.field, *s).inverse())

    def __rtruediv__(self, other):
        return self.inverse() * other

    def exact_div(self, other: "ArtinElement") -> "ArtinElement":
        """Divide by an element of valuation v; the quotient has precision n - v."""
        self._same(other)
        v = other.valuation()
        n = self.ring.precision
        if v >= n:
            raise NotAUnit("division by zero")
        if self.valuation() < v:
            raise NotAUnit("dividend has smaller valuation than divisor")
        ring = self.ring.field.artin(n - v)
        num = ArtinElement(ring, self.re[v:], self.im[v:])
        den = ArtinElement(ring, other.re[v:], other.im[v:])
        return num * den.inverse()

    def __eq__(self, other):
        if isinstance(other, ArtinElement):
            return (self.ring.precision == other.ring.precision and self.ring.p == other.ring.p
                    and self.re == other.re and self.im == other.im)
        s = self._scalar(other) if isinstance(other, (int, Fp2Elem)) else None
        if s is None:
            return NotImplemented
        return (self.re[0] == s[0] and self.im[0] == s[1]
                and not any(self.re[1:]) and not any(self.im[1:]))

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((tuple(self.re), tuple(self.im)))

    def packed(self):
        """Kronecker images of both coordinate lists (cached)."""
        pk = self._packed
        if pk is None:
            nb = self.ring._slot_bytes
            pk = (_pack(self.re, nb), _pack(self.im, nb))
            self._packed = pk
        return pk


def _mul(x: ArtinElement, y: ArtinElement) -> ArtinElement:
    ring = x.ring
    n = ring.precision
    p, d = ring.p, ring.d
    if n <= SCHOOLBOOK_MAX:
        ar, ai, br, bi = x.re, x.im, y.re, y.im
        if n == 1:
            a, b, c, e = ar[0], ai[0], br[0], bi[0]
            return ArtinElement(ring, [(a * c + d * b * e) % p], [(a * e + b * c) % p])
        re = [0] * n
        im = [0] * n
        for i in range(n):
            u = ar[i]
            v = ai[i]
            if not (u or v):
                continue
            dv = d * v
            for j in range(n - i):
                s = br[j]
                w = bi[j]
                re[i + j] += u * s + dv * w
                im[i + j] += u * w + v * s
        return ArtinElement(ring, [c % p for c in re], [c % p for c in im])
    nb = ring._slot_bytes
    A0, A1 = x.packed()
    B0, B1 = y.packed()
    uu = A0 * B0
    vv = A1 * B1
    if A1 == 0 or B1 == 0:
        cross = A0 * B1 + A1 * B0
    else:
        cross = (A0 + A1) * (B0 + B1) - uu - vv
    mask = (1 << (8 * nb * n)) - 1
    real = (uu + d * vv) & mask
    return ArtinElement(ring, _unpack(real, n, nb, p), _unpack(cross & mask, n, nb, p))
