"""Prime fields and their quadratic extensions.

Elements of F_p are plain Python ints kept in [0, p).  Elements of F_{p^2}
are :class:`Fp2Elem` objects holding a coordinate pair (a, b) that stands
for a + b*t with t^2 = d.
"""
from __future__ import annotations

import random

from ..errors import NotAUnit, StructuralError


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, probabilistic beyond."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    dd, s = n - 1, 0
    while dd % 2 == 0:
        dd //= 2
        s += 1
    for a in small:
        x = pow(a, dd, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The field F_p with p an odd prime."""

    def __init__(self, p: int):
        if p < 3 or p % 2 == 0 or not is_probable_prime(p):
            raise StructuralError(f"{p} is not an odd prime")
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def legendre(self, a: int) -> int:
        a %= self.p
        if a == 0:
            return 0
        return 1 if pow(a, (self.p - 1) // 2, self.p) == 1 else -1

    def is_square(self, a: int) -> bool:
        return self.legendre(a) >= 0

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise NotAUnit("zero has no inverse in F_p")
        return pow(a, -1, self.p)

    def sqrt(self, a: int) -> int:
        """Square root by Tonelli-Shanks; raises ValueError for non-squares."""
        p = self.p
        a %= p
        if a == 0:
            return 0
        if self.legendre(a) != 1:
            raise ValueError(f"{a} is not a square mod {p}")
        if p % 4 == 3:
            return pow(a, (p + 1) // 4, p)
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while self.legendre(z) != -1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return r

    def smallest_nonresidue(self) -> int:
        d = 2
        while self.legendre(d) != -1:
            d += 1
        return d


class QuadExtField:
    """F_{p^2} = F_p[t]/(t^2 - d) for the smallest positive non-residue d."""

    def __init__(self, p: int):
        self.base = PrimeField(p)
        self.p = p
        self.d = self.base.smallest_nonresidue()
        self._artin = {}
        self.zero = Fp2Elem(self, 0, 0)
        self.one = Fp2Elem(self, 1, 0)

    def __repr__(self):
        return f"QuadExtField(p={self.p}, t^2={self.d})"

    def __eq__(self, other):
        return isinstance(other, QuadExtField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp2", self.p))

    def __reduce__(self):
        return (QuadExtField, (self.p,))

    def __call__(self, a=0, b=0) -> "Fp2Elem":
        if isinstance(a, Fp2Elem):
            if a.field != self:
                raise StructuralError("element belongs to a different field")
            return a
        return Fp2Elem(self, a % self.p, b % self.p)

    def gen(self) -> "Fp2Elem":
        return Fp2Elem(self, 0, 1)

    def random(self, rng: random.Random) -> "Fp2Elem":
        return Fp2Elem(self, rng.randrange(self.p), rng.randrange(self.p))

    def artin(self, precision: int):
        """The truncated power series ring F_{p^2}[eps]/(eps^precision)."""
        ring = self._artin.get(precision)
        if ring is None:
            from .artin import ArtinRing
            ring = ArtinRing(self, precision)
            self._artin[precision] = ring
        return ring

    def sqrt(self, x: "Fp2Elem") -> "Fp2Elem":
        """A square root of x; raises ValueError when x is not a square."""
        p, d, base = self.p, self.d, self.base
        a, b = x.a, x.b
        if b == 0:
            if base.legendre(a) >= 0:
                return Fp2Elem(self, base.sqrt(a), 0)
            return Fp2Elem(self, 0, base.sqrt(a * base.inv(d)))
        norm = (a * a - d * b * b) % p
        if base.legendre(norm) != 1:
            raise ValueError("not a square in F_p^2")
        n = base.sqrt(norm)
        half = (p + 1) // 2
        x0sq = (a + n) * half % p
        if base.legendre(x0sq) != 1:
            x0sq = (a - n) * half % p
        x0 = base.sqrt(x0sq)
        x1 = b * base.inv(2 * x0) % p
        return Fp2Elem(self, x0, x1)

    def is_square(self, x: "Fp2Elem") -> bool:
        if x.b == 0:
            return True
        return self.base.legendre(x.a * x.a - self.d * x.b * x.b) == 1


class Fp2Elem:
    """An element a + b*t of F_{p^2}."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field, a, b):
        self.field = field
        self.a = a
        self.b = b

    def _coerce(self, other):
        if isinstance(other, Fp2Elem):
            if other.field.p != self.field.p:
                raise StructuralError("elements of different fields")
            return other.a, other.b
        if isinstance(other, int):
            return other % self.field.p, 0
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return Fp2Elem(self.field, (self.a + o[0]) % p, (self.b + o[1]) % p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return Fp2Elem(self.field, (self.a - o[0]) % p, (self.b - o[1]) % p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return Fp2Elem(self.field, (o[0] - self.a) % p, (o[1] - self.b) % p)

    def __neg__(self):
        p = self.field.p
        return Fp2Elem(self.field, -self.a % p, -self.b % p)

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.field.p
            return Fp2Elem(self.field, self.a * other % p, self.b * other % p)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        p = f.p
        a, b = self.a, self.b
        c, e = o
        return Fp2Elem(f, (a * c + f.d * b * e) % p, (a * e + b * c) % p)

    __rmul__ = __mul__

    def square(self):
        f = self.field
        p = f.p
        a, b = self.a, self.b
        return Fp2Elem(f, (a * a + f.d * b * b) % p, 2 * a * b % p)

    def norm(self) -> int:
        return (self.a * self.a - self.field.d * self.b * self.b) % self.field.p

    def conjugate(self):
        """The Frobenius image x^p."""
        return Fp2Elem(self.field, self.a, -self.b % self.field.p)

    def inverse(self):
        nrm = self.norm()
        if nrm == 0:
            raise NotAUnit("zero has no inverse in F_p^2")
        p = self.field.p
        ni = pow(nrm, -1, p)
        return Fp2Elem(self.field, self.a * ni % p, -self.b * ni % p)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Fp2Elem(self.field, other % self.field.p, 0)
        if not isinstance(other, Fp2Elem):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, int):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base.square()
        return result

    def __eq__(self, other):
        if isinstance(other, Fp2Elem):
            return self.a == other.a and self.b == other.b and self.field.p == other.field.p
        if isinstance(other, int):
            return self.b == 0 and self.a == other % self.field.p
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a or self.b)

    def is_zero(self) -> bool:
        return not (self.a or self.b)

    def is_unit(self) -> bool:
        return bool(self.a or self.b)

    def in_prime_field(self) -> bool:
        return self.b == 0

    def residue(self):
        """Reduction mod eps; the identity on field elements."""
        return self

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a} + {self.b}*t)"

    def sort_key(self):
        return (self.a, self.b)
