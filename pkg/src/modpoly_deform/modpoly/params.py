"""Diamond parameters and suitable primes."""
from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import NoParameters
from ..ringarith import is_probable_prime


@dataclass(frozen=True)
class DiamondParams:
    """2^n - c * ell = a^2 + 4 b^2, with c = 1 for ell = 3 mod 4 and c = 3 for ell = 1 mod 4."""

    ell: int
    c: int
    n: int
    a: int
    b: int

    def __post_init__(self):
        if (1 << self.n) - self.c * self.ell != self.a * self.a + 4 * self.b * self.b:
            raise ValueError("parameters violate 2^n - c*ell = a^2 + 4b^2")

    @property
    def gamma_degree(self) -> int:
        return self.a * self.a + 4 * self.b * self.b

    @property
    def prime_modulus(self) -> int:
        return (1 << self.n) * self.c * self.ell


def parameter_cap(ell: int) -> int:
    return 4 * math.ceil(math.log2(ell)) + 16


def _split_sum(m: int):
    """Smallest a >= 0 with m = a^2 + 4 b^2 for some b >= 0, or None."""
    a = 0
    while a * a <= m:
        rest = m - a * a
        if rest % 4 == 0:
            b = math.isqrt(rest // 4)
            if b * b * 4 == rest:
                return a, b
        a += 1
    return None


def find_diamond_parameters(ell: int) -> DiamondParams:
    """Minimal n with 2^n - c*ell a sum a^2 + 4b^2 (smallest a on ties).

    Raises:
        NoParameters: nothing found up to n = 4*ceil(log2 ell) + 16.
    """
    if ell < 3 or ell % 2 == 0 or not is_probable_prime(ell):
        raise ValueError(f"{ell} is not an odd prime")
    c = (-ell) % 4
    for n in range(1, parameter_cap(ell) + 1):
        m = (1 << n) - c * ell
        if m <= 0:
            continue
        ab = _split_sum(m)
        if ab is not None:
            return DiamondParams(ell, c, n, *ab)
    raise NoParameters(f"no diamond parameters for ell = {ell} below the cap")


def next_suitable_prime(params: DiamondParams, after: int = 0) -> int:
    """Smallest prime p > max(after, 11) with p = -1 mod 2^n * c * ell."""
    M = params.prime_modulus
    start = max(after, 11) + 1
    p = start + (-1 - start) % M
    while not is_probable_prime(p):
        p += M
    return p


def suitable_primes(params: DiamondParams, count: int, after: int = 0):
    out = []
    p = after
    for _ in range(count):
        p = next_suitable_prime(params, p)
        out.append(p)
    return out
