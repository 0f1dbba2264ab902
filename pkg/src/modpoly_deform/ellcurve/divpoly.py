"""Division polynomials in their univariate form.

For odd N the returned polynomial is psi_N itself.  For even N it is
psi_N / (2y), whose roots are the x-coordinates of the N-torsion points
that are not 2-torsion.
"""
from __future__ import annotations

from ..ringarith import Poly


def division_polynomial(E, N: int) -> Poly:
    if N < 0:
        raise ValueError("N must be non-negative")
    cache = E._cache.setdefault("divpoly", {})
    if N in cache:
        return cache[N]
    ring = E.ring
    b2, b4, b6, b8 = E.b_invariants()
    one = ring.one
    base = {
        0: Poly(ring, []),
        1: Poly(ring, [one]),
        2: Poly(ring, [one]),
        3: Poly(ring, [b8, b6 * 3, b4 * 3, b2, ring(3)]),
        4: Poly(ring, [b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, b8 * 10, b6 * 10, b4 * 5, b2,
                       ring(2)]),
    }
    # (2y)^2 as a polynomial in x
    F = Poly(ring, [b6, b4 * 2, b2, ring(4)])
    F2 = F * F

    def get(k):
        if k in cache:
            return cache[k]
        if k in base:
            val = base[k]
        elif k % 2:
            m = (k - 1) // 2
            if m % 2 == 0:
                val = F2 * get(m + 2) * get(m) ** 3 - get(m - 1) * get(m + 1) ** 3
            else:
                val = get(m + 2) * get(m) ** 3 - F2 * get(m - 1) * get(m + 1) ** 3
        else:
            m = k // 2
            val = get(m) * (get(m + 2) * get(m - 1) ** 2 - get(m - 2) * get(m + 1) ** 2)
        cache[k] = val
        return val

    return get(N)
