"""Torsion bases over F_{p^2} and canonical lifts of torsion points to R."""
from __future__ import annotations

import random

from ..errors import InseparableTorsion, SamplingFailure, StructuralError
from ..ringarith import Poly, newton_lift
from .curve import EllipticCurve, Point
from .divpoly import division_polynomial
from .pairing import _prime_factors, weil_pairing

SAMPLING_BUDGET = 64


def _has_exact_order(P, N, primes):
    if not (P * N).is_zero():
        return False
    return all(not (P * (N // r)).is_zero() for r in primes)


def _root_of_unity_exact(z, N, primes):
    if z ** N != 1:
        return False
    return all(z ** (N // r) != 1 for r in primes)


def torsion_basis(E: EllipticCurve, N: int, rng: random.Random, group_exponent: int):
    """A basis (P, Q) of E[N] for E with E(F_{p^2}) = (Z/group_exponent)^2.

    Points are sampled at random and multiplied by group_exponent/N; the pair
    is accepted once the Weil pairing has exact order N.

    Raises:
        SamplingFailure: after ``SAMPLING_BUDGET`` unsuccessful attempts.
    """
    if group_exponent % N:
        raise StructuralError(f"{N} does not divide the group exponent")
    cof = group_exponent // N
    primes = _prime_factors(N)
    seed = rng.getstate()[1][0] if hasattr(rng, "getstate") else None
    P = None
    for _ in range(SAMPLING_BUDGET):
        cand = E.random_point(rng) * cof
        if P is None:
            if _has_exact_order(cand, N, primes):
                P = cand
            continue
        if not _has_exact_order(cand, N, primes):
            continue
        if _root_of_unity_exact(weil_pairing(P, cand, N), N, primes):
            return P, cand
    raise SamplingFailure(f"no basis of E[{N}] within {SAMPLING_BUDGET} samples", seed)


def point_of_order(E: EllipticCurve, N: int, rng: random.Random, group_exponent: int):
    cof = group_exponent // N
    primes = _prime_factors(N)
    for _ in range(SAMPLING_BUDGET):
        cand = E.random_point(rng) * cof
        if _has_exact_order(cand, N, primes):
            return cand
    raise SamplingFailure(f"no point of order {N} within {SAMPLING_BUDGET} samples")


def lift_point(E: EllipticCurve, P: Point, N: int, curve_R: EllipticCurve) -> Point:
    """The unique N-torsion point of ``curve_R`` reducing to P.

    The x-coordinate is Newton-lifted on the N-division polynomial of the
    deformed curve (on the cubic for 2-torsion), the y-coordinate on the
    curve equation.
    """
    p = E.field.p
    if N % p == 0:
        raise InseparableTorsion(f"characteristic {p} divides {N}")
    if curve_R.residue() != E:
        raise StructuralError("deformed curve does not reduce to the given curve")
    if P.is_zero():
        return curve_R.zero()
    if not (P * N).is_zero():
        raise StructuralError("point is not N-torsion")
    ring = curve_R.ring
    if P.y.is_zero():
        x = newton_lift(P.x, curve_R.rhs_poly())
        return Point(curve_R, x, ring.zero)
    psi = division_polynomial(curve_R, N)
    x = newton_lift(P.x, psi)
    rhs = curve_R.rhs(x)
    y = newton_lift(P.y, Poly(ring, [-rhs, ring.zero, ring.one]))
    return Point(curve_R, x, y)
