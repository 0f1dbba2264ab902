"""Weil pairing by Miller's algorithm."""
from __future__ import annotations

from ..errors import NotAUnit, StructuralError
from .curve import Point


class _Degenerate(Exception):
    pass


def _miller(P, Q, n):
    """(numerator, denominator) of f_{n,P}(Q) for a point P of exact order n."""
    E = P.curve
    F = E.ring
    xq, yq = Q.x, Q.y
    num = F.one
    den = F.one

    def line(T, S):
        # value at Q of the line through T and S, and the vertical at T+S
        if T.x == S.x and (T.y + S.y).is_zero():
            return xq - T.x, F.one, E.zero()
        if T == S:
            lam = (T.x * T.x * 3 + E.a2 * T.x * 2 + E.a4) / (T.y * 2)
        else:
            lam = (S.y - T.y) / (S.x - T.x)
        x3 = lam * lam - E.a2 - T.x - S.x
        y3 = lam * (T.x - x3) - T.y
        return yq - T.y - lam * (xq - T.x), xq - x3, Point(E, x3, y3)

    T = P
    for bit in bin(n)[3:]:
        l, v, R = line(T, T)
        num = num * num * l
        den = den * den * v
        T = R
        if bit == "1":
            l, v, R = line(T, P)
            num = num * l
            den = den * v
            T = R
    if num.is_zero() or den.is_zero():
        raise _Degenerate
    return num, den


def _exact_order(P, n):
    order = n
    for r in _prime_factors(n):
        while order % r == 0 and (P * (order // r)).is_zero():
            order //= r
    return order


def _prime_factors(n):
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def weil_pairing(P, Q, N: int):
    """The Weil pairing e_N(P, Q) as an element of F_{p^2}.

    Raises:
        StructuralError: if P or Q is not N-torsion.
    """
    E = P.curve
    F = E.ring
    if not (P * N).is_zero() or not (Q * N).is_zero():
        raise StructuralError("inputs are not N-torsion")
    if P.is_zero() or Q.is_zero():
        return F.one
    # reduce to the exact order of P: e_N(P, Q) = e_M(P, (N/M) Q)
    M = _exact_order(P, N)
    if M == 1:
        return F.one
    Q2 = Q * (N // M)
    if Q2.is_zero():
        return F.one
    M2 = _exact_order(Q2, M)
    try:
        n1, d1 = _miller(P, Q2, M)
        n2, d2 = _miller(Q2, P, M2)
    except (_Degenerate, NotAUnit):
        # a line through multiples of one point met the other: they are dependent
        return F.one
    ratio = (n1 * d2) / (d1 * n2)
    # f_{M,Q2} = f_{M2,Q2}^(M/M2)
    if M2 != M:
        ratio = (n1 / d1) / ((n2 / d2) ** (M // M2))
    return -ratio if M % 2 else ratio
