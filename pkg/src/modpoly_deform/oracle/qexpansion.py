"""Phi_ell over Z from the q-expansion of j, independently of any curve arithmetic.

The values j(q^l) and j(zeta^k q^(1/l)) are the roots of Phi_l(X, j(q)).
Their power sums are Laurent series in q (the sum over k keeps every l-th
coefficient of j(t)^m), Newton's identities give the elementary symmetric
functions, and each of those is rewritten as a polynomial in j(q) by
cancelling leading terms.
"""
from __future__ import annotations

from fractions import Fraction


class Laurent:
    """Truncated Laurent series sum c[i] q^(i + val), exact up to q^top."""

    __slots__ = ("val", "c", "top")

    def __init__(self, val, coeffs, top):
        self.val = val
        self.top = top
        self.c = list(coeffs[: max(0, top - val + 1)])
        self.c += [0] * (top - val + 1 - len(self.c))

    def __getitem__(self, e):
        i = e - self.val
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __add__(self, other):
        val = min(self.val, other.val)
        top = min(self.top, other.top)
        return Laurent(val, [self[e] + other[e] for e in range(val, top + 1)], top)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        return Laurent(self.val, [k * x for x in self.c], self.top)

    def __mul__(self, other):
        val = self.val + other.val
        top = min(self.top + other.val, other.top + self.val)
        n = top - val + 1
        out = [0] * max(n, 0)
        a, b = self.c, other.c
        for i, x in enumerate(a):
            if not x or i >= n:
                continue
            for j in range(min(len(b), n - i)):
                y = b[j]
                if y:
                    out[i + j] += x * y
        return Laurent(val, out, top)


def _sigma3(n):
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def j_coefficients(count: int):
    """Coefficients c(-1), c(0), ..., c(count - 2) of j(q) = 1/q + 744 + ..."""
    N = count + 1
    e4 = [1] + [240 * _sigma3(n) for n in range(1, N)]
    # eta^24 / q = prod (1 - q^n)^24
    eta1 = [0] * N
    k = 0
    while True:
        a, b = k * (3 * k - 1) // 2, k * (3 * k + 1) // 2
        if a >= N:
            break
        sign = -1 if k % 2 else 1
        eta1[a] += sign
        if k and b < N:
            eta1[b] += sign
        k += 1
    e2 = _mul_trunc(eta1, eta1, N)
    e4_ = _mul_trunc(e2, e2, N)
    e8 = _mul_trunc(e4_, e4_, N)
    e16 = _mul_trunc(e8, e8, N)
    eta = _mul_trunc(e16, e8, N)
    e4_3 = _mul_trunc(_mul_trunc(e4, e4, N), e4, N)
    # invert eta (constant term 1)
    inv = [0] * N
    inv[0] = 1
    for i in range(1, N):
        inv[i] = -sum(eta[k] * inv[i - k] for k in range(1, i + 1))
    jq = _mul_trunc(e4_3, inv, N)  # q * j(q)
    return jq[:count]


def _mul_trunc(a, b, N):
    out = [0] * N
    for i, x in enumerate(a[:N]):
        if x:
            for j in range(min(len(b), N - i)):
                out[i + j] += x * b[j]
    return out


def modular_polynomial_qexp(ell: int, extra: int = 4):
    """Phi_ell as a dict {(i, j): a_ij} of nonzero integer coefficients.

    ``extra`` additional q-coefficients are carried and must cancel, as a
    self-check of the elimination.
    """
    degree = ell + 1
    # symmetric functions of the ell conjugates are needed up to q^T,
    # because they get multiplied by j(q^ell), which has a pole of order ell
    T = ell + extra + degree + 2
    jc = j_coefficients(ell * (T + 2) + degree + 4)
    j_t = Laurent(-1, jc, ell * (T + 1) + degree)
    # power sums over the conjugates: keep t-exponents divisible by ell, t^ell -> q
    power_sums = []
    pt = None
    for m in range(1, ell + 1):
        pt = j_t if pt is None else pt * j_t
        lo = -((-pt.val) // ell)
        hi = pt.top // ell
        power_sums.append(Laurent(lo, [ell * pt[e * ell] for e in range(lo, hi + 1)], hi))
    one = Laurent(0, [1], T)
    conj = [one]
    for m in range(1, ell + 1):
        acc = Laurent(0, [], T)
        for i in range(1, m + 1):
            term = conj[m - i] * power_sums[i - 1]
            acc = acc + (term if i % 2 else term.scale(-1))
        coeffs = []
        for e in range(acc.val, acc.top + 1):
            v = Fraction(acc[e], m)
            if v.denominator != 1:
                raise ArithmeticError("non-integral symmetric function")
            coeffs.append(int(v))
        conj.append(_strip(Laurent(acc.val, coeffs, acc.top)))
    conj.append(Laurent(0, [], T))
    # j(q^ell)
    spread = [0] * ((len(jc) - 1) * ell + 1)
    for i, x in enumerate(jc):
        spread[i * ell] = x
    j_ql = Laurent(-ell, spread, T)
    elem = [one] + [conj[m] + j_ql * conj[m - 1] for m in range(1, degree + 1)]
    # powers of j(q), exact up to q^extra
    j_q = Laurent(-1, jc, extra + degree + 1)
    jpow = [Laurent(0, [1], extra + degree + 1)]
    for _ in range(degree):
        jpow.append(jpow[-1] * j_q)
    out = {(degree, 0): 1}
    for m in range(1, degree + 1):
        series = elem[m]
        if series.top < extra:
            raise ArithmeticError("insufficient q-precision")
        for d in range(degree, -1, -1):
            c = series[-d]
            if c:
                out[(degree - m, d)] = c if m % 2 == 0 else -c
                series = series - jpow[d].scale(c)
        if any(series[e] for e in range(series.val, extra + 1)):
            raise ArithmeticError(f"elementary function {m} is not a polynomial in j")
    return {k: v for k, v in out.items() if v}


def _strip(s: Laurent) -> Laurent:
    i = 0
    while i < len(s.c) - 1 and s.c[i] == 0:
        i += 1
    return Laurent(s.val + i, s.c[i:], s.top)


def grid_from_dict(coeffs, ell):
    n = ell + 2
    g = [[0] * n for _ in range(n)]
    for (i, j), c in coeffs.items():
        g[i][j] = c
    return g
