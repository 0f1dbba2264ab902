"""(2^n, 2^n)-isogeny chains: computation over F_{p^2} and replay over R.

The base chain is computed once with full point information; it records, for
every step, the 2-torsion roots of the domain equation grouped into the three
kernel quadratics. The replay over R only needs those roots: it lifts them by
Newton's method on the deformed equations and reapplies the same formulas.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from ..ellcurve import EllipticCurve, Point
from ..ellcurve.pairing import weil_pairing
from ..errors import (DegenerateDivisor, InternalInconsistency, NotIsotropic, NotSplit,
                      PrematureSplit, SamplingFailure, StructuralError, WouldSplit)
from ..ringarith import Poly, newton_lift_many, quadratic_roots
from .formulas import glue_equation, richelot_codomain
from .genus2 import (Jacobian, Product, QuadraticSplitting, SplitData, TwoTorsionRep,
                     split_22, split_coordinates)
from .mumford import Divisor, RichelotCorrespondence, glue_image, roots_in

# Kernel-basis changes tried before a chain is declared degenerate.
CHAIN_ATTEMPTS = 32


@dataclass(frozen=True)
class GlueStep:
    kind = "glue"
    a_roots: tuple
    b_roots: tuple
    codomain_roots: tuple


@dataclass(frozen=True)
class RichelotStep:
    kind = "richelot"
    mobius_t: object
    domain: Poly
    roots: tuple
    pairs: tuple
    codomain_roots: tuple

    def kernel(self):
        return tuple(TwoTorsionRep((self.roots[i], self.roots[j]), (self.domain, self.domain))
                     for i, j in self.pairs[:2])


@dataclass(frozen=True)
class SplitStep:
    kind = "split"
    domain: Poly
    roots: tuple
    pairs: tuple
    fixed_point: object
    j_invariants: tuple
    test_vanishes: tuple


@dataclass(frozen=True)
class ChainRecord:
    """Base-field chain of n (2,2)-steps: one gluing, n-2 Richelot steps, one split."""

    n: int
    domain: Product
    glue: GlueStep
    richelot: tuple
    split: SplitStep
    attempts: int = 1

    @property
    def steps(self):
        return (self.glue,) + self.richelot + (self.split,)

    @property
    def split_j_invariants(self):
        return self.split.j_invariants


# -- base-field computation --------------------------------------------------

def _pair_add(P, Q):
    return (P[0] + Q[0], P[1] + Q[1])


def _pair_mul(P, k):
    return (P[0] * k, P[1] * k)


def _xy(P: Point):
    return None if P.is_zero() else (P.x, P.y)


def _random_odd_matrix(rng, modulus):
    while True:
        a, b, c, d = (rng.randrange(modulus) for _ in range(4))
        if (a * d - b * c) % 2:
            return a, b, c, d


def compute_22_chain(domain: Product, K, n: int, *, rng: Optional[random.Random] = None,
                     test_point: Optional[Callable] = None, check_isotropy: bool = True) -> ChainRecord:
    """Compute the chain with kernel K = <K1, K2> on E x E' over F_{p^2}.

    Args:
        domain: the product E x E' (a2-form models over F_{p^2}).
        K: two pairs (P, P') of points of order 2^n on E and E'.
        n: chain length, at least 2.
        rng: randomness for kernel-basis changes on degenerate configurations.
        test_point: optional callable rng -> (P, P') whose image is tracked to
            the split; the record then says on which factor it vanishes.

    Raises:
        NotIsotropic: the 2^n-Weil pairing is nontrivial on K.
        PrematureSplit: an intermediate step already splits.
        NotSplit: the final step does not split.
        SamplingFailure: every kernel basis tried hit a degenerate configuration.
    """
    if n < 2:
        raise StructuralError("chain length must be at least 2")
    rng = rng or random.Random(0)
    N = 1 << n
    K1, K2 = K
    if check_isotropy:
        e = weil_pairing(K1[0], K2[0], N) * weil_pairing(K1[1], K2[1], N)
        if not e == 1:
            raise NotIsotropic("Weil pairing is nontrivial on the kernel")
    last = None
    for attempt in range(CHAIN_ATTEMPTS):
        if attempt:
            a, b, c, d = _random_odd_matrix(rng, N)
            B1 = _pair_add(_pair_mul(K1, a), _pair_mul(K2, b))
            B2 = _pair_add(_pair_mul(K1, c), _pair_mul(K2, d))
        else:
            B1, B2 = K1, K2
        T = test_point(rng) if test_point is not None else None
        try:
            glue, steps, split = _chain_once(domain, (B1, B2), n, T, rng)
        except DegenerateDivisor as exc:
            last = exc
            continue
        return ChainRecord(n, domain, glue, tuple(steps), split, attempts=attempt + 1)
    raise SamplingFailure(f"every kernel basis was degenerate ({last})", seed=None)


def _chain_once(domain: Product, K, n: int, T, rng):
    E1, E2 = domain.first, domain.second
    par = E1.ring
    # multiples[i][j] = 2^(n-i) K_j for i = 1..n
    mult = {}
    for j, Kj in enumerate(K):
        P = Kj
        for i in range(n, 0, -1):
            mult[(i, j)] = P
            P = (P[0].double(), P[1].double())
    A1, A2 = mult[(1, 0)], mult[(1, 1)]
    A3 = _pair_add(A1, A2)
    for Pt in (A1, A2, A3):
        if Pt[0].is_zero() or Pt[1].is_zero():
            raise WouldSplit("kernel meets a factor of the product")
        if not Pt[0].y.is_zero() or not Pt[1].y.is_zero():
            raise StructuralError("kernel multiples are not 2-torsion")
    a = (A1[0].x, A2[0].x, A3[0].x)
    b = (A1[1].x, A2[1].x, A3[1].x)
    h, (s1, s2, t1, t2), at = glue_equation(par, a, b)
    roots = []
    for c in at:
        try:
            r = par.sqrt(c)
        except ValueError:
            raise StructuralError("glued curve has irrational Weierstrass points") from None
        roots += [r, -r]
    if len(set(roots)) != 6:
        raise StructuralError("glued curve is singular")
    glue = GlueStep(a, b, tuple(roots))
    shape = (h, s1, s2, t1, t2)
    pending = {key: glue_image(par, shape, _xy(P[0]), _xy(P[1]))
               for key, P in mult.items() if key[0] >= 2}
    test = glue_image(par, shape, _xy(T[0]), _xy(T[1])) if T is not None else None
    steps = []
    for s in range(2, n):
        h, roots, pending, test, step = _richelot_once(h, roots, pending, test, s, n, par)
        steps.append(step)
    split = _split_once(h, roots, pending, test, n)
    return glue, steps, split


def _kernel_pairs(h, roots, pending, s):
    pairs = []
    for j in range(2):
        D = pending[(s, j)]
        if not D.is_two_torsion() or D.u.degree() != 2:
            raise StructuralError("pushed kernel point is not a generic 2-torsion divisor")
        idx = roots_in(D.u, roots)
        if len(idx) != 2:
            raise StructuralError("kernel divisor is not supported on Weierstrass points")
        pairs.append(tuple(idx))
    rest = tuple(i for i in range(6) if i not in pairs[0] + pairs[1])
    if len(rest) != 2:
        raise NotIsotropic("kernel divisors share a Weierstrass point")
    pairs.append(rest)
    return tuple(pairs)


def _splitting(h, roots, pairs):
    par = h.parent
    G1 = Poly.from_roots(par, [roots[i] for i in pairs[0]])
    G2 = Poly.from_roots(par, [roots[i] for i in pairs[1]])
    G3 = Poly.from_roots(par, [roots[i] for i in pairs[2]], lead=h.leading())
    return G1, G2, G3


def _richelot_once(h, roots, pending, test, s, n, par):
    pairs = _kernel_pairs(h, roots, pending, s)
    G1, G2, G3 = _splitting(h, roots, pairs)
    Hs, delta = richelot_codomain(G1, G2, G3)
    if Hs is None:
        raise PrematureSplit(f"step {s} of {n} already splits")
    t = None
    if any(H.degree() < 2 for H in Hs):
        hnew = Hs[0] * Hs[1] * Hs[2]
        t = _mobius_parameter(h, hnew, list(pending.values()) + ([test] if test else []), par)
        h = h.mobius(t, par.one, par.one, par.zero, 6)
        roots = [(r - t).inverse() for r in roots]
        pending = {k: D.mobius_inversion(t) for k, D in pending.items()}
        test = test.mobius_inversion(t) if test is not None else None
        G1, G2, G3 = _splitting(h, roots, pairs)
        Hs, delta = richelot_codomain(G1, G2, G3)
        if any(H.degree() < 2 for H in Hs):
            raise StructuralError("coordinate change did not remove the point at infinity")
    hnew = Hs[0] * Hs[1] * Hs[2]
    new_roots = []
    for H in Hs:
        try:
            new_roots += quadratic_roots(H)
        except ValueError:
            raise StructuralError("Richelot codomain has irrational Weierstrass points") from None
    if len(set(new_roots)) != 6:
        raise StructuralError("Richelot codomain is singular")
    corr = RichelotCorrespondence(G1, G2, Hs[0], Hs[1], hnew)
    step = RichelotStep(t, h, tuple(roots), pairs, tuple(new_roots))
    pending = {k: corr(D) for k, D in pending.items() if k[0] > s}
    test = corr(test) if test is not None else None
    return hnew, new_roots, pending, test, step


def _mobius_parameter(h, hnew, divisors, par):
    for t0 in range(par.p):
        t = par(t0)
        if h(t).is_zero() or hnew(t).is_zero():
            continue
        if any(not D.is_zero() and D.u(t).is_zero() for D in divisors):
            continue
        return t
    raise DegenerateDivisor("no admissible coordinate change")  # pragma: no cover


def _split_once(h, roots, pending, test, n):
    pairs = _kernel_pairs(h, roots, pending, n)
    kernel = QuadraticSplitting(*_splitting(h, roots, pairs))
    if not kernel.determinant.is_zero():
        raise NotSplit("final step does not split")
    data = split_coordinates(kernel)
    C = Jacobian(h)
    prod = split_22(C, kernel, data)
    js = (prod.first.j_invariant(), prod.second.j_invariant())
    vanishes = (False, False)
    if test is not None:
        vanishes = _test_vanishing(test, data)
    return SplitStep(h, tuple(roots), pairs, data.r, js, vanishes)


def _test_vanishing(D: Divisor, data: SplitData):
    """Which split factors the divisor D maps to zero on."""
    a, b, c, d = data.mobius()
    U = D.u.mobius(a, b, c, d, 2)
    if U.degree() != 2 or U[0].is_zero():
        raise DegenerateDivisor("test divisor meets a fixed point of the involution")
    V = D.v.mobius(a, b, c, d, 3)
    Dz = Divisor.normalised(U, V)
    u1, u0 = Dz.u[1], Dz.u[0]
    if (u1 * u1 - u0 * 4).is_zero():
        raise DegenerateDivisor("test divisor is not reduced to distinct points")
    if not u1.is_zero():
        return (False, False)
    w1, w0 = Dz.v[1], Dz.v[0]
    return (w0.is_zero(), w1.is_zero())


# -- replay over R --------------------------------------------------------------

@dataclass
class ReplayResult:
    """Outcome of replaying a chain over R."""

    delta: object
    split: Optional[Product] = None
    final: Optional[Jacobian] = None
    step_determinants: list = field(default_factory=list)


def _lift_roots(base_roots, polys):
    """Newton-lift each base root on its polynomial, batching roots of the same polynomial."""
    out = [None] * len(base_roots)
    groups = {}
    for i, f in enumerate(polys):
        groups.setdefault(id(f), (f, []))[1].append(i)
    for f, idx in groups.values():
        for i, r in zip(idx, newton_lift_many([base_roots[i] for i in idx], f)):
            out[i] = r
    return out


def lift_22_chain(record: ChainRecord, lifted: Product, *, radical: bool = False,
                  extract: bool = False) -> ReplayResult:
    """Replay a base chain over R starting from a deformation of its domain.

    Args:
        record: chain computed by compute_22_chain.
        lifted: E~ x E~' over R reducing to record.domain.
        radical: lift Weierstrass points through the quadratic factors of each
            codomain instead of through the full sextic.
        extract: also split the final surface (requires delta == 0).

    Returns:
        ReplayResult with the final Richelot determinant as ``delta``.
    """
    par = lifted.ring
    E1, E2 = lifted.first, lifted.second
    a = _lift_roots(record.glue.a_roots, [E1.rhs_poly()] * 3)
    b = _lift_roots(record.glue.b_roots, [E2.rhs_poly()] * 3)
    h, _, at = glue_equation(par, a, b)
    x = Poly.x(par)
    if radical:
        polys = []
        for c in at:
            q = x * x - c
            polys += [q, q]
    else:
        polys = [h] * 6
    roots = _lift_roots(record.glue.codomain_roots, polys)
    dets = []
    for step in record.richelot:
        if step.mobius_t is not None:
            t = par(step.mobius_t)
            h = h.mobius(t, par.one, par.one, par.zero, 6)
            roots = [(r - t).inverse() for r in roots]
        G1, G2, G3 = _splitting(h, roots, step.pairs)
        Hs, delta = richelot_codomain(G1, G2, G3)
        dets.append(delta)
        if Hs is None:
            raise InternalInconsistency("intermediate Richelot determinant is not a unit",
                                        diagnostics={"delta_valuation": delta.valuation()})
        h = Hs[0] * Hs[1] * Hs[2]
        polys = [Hs[0]] * 2 + [Hs[1]] * 2 + [Hs[2]] * 2 if radical else [h] * 6
        roots = _lift_roots(step.codomain_roots, polys)
    kernel = QuadraticSplitting(*_splitting(h, roots, record.split.pairs))
    delta = kernel.determinant
    out = ReplayResult(delta, final=Jacobian(h), step_determinants=dets)
    if extract:
        if not delta.is_zero():
            raise NotSplit("deformed surface does not split")
        data = split_coordinates(kernel, fixed_point=record.split.fixed_point)
        out.split = split_22(Jacobian(h), kernel, data)
    return out
