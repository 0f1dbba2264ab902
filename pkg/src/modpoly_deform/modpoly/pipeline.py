"""phi_ell mod p from the deformations of ell + 1 isogeny diamonds."""
from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from math import comb

from ..diamond import DiamondSpec, diamond_chain, lift_isogeny_diamond
from ..ellcurve import EllipticCurve, Point
from ..ellcurve.curve import curve_from_j_deformation
from ..ellcurve.endomorphism import Endomorphism, base_curve, endomorphism_iota
from ..ellcurve.torsion import lift_point, torsion_basis
from ..ellcurve.velu import dual_isogeny, velu_isogeny
from ..errors import (CoefficientNotRational, ExcludedJInvariant, InternalInconsistency,
                      PrimeSkipped, StructuralError)
from ..ringarith import ArtinElement, Poly, QuadExtField, product_tree
from .params import DiamondParams, find_diamond_parameters

log = logging.getLogger(__name__)

# Attempts at choosing the auxiliary 3-isogeny before a prime is skipped.
AUX_ATTEMPTS = 4


@dataclass
class ModPolyModP:
    """phi_ell mod p as a dense grid: grid[i][j] is the coefficient of X^i Y^j."""

    ell: int
    p: int
    grid: list
    diagnostics: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, ModPolyModP):
            return NotImplemented
        return (self.ell, self.p, self.grid) == (other.ell, other.p, other.grid)


@dataclass(frozen=True)
class PipelineOptions:
    seed: int = 0
    radical: bool = False
    probe_unit: int = 1


def setup_rng(seed, p, tag="pipeline"):
    return random.Random(f"{tag}:{seed}:{p}")


def base_setup(ell: int, p: int, rng):
    """E0 over F_{p^2} with its deformation of j-invariant j0 + eps at precision ell + 2."""
    F = QuadExtField(p)
    E0 = base_curve(F)
    Pt = E0.random_point(rng)
    if not (Pt * (p + 1)).is_zero():
        raise StructuralError("E0(F_p^2) is not killed by p + 1")
    j0 = E0.j_invariant()
    if j0.is_zero() or j0 == 1728:
        raise PrimeSkipped(p, "j(E0) is 0 or 1728 mod p")
    R = F.artin(ell + 2)
    ER = curve_from_j_deformation(R(j0) + R.eps(), E0)
    return F, E0, R, ER


def kernel_generator(Pl, Ql, k, ell):
    return Pl + Ql * k if k < ell else Ql


def _excluded(*curves):
    for E in curves:
        j = E.j_invariant()
        if j.is_zero() or j == 1728:
            return True
    return False


def _aux_legs(E0, gamma, ER, rng, p, n):
    """Auxiliary 3-isogenies g: E0 -> C0 and g': E0 -> C1 with ker g' = gamma(ker g)."""
    P3, Q3 = torsion_basis(E0, 3, rng, p + 1)
    for gen in (P3, Q3, P3 + Q3, P3 + Q3 * 2)[:AUX_ATTEMPTS]:
        g = velu_isogeny(E0, gen, 3)
        gp = velu_isogeny(E0, gamma(gen), 3)
        if _excluded(g.codomain, gp.codomain):
            continue
        aux = next(T for T in (P3, Q3) if not gp(T).is_zero())
        test = E0.random_point(rng)
        while (test * 6).is_zero():
            test = E0.random_point(rng)
        gp_dual = dual_isogeny(gp, aux, test)
        C0R = velu_isogeny(ER, lift_point(E0, gen, 3, ER), 3).codomain
        if C0R.residue() != g.codomain:
            raise StructuralError("lifted auxiliary codomain does not reduce to C0")
        return g, gp, gp_dual, C0R
    raise PrimeSkipped(p, "every auxiliary 3-isogeny hits j = 0 or 1728")


def build_diamonds(ell: int, p: int, params: DiamondParams, options: PipelineOptions):
    """Yield (k, DiamondSpec, basis, top_R, rng) for k = 0..ell."""
    rng = setup_rng(options.seed, p)
    F, E0, R, ER = base_setup(ell, p, rng)
    iota = endomorphism_iota(E0, rng)
    gamma = Endomorphism(iota, params.a, params.b)
    gamma_dual = gamma.dual()
    n = params.n
    N = 1 << n
    Pl, Ql = torsion_basis(E0, ell, rng, p + 1)
    if params.c == 1:
        basis_curve = E0
        top, top_R = E0, ER
        pre = None
        to_top = gamma_dual
        side_b = E0
        degrees = (ell, N - ell)
    else:
        g, gp, gp_dual, C0R = _aux_legs(E0, gamma, ER, rng, p, n)
        basis_curve = gp.codomain
        top, top_R = g.codomain, C0R
        pre = gp_dual
        inv3 = pow(3, -1, N)

        def to_top(P, g=g, gp_dual=gp_dual):
            return g(gamma_dual(gp_dual(P))) * inv3
        side_b = gp.codomain
        degrees = (3 * ell, N - 3 * ell)
    basis = torsion_basis(basis_curve, N, rng, p + 1)
    for k in range(ell + 1):
        Pk = kernel_generator(Pl, Ql, k, ell)
        fk = velu_isogeny(E0, Pk, ell)
        fkp = velu_isogeny(E0, gamma(Pk), ell)
        if _excluded(fk.codomain, fkp.codomain):
            raise PrimeSkipped(p, f"diamond {k} has a vertex with j = 0 or 1728")
        if pre is None:
            to_bottom = fkp
        else:
            def to_bottom(P, fkp=fkp, pre=pre):
                return fkp(pre(P))
        other = gamma(Ql if k < ell else Pl)
        B = fkp(other)
        if B.is_zero():
            raise StructuralError("test point lies in the kernel")

        def test_point(r, B=B):
            return B * r.randrange(1, ell)
        spec = DiamondSpec(top=top, bottom=fkp.codomain, side_a=fk.codomain, side_b=side_b,
                           basis_curve=basis_curve, to_top=to_top, to_bottom=to_bottom,
                           test_point=test_point, degrees=degrees, n=n)
        yield k, spec, basis, top_R, rng


def lift_all_diamonds(ell: int, p: int, params: DiamondParams, options: PipelineOptions):
    """The deformed j-invariants j~_k for k = 0..ell, plus per-k diagnostics."""
    out, diags = [], []
    for k, spec, basis, top_R, rng in build_diamonds(ell, p, params, options):
        try:
            spec.check_vertices()
        except ExcludedJInvariant as exc:
            raise PrimeSkipped(p, str(exc)) from None
        record = diamond_chain(spec, basis, rng)
        res = lift_isogeny_diamond(spec, record, top_R, probe_unit=options.probe_unit,
                                   radical=options.radical)
        if res.j_side.residue() != spec.side_a.j_invariant():
            raise InternalInconsistency("deformed j-invariant does not reduce to j(E_k)")
        out.append(res.j_side)
        diags.append({"k": k, "attempts": res.chain_attempts,
                      "rounds": [(r.round, r.precision, r.defect_valuation, r.secant_valuation)
                                 for r in res.rounds]})
    return out, diags


def substitute_epsilon(poly: Poly, j0):
    """Re-expand a polynomial in Y over R in powers of X, with eps = X - j0.

    Returns grid[i][j], the coefficient of X^i Y^j, over F_{p^2}. The X-degree
    is below the precision, so the expansion is exact.
    """
    R = poly.parent
    F = R.field
    n = R.precision
    ydeg = poly.degree()
    pw = [F.one]
    for _ in range(n):
        pw.append(pw[-1] * (-j0))
    grid = [[F.zero] * (ydeg + 1) for _ in range(n)]
    for j in range(ydeg + 1):
        cs = poly[j].coeffs if hasattr(poly[j], "coeffs") else [poly[j]]
        for e, c in enumerate(cs):
            if c.is_zero():
                continue
            for i in range(e + 1):
                grid[i][j] = grid[i][j] + c * pw[e - i] * comb(e, i)
    while len(grid) > 1 and all(c.is_zero() for c in grid[-1]):
        grid.pop()
    return grid


def assemble(jtildes, j0, ell: int, p: int):
    """prod_k (Y - j~_k) with eps = X - j0, as an integer grid mod p."""
    R = jtildes[0].ring
    linear = [Poly(R, [-jt, R.one]) for jt in jtildes]
    phi = product_tree(linear)
    fgrid = substitute_epsilon(phi, j0)
    size = ell + 2
    grid = [[0] * size for _ in range(size)]
    for i, row in enumerate(fgrid):
        if i >= size:
            raise InternalInconsistency("X-degree exceeds ell + 1")
        for j, c in enumerate(row):
            if not c.in_prime_field():
                raise CoefficientNotRational(f"coefficient of X^{i} Y^{j} is not in F_{p}")
            grid[i][j] = c.a % p
    check_grid_modp(grid, ell, p)
    return grid


def check_grid_modp(grid, ell, p):
    size = ell + 2
    for i in range(size):
        for j in range(size):
            if grid[i][j] != grid[j][i]:
                raise InternalInconsistency(f"grid is not symmetric at ({i}, {j})")
    if grid[ell + 1][0] != 1 or grid[0][ell + 1] != 1:
        raise InternalInconsistency("grid is not monic")
    if any(grid[ell + 1][j] for j in range(1, size)):
        raise InternalInconsistency("X^(ell+1) coefficient is not constant")


def modular_polynomial_modp(ell: int, p: int, params: DiamondParams | None = None,
                            options: PipelineOptions | None = None) -> ModPolyModP:
    """phi_ell over F_p from deformations of isogeny diamonds.

    Raises:
        PrimeSkipped: a special j-invariant appears; use another prime.
        CoefficientNotRational, InternalInconsistency: a post-check failed.
    """
    params = params or find_diamond_parameters(ell)
    options = options or PipelineOptions()
    if (p + 1) % params.prime_modulus:
        raise ValueError(f"{p} is not a suitable prime for ell = {ell}")
    t0 = time.perf_counter()
    jt, diags = lift_all_diamonds(ell, p, params, options)
    F = QuadExtField(p)
    j0 = base_curve(F).j_invariant()
    grid = assemble(jt, j0, ell, p)
    elapsed = time.perf_counter() - t0
    log.debug("ell=%d p=%d done in %.2fs", ell, p, elapsed)
    return ModPolyModP(ell, p, grid, {"lifts": diags, "seconds": elapsed,
                                      "jtildes": [str(j) for j in jt]})
