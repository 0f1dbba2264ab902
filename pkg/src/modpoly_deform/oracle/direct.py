"""phi_ell mod p by deforming each ell-isogeny of E0 directly (division polynomial + Velu)."""
from __future__ import annotations

import time

from ..ellcurve.endomorphism import base_curve
from ..ellcurve.torsion import lift_point, torsion_basis
from ..ellcurve.velu import velu_isogeny
from ..modpoly.params import DiamondParams, find_diamond_parameters
from ..modpoly.pipeline import (ModPolyModP, assemble, base_setup, kernel_generator, setup_rng)
from ..errors import PrimeSkipped


def direct_jtildes(ell: int, p: int, seed: int = 0):
    """j(E0~ / <P_k~>) for k = 0..ell, with P_k~ the lift of the kernel point to E0~."""
    rng = setup_rng(seed, p, tag="direct")
    F, E0, R, ER = base_setup(ell, p, rng)
    Pl, Ql = torsion_basis(E0, ell, rng, p + 1)
    out = []
    for k in range(ell + 1):
        Pk = kernel_generator(Pl, Ql, k, ell)
        Ek = velu_isogeny(E0, Pk, ell).codomain
        jk = Ek.j_invariant()
        if jk.is_zero() or jk == 1728:
            raise PrimeSkipped(p, f"j(E_{k}) is 0 or 1728")
        PkR = lift_point(E0, Pk, ell, ER)
        out.append(velu_isogeny(ER, PkR, ell).codomain.j_invariant())
    return out, E0.j_invariant()


def modp_direct(ell: int, p: int, params: DiamondParams | None = None, seed: int = 0) -> ModPolyModP:
    """phi_ell mod p, computed without any genus-2 arithmetic."""
    params = params or find_diamond_parameters(ell)
    t0 = time.perf_counter()
    jt, j0 = direct_jtildes(ell, p, seed)
    grid = assemble(jt, j0, ell, p)
    return ModPolyModP(ell, p, grid, {"seconds": time.perf_counter() - t0,
                                      "jtildes": [str(j) for j in jt]})
