"""End-to-end acceptance checks; each prints one PASS/FAIL line.

The lines are also collected in ``conftest.ACCEPTANCE_LINES`` and echoed in
the pytest terminal summary, so they appear in plain ``pytest -v`` output.
"""
import math
import random
import time

import numpy as np

from conftest import ACCEPTANCE_LINES
from modpoly_deform.cli import flat_to_grid, main
from modpoly_deform.crt import (CrtConfig, clear_prime_cache, modular_polynomial,
                                modular_polynomial_mod_m, validate_grid)
from modpoly_deform.diamond import chain_defect, diamond_chain, lift_isogeny_diamond
from modpoly_deform.ellcurve import (curve_from_j_deformation, division_polynomial, lift_point,
                                     torsion_basis, velu_isogeny)
from modpoly_deform.ellcurve.endomorphism import base_curve
from modpoly_deform.errors import NoParameters, PrimeSkipped
from modpoly_deform.modpoly import (PipelineOptions, build_diamonds, find_diamond_parameters,
                                    modular_polynomial_modp, next_suitable_prime, parameter_cap)
from modpoly_deform.oracle import PINNED, load_reference, modp_direct
from modpoly_deform.ringarith import Poly, QuadExtField, is_probable_prime, newton_lift
from modpoly_deform.surface import (Product, compute_22_chain, glue_equation, lift_22_chain,
                                    richelot_codomain)

# Full computations shared between checks: ell -> (ModPolyInteger, wall seconds).
_COMPUTED = {}


def report(number, title, ok, detail):
    line = f"criterion {number} [{title}]: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def phi(ell):
    """Phi_ell over Z, timed from a cold per-prime cache on first request."""
    if ell not in _COMPUTED:
        clear_prime_cache()
        t0 = time.perf_counter()
        res = modular_polynomial(ell, CrtConfig(threads=1))
        _COMPUTED[ell] = (res, time.perf_counter() - t0)
    return _COMPUTED[ell]


# -- 1 ------------------------------------------------------------------------

def test_exact_reproduction_of_known_tables(tmp_path):
    details, ok = [], True
    for ell in PINNED:
        res, seconds = phi(ell)
        ref = load_reference(ell).grid
        out = tmp_path / f"phi_{ell}.txt"
        code = main(["compute", "--ell", str(ell), "--out", str(out)])
        cli_grid = flat_to_grid(out.read_text(), ell + 2) if code == 0 else None
        good = res.grid == ref and cli_grid == ref
        ok &= good
        details.append(f"ell={ell} {'exact' if good else 'MISMATCH'} ({seconds:.0f}s, "
                       f"{len(res.primes)} primes)")
    report(1, "known tables", ok, "; ".join(details))
    assert ok


# -- 2 ------------------------------------------------------------------------

def test_diamond_path_equals_direct_lift():
    details, ok = [], True
    for ell in (3, 7, 11, 19):
        params = find_diamond_parameters(ell)
        compared, skipped, p = [], [], 0
        while len(compared) < 3:
            p = next_suitable_prime(params, p)
            try:
                diamond = modular_polynomial_modp(ell, p, params)
            except PrimeSkipped:
                skipped.append(p)
                continue
            same = diamond.grid == modp_direct(ell, p, params).grid
            ok &= same
            compared.append(f"{p}{'' if same else '(DIFF)'}")
        extra = f" skipped {skipped}" if skipped else ""
        details.append(f"ell={ell} p={','.join(compared)}{extra}")
    report(2, "diamond vs direct", ok, "; ".join(details))
    assert ok


# -- 3 and 4 ------------------------------------------------------------------

HEIGHT_LEVELS = (3, 5, 7, 11, 13, 19, 23)


def test_height_bound_compliance():
    details, ok = [], True
    for ell in HEIGHT_LEVELS:
        res, _ = phi(ell)
        cap = res.bound.B - math.log(2)
        good = res.max_log_height() <= cap and res.modulus > res.bound.threshold
        ok &= good
        details.append(f"ell={ell} {res.max_log_height():.1f}<={cap:.1f}"
                       f"{'' if good else ' VIOLATED'}")
    report(3, "height bound", ok, "; ".join(details))
    assert ok


def test_classical_identities():
    details, ok = [], True
    for ell in HEIGHT_LEVELS:
        res, _ = phi(ell)
        checks = validate_grid(res.grid, ell, res.bound)
        failed = [name for name, good in checks if not good]
        ok &= not failed
        details.append(f"ell={ell} {'ok' if not failed else 'failed ' + ','.join(failed)}")
    report(4, "symmetry/monic/Kronecker", ok, "; ".join(details))
    assert ok


# -- 5 ------------------------------------------------------------------------

P5 = 167
F5 = QuadExtField(P5)
E0 = base_curve(F5)


def _newton_instances(n, count, rng):
    R = F5.artin(n)
    exact = 0
    for _ in range(count):
        while True:
            alpha = F5.random(rng)
            others = [F5.random(rng) for _ in range(rng.randrange(1, 5))]
            if all(o != alpha for o in others):
                break
        f = Poly.from_roots(F5, [alpha] + others).change_ring(R)
        f = f + Poly(R, [R.random(rng).shift(1) for _ in range(len(others) + 1)])
        root = newton_lift(alpha, f)
        exact += f(root).is_zero() and root.residue() == alpha
    return exact


def _lift_point_checks(rng):
    bad = []
    for prec in (2, 5, 9):
        R = F5.artin(prec)
        ER = curve_from_j_deformation(R(E0.j_invariant()) + R.random(rng).shift(1), E0)
        for N in (2, 3, 4, 7, 8):
            P, Q = torsion_basis(E0, N, rng, P5 + 1)
            for pt in (P, Q, P + Q):
                L = lift_point(E0, pt, N, ER)
                if not ((L * N).is_zero() and L.residue() == pt):
                    bad.append((prec, N))
    return bad


def _functoriality_checks(rng):
    """Each operation over R, reduced mod eps, equals the same operation on reductions."""
    bad = []
    R = F5.artin(6)
    a, b = R.random(rng), R.random(rng) + 1
    if (a * b).residue() != a.residue() * b.residue():
        bad.append("ring product")
    if b.is_unit() and b.inverse().residue() != b.residue().inverse():
        bad.append("inverse")
    f = Poly(R, [R.random(rng) for _ in range(5)])
    g = Poly(R, [R.random(rng) for _ in range(4)])
    if (f * g).residue() != f.residue() * g.residue():
        bad.append("polynomial product")
    ER = curve_from_j_deformation(R(E0.j_invariant()) + R.random(rng).shift(1), E0)
    if ER.residue() != E0:
        bad.append("deformed curve")
    if division_polynomial(ER, 5).residue() != division_polynomial(E0, 5):
        bad.append("division polynomial")
    P7, _ = torsion_basis(E0, 7, rng, P5 + 1)
    phiR = velu_isogeny(ER, lift_point(E0, P7, 7, ER), 7)
    phi0 = velu_isogeny(E0, P7, 7)
    if phiR.codomain.residue() != phi0.codomain:
        bad.append("Velu codomain")
    roots0 = [F5.random(rng) for _ in range(6)]
    rootsR = [R(r) + R.random(rng).shift(1) for r in roots0]
    hR, _, _ = glue_equation(R, rootsR[:3], rootsR[3:])
    h0, _, _ = glue_equation(F5, roots0[:3], roots0[3:])
    if hR.residue() != h0:
        bad.append("glue")
    G0 = [Poly.from_roots(F5, roots0[2 * i:2 * i + 2]) for i in range(3)]
    GR = [Poly.from_roots(R, rootsR[2 * i:2 * i + 2]) for i in range(3)]
    HR, dR = richelot_codomain(*GR)
    H0, d0 = richelot_codomain(*G0)
    if dR.residue() != d0 or (H0 is not None and [h.residue() for h in HR] != H0):
        bad.append("Richelot")
    # chain replay on the constant deformation reproduces the base chain's final surface
    Pl, Ql = torsion_basis(E0, 7, rng, P5 + 1)
    P8, Q8 = torsion_basis(E0, 8, rng, P5 + 1)
    fk = velu_isogeny(E0, Pl, 7)
    rec = compute_22_chain(Product(E0, fk.codomain), ((P8, fk(P8)), (Q8, fk(Q8))), 3, rng=rng)
    replay = lift_22_chain(rec, Product(E0.base_change(R), fk.codomain.base_change(R)),
                           extract=True)
    base_js = sorted(map(str, rec.split.j_invariants))
    if sorted(str(c.residue().j_invariant()) for c in (replay.split.first, replay.split.second)) \
            != base_js:
        bad.append("chain replay")
    return bad


def _certificate_checks():
    bad, runs = [], 0
    for p in (167, 223):
        params = find_diamond_parameters(7)
        for k, spec, basis, top_R, rng in build_diamonds(7, p, params, PipelineOptions()):
            record = diamond_chain(spec, basis, rng)
            res = lift_isogeny_diamond(spec, record, top_R)
            runs += 1
            prev = 1
            for r in res.rounds:
                # the defect entering round r vanishes to the precision reached by round r - 1
                if r.defect_valuation < prev or r.secant_valuation != 1 << (r.round - 1):
                    bad.append((p, k, r))
                prev = r.precision
            if not chain_defect(record, top_R, res.j_bottom).is_zero():
                bad.append((p, k, "final"))
    return bad, runs


def test_deformation_properties():
    rng = random.Random(2024)
    newton = {n: _newton_instances(n, 200, rng) for n in (2, 5, 9, 17)}
    lift_bad = _lift_point_checks(rng)
    func_bad = _functoriality_checks(rng)
    cert_bad, runs = _certificate_checks()
    ok = all(v == 200 for v in newton.values()) and not (lift_bad or func_bad or cert_bad)
    report(5, "deformation properties", ok,
           f"newton exact {newton} of 200; lift_point failures {lift_bad}; "
           f"functoriality failures {func_bad}; certificate failures {cert_bad} over {runs} "
           f"ell=7 diamonds")
    assert ok


# -- 6 ------------------------------------------------------------------------

def test_runtime_scaling():
    levels = (7, 11, 19, 23)
    times = [phi(ell)[1] for ell in levels]
    slope, _ = np.polyfit(np.log(levels), np.log(times), 1)
    delta = slope - 3
    ok = delta < 0.8
    timing = ", ".join(f"t({ell})={t:.0f}s" for ell, t in zip(levels, times))
    report(6, "runtime scaling", ok, f"{timing}; fitted exponent {slope:.2f}, delta {delta:.2f}")
    assert ok


# -- 7 ------------------------------------------------------------------------

def test_reduction_modulo_m():
    details, ok = [], True
    for ell in (3, 7):
        full, _ = phi(ell)
        for m in (2, 101, 10 ** 9 + 7):
            grid, _ = modular_polynomial_mod_m(ell, m)
            good = grid == [[c % m for c in row] for row in full.grid]
            ok &= good
            details.append(f"ell={ell} m={m} {'ok' if good else 'MISMATCH'}")
    report(7, "mod-m path", ok, "; ".join(details))
    assert ok


# -- 8 ------------------------------------------------------------------------

def test_parameter_search_below_200():
    levels = [q for q in range(3, 200) if is_probable_prime(q)]
    missing, wrong, worst = [], [], 0.0
    for ell in levels:
        try:
            P = find_diamond_parameters(ell)
        except NoParameters:
            missing.append(ell)
            continue
        if (1 << P.n) - P.c * ell != P.a ** 2 + 4 * P.b ** 2 or P.n > parameter_cap(ell):
            wrong.append(ell)
        worst = max(worst, P.n / math.log2(ell))
    ok = not wrong and not missing
    report(8, "diamond parameters", ok,
           f"{len(levels) - len(missing)}/{len(levels)} levels found, identity violations {wrong}, "
           f"not found {missing}, max n/log2(ell) = {worst:.2f}")
    # the search is heuristic: levels without parameters are reported, not asserted
    assert not wrong
