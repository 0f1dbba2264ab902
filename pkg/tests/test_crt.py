import math
import random

import pytest
from hypothesis import given, strategies as st
from mpmath import mp

from modpoly_deform.crt import (CrtConfig, clear_prime_cache, explicit_crt_mod_m, height_bound,
                                kronecker_grid, modular_polynomial, modular_polynomial_mod_m,
                                validate_grid)
from modpoly_deform.errors import InternalInconsistency
from modpoly_deform.modpoly import find_diamond_parameters, suitable_primes
from modpoly_deform.oracle import load_reference, modp_direct
from modpoly_deform.ringarith import ResidueGrid, crt_combine, is_probable_prime

PRIMES_TO_97 = [q for q in range(3, 98) if is_probable_prime(q)]


def reference_B(ell, dps=60):
    mp.dps = dps
    L = mp.mpf(ell)
    return 6 * L * mp.log(L) + 16 * L + min(2 * L, 14 * mp.sqrt(L) * mp.log(L)) + mp.log(2)


def test_height_bound_ell3():
    hb = height_bound(3)
    assert abs(hb.B - 74.47) < 0.005
    assert hb.min_branch == "linear"
    B = reference_B(3)
    mp.dps = 60
    assert hb.threshold >= mp.exp(B) > hb.threshold - 1
    assert hb.coefficient_cap <= mp.exp(B - mp.log(2)) < hb.coefficient_cap + 1


@pytest.mark.parametrize("ell", PRIMES_TO_97)
def test_height_bound_min_branch(ell):
    hb = height_bound(ell)
    linear = 2 * ell < 14 * math.sqrt(ell) * math.log(ell)
    assert hb.min_branch == ("linear" if linear else "sqrt-log")
    assert abs(hb.B - float(reference_B(ell))) < 1e-9


def test_height_bound_monotone():
    Bs = [height_bound(ell).B for ell in PRIMES_TO_97]
    assert all(a < b for a, b in zip(Bs, Bs[1:]))


def test_sqrt_log_branch_appears_for_large_ell():
    assert height_bound(4001).min_branch == "sqrt-log"


@given(st.lists(st.integers(-10 ** 40, 10 ** 40), min_size=4, max_size=4))
def test_explicit_crt_matches_signed_lift(values):
    primes = [1000003, 1000033, 1000037, 1000039, 1000081, 1000099, 1000117, 1000121, 1000133]
    grid = [values[:2], values[2:]]
    residues = [[[v % p for v in row] for row in grid] for p in primes]
    for m in (2, 101, 10 ** 9 + 7):
        out = explicit_crt_mod_m(residues, primes, m)
        assert out == [[v % m for v in row] for row in grid]


def test_explicit_crt_half_modulus_edge():
    primes = [7, 11, 13]
    M = 7 * 11 * 13
    for v in (M // 2, -(M // 2), 0, 1, -1):
        residues = [[[v % p]] for p in primes]
        assert explicit_crt_mod_m(residues, primes, 1000)[0][0] == v % 1000


def test_validation_predicates():
    ref = load_reference(5).grid
    assert all(ok for _, ok in validate_grid(ref, 5))
    bad = [row[:] for row in ref]
    bad[2][3] += 1
    results = dict(validate_grid(bad, 5))
    assert not results["symmetry"]
    sym_bad = [row[:] for row in ref]
    sym_bad[1][2] += 1
    sym_bad[2][1] += 1
    results = dict(validate_grid(sym_bad, 5))
    assert results["symmetry"] and not results["kronecker"]
    big = [row[:] for row in ref]
    big[1][1] += 10 ** 200 * 5
    assert not dict(validate_grid(big, 5))["height"]
    assert dict(validate_grid(kronecker_grid(5), 5))["kronecker"]


@pytest.fixture(scope="module")
def phi3():
    return modular_polynomial(3)


def test_phi3_exact(phi3):
    assert phi3.grid == load_reference(3).grid
    assert phi3.modulus > phi3.bound.threshold
    assert phi3.max_log_height() <= phi3.bound.B - math.log(2)


def test_phi3_prime_set_invariance(phi3):
    other = modular_polynomial(3, CrtConfig(start_after=5000, seed=7))
    assert set(other.primes).isdisjoint(phi3.primes)
    assert other.grid == phi3.grid


def test_phi3_mod_101(phi3):
    grid, primes = modular_polynomial_mod_m(3, 101)
    assert grid == [[c % 101 for c in row] for row in load_reference(3).grid]
    M = 1
    for p in primes:
        M *= p
    full, _ = modular_polynomial_mod_m(3, M)
    assert full == [[c % M for c in row] for row in phi3.grid]


def test_phi5_matches_direct_crt():
    # [DERIVED] CRT over the oracle's residues for the same primes
    out = modular_polynomial(5)
    acc = ResidueGrid.empty(7)
    for p in out.primes:
        acc = crt_combine(acc, modp_direct(5, p).grid, p)
    assert acc.signed() == out.grid == load_reference(5).grid


def test_skipped_primes_are_reported(phi3):
    # primes with a vertex at j = 0 or 1728 are skipped and replaced
    params = find_diamond_parameters(3)
    first = suitable_primes(params, 3)
    assert [p for p, _ in phi3.skipped][:1] == first[:1]
    assert all(p not in phi3.primes for p, _ in phi3.skipped)


def test_rejects_non_prime_level():
    with pytest.raises(ValueError):
        modular_polynomial(9)
    with pytest.raises(ValueError):
        modular_polynomial_mod_m(3, 1)


def test_cache_clear():
    clear_prime_cache()
    grid, _ = modular_polynomial_mod_m(3, 2)
    assert grid == [[c % 2 for c in row] for row in load_reference(3).grid]
