import math
import random

import pytest
from hypothesis import given, strategies as st

from modpoly_deform.ellcurve import torsion_basis, velu_isogeny
from modpoly_deform.ellcurve.endomorphism import base_curve
from modpoly_deform.modpoly import (DiamondParams, assemble, find_diamond_parameters,
                                    modular_polynomial_modp, next_suitable_prime, parameter_cap,
                                    substitute_epsilon, suitable_primes)
from modpoly_deform.modpoly.pipeline import PipelineOptions
from modpoly_deform.oracle import load_reference, modp_direct
from modpoly_deform.ringarith import Poly, QuadExtField, is_probable_prime


def brute_force_params(ell):
    # [DERIVED] exhaustive search over n, then over all (a, b)
    c = (-ell) % 4
    n = 1
    while True:
        m = (1 << n) - c * ell
        if m > 0:
            sols = [(a, b) for a in range(math.isqrt(m) + 1) for b in range(math.isqrt(m) + 1)
                    if a * a + 4 * b * b == m]
            if sols:
                return c, n, min(sols)
        n += 1


@pytest.mark.parametrize("ell,expected", [(7, (1, 3, 1, 0)), (11, (1, 4, 1, 1)), (5, (3, 4, 1, 0))])
def test_parameter_examples(ell, expected):
    P = find_diamond_parameters(ell)
    assert (P.c, P.n, P.a, P.b) == expected


@pytest.mark.parametrize("ell", [q for q in range(3, 120) if is_probable_prime(q)])
def test_parameters_match_brute_force(ell):
    P = find_diamond_parameters(ell)
    c, n, (a, b) = brute_force_params(ell)
    assert (P.c, P.n, P.a, P.b) == (c, n, a, b)
    assert P.n <= parameter_cap(ell)


def test_parameter_identity_enforced():
    with pytest.raises(ValueError):
        DiamondParams(7, 1, 3, 1, 1)
    with pytest.raises(ValueError):
        find_diamond_parameters(9)


def sieve_first(modulus):
    p = 12
    while not (p % modulus == modulus - 1 and is_probable_prime(p)):
        p += 1
    return p


@pytest.mark.parametrize("ell,first", [(7, 167), (11, 1231)])
def test_first_suitable_prime(ell, first):
    P = find_diamond_parameters(ell)
    assert next_suitable_prime(P) == first == sieve_first(P.prime_modulus)


@pytest.mark.parametrize("ell", [3, 5, 7, 13, 19])
def test_suitable_primes_are_3_mod_4(ell):
    P = find_diamond_parameters(ell)
    for p in suitable_primes(P, 6):
        assert p % 4 == 3 and (p + 1) % P.prime_modulus == 0 and is_probable_prime(p)


F = QuadExtField(167)


def test_substitute_constant():
    R = F.artin(4)
    poly = Poly(R, [R(5), R(3), R.one])
    grid = substitute_epsilon(poly, F(11))
    assert len(grid) == 1
    assert grid[0] == [F(5), F(3), F.one]


def test_substitute_linear():
    R = F.artin(3)
    j0 = F(11)
    poly = Poly(R, [-(R(j0) + R.eps()), R.one])  # Y - (j0 + eps)
    grid = substitute_epsilon(poly, j0)
    assert grid[0] == [F.zero, F.one]
    assert grid[1] == [-F.one, F.zero]


@given(st.integers(0, 10 ** 9))
def test_substitute_round_trip(seed):
    rng = random.Random(seed)
    R = F.artin(5)
    j0 = F.random(rng)
    poly = Poly(R, [R.random(rng) for _ in range(4)])
    grid = substitute_epsilon(poly, j0)
    # re-substitute X = j0 + eps
    X = R(j0) + R.eps()
    for j in range(4):
        val = R.zero
        for i, row in enumerate(grid):
            val = val + R(row[j]) * X ** i
        assert val == poly[j]


def test_phi7_mod_167_matches_direct():
    diamond = modular_polynomial_modp(7, 167)
    direct = modp_direct(7, 167)
    assert diamond.grid == direct.grid


def test_phi3_matches_reference():
    ref = load_reference(3).grid
    p = next_suitable_prime(find_diamond_parameters(3), 23)
    out = modular_polynomial_modp(3, p)
    assert out.grid == [[c % p for c in row] for row in ref]


def test_phi5_auxiliary_branch_matches_reference():
    ref = load_reference(5).grid
    out = modular_polynomial_modp(5, 239)
    assert out.grid == [[c % 239 for c in row] for row in ref]


def test_slice_roots_are_codomains():
    out = modular_polynomial_modp(7, 167)
    E0 = base_curve(F)
    j0 = E0.j_invariant()
    Pl, Ql = torsion_basis(E0, 7, random.Random(0), 168)
    for k in range(8):
        gen = Pl + Ql * k if k < 7 else Ql
        jk = velu_isogeny(E0, gen, 7).codomain.j_invariant()
        total = F.zero
        for i, row in enumerate(out.grid):
            for j, c in enumerate(row):
                total = total + F(c) * j0 ** i * jk ** j
        assert total.is_zero()


def test_options_do_not_change_output():
    a = modular_polynomial_modp(7, 167, options=PipelineOptions(seed=4, radical=True, probe_unit=3))
    b = modular_polynomial_modp(7, 167)
    assert a.grid == b.grid


def test_unsuitable_prime_rejected():
    with pytest.raises(ValueError):
        modular_polynomial_modp(7, 163)
