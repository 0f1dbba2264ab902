import shutil

import pytest

from modpoly_deform.crt import validate_grid
from modpoly_deform.errors import FixtureError
from modpoly_deform.oracle import (PINNED, direct_jtildes, j_coefficients, load_reference,
                                   modp_direct, modular_polynomial_qexp)
from modpoly_deform.oracle import reference as reference_mod

# Classical Phi_2, written out monomial by monomial.
PHI2 = {(3, 0): 1, (0, 3): 1, (2, 2): -1, (2, 1): 1488, (1, 2): 1488, (2, 0): -162000,
        (0, 2): -162000, (1, 1): 40773375, (1, 0): 8748000000, (0, 1): 8748000000,
        (0, 0): -157464000000000}

# A few published coefficients of Phi_3.
PHI3_SAMPLE = {(3, 3): -1, (3, 2): 2232, (3, 1): -1069956, (3, 0): 36864000, (2, 2): 2587918086,
               (2, 1): 8900222976000, (2, 0): 452984832000000, (1, 1): -770845966336000000,
               (1, 0): 1855425871872000000000, (0, 0): 0}


def test_j_coefficients():
    assert j_coefficients(5) == [1, 744, 196884, 21493760, 864299970]


def test_qexp_phi2():
    coeffs = modular_polynomial_qexp(2)
    assert {k: c for k, c in coeffs.items() if c} == PHI2


def test_phi3_published_coefficients():
    grid = load_reference(3).grid
    assert grid[4][0] == 1 and grid[0][4] == 1
    for (i, j), c in PHI3_SAMPLE.items():
        assert grid[i][j] == c and grid[j][i] == c


@pytest.mark.parametrize("ell", PINNED)
def test_reference_tables_pass_identities(ell):
    table = load_reference(ell)
    assert len(table.grid) == ell + 2
    assert all(ok for _, ok in validate_grid(table.grid, ell))
    assert len(table.checksum) == 64


def test_unpinned_level():
    with pytest.raises(FixtureError):
        load_reference(17)


def test_corrupt_fixture_detected(tmp_path, monkeypatch):
    data = tmp_path / "data"
    shutil.copytree(reference_mod._data(), data)
    with open(data / "phi_3.txt", "a") as fh:
        fh.write("0 0 1\n")
    monkeypatch.setattr(reference_mod, "_data", lambda: data)
    with pytest.raises(FixtureError):
        load_reference(3)
    (data / "phi_5.txt").unlink()
    with pytest.raises(FixtureError):
        load_reference(5)


def test_phi3_mod_167_direct():
    grid = load_reference(3).grid
    assert modp_direct(3, 167).grid == [[c % 167 for c in row] for row in grid]


def test_direct_slice_is_base_velu():
    jt, j0 = direct_jtildes(7, 167)
    out = modp_direct(7, 167)
    F = jt[0].ring.field
    # the eps^0 part of each deformation is a root of Phi_7(j0, Y) mod p
    for t in jt:
        y = t.residue()
        total = F.zero
        for i, row in enumerate(out.grid):
            for j, c in enumerate(row):
                total = total + F(c) * j0 ** i * y ** j
        assert total.is_zero()


def test_direct_matches_reference_phi7():
    grid = load_reference(7).grid
    assert modp_direct(7, 223).grid == [[c % 223 for c in row] for row in grid]
