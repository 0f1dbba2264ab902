import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from modpoly_deform.cli import main
from modpoly_deform.cli.formats import (GridFormatError, flat_to_grid, grid_to_flat, grid_to_json,
                                        json_to_grid, sha256_text)
from modpoly_deform.crt import clear_prime_cache
from modpoly_deform.oracle import load_reference
from modpoly_deform.oracle.reference import load_manifest

grids = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-10 ** 40, 10 ** 40), min_size=n, max_size=n),
                       min_size=n, max_size=n)).filter(lambda g: any(any(r) for r in g))


@given(grids)
def test_flat_round_trip(grid):
    n = len(grid)
    assert flat_to_grid(grid_to_flat(grid), n) == grid


@given(grids)
def test_json_round_trip(grid):
    n = len(grid)
    assert json_to_grid(grid_to_json(grid, size=n)) == grid


def test_flat_layout():
    text = grid_to_flat([[0, 5], [-3, 0]])
    assert text == "0 1 5\n1 0 -3\n"


@pytest.mark.parametrize("text", ["", "1 2\n", "a b c\n", "0 0 1\n0 0 2\n", "-1 0 3\n"])
def test_flat_parse_errors(text):
    with pytest.raises(GridFormatError):
        flat_to_grid(text)


def test_compute_ell3_matches_fixture(tmp_path):
    out = tmp_path / "phi3.txt"
    assert main(["compute", "--ell", "3", "--out", str(out)]) == 0
    entry = load_manifest()["tables"]["3"]
    assert sha256_text(out.read_text()) == entry["sha256"]


def test_compute_is_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["compute", "--ell", "3", "--out", str(a)]) == 0
    clear_prime_cache()
    assert main(["compute", "--ell", "3", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_compute_mod_101(tmp_path):
    out = tmp_path / "phi3_101.json"
    assert main(["compute", "--ell", "3", "--mod", "101", "--format", "json",
                 "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["modulus"] == 101
    assert set(data["nonresidues"]) == {str(p) for p in data["primes"]}
    assert json_to_grid(out.read_text()) == [[c % 101 for c in row]
                                             for row in load_reference(3).grid]


def test_compute_rejects_even_level(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compute", "--ell", "4"])
    assert exc.value.code == 2
    assert "odd prime" in capsys.readouterr().err


def write_grid(path, grid):
    path.write_text(grid_to_flat(grid))
    return str(path)


def test_verify_pinned(tmp_path):
    path = write_grid(tmp_path / "ok.txt", load_reference(3).grid)
    assert main(["verify", path]) == 0
    assert main(["verify", path, "--spot-check"]) == 0


def test_verify_perturbed(tmp_path, capsys):
    grid = [row[:] for row in load_reference(3).grid]
    grid[2][1] += 1
    path = write_grid(tmp_path / "bad.txt", grid)
    assert main(["verify", path]) == 1
    assert "verification failed: symmetry" in capsys.readouterr().err


def test_verify_symmetric_perturbation_caught_by_spot_prime(tmp_path, capsys):
    grid = [row[:] for row in load_reference(3).grid]
    grid[2][1] += 3
    grid[1][2] += 3
    path = write_grid(tmp_path / "bad.txt", grid)
    assert main(["verify", path, "--spot-check"]) == 1
    assert "verification failed: spot-prime" in capsys.readouterr().err


def test_verify_non_grid(tmp_path, capsys):
    path = tmp_path / "junk.txt"
    path.write_text("hello world\n")
    assert main(["verify", str(path)]) == 1
    assert "parse error" in capsys.readouterr().err


def test_modp_direct_and_diamond_agree(capsys):
    assert main(["modp", "--ell", "7"]) == 0
    diamond = capsys.readouterr().out
    assert main(["modp", "--ell", "7", "--direct"]) == 0
    assert capsys.readouterr().out == diamond
    assert flat_to_grid(diamond, 9) == [[c % 167 for c in row] for row in load_reference(7).grid]


def test_modp_rejects_unsuitable_prime():
    assert main(["modp", "--ell", "7", "--prime", "163"]) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "modpoly_deform.cli", "compute", "--ell", "3",
                           "--mod", "2"], capture_output=True, text=True, check=True)
    assert flat_to_grid(proc.stdout, 5) == [[c % 2 for c in row] for row in load_reference(3).grid]
