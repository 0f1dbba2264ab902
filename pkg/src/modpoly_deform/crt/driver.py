"""Prime iteration, Chinese remaindering and validation of Phi_ell over Z."""
from __future__ import annotations

import logging
import time
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from ..errors import (ConvergenceFailure, DegenerateSecant, ExcludedJInvariant,
                      InternalInconsistency, ModPolyError, PrimeSkipped, SamplingFailure)
from ..modpoly import (DiamondParams, ModPolyModP, PipelineOptions, find_diamond_parameters,
                       modular_polynomial_modp, next_suitable_prime)
from ..ringarith import ResidueGrid, crt_combine, is_probable_prime
from .height import HeightBound, height_bound, log_abs

log = logging.getLogger(__name__)

# Errors after which a prime is replaced by the next suitable one.
SKIPPABLE = (PrimeSkipped, ExcludedJInvariant, DegenerateSecant, SamplingFailure,
             ConvergenceFailure)
# A run that skips this many consecutive primes is treated as broken.
MAX_CONSECUTIVE_SKIPS = 50


@dataclass
class CrtConfig:
    seed: int = 0
    threads: int = 1
    radical: bool = False
    probe_unit: int = 1
    # primes are taken in ascending order starting above this value
    start_after: int = 0

    def options(self) -> PipelineOptions:
        return PipelineOptions(seed=self.seed, radical=self.radical, probe_unit=self.probe_unit)


@dataclass
class ModPolyInteger:
    """Phi_ell over Z: grid[i][j] is the coefficient of X^i Y^j."""

    ell: int
    grid: list
    primes: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    modulus: int = 1
    bound: Optional[HeightBound] = None
    seconds: float = 0.0

    def max_log_height(self) -> float:
        return max((log_abs(c) for row in self.grid for c in row if c), default=0.0)


def _check_odd_prime(ell: int):
    if not isinstance(ell, int) or ell < 3 or ell % 2 == 0 or not is_probable_prime(ell):
        raise ValueError(f"ell = {ell} is not an odd prime")


# Per-prime outcomes already computed in this process, keyed by (ell, p, params, options).
_PRIME_CACHE: dict = {}


def _run_prime(args):
    ell, p, params, options = args
    key = (ell, p, params, options)
    if key in _PRIME_CACHE:
        return _PRIME_CACHE[key]
    try:
        out = p, modular_polynomial_modp(ell, p, params, options), None
    except SKIPPABLE as exc:
        out = p, None, f"{type(exc).__name__}: {exc}"
    _PRIME_CACHE[key] = out
    return out


def clear_prime_cache():
    _PRIME_CACHE.clear()


def iterate_prime_results(ell: int, params: DiamondParams, config: CrtConfig, enough):
    """Yield (p, ModPolyModP or None, skip reason) in ascending p until enough(primes) holds.

    With several threads, primes are computed in batches by a process pool but
    results are still consumed in ascending order.
    """
    options = config.options()
    p = config.start_after
    used = []
    skips_in_row = 0
    pool = ProcessPoolExecutor(config.threads) if config.threads > 1 else None
    try:
        while not enough(used):
            batch = []
            for _ in range(max(1, config.threads)):
                p = next_suitable_prime(params, p)
                batch.append((ell, p, params, options))
            if pool:
                results = list(pool.map(_run_prime, batch))
                for args, out in zip(batch, results):
                    _PRIME_CACHE[(args[0], args[1], args[2], args[3])] = out
            else:
                results = map(_run_prime, batch)
            for q, res, reason in results:
                if enough(used):
                    break
                if res is None:
                    skips_in_row += 1
                    log.info("ell=%d: prime %d skipped (%s)", ell, q, reason)
                    if skips_in_row > MAX_CONSECUTIVE_SKIPS:
                        raise InternalInconsistency("too many consecutive skipped primes",
                                                    diagnostics={"last_prime": q})
                    yield q, None, reason
                    continue
                skips_in_row = 0
                used.append(q)
                yield q, res, None
    finally:
        if pool:
            pool.shutdown()


def _product(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def modular_polynomial(ell: int, config: CrtConfig | None = None) -> ModPolyInteger:
    """Phi_ell in Z[X, Y] by CRT over suitable primes.

    Raises:
        ValueError: ell is not an odd prime.
        InternalInconsistency: the reconstructed grid fails validation.
    """
    _check_odd_prime(ell)
    config = config or CrtConfig()
    t0 = time.perf_counter()
    params = find_diamond_parameters(ell)
    hb = height_bound(ell)
    acc = ResidueGrid.empty(ell + 2)
    skipped = []
    for p, res, reason in iterate_prime_results(
            ell, params, config, lambda used: _product(used) > hb.threshold):
        if res is None:
            skipped.append((p, reason))
            continue
        acc = crt_combine(acc, res.grid, p)
        log.info("ell=%d: prime %d folded, modulus has %d bits", ell, p, acc.modulus.bit_length())
    used = _primes_of(acc.modulus, params, skipped, config.start_after)
    out = ModPolyInteger(ell, acc.signed(), used, skipped, acc.modulus, hb,
                         time.perf_counter() - t0)
    failures = [name for name, ok in validate_grid(out.grid, ell, hb) if not ok]
    if acc.modulus <= hb.threshold:
        failures.append("modulus-exceeds-threshold")
    if failures:
        raise InternalInconsistency(f"validation failed: {', '.join(failures)}",
                                    diagnostics={"failures": failures, "primes": used,
                                                 "skipped": skipped})
    return out


def _primes_of(M, params, skipped, after=0):
    skip = {p for p, _ in skipped}
    out, p = [], after
    while M > 1:
        p = next_suitable_prime(params, p)
        if p in skip:
            continue
        if M % p:
            raise InternalInconsistency("modulus does not factor over the expected primes")
        out.append(p)
        M //= p
    return out


# -- validation ---------------------------------------------------------------

def check_symmetric(grid) -> bool:
    n = len(grid)
    return all(grid[i][j] == grid[j][i] for i in range(n) for j in range(n))


def check_monic(grid, ell) -> bool:
    """Monic of degree ell + 1 in each variable, with shape (ell + 2) x (ell + 2)."""
    n = ell + 2
    if len(grid) != n or any(len(row) != n for row in grid):
        return False
    if grid[n - 1][0] != 1 or grid[0][n - 1] != 1:
        return False
    return all(grid[n - 1][j] == 0 for j in range(1, n)) and all(grid[i][n - 1] == 0 for i in range(1, n))


def kronecker_grid(ell):
    """(X^l - Y)(X - Y^l) = X^(l+1) - X^l Y^l - X Y + Y^(l+1) as a grid."""
    n = ell + 2
    g = [[0] * n for _ in range(n)]
    g[ell + 1][0] += 1
    g[ell][ell] -= 1
    g[1][1] -= 1
    g[0][ell + 1] += 1
    return g


def check_kronecker(grid, ell) -> bool:
    ref = kronecker_grid(ell)
    n = ell + 2
    return all((grid[i][j] - ref[i][j]) % ell == 0 for i in range(n) for j in range(n))


def check_height(grid, hb: HeightBound) -> bool:
    return all(abs(c) <= hb.coefficient_cap for row in grid for c in row)


def validate_grid(grid, ell, hb: HeightBound | None = None):
    """[(predicate name, passed)] for the classical identities and the height bound."""
    hb = hb or height_bound(ell)
    shape_ok = len(grid) == ell + 2 and all(len(r) == ell + 2 for r in grid)
    out = [("shape", shape_ok)]
    if not shape_ok:
        return out
    out += [("symmetry", check_symmetric(grid)), ("monic", check_monic(grid, ell)),
            ("kronecker", check_kronecker(grid, ell)), ("height", check_height(grid, hb))]
    return out


# -- reduction modulo m ---------------------------------------------------------

FRACTION_BITS = 96


def explicit_crt_mod_m(residues, primes, m: int):
    """Signed CRT value of each cell, reduced mod m, without forming it over Z.

    Uses x = sum r_i c_i M/p_i - M t, where c_i = (M/p_i)^-1 mod p_i and
    t = round(sum r_i c_i / p_i); t is found from fixed-point approximations
    of the fractions, with an exact fallback when the rounding is ambiguous.
    """
    M = _product(primes)
    k = len(primes)
    cof = [M // p for p in primes]
    c = [pow(cf % p, -1, p) for cf, p in zip(cof, primes)]
    cof_m = [cf % m for cf in cof]
    M_m = M % m
    one = 1 << FRACTION_BITS
    size = len(residues[0])
    out = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            acc_m = 0
            frac = 0
            terms = []
            for idx, p in enumerate(primes):
                a = residues[idx][i][j] * c[idx] % p
                terms.append(a)
                acc_m += a * cof_m[idx]
                frac += (a << FRACTION_BITS) // p
            # frac underestimates the true sum by less than k units
            half = one // 2
            lo_t = (frac - 1 + half) >> FRACTION_BITS
            hi_t = (frac + k + half) >> FRACTION_BITS
            if lo_t == hi_t:
                t = lo_t
            else:
                t = _exact_round(terms, primes)
            out[i][j] = (acc_m - M_m * t) % m
    return out


def _exact_round(terms, primes):
    s = sum(Fraction(a, p) for a, p in zip(terms, primes))
    t = s.numerator // s.denominator
    # representative in (-M/2, M/2]: round half down
    if s - t > Fraction(1, 2):
        t += 1
    return t


def modular_polynomial_mod_m(ell: int, m: int, config: CrtConfig | None = None):
    """Phi_ell mod m (entries in [0, m)) from the same per-prime results.

    Returns:
        (grid, primes) with grid[i][j] = a_ij mod m.
    """
    _check_odd_prime(ell)
    if m < 2:
        raise ValueError("modulus must be at least 2")
    config = config or CrtConfig()
    params = find_diamond_parameters(ell)
    hb = height_bound(ell)
    residues, primes = [], []
    for p, res, reason in iterate_prime_results(
            ell, params, config, lambda used: _product(used) > hb.threshold):
        if res is None:
            continue
        residues.append(res.grid)
        primes.append(p)
    return explicit_crt_mod_m(residues, primes, m), primes
