"""Reconstruction of Phi_ell over Z (or mod m) from per-prime results."""
from .driver import (CrtConfig, ModPolyInteger, check_height, clear_prime_cache, check_kronecker, check_monic,
                     check_symmetric, explicit_crt_mod_m, iterate_prime_results, kronecker_grid,
                     modular_polynomial, modular_polynomial_mod_m, validate_grid)
from .height import HeightBound, height_bound, log_abs

__all__ = ["CrtConfig", "ModPolyInteger", "check_height", "clear_prime_cache", "check_kronecker", "check_monic",
           "check_symmetric", "explicit_crt_mod_m", "iterate_prime_results", "kronecker_grid",
           "modular_polynomial", "modular_polynomial_mod_m", "validate_grid", "HeightBound",
           "height_bound", "log_abs"]
