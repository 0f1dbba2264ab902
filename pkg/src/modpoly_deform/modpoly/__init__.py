"""Per-prime computation of phi_ell mod p."""
from .params import (DiamondParams, find_diamond_parameters, next_suitable_prime, parameter_cap,
                     suitable_primes)
from .pipeline import (ModPolyModP, PipelineOptions, assemble, base_setup, build_diamonds,
                       check_grid_modp, kernel_generator, lift_all_diamonds,
                       modular_polynomial_modp, substitute_epsilon)

__all__ = ["DiamondParams", "find_diamond_parameters", "next_suitable_prime", "parameter_cap",
           "suitable_primes", "ModPolyModP", "PipelineOptions", "assemble", "base_setup",
           "build_diamonds", "check_grid_modp", "kernel_generator", "lift_all_diamonds",
           "modular_polynomial_modp", "substitute_epsilon"]
