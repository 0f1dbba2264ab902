"""Isogeny diamonds, their Kani kernels, and the deformation lift of one diamond."""
from .lift import (DEFAULT_PROBE_UNIT, DiamondSpec, LiftResult, RoundRecord, chain_defect, diamond_chain,
                   kani_kernel, lift_isogeny_diamond)

__all__ = ["DEFAULT_PROBE_UNIT", "DiamondSpec", "LiftResult", "RoundRecord", "chain_defect",
           "diamond_chain", "kani_kernel", "lift_isogeny_diamond"]
