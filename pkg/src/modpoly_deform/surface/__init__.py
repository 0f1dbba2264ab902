"""Abelian surfaces and (2,2)-isogeny chains."""
from .chain import (CHAIN_ATTEMPTS, ChainRecord, GlueStep, ReplayResult, RichelotStep, SplitStep,
                    compute_22_chain, lift_22_chain)
from .formulas import cubic_j, det3, glue_equation, richelot_codomain
from .genus2 import (Jacobian, Product, QuadraticSplitting, SplitData, SplitDefect, SurfaceState,
                     TwoTorsionRep, chi10, determinant, discriminant, glue_22, lift_2_torsion,
                     richelot_step, split_22, split_coordinates, splitting_from_roots)
from .mumford import Divisor, RichelotCorrespondence, glue_image

__all__ = [
    "CHAIN_ATTEMPTS", "ChainRecord", "GlueStep", "ReplayResult", "RichelotStep", "SplitStep",
    "compute_22_chain", "lift_22_chain", "cubic_j", "det3", "glue_equation", "richelot_codomain",
    "Jacobian", "Product", "QuadraticSplitting", "SplitData", "SplitDefect", "SurfaceState",
    "TwoTorsionRep", "chi10", "determinant", "discriminant", "glue_22", "lift_2_torsion",
    "richelot_step", "split_22", "split_coordinates", "splitting_from_roots", "Divisor",
    "RichelotCorrespondence", "glue_image",
]
