"""Exact arithmetic: F_p, F_{p^2}, truncated power series, polynomials, CRT."""
from .fields import PrimeField, QuadExtField, Fp2Elem, is_probable_prime
from .artin import ArtinRing, ArtinElement, set_schoolbook_threshold
from .poly import (Poly, newton_lift, newton_lift_many, product_tree, quadratic_roots, poly_gcd,
                   poly_xgcd, poly_roots)
from .residues import BigIntResidue, ResidueGrid, crt_combine, crt_pair, signed_lift

RPoly = Poly

__all__ = [
    "PrimeField", "QuadExtField", "Fp2Elem", "is_probable_prime",
    "ArtinRing", "ArtinElement", "set_schoolbook_threshold",
    "Poly", "RPoly", "newton_lift", "newton_lift_many", "product_tree", "quadratic_roots", "poly_gcd",
    "poly_xgcd", "poly_roots",
    "BigIntResidue", "ResidueGrid", "crt_combine", "crt_pair", "signed_lift",
]
