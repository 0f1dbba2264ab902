"""Elliptic curves over F_{p^2} and over truncated power series rings."""
from .curve import EllipticCurve, Point, curve_from_j_deformation, exact_order_is
from .divpoly import division_polynomial
from .pairing import weil_pairing
from .velu import IsogenyRecord, Isomorphism, dual_isogeny, isomorphisms, velu_isogeny
from .torsion import lift_point, point_of_order, torsion_basis
from .endomorphism import Endomorphism, Iota, base_curve, endomorphism_iota

CurveOverRing = EllipticCurve
PointOverRing = Point

__all__ = [
    "EllipticCurve", "Point", "CurveOverRing", "PointOverRing", "curve_from_j_deformation",
    "exact_order_is", "division_polynomial", "weil_pairing", "IsogenyRecord", "Isomorphism",
    "dual_isogeny", "isomorphisms", "velu_isogeny", "lift_point", "point_of_order",
    "torsion_basis", "Endomorphism", "Iota", "base_curve", "endomorphism_iota",
]
