"""Kani kernels of (d_a, d_b)-isogeny diamonds and the secant lift of the bottom vertex.

A diamond has a top vertex T, two sides A and B, and a bottom vertex D, with
T -> A -> D and T -> B -> D of degrees (d_a, d_b) and (d_b, d_a). When
d_a + d_b = 2^n, the product T x D has a (2^n, 2^n)-isogeny to A x B. Given a
deformation of T, the deformation of D is the unique one for which this
isogeny still splits; it is found by Newton/secant iteration on the split
defect, doubling the eps-precision each round, and the deformation of A is
then read off the split.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from ..ellcurve import EllipticCurve, Point
from ..ellcurve.curve import curve_from_j_deformation
from ..ellcurve.pairing import weil_pairing
from ..errors import (ConvergenceFailure, DegenerateSecant, ExcludedJInvariant,
                      InternalInconsistency, NotIsotropic, NotSplit)
from ..ringarith import ArtinElement
from ..surface import ChainRecord, Product, compute_22_chain, lift_22_chain

DEFAULT_PROBE_UNIT = 1


@dataclass
class DiamondSpec:
    """An isogeny diamond over F_{p^2}, described through the maps the kernel needs.

    Attributes:
        top: the vertex T (E0, or C0 in the auxiliary 3-isogeny variant).
        bottom: the vertex D = E_k'.
        side_a: the vertex whose deformation is wanted (E_k).
        side_b: the other side (E0 via gamma, or C1).
        basis_curve: curve whose 2^n-torsion basis defines the kernel (side_b).
        to_top: degree-d_b map basis_curve -> top, evaluated on 2^n-torsion.
        to_bottom: degree-d_a map basis_curve -> bottom.
        test_point: callable rng -> point of ``bottom`` in the image of
            ell-torsion; its image under the Kani isogeny vanishes on side_b only.
        degrees: (d_a, d_b).
        n: log2 of d_a + d_b.
    """

    top: EllipticCurve
    bottom: EllipticCurve
    side_a: EllipticCurve
    side_b: EllipticCurve
    basis_curve: EllipticCurve
    to_top: Callable
    to_bottom: Callable
    test_point: Optional[Callable]
    degrees: tuple
    n: int

    def __post_init__(self):
        da, db = self.degrees
        if da + db != 1 << self.n:
            raise ValueError(f"degrees {self.degrees} do not sum to 2^{self.n}")
        if math.gcd(da, db) != 1:
            raise ValueError(f"degrees {self.degrees} are not coprime")

    @property
    def N(self) -> int:
        return 1 << self.n

    def vertices(self):
        return (self.top, self.side_a, self.side_b, self.bottom)

    def check_vertices(self):
        """Raise ExcludedJInvariant if a vertex has j = 0 or 1728."""
        for E in self.vertices():
            j = E.j_invariant()
            if j.is_zero() or j == 1728:
                raise ExcludedJInvariant(f"diamond vertex with j = {j}")


def kani_kernel(spec: DiamondSpec, basis):
    """Generators ((to_top P, to_bottom P), (to_top Q, to_bottom Q)) of the Kani kernel.

    Raises:
        NotIsotropic: a generator has the wrong order or the pairing is nontrivial.
    """
    P, Q = basis
    N = spec.N
    K = ((spec.to_top(P), spec.to_bottom(P)), (spec.to_top(Q), spec.to_bottom(Q)))
    half = N // 2
    for a, b in K:
        if not ((a * N).is_zero() and (b * N).is_zero()):
            raise NotIsotropic("kernel generator does not have order dividing 2^n")
        if (a * half).is_zero() or (b * half).is_zero():
            raise NotIsotropic("kernel generator meets a factor at 2-torsion level")
    e = weil_pairing(K[0][0], K[1][0], N) * weil_pairing(K[0][1], K[1][1], N)
    if not e == 1:
        raise NotIsotropic("Weil pairing is nontrivial on the kernel")
    return K


def diamond_chain(spec: DiamondSpec, basis, rng: Optional[random.Random] = None) -> ChainRecord:
    """Base-field chain of the Kani isogeny, checked against the known sides."""
    K = kani_kernel(spec, basis)
    record = compute_22_chain(Product(spec.top, spec.bottom), K, spec.n, rng=rng,
                              test_point=_pair_test(spec), check_isotropy=False)
    _check_split(spec, record)
    return record


def _pair_test(spec):
    if spec.test_point is None:
        return None
    O = spec.top.zero()
    return lambda rng: (O, spec.test_point(rng))


def _factor_index(record: ChainRecord) -> int:
    """Index (0 or 1) of the split factor isomorphic to side_a."""
    vanish = record.split.test_vanishes
    if vanish == (True, False):
        return 1
    if vanish == (False, True):
        return 0
    raise InternalInconsistency("test point does not identify the split factors",
                                diagnostics={"vanishing": vanish})


def _check_split(spec: DiamondSpec, record: ChainRecord):
    js = list(record.split_j_invariants)
    want = sorted([spec.side_a.j_invariant(), spec.side_b.j_invariant()], key=lambda x: x.sort_key())
    if sorted(js, key=lambda x: x.sort_key()) != want:
        raise InternalInconsistency("split factors differ from the diamond sides",
                                    diagnostics={"split": js, "sides": want})
    if spec.test_point is not None and js[_factor_index(record)] != spec.side_a.j_invariant():
        raise InternalInconsistency("test point picks the wrong split factor")


@dataclass(frozen=True)
class RoundRecord:
    round: int
    precision: int
    defect_valuation: int
    secant_valuation: int


@dataclass
class LiftResult:
    """Deformed j-invariants of the side A and the bottom D of a diamond."""

    j_side: ArtinElement
    j_bottom: ArtinElement
    rounds: list = field(default_factory=list)
    chain_attempts: int = 1


def chain_defect(record: ChainRecord, top_R: EllipticCurve, j_bottom: ArtinElement,
                 radical: bool = False):
    """Split defect of the chain for the bottom deformation with j-invariant j_bottom."""
    bottom = curve_from_j_deformation(j_bottom, record.domain.second)
    return lift_22_chain(record, Product(top_R, bottom), radical=radical).delta


def lift_isogeny_diamond(spec: DiamondSpec, record: ChainRecord, top_R: EllipticCurve, *,
                         probe_unit=DEFAULT_PROBE_UNIT, radical: bool = False) -> LiftResult:
    """Deform the diamond along the deformation top_R of its top vertex.

    Args:
        spec: the diamond over F_{p^2}.
        record: base chain from ``diamond_chain``.
        top_R: deformation of spec.top over R = F_{p^2}[eps]/(eps^(m+1)).
        probe_unit: unit u; round r probes the bottom j-invariant at j + u eps^(2^(r-1)).
        radical: use the quadratic-factor root lifting in chain replays.

    Raises:
        DegenerateSecant: the defect does not vanish to first order exactly.
        ConvergenceFailure: the final replay does not split.
    """
    spec.check_vertices()
    R = top_R.ring
    prec = R.precision
    F = R.field
    j0 = spec.bottom.j_invariant()
    side_index = _factor_index(record) if spec.test_point is not None else None
    j = F.artin(1).constant(j0)
    rounds = []
    r = 0
    while (1 << r) < prec:
        r += 1
        w = min(1 << r, prec)
        h = 1 << (r - 1)
        Rw = F.artin(w)
        j = j.extend(w)
        top_w = top_R.truncate(w)
        probe = Rw.eps(h) * Rw(probe_unit)
        d0 = chain_defect(record, top_w, j, radical)
        d1 = chain_defect(record, top_w, j + probe, radical)
        diff = d1 - d0
        v0 = d0.valuation()
        vd = diff.valuation()
        rounds.append(RoundRecord(r, w, v0, vd))
        if v0 < h:
            raise ConvergenceFailure(f"round {r}: defect valuation {v0} below {h}",
                                     diagnostics={"rounds": rounds})
        if vd != h:
            raise DegenerateSecant(f"round {r}: secant valuation {vd}, expected {h}")
        if not d0.is_zero():
            q = d0.exact_div(diff)
            j = j - (q.extend(w).shift(h) * Rw(probe_unit))
    j_side = _extract_side(record, top_R, j, side_index, spec, rounds, radical)
    return LiftResult(j_side, j, rounds, record.attempts)


def _extract_side(record, top_R, j_bottom, side_index, spec, rounds, radical):
    """Replay at full precision, confirm the split, and read off the side's j-invariant."""
    bottom = curve_from_j_deformation(j_bottom, record.domain.second)
    try:
        res = lift_22_chain(record, Product(top_R, bottom), radical=radical, extract=True)
    except NotSplit:
        raise ConvergenceFailure("final defect is nonzero", diagnostics={"rounds": rounds}) from None
    factors = (res.split.first, res.split.second)
    if side_index is None:
        js = [f.j_invariant() for f in factors]
        matches = [i for i, jj in enumerate(js) if jj.residue() == spec.side_a.j_invariant()]
        if len(matches) != 1:
            raise InternalInconsistency("cannot tell the split factors apart without a test point")
        side_index = matches[0]
    return factors[side_index].j_invariant()
