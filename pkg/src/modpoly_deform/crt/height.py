"""Coefficient height bound for Phi_ell, evaluated with interval arithmetic."""
from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import iv, mp


@dataclass(frozen=True)
class HeightBound:
    """B = 6 l log l + 16 l + min(2 l, 14 sqrt(l) log l) + log 2 (natural logs).

    Attributes:
        ell: the level.
        B: the bound, as a float (informational).
        threshold: an integer >= e^B; the CRT modulus must exceed it.
        coefficient_cap: floor(e^(B - log 2)), the largest admissible |a_ij|.
        min_branch: "linear" when 2 l is the smaller term, "sqrt-log" otherwise.
    """

    ell: int
    B: float
    threshold: int
    coefficient_cap: int
    min_branch: str


def _interval_bound(ell: int, dps: int):
    iv.dps = dps
    L = iv.mpf(ell)
    lg = iv.log(L)
    lin = 2 * L
    sq = 14 * iv.sqrt(L) * lg
    if lin.b < sq.a:
        m, branch = lin, "linear"
    elif sq.b < lin.a:
        m, branch = sq, "sqrt-log"
    else:
        raise ArithmeticError("min branch undecided at this precision")
    core = 6 * L * lg + 16 * L + m
    return core, core + iv.log(iv.mpf(2)), branch


def _floor_exp(x, dps):
    """floor(e^x) for an interval x, or None if not determined at this precision."""
    e = iv.exp(x)
    lo, hi = int(mp.floor(e.a)), int(mp.floor(e.b))
    return lo if lo == hi else None


def height_bound(ell: int) -> HeightBound:
    """The bound with a rigorously rounded-up integer threshold."""
    dps = 50
    while True:
        with mp.workdps(dps):
            try:
                core, B, branch = _interval_bound(ell, dps)
            except ArithmeticError:
                dps *= 2
                continue
            threshold = int(mp.ceil(iv.exp(B).b))
            cap = _floor_exp(core, dps)
            if cap is not None:
                return HeightBound(ell, float(mp.mpf(B.a)), threshold, cap, branch)
        dps *= 2


def log_abs(x: int) -> float:
    """Natural log of |x| for a nonzero big integer (for reporting)."""
    x = abs(x)
    n = x.bit_length()
    if n <= 1000:
        return math.log(x)
    return math.log(x >> (n - 60)) + (n - 60) * math.log(2)
