"""Big-integer residues and incremental Chinese remaindering."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ..errors import StructuralError


@dataclass(frozen=True)
class BigIntResidue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1 or not (0 <= self.value < self.modulus):
            raise StructuralError(f"bad residue {self.value} mod {self.modulus}")


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """The unique x mod m1*m2 with x = r1 (m1) and x = r2 (m2)."""
    if gcd(m1, m2) != 1:
        raise StructuralError(f"moduli {m1} and {m2} are not coprime")
    if m1 == 1:
        return r2 % m2
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * t


def crt_combine(acc, new, p: int):
    """Fold a grid of residues mod p into a grid of residues mod acc.modulus.

    Args:
        acc: ``ResidueGrid`` holding values modulo some M.
        new: list of rows of ints modulo p, same shape as ``acc``.
        p: the new modulus, coprime to M.

    Returns:
        A new ``ResidueGrid`` modulo M*p.
    """
    M = acc.modulus
    if gcd(M, p) != 1:
        raise StructuralError(f"modulus {p} is not coprime to the accumulated modulus")
    if len(new) != len(acc.rows) or any(len(a) != len(b) for a, b in zip(new, acc.rows)):
        raise StructuralError("grid shapes differ")
    if M == 1:
        return ResidueGrid([[v % p for v in row] for row in new], p)
    minv = pow(M % p, -1, p)
    rows = []
    for old_row, new_row in zip(acc.rows, new):
        rows.append([r + M * ((s - r) * minv % p) for r, s in zip(old_row, new_row)])
    return ResidueGrid(rows, M * p)


class ResidueGrid:
    """A rectangular grid of residues sharing one modulus."""

    def __init__(self, rows, modulus: int):
        self.rows = rows
        self.modulus = modulus

    @classmethod
    def empty(cls, size: int):
        return cls([[0] * size for _ in range(size)], 1)

    def signed(self):
        return [[signed_lift(BigIntResidue(v, self.modulus)) for v in row] for row in self.rows]


def signed_lift(r: BigIntResidue) -> int:
    """The representative of r in (-modulus/2, modulus/2]."""
    v, m = r.value, r.modulus
    return v - m if 2 * v > m else v
