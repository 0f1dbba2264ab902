"""Flat and JSON serialization of coefficient grids.

Flat format: one line "i j c" per nonzero coefficient c of X^i Y^j, sorted by
(i, j), LF line endings, no trailing whitespace.
"""
from __future__ import annotations

import hashlib
import json

from .. import __version__


class GridFormatError(ValueError):
    """The input does not describe a coefficient grid."""


def grid_to_flat(grid) -> str:
    lines = [f"{i} {j} {c}" for i, row in enumerate(grid) for j, c in enumerate(row) if c]
    return "".join(line + "\n" for line in lines)


def flat_to_grid(text: str, size: int | None = None):
    """Parse flat text; the grid is square with side max(degree) + 1 unless ``size`` is given."""
    entries = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GridFormatError(f"line {lineno}: expected 'i j c'")
        try:
            i, j, c = (int(x) for x in parts)
        except ValueError:
            raise GridFormatError(f"line {lineno}: non-integer field") from None
        if i < 0 or j < 0:
            raise GridFormatError(f"line {lineno}: negative degree")
        if (i, j) in entries:
            raise GridFormatError(f"line {lineno}: repeated monomial")
        entries[(i, j)] = c
    if not entries:
        raise GridFormatError("no coefficients")
    n = size or (max(max(i, j) for i, j in entries) + 1)
    grid = [[0] * n for _ in range(n)]
    for (i, j), c in entries.items():
        if i >= n or j >= n:
            raise GridFormatError("degree exceeds the grid size")
        grid[i][j] = c
    return grid


def grid_to_json(grid, **metadata) -> str:
    payload = {"version": __version__, "coefficients": [[i, j, str(c)] for i, row in enumerate(grid)
                                                         for j, c in enumerate(row) if c]}
    payload.update(metadata)
    return json.dumps(payload, indent=1, sort_keys=True) + "\n"


def json_to_grid(text: str):
    try:
        data = json.loads(text)
        entries = [(int(i), int(j), int(c)) for i, j, c in data["coefficients"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise GridFormatError(f"not a coefficient file: {exc}") from None
    flat = "".join(f"{i} {j} {c}\n" for i, j, c in entries)
    return flat_to_grid(flat, data.get("size"))


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()
