"""Pinned tables of Phi_ell for small ell, with checksums."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ..cli.formats import GridFormatError, flat_to_grid, sha256_text
from ..errors import FixtureError

PINNED = (3, 5, 7, 11, 13)


@dataclass(frozen=True)
class ReferenceTable:
    ell: int
    grid: list
    provenance: str
    checksum: str


def _data():
    return resources.files(__package__) / "data"


def load_manifest():
    try:
        return json.loads((_data() / "manifest.json").read_text())
    except (OSError, ValueError) as exc:
        raise FixtureError(f"reference manifest unreadable: {exc}") from None


def load_reference(ell: int) -> ReferenceTable:
    """The pinned grid of Phi_ell, after checksum and shape verification.

    Raises:
        FixtureError: ell is not pinned, or the file is missing or corrupt.
    """
    if ell not in PINNED:
        raise FixtureError(f"no reference table for ell = {ell}")
    manifest = load_manifest()
    entry = manifest.get("tables", {}).get(str(ell))
    if entry is None:
        raise FixtureError(f"manifest has no entry for ell = {ell}")
    try:
        text = (_data() / entry["file"]).read_text()
    except OSError as exc:
        raise FixtureError(f"reference table missing: {exc}") from None
    digest = sha256_text(text)
    if digest != entry["sha256"]:
        raise FixtureError(f"checksum mismatch for ell = {ell}")
    try:
        grid = flat_to_grid(text, ell + 2)
    except GridFormatError as exc:
        raise FixtureError(f"reference table for ell = {ell} is malformed: {exc}") from None
    return ReferenceTable(ell, grid, manifest.get("provenance", ""), digest)
