"""Command-line interface and grid serialization."""
from .formats import (GridFormatError, flat_to_grid, grid_to_flat, grid_to_json, json_to_grid,
                      sha256_text)

__all__ = ["GridFormatError", "flat_to_grid", "grid_to_flat", "grid_to_json", "json_to_grid",
           "sha256_text", "main"]


def main(argv=None):
    from .main import main as _main
    return _main(argv)
