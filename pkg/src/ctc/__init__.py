"""Exact engine for skeletal braided tensor categories.

Works with multiplicity-free fusion data (labels, F, R, twists, pivots)
over exact scalar fields, builds algebra objects and their module
theory, and checks the structural identities that make averaging and
local projection work, entirely without floating point.
"""

from pathlib import Path

from .fields import FieldSpec, Scalar, parse_scalar, scalar_literal

__version__ = "0.1.0"


def data_path(name: str = "") -> Path:
    """Path into the bundled data tree shipped with the package."""
    base = Path(__file__).resolve().parent / "data"
    return base / name if name else base


__all__ = ["FieldSpec", "Scalar", "parse_scalar", "scalar_literal", "data_path", "__version__"]
