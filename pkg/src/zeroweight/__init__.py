"""Exact Weyl group traces on zero weight spaces of simple compact Lie groups."""

from .lattice import RootDatum, build_datum, normalize_label

__all__ = ["RootDatum", "build_datum", "normalize_label"]
__version__ = "0.1.0"
