"""The ABB representation of PG(2, q^n) in PG(2n, q), with checks of its structure theory."""

from .gf_tower import FieldCtx, field

__version__ = "0.1.0"

__all__ = ["FieldCtx", "field", "__version__"]
