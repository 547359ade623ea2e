"""Exact small-case laboratory for non-trivial cross-intersecting families."""
from .family import CrossPair, Family, FamilyError, elements_of, mask_of

__all__ = ["CrossPair", "Family", "FamilyError", "elements_of", "mask_of"]
__version__ = "0.1.0"
