"""Artin monoid arithmetic, collapsed classifying-space complexes, and
integer homology for Coxeter/Artin systems at desk scale."""

__version__ = "0.1.0"

from .coxeter import CoxeterSystem
from .artin import ArtinMonoid

__all__ = ["CoxeterSystem", "ArtinMonoid", "__version__"]
