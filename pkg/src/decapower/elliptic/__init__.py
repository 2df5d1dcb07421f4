"""Weierstrass models, local data, point counts and point searches over Q."""

from .curve import WeierstrassModel, invariants, quadratic_twist, short_model, transform
from .minimal import minimal_model
from .tate import conductor, tate

__all__ = [
    "WeierstrassModel",
    "conductor",
    "invariants",
    "minimal_model",
    "quadratic_twist",
    "short_model",
    "tate",
    "transform",
]
