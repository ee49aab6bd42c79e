"""Chabauty-Coleman computations on genus-2 hyperelliptic curves over p-adic fields."""

from .errors import ChabautyError, DomainError, PrecisionExhausted
from .padic import PadicNumber

__all__ = ["ChabautyError", "DomainError", "PrecisionExhausted", "PadicNumber"]
__version__ = "0.1.0"
