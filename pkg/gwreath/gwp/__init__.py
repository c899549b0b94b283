"""Generalised wreath products of permutation groups over finite posets."""
from .core import GwpElement, GwpGroup
from .errors import (
    BudgetExhausted,
    DeskGuardExceeded,
    DomainMismatch,
    GwpError,
    HypothesisViolation,
    PosetError,
    SpecParseError,
)
from .permgroup import Permutation, PermGroupHandle
from .poset import AncestralSet, Poset

__version__ = "0.1.0"

__all__ = [
    "AncestralSet",
    "BudgetExhausted",
    "DeskGuardExceeded",
    "DomainMismatch",
    "GwpElement",
    "GwpError",
    "GwpGroup",
    "HypothesisViolation",
    "PermGroupHandle",
    "Permutation",
    "PosetError",
    "Poset",
    "SpecParseError",
]
