"""Exact orthogonal packing with precedence constraints via packing classes."""

__version__ = "0.1.0"

from .edgestate import COMPARABILITY, COMPONENT, UNASSIGNED, EdgeState, EdgeStore
from .model import Container, Instance, Item, PrecedenceConstraint, make_instance, transitive_closure, validate
from .realize import Placement, realize, verify_placement
from .search import (OptimizeResult, SearchConfig, SolveResult, Verdict, lower_bound, solve_bmp,
                     solve_copp, solve_cspp)

__all__ = [
    "COMPARABILITY", "COMPONENT", "UNASSIGNED", "Container", "EdgeState", "EdgeStore", "Instance",
    "Item", "OptimizeResult", "Placement", "PrecedenceConstraint", "SearchConfig", "SolveResult",
    "Verdict", "lower_bound", "make_instance", "realize", "solve_bmp", "solve_copp", "solve_cspp",
    "transitive_closure", "validate", "verify_placement",
]


def kernel_available() -> bool:
    """Whether the compiled search engine (numba) can be used."""
    try:
        from . import kernel  # noqa: F401
    except ImportError:
        return False
    return True
