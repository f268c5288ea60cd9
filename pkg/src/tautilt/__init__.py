"""Support tau-tilting theory for path algebras of acyclic quivers."""

from .quiver import Quiver, parse_quiver, preset
from .rep import Representation, tau, tau_inverse
from .indec import IndecPool, decompose, enumerate_indecomposables

__all__ = [
    "Quiver", "parse_quiver", "preset", "Representation", "tau", "tau_inverse",
    "IndecPool", "decompose", "enumerate_indecomposables",
]
