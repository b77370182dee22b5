"""Exact-arithmetic toolkit for Go-diagrams, Deodhar components, Go-network
Plucker evaluation, column-deletion fibers, and Wilson loop diagram geometry."""

from . import coxeter, diagrams, fibers, networks, wilson

__all__ = ["coxeter", "diagrams", "fibers", "networks", "wilson"]
