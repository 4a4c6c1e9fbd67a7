"""Simulation laboratory for strongly connected components of critical
random directed graphs, their depth-first encodings, and the continuum
objects they converge to."""

from .graphs import (
    DirectedGraph,
    UndirectedGraph,
    critical_probability,
    read_graph,
    sample_directed_gnp,
    sample_undirected_gnp,
    write_graph,
)
from .rng import derive_seed, make_rng, validate_seed

__all__ = [
    "DirectedGraph",
    "UndirectedGraph",
    "critical_probability",
    "derive_seed",
    "make_rng",
    "read_graph",
    "sample_directed_gnp",
    "sample_undirected_gnp",
    "validate_seed",
    "write_graph",
]

__version__ = "0.1.0"
