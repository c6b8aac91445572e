"""Monte-Carlo Cut&Count solvers for connectivity problems parameterized by
treewidth, with decomposition tooling, transform algebra, brute-force
oracles, iterative-compression FPT solvers and a SAT-to-Steiner hard
instance generator."""

from .engine import UNKNOWN, YES, MonteCarloAnswer, WeightFunction, sample_weights
from .graphs import DirectedGraph, UndirectedGraph, parse_graph, serialize_graph

__version__ = "0.1.0"

__all__ = [
    "DirectedGraph",
    "MonteCarloAnswer",
    "UNKNOWN",
    "UndirectedGraph",
    "WeightFunction",
    "YES",
    "parse_graph",
    "sample_weights",
    "serialize_graph",
]
