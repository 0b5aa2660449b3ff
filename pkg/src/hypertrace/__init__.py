"""Trace-free hypergraphs: trace detection, covering designs, star-trace
constructions and bounds, and small-scale exact search."""
from .hypercore import Hypergraph, parse_hypergraph
from .tracedetect import PatternGraph, contains_star_trace, contains_trace, k2t, star

__version__ = "0.1.0"

__all__ = [
    "Hypergraph",
    "PatternGraph",
    "contains_star_trace",
    "contains_trace",
    "k2t",
    "parse_hypergraph",
    "star",
]
