"""Small built-in networks used by the Table-1 and sparse-network experiments.

Both are stored with 1-based labels; internal ids are ``label - 1``.
"""
from __future__ import annotations

from .graph import DirectedGraph, from_arcs

# Nine nodes, ten arcs: roots 1, 2, 3 feeding leaves 4..9.
FIG1_ARCS = [
    (1, 5), (1, 6), (1, 7), (1, 8),
    (2, 4), (2, 5), (2, 6),
    (3, 7), (3, 8), (3, 9),
]

# Fifteen nodes, four arcs: one path 1->2->3, two pairs, eight singletons.
A1_15NODE_ARCS = [(1, 2), (2, 3), (4, 5), (6, 7)]


def _build(n: int, arcs) -> DirectedGraph:
    return from_arcs(n, [(t - 1, h - 1) for t, h in arcs], labels=list(range(1, n + 1)))


def fig1_network() -> DirectedGraph:
    return _build(9, FIG1_ARCS)


def a1_15node() -> DirectedGraph:
    return _build(15, A1_15NODE_ARCS)


BUILTINS = {"fig1": fig1_network, "a1_15node": a1_15node}
