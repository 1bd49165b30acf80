"""Directed social-network graphs and edge-list ingestion.

Nodes are contiguous integer ids ``0..n-1``. The original identifiers found
in a dataset are kept in :attr:`DirectedGraph.labels` so that results can be
reported in the dataset's own ids.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np


class EdgeListError(ValueError):
    """Raised for malformed or empty edge-list input."""


@dataclass(frozen=True, eq=False)
class DirectedGraph:
    """Immutable directed graph with arcs sorted by ``(tail, head)``.

    Attributes
    ----------
    n : int
        Number of nodes.
    tails, heads : ndarray of int64
        Arc endpoints; arc ``a`` is ``(tails[a], heads[a])``.
    labels : tuple
        Original id of every internal node.
    """

    n: int
    tails: np.ndarray
    heads: np.ndarray
    labels: tuple = field(default=())

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(self.n)))
        for arr in (self.tails, self.heads):
            arr.setflags(write=False)

    @property
    def m(self) -> int:
        return int(self.tails.shape[0])

    @property
    def arcs(self) -> list[tuple[int, int]]:
        return list(zip(self.tails.tolist(), self.heads.tolist()))

    @property
    def indeg(self) -> np.ndarray:
        return np.bincount(self.heads, minlength=self.n)

    @property
    def outdeg(self) -> np.ndarray:
        return np.bincount(self.tails, minlength=self.n)

    @property
    def out_adj(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for t, h in zip(self.tails.tolist(), self.heads.tolist()):
            adj[t].append(h)
        return adj

    @property
    def in_adj(self) -> list[list[int]]:
        """Incoming arc indices per node, in canonical arc order."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, h in enumerate(self.heads.tolist()):
            adj[h].append(a)
        return adj

    def label_of(self, nodes: Iterable[int]) -> list:
        return [self.labels[v] for v in nodes]

    def __eq__(self, other):
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.tails, other.tails)
            and np.array_equal(self.heads, other.heads)
            and tuple(self.labels) == tuple(other.labels)
        )

    def __hash__(self):
        return hash((self.n, self.tails.tobytes(), self.heads.tobytes()))

    def __repr__(self):
        return f"DirectedGraph(n={self.n}, m={self.m})"


def from_arcs(n: int, arcs: Iterable[tuple[int, int]], labels: Sequence | None = None) -> DirectedGraph:
    """Build a canonical graph: self-loops and duplicates dropped, arcs sorted."""
    if n < 0:
        raise ValueError("node count must be non-negative")
    pairs = set()
    for t, h in arcs:
        t, h = int(t), int(h)
        if not (0 <= t < n and 0 <= h < n):
            raise ValueError(f"arc ({t}, {h}) has an endpoint outside [0, {n})")
        if t != h:
            pairs.add((t, h))
    ordered = sorted(pairs)
    tails = np.array([p[0] for p in ordered], dtype=np.int64)
    heads = np.array([p[1] for p in ordered], dtype=np.int64)
    if labels is not None and len(labels) != n:
        raise ValueError("labels must have one entry per node")
    return DirectedGraph(n, tails, heads, tuple(labels) if labels is not None else ())


def _read_text(text: str | TextIO) -> Iterable[str]:
    if isinstance(text, str):
        return io.StringIO(text)
    return text


def parse_edge_list(
    text: str | TextIO,
    mode: str = "directed",
    *,
    header: bool = False,
    order: str = "appearance",
) -> DirectedGraph:
    """Parse a whitespace-separated edge list.

    Parameters
    ----------
    text : str or file-like
        Lines ``"u v"`` (an optional third numeric column is ignored).
        Lines starting with ``#`` are comments.
    mode : {"directed", "undirected"}
        Undirected edges produce both arcs ``(u, v)`` and ``(v, u)``.
    header : bool
        If true the first data line is ``"n m"`` and ids are taken verbatim
        as internal ids (the format written by :func:`serialize`).
    order : {"appearance", "sorted"}
        How sparse ids are remapped to ``0..n-1``: by first appearance in the
        file or by ascending original id.
    """
    if mode not in ("directed", "undirected"):
        raise ValueError(f"unknown mode {mode!r}")
    if order not in ("appearance", "sorted"):
        raise ValueError(f"unknown order {order!r}")

    raw: list[tuple[int, int]] = []
    declared = None
    for lineno, line in enumerate(_read_text(text), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        tokens = s.split()
        if header and declared is None:
            try:
                declared = (int(tokens[0]), int(tokens[1]))
            except (ValueError, IndexError):
                raise EdgeListError(f"line {lineno}: bad header {s!r}") from None
            continue
        if len(tokens) not in (2, 3):
            raise EdgeListError(f"line {lineno}: expected 2 or 3 tokens, got {len(tokens)}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
            if len(tokens) == 3:
                float(tokens[2])
        except ValueError:
            raise EdgeListError(f"line {lineno}: malformed token in {s!r}") from None
        raw.append((u, v))

    if header:
        if declared is None:
            raise EdgeListError("empty input")
        n, m = declared
        g = from_arcs(n, raw)
        if g.m != m:
            raise EdgeListError(f"header declares {m} arcs but {g.m} were read")
        return g

    if not raw:
        raise EdgeListError("empty input")

    if order == "appearance":
        index: dict[int, int] = {}
        for u, v in raw:
            index.setdefault(u, len(index))
            index.setdefault(v, len(index))
    else:
        ids = sorted({x for uv in raw for x in uv})
        index = {x: i for i, x in enumerate(ids)}
    labels = [None] * len(index)
    for orig, i in index.items():
        labels[i] = orig

    arcs = [(index[u], index[v]) for u, v in raw]
    if mode == "undirected":
        arcs += [(v, u) for u, v in arcs]
    return from_arcs(len(index), arcs, labels)


def load_edge_list(path, mode: str = "directed", **kwargs) -> DirectedGraph:
    with open(path) as fh:
        return parse_edge_list(fh, mode, **kwargs)


def serialize(graph: DirectedGraph) -> str:
    """Canonical text form: header ``"n m"`` then one sorted arc per line."""
    lines = [f"{graph.n} {graph.m}"]
    lines += [f"{t} {h}" for t, h in graph.arcs]
    return "\n".join(lines) + "\n"
