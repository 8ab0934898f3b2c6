"""Minimal undirected graph container shared by the analysis modules.

Edges carry weights and self-loops are allowed: both are required by the
community-aggregation phase of the clustering code, even though graphs built
from the link store are simple and unweighted. Node ids must be hashable and
mutually orderable (the store uses strings, the simulators use ints); all
iteration orders are made deterministic by sorting.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Iterator

Node = Hashable


class Graph:
    """Undirected weighted graph backed by an adjacency dict."""

    def __init__(self, nodes: Iterable[Node] = (), edges: Iterable[tuple] = ()):
        self._adj: dict = {}
        for u in nodes:
            self.add_node(u)
        for e in edges:
            self.add_edge(*e)

    def add_node(self, u: Node) -> None:
        self._adj.setdefault(u, {})

    def add_edge(self, u: Node, v: Node, weight: float = 1.0) -> None:
        """Set the weight of edge {u, v}; replaces any existing weight."""
        self.add_node(u)
        self.add_node(v)
        self._adj[u][v] = weight
        self._adj[v][u] = weight

    def increment_edge(self, u: Node, v: Node, weight: float = 1.0) -> None:
        """Add `weight` on top of the current weight of {u, v} (0 if absent)."""
        current = self._adj.get(u, {}).get(v, 0.0)
        self.add_edge(u, v, current + weight)

    def remove_edge(self, u: Node, v: Node) -> None:
        del self._adj[u][v]
        if u != v:
            del self._adj[v][u]

    def has_node(self, u: Node) -> bool:
        return u in self._adj

    def has_edge(self, u: Node, v: Node) -> bool:
        return v in self._adj.get(u, {})

    def weight(self, u: Node, v: Node) -> float:
        return self._adj[u][v]

    def nodes(self) -> list:
        return sorted(self._adj)

    def neighbors(self, u: Node) -> set:
        """Neighbor set of u, excluding u itself even when a self-loop exists."""
        return {v for v in self._adj[u] if v != u}

    def edges(self) -> Iterator[tuple]:
        """Yield (u, v, weight) once per edge with u <= v, in sorted order."""
        for u in self.nodes():
            for v in sorted(self._adj[u]):
                if u <= v:
                    yield u, v, self._adj[u][v]

    def degree(self, u: Node) -> float:
        """Weighted degree; a self-loop contributes twice its weight."""
        return sum(self._adj[u].values()) + self._adj[u].get(u, 0.0)

    def num_nodes(self) -> int:
        return len(self._adj)

    def num_edges(self) -> int:
        return sum(1 for _ in self.edges())

    def total_weight(self) -> float:
        """Sum of edge weights, each undirected edge and self-loop counted once."""
        return sum(w for _, _, w in self.edges())

    def subgraph(self, keep: Iterable[Node]) -> "Graph":
        keep = set(keep)
        sub = Graph(nodes=(u for u in keep if u in self._adj))
        for u, v, w in self.edges():
            if u in keep and v in keep:
                sub.add_edge(u, v, w)
        return sub

    def copy(self) -> "Graph":
        g = Graph()
        g._adj = {u: dict(nbrs) for u, nbrs in self._adj.items()}
        return g

    def __contains__(self, u: Node) -> bool:
        return u in self._adj

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __repr__(self) -> str:
        return f"Graph(n={self.num_nodes()}, m={self.num_edges()})"
