"""Greedy modularity optimization for coloring the network views.

Two-phase scheme: nodes are moved between neighboring communities while any
move strictly improves modularity, then communities collapse into weighted
super-nodes (intra-community weight becomes a self-loop) and the process
repeats on the smaller graph. Community count is chosen by the optimization,
not supplied by the caller.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Hashable

from .graphs import Graph

# Moves must beat staying put by more than this; absorbs float noise so the
# local phase terminates.
GAIN_EPS = 1e-12


@dataclass(frozen=True)
class Partition:
    """Total assignment of nodes to dense community indices 0..k-1."""

    assignment: dict

    def __post_init__(self):
        indices = set(self.assignment.values())
        if indices and indices != set(range(len(indices))):
            raise ValueError("community indices must be dense 0..k-1")

    def num_communities(self) -> int:
        return len(set(self.assignment.values()))

    def communities(self) -> dict[int, set]:
        groups: dict[int, set] = {}
        for node, c in self.assignment.items():
            groups.setdefault(c, set()).add(node)
        return groups

    def __getitem__(self, node: Hashable) -> int:
        return self.assignment[node]


def dense_partition(assignment: dict) -> Partition:
    """Relabel arbitrary community labels to dense indices.

    Indices follow first occurrence over nodes in sorted order, so the result
    is deterministic for a given assignment.
    """
    relabel: dict = {}
    out = {}
    for node in sorted(assignment):
        label = assignment[node]
        if label not in relabel:
            relabel[label] = len(relabel)
        out[node] = relabel[label]
    return Partition(out)


def singleton_partition(graph: Graph) -> Partition:
    return Partition({u: i for i, u in enumerate(graph.nodes())})


def modularity(graph: Graph, partition: Partition) -> float:
    """Intra-community edge fraction minus the degree-preserving baseline.

    Sum over communities of e_c/m - (d_c/2m)^2, with e_c the intra-community
    edge weight (self-loops once), d_c the total degree of the community
    (self-loops twice) and m the total edge weight. Defined as 0.0 for an
    edgeless graph.
    """
    m = graph.total_weight()
    if m == 0:
        return 0.0
    intra: dict[int, float] = {}
    deg: dict[int, float] = {}
    for u, v, w in graph.edges():
        cu, cv = partition[u], partition[v]
        if cu == cv:
            intra[cu] = intra.get(cu, 0.0) + w
    for u in graph.nodes():
        c = partition[u]
        deg[c] = deg.get(c, 0.0) + graph.degree(u)
    q = 0.0
    for c in set(partition.assignment.values()):
        q += intra.get(c, 0.0) / m - (deg.get(c, 0.0) / (2 * m)) ** 2
    return q


def aggregate(graph: Graph, partition: Partition) -> Graph:
    """Collapse each community into one node; intra weight becomes a self-loop.

    Modularity is invariant: the aggregated graph under its singleton
    partition scores the same as `graph` under `partition`.
    """
    agg = Graph(nodes=set(partition.assignment.values()))
    for u, v, w in graph.edges():
        agg.increment_edge(partition[u], partition[v], w)
    return agg


def _local_move(graph: Graph, order: list) -> tuple[dict, bool]:
    """One level of greedy node moves; returns (assignment, any_move)."""
    m = graph.total_weight()
    community = {u: i for i, u in enumerate(graph.nodes())}
    # community -> total degree of its members
    tot = {community[u]: graph.degree(u) for u in graph.nodes()}
    degree = {u: graph.degree(u) for u in graph.nodes()}
    any_move = False

    improved = True
    while improved:
        improved = False
        for u in order:
            own = community[u]
            k_u = degree[u]
            # weight from u to each neighboring community, self-loop excluded
            to_comm: dict[int, float] = {own: 0.0}
            for v in graph.neighbors(u):
                c = community[v]
                to_comm[c] = to_comm.get(c, 0.0) + graph.weight(u, v)
            tot[own] -= k_u
            # gain of joining community c after removal from own:
            #   to_comm[c]/m - tot[c]*k_u/(2 m^2); self-loop terms cancel
            best_c = own
            best_gain = to_comm[own] / m - tot[own] * k_u / (2 * m * m)
            for c in sorted(to_comm):
                if c == own:
                    continue
                gain = to_comm[c] / m - tot[c] * k_u / (2 * m * m)
                if gain > best_gain + GAIN_EPS:
                    best_gain = gain
                    best_c = c
            tot[best_c] += k_u
            community[u] = best_c
            if best_c != own:
                any_move = True
                improved = True
    return community, any_move


def louvain(graph: Graph, seed: int = 0) -> Partition:
    """Detect communities; never scores below the all-singletons partition.

    Node visit order is shuffled by `seed`; gain ties keep the current
    community, then prefer the lowest community index, so the result is
    deterministic per seed. Edgeless graphs give singleton communities.
    """
    if graph.num_nodes() == 0:
        return Partition({})
    if graph.total_weight() == 0:
        return singleton_partition(graph)

    rng = random.Random(seed)
    working = graph
    # node of the working graph -> original nodes it contains
    members: dict = {u: [u] for u in graph.nodes()}

    while True:
        order = working.nodes()
        rng.shuffle(order)
        local, any_move = _local_move(working, order)
        if not any_move:
            break
        partition = dense_partition(local)
        new_members: dict = {c: [] for c in range(partition.num_communities())}
        for u, c in partition.assignment.items():
            new_members[c].extend(members[u])
        working = aggregate(working, partition)
        members = new_members

    flat = {orig: label for label, origs in members.items() for orig in origs}
    return dense_partition(flat)


def color_assignment(partition: Partition, palette_size: int) -> dict[int, int]:
    """Round-robin palette indices, largest communities first."""
    if palette_size < 1:
        raise ValueError("palette_size must be >= 1")
    sizes = {c: len(nodes) for c, nodes in partition.communities().items()}
    ordered = sorted(sizes, key=lambda c: (-sizes[c], c))
    return {c: i % palette_size for i, c in enumerate(ordered)}
