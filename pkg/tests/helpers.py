"""Shared builders and independent oracles used across test modules."""

import random
from itertools import combinations

from atlas.graphs import Graph


def two_triangles() -> Graph:
    g = Graph(nodes=range(6))
    for tri in ((0, 1, 2), (3, 4, 5)):
        for u, v in combinations(tri, 2):
            g.add_edge(u, v)
    return g


def ring_of_cliques(q: int, c: int) -> Graph:
    """q cliques of size c, consecutive cliques joined by a single edge."""
    g = Graph(nodes=range(q * c))
    for block in range(q):
        members = range(block * c, (block + 1) * c)
        for u, v in combinations(members, 2):
            g.add_edge(u, v)
    for block in range(q):
        u = block * c  # first member of this clique
        v = ((block + 1) % q) * c + 1
        g.add_edge(u, v)
    return g


def random_graph(n: int, p: float, seed: int, weighted: bool = False) -> Graph:
    rng = random.Random(seed)
    g = Graph(nodes=range(n))
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            g.add_edge(u, v, rng.uniform(0.5, 3.0) if weighted else 1.0)
    return g


def all_partitions(items):
    """Every set partition of `items`, as a list of lists."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in all_partitions(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1:]
        yield [[first]] + smaller


def modularity_by_matrix(graph: Graph, assignment: dict) -> float:
    """Independent modularity computation from the full adjacency matrix.

    Uses the pairwise definition sum_ij (A_ij - k_i k_j / 2m) delta_ij / 2m
    with A_ii equal to twice the self-loop weight.
    """
    nodes = graph.nodes()
    index = {u: i for i, u in enumerate(nodes)}
    n = len(nodes)
    a = [[0.0] * n for _ in range(n)]
    for u, v, w in graph.edges():
        if u == v:
            a[index[u]][index[u]] += 2.0 * w
        else:
            a[index[u]][index[v]] += w
            a[index[v]][index[u]] += w
    k = [sum(row) for row in a]
    two_m = sum(k)
    if two_m == 0:
        return 0.0
    q = 0.0
    for i in range(n):
        for j in range(n):
            if assignment[nodes[i]] == assignment[nodes[j]]:
                q += a[i][j] - k[i] * k[j] / two_m
    return q / two_m


def best_partition_by_enumeration(graph: Graph) -> tuple[float, list]:
    """Exhaustive modularity maximum over every partition (tiny graphs only)."""
    best_q, best_blocks = float("-inf"), None
    for blocks in all_partitions(graph.nodes()):
        assignment = {u: i for i, block in enumerate(blocks) for u in block}
        q = modularity_by_matrix(graph, assignment)
        if q > best_q:
            best_q, best_blocks = q, blocks
    return best_q, best_blocks
