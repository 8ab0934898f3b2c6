"""How many participants does it take to map a community's graph?

Social graphs have hubs (power-law degrees) and tight clusters, so a few
well-chosen participants reporting their own links, plus the links among
their contacts, should capture most edges. This module generates synthetic
graphs with those two properties, simulates the reporting process under two
participant policies, and measures edge coverage as participation grows.

Per-participant knowledge of a contact-pair edge is an independent coin flip
keyed by (seed, participant, edge), so captured sets are exactly monotone in
the participant set and trials are reproducible. Trials are independent and
merge deterministically.
"""

from __future__ import annotations

import hashlib
import random
import statistics
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .graphs import Graph

Edge = tuple  # canonical (u, v) with u < v


class PolicyMode(Enum):
    EGO_ONLY = "EgoOnly"
    EGO_PLUS_THIRD_PARTY = "EgoPlusThirdParty"


class Strategy(Enum):
    RANDOM = "Random"
    DEGREE_DESCENDING = "DegreeDescending"


@dataclass(frozen=True)
class SimPolicy:
    mode: PolicyMode
    third_party_know_prob: float = 1.0  # ignored for EGO_ONLY

    def __post_init__(self):
        if not 0.0 <= self.third_party_know_prob <= 1.0:
            raise ValueError("third_party_know_prob must be in [0, 1]")


@dataclass(frozen=True)
class CoveragePoint:
    participants: int
    coverage: float


def canonical_edge(u, v) -> Edge:
    return (u, v) if u < v else (v, u)


def generate_scale_free(n: int, m: int, seed: int) -> Graph:
    """Preferential attachment starting from a complete graph on m+1 nodes.

    Each arriving node attaches m edges to distinct existing nodes chosen
    with probability proportional to degree, so the edge count is exactly
    C(m+1, 2) + (n - m - 1) * m.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if n <= m:
        raise ValueError("n must exceed m")
    rng = random.Random(seed)
    g = Graph(nodes=range(n))
    # one entry per unit of degree; sampling from it is degree-proportional
    repeated: list[int] = []
    for u in range(m + 1):
        for v in range(u + 1, m + 1):
            g.add_edge(u, v)
        repeated.extend([u] * m)
    for u in range(m + 1, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(rng.choice(repeated))
        for v in sorted(targets):
            g.add_edge(u, v)
        repeated.extend(sorted(targets))
        repeated.extend([u] * m)
    return g


def generate_clustered(n: int, k: int, p_rewire: float, seed: int) -> Graph:
    """Ring lattice with k nearest neighbors, each edge rewired with p_rewire.

    Rewiring keeps the edge count at n*k/2 and never creates self-loops or
    duplicate edges.
    """
    if k < 2 or k % 2 != 0:
        raise ValueError("k must be an even integer >= 2")
    if n <= k:
        raise ValueError("n must exceed k")
    if not 0.0 <= p_rewire <= 1.0:
        raise ValueError("p_rewire must be in [0, 1]")
    rng = random.Random(seed)
    g = Graph(nodes=range(n))
    for j in range(1, k // 2 + 1):
        for u in range(n):
            g.add_edge(u, (u + j) % n)
    if p_rewire == 0.0:
        return g
    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if not g.has_edge(u, v):
                continue  # already rewired away
            if rng.random() >= p_rewire:
                continue
            if len(g.neighbors(u)) >= n - 1:
                continue  # saturated; nothing valid to rewire to
            while True:
                w = rng.randrange(n)
                if w != u and not g.has_edge(u, w):
                    break
            g.remove_edge(u, v)
            g.add_edge(u, w)
    return g


def select_participants(graph: Graph, strategy: Strategy, k: int,
                        seed: int) -> set:
    """Pick k participating nodes, uniformly or by descending degree."""
    nodes = graph.nodes()
    if not 0 <= k <= len(nodes):
        raise ValueError("k must be between 0 and the node count")
    if strategy is Strategy.RANDOM:
        return set(random.Random(seed).sample(nodes, k))
    by_degree = sorted(nodes, key=lambda u: (-graph.degree(u), u))
    return set(by_degree[:k])


def _knows(seed: int, participant, edge: Edge, prob: float) -> bool:
    """Deterministic coin flip for whether a participant knows about an edge.

    Keyed only by (seed, participant, edge) so the draw is independent of
    iteration order and of which other participants are present.
    """
    if prob >= 1.0:
        return True
    if prob <= 0.0:
        return False
    key = f"{seed}|{participant}|{edge[0]}|{edge[1]}".encode()
    digest = hashlib.blake2b(key, digest_size=8).digest()
    return int.from_bytes(digest, "big") / 2**64 < prob


def simulate_mapping(true_graph: Graph, participants: Iterable,
                     policy: SimPolicy, seed: int = 0) -> set:
    """Union of edges reported by the participants.

    Every participant reports all of their incident edges; under
    EGO_PLUS_THIRD_PARTY they also report each edge between two of their
    contacts with probability `third_party_know_prob`.
    """
    participants = set(participants)
    unknown = participants - set(true_graph.nodes())
    if unknown:
        raise ValueError(f"participants not in graph: {sorted(unknown)}")
    captured: set = set()
    for u in sorted(participants):
        nbrs = true_graph.neighbors(u)
        for v in nbrs:
            captured.add(canonical_edge(u, v))
        if policy.mode is PolicyMode.EGO_PLUS_THIRD_PARTY:
            for v in sorted(nbrs):
                for w in true_graph.neighbors(v):
                    if w <= v or w not in nbrs:
                        continue
                    edge = (v, w)
                    if edge in captured:
                        continue
                    if _knows(seed, u, edge, policy.third_party_know_prob):
                        captured.add(edge)
    return captured


def coverage(true_graph: Graph, captured: set) -> float:
    """Fraction of true edges captured; 1.0 for an edgeless graph."""
    edges = {canonical_edge(u, v) for u, v, _ in true_graph.edges()}
    extra = captured - edges
    if extra:
        raise ValueError(f"captured edges not in graph: {sorted(extra)[:3]}")
    if not edges:
        return 1.0
    return len(captured) / len(edges)


def _trial_order(graph: Graph, strategy: Strategy, seed: int, trial: int) -> list:
    if strategy is Strategy.RANDOM:
        order = graph.nodes()
        random.Random(f"{seed}:{trial}").shuffle(order)
        return order
    return sorted(graph.nodes(), key=lambda u: (-graph.degree(u), u))


def coverage_stats(true_graph: Graph, strategy: Strategy, policy: SimPolicy,
                   ks: Sequence[int], trials: int,
                   seed: int = 0) -> list[tuple[int, float, float]]:
    """(k, mean coverage, stddev) per k, averaged over `trials` runs.

    Within a trial the participant sets are nested (each k extends the
    previous one), so coverage is monotone in k by construction rather than
    only on average.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n = true_graph.num_nodes()
    for k in ks:
        if not 0 <= k <= n:
            raise ValueError(f"participant count {k} outside 0..{n}")
    per_k: dict[int, list[float]] = {k: [] for k in ks}
    for trial in range(trials):
        order = _trial_order(true_graph, strategy, seed, trial)
        trial_seed = int.from_bytes(
            hashlib.blake2b(f"{seed}:{trial}".encode(), digest_size=4).digest(),
            "big")
        for k in ks:
            captured = simulate_mapping(true_graph, order[:k], policy, trial_seed)
            per_k[k].append(coverage(true_graph, captured))
    rows = []
    for k in ks:
        values = per_k[k]
        mean = statistics.fmean(values)
        stddev = statistics.pstdev(values) if len(values) > 1 else 0.0
        rows.append((k, mean, stddev))
    return rows


def coverage_curve(true_graph: Graph, strategy: Strategy, policy: SimPolicy,
                   ks: Sequence[int], trials: int,
                   seed: int = 0) -> list[CoveragePoint]:
    """Mean coverage per participant count; see `coverage_stats`."""
    return [CoveragePoint(k, mean)
            for k, mean, _ in coverage_stats(true_graph, strategy, policy,
                                             ks, trials, seed)]


def format_tsv(rows: Iterable[tuple[int, float, float]]) -> str:
    """`k<TAB>mean<TAB>stddev` lines, one per k."""
    return "".join(f"{k}\t{mean:.6f}\t{stddev:.6f}\n"
                   for k, mean, stddev in rows)
