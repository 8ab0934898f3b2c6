"""Deterministic force-directed layout for headless rendering.

Nodes repel like point charges, edges pull like springs with a rest length,
and a weak gravity keeps everything centered. The browser runs its own
interactive simulation; this one exists for the CLI's SVG export and for
tests, so determinism matters more than frame rate. Repulsion is the plain
O(n^2) pairwise sum, which is fine at community scale.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .community import Partition, color_assignment
from .graphs import Graph

Vec = tuple[float, float]

#: Fill colors for community coloring, assigned round-robin by size.
PALETTE = ("#4c78a8", "#f58518", "#54a24b", "#e45756",
           "#72b7b2", "#eeca3b", "#b279a2", "#9d755d")


@dataclass(frozen=True)
class LayoutParams:
    charge: float = -30.0          # repulsion magnitude, <= 0
    spring_constant: float = 0.1   # > 0
    rest_length: float = 30.0      # pixels, > 0
    gravity: float = 0.05          # >= 0
    damping: float = 0.6           # in (0, 1]
    dt: float = 1.0                # > 0
    center: Vec = (0.0, 0.0)

    def __post_init__(self):
        if self.charge > 0:
            raise ValueError("charge must be <= 0")
        if self.spring_constant <= 0:
            raise ValueError("spring_constant must be > 0")
        if self.rest_length <= 0:
            raise ValueError("rest_length must be > 0")
        if self.gravity < 0:
            raise ValueError("gravity must be >= 0")
        if not 0 < self.damping <= 1:
            raise ValueError("damping must be in (0, 1]")
        if self.dt <= 0:
            raise ValueError("dt must be > 0")

    @property
    def min_separation(self) -> float:
        """Distance clamp that bounds the repulsion singularity."""
        return 1e-3 * self.rest_length


@dataclass(frozen=True)
class LayoutState:
    positions: dict
    velocities: dict
    iteration: int = 0

    def __post_init__(self):
        if set(self.positions) != set(self.velocities):
            raise ValueError("positions and velocities must share keys")


def init_layout(graph: Graph, seed: int, params: LayoutParams) -> LayoutState:
    """Seeded start: positions uniform in the unit disc around the center.

    Re-samples on exact collisions so no two nodes coincide.
    """
    rng = random.Random(seed)
    cx, cy = params.center
    positions: dict = {}
    taken = set()
    for node in graph.nodes():
        while True:
            x, y = rng.uniform(-1, 1), rng.uniform(-1, 1)
            if x * x + y * y <= 1 and (x, y) not in taken:
                break
        taken.add((x, y))
        positions[node] = (cx + x, cy + y)
    velocities = {node: (0.0, 0.0) for node in positions}
    return LayoutState(positions=positions, velocities=velocities, iteration=0)


def _unit_and_distance(p: Vec, q: Vec, eps: float) -> tuple[Vec, float]:
    """Direction q -> p and the clamped distance used for force magnitudes.

    Exactly coincident points get a fixed direction so the pair still
    separates deterministically.
    """
    dx, dy = p[0] - q[0], p[1] - q[1]
    d = math.hypot(dx, dy)
    if d == 0.0:
        return (1.0, 0.0), eps
    return (dx / d, dy / d), max(d, eps)


def step(state: LayoutState, graph: Graph, params: LayoutParams) -> LayoutState:
    """Advance the simulation by one integration step."""
    nodes = graph.nodes()
    if set(nodes) != set(state.positions):
        raise ValueError("layout state does not cover the graph's nodes")
    eps = params.min_separation
    pos = state.positions
    force = {u: [0.0, 0.0] for u in nodes}

    repulsion = abs(params.charge)
    if repulsion > 0:
        for i, u in enumerate(nodes):
            for v in nodes[i + 1:]:
                (ux, uy), d = _unit_and_distance(pos[u], pos[v], eps)
                mag = repulsion / (d * d)
                force[u][0] += ux * mag
                force[u][1] += uy * mag
                force[v][0] -= ux * mag
                force[v][1] -= uy * mag

    for u, v, _ in graph.edges():
        if u == v:
            continue
        (ux, uy), d = _unit_and_distance(pos[u], pos[v], eps)
        mag = params.spring_constant * (d - params.rest_length)
        # positive mag pulls the endpoints together
        force[u][0] -= ux * mag
        force[u][1] -= uy * mag
        force[v][0] += ux * mag
        force[v][1] += uy * mag

    cx, cy = params.center
    for u in nodes:
        force[u][0] += params.gravity * (cx - pos[u][0])
        force[u][1] += params.gravity * (cy - pos[u][1])

    positions = {}
    velocities = {}
    for u in nodes:
        vx, vy = state.velocities[u]
        vx = params.damping * (vx + force[u][0] * params.dt)
        vy = params.damping * (vy + force[u][1] * params.dt)
        velocities[u] = (vx, vy)
        positions[u] = (pos[u][0] + vx * params.dt, pos[u][1] + vy * params.dt)
    return LayoutState(positions=positions, velocities=velocities,
                       iteration=state.iteration + 1)


def run_until(state: LayoutState, graph: Graph, params: LayoutParams,
              max_iters: int, tol: float) -> LayoutState:
    """Step until the largest per-node displacement drops below `tol`."""
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    for _ in range(max_iters):
        new = step(state, graph, params)
        moved = max(
            (math.hypot(new.positions[u][0] - state.positions[u][0],
                        new.positions[u][1] - state.positions[u][1])
             for u in new.positions),
            default=0.0)
        state = new
        if moved < tol:
            break
    return state


def export_svg(graph: Graph, positions: dict, partition: Partition,
               node_radius: float = 6.0) -> str:
    """Render nodes and edges to an SVG document.

    Output is byte-deterministic for identical inputs: nodes and edges are
    sorted and coordinates written with fixed precision.
    """
    colors = color_assignment(partition, len(PALETTE))
    nodes = graph.nodes()
    if nodes:
        xs = [positions[u][0] for u in nodes]
        ys = [positions[u][1] for u in nodes]
        margin = node_radius + 10.0
        min_x, min_y = min(xs) - margin, min(ys) - margin
        width = (max(xs) - min(xs)) + 2 * margin
        height = (max(ys) - min(ys)) + 2 * margin
    else:
        min_x = min_y = 0.0
        width = height = 100.0

    def fmt(value: float) -> str:
        return f"{value:.2f}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{fmt(min_x)} {fmt(min_y)} {fmt(width)} {fmt(height)}">',
    ]
    for u, v, _ in graph.edges():
        if u == v:
            continue
        (x1, y1), (x2, y2) = positions[u], positions[v]
        lines.append(
            f'<line x1="{fmt(x1)}" y1="{fmt(y1)}" x2="{fmt(x2)}" y2="{fmt(y2)}" '
            f'stroke="#999999" stroke-width="1"/>')
    for u in nodes:
        x, y = positions[u]
        fill = PALETTE[colors[partition[u]]]
        lines.append(
            f'<circle cx="{fmt(x)}" cy="{fmt(y)}" r="{fmt(node_radius)}" '
            f'fill="{fill}"/>')
    lines.append('</svg>')
    return "\n".join(lines) + "\n"
