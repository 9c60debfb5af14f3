"""Neighbor sets under the vision model and the one-hop network model.

These are straightforward per-boid scans used as the readable reference.
The simulation kernels in :mod:`netboids.swarm.kernels` implement the same
membership rules in bulk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from netboids.errors import ConfigError
from netboids.neighborhood.graph import Adjacency
from netboids.swarm.state import SwarmState

TWO_PI = 2.0 * math.pi


def in_vision_cone(vx: float, vy: float, dx: float, dy: float, vision_a: float) -> bool:
    """True when offset ``(dx, dy)`` lies within half of ``vision_a`` of heading ``(vx, vy)``."""
    if vision_a >= TWO_PI:
        return True
    dn = math.hypot(dx, dy)
    vn = math.hypot(vx, vy)
    if dn == 0.0 or vn == 0.0:
        return True
    c = max(-1.0, min(1.0, (vx * dx + vy * dy) / (vn * dn)))
    return math.acos(c) <= vision_a / 2.0


def vision_neighbors(state: SwarmState, i: int, vision_r: float, vision_a: float) -> list[int]:
    pos, vel = state.positions, state.velocities
    px, py = pos[i]
    vx, vy = vel[i]
    out = []
    for j in range(state.n):
        if j == i:
            continue
        dx = pos[j, 0] - px
        dy = pos[j, 1] - py
        if math.hypot(dx, dy) <= vision_r and in_vision_cone(vx, vy, dx, dy, vision_a):
            out.append(j)
    return out


def network_neighbors(adj: Adjacency, i: int) -> list[int]:
    return adj.neighbors(i)


def separation_neighbors(state: SwarmState, i: int, d_s: float, neighborhood=None) -> list[int]:
    """Boids strictly closer than ``d_s`` to boid ``i``.

    With a :class:`VisionNeighborhood` the candidates are limited to what
    boid ``i`` can see; otherwise (network mode or ``None``) the whole
    population is scanned.
    """
    pos = state.positions
    if isinstance(neighborhood, VisionNeighborhood):
        candidates = vision_neighbors(state, i, neighborhood.vision_r, neighborhood.vision_a)
    else:
        candidates = [j for j in range(state.n) if j != i]
    px, py = pos[i]
    return [j for j in candidates if math.hypot(pos[j, 0] - px, pos[j, 1] - py) < d_s]


@dataclass(frozen=True)
class VisionNeighborhood:
    vision_r: float = 50.0
    vision_a: float = TWO_PI

    kind = "vision"

    def __post_init__(self):
        if not self.vision_r > 0:
            raise ConfigError(f"vision_r must be > 0, got {self.vision_r}")
        if not 0 < self.vision_a <= TWO_PI + 1e-12:
            raise ConfigError(f"vision_a must lie in (0, 2*pi], got {self.vision_a}")

    def neighbors(self, state: SwarmState, i: int) -> list[int]:
        return vision_neighbors(state, i, self.vision_r, self.vision_a)

    def close(self, state: SwarmState, i: int, d_s: float) -> list[int]:
        return separation_neighbors(state, i, d_s, self)

    def check(self, n: int) -> None:
        pass


@dataclass(frozen=True)
class NetworkNeighborhood:
    adjacency: Adjacency

    kind = "network"

    def neighbors(self, state: SwarmState, i: int) -> list[int]:
        return network_neighbors(self.adjacency, i)

    def close(self, state: SwarmState, i: int, d_s: float) -> list[int]:
        return separation_neighbors(state, i, d_s, self)

    def check(self, n: int) -> None:
        if self.adjacency.n != n:
            raise ConfigError(f"network has {self.adjacency.n} nodes but the swarm has {n} boids")
