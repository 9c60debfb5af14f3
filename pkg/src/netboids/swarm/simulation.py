"""Seeded initialization and the synchronous simulation loop."""

from __future__ import annotations

import numpy as np

from netboids import rng as rngmod
from netboids.errors import ConfigError, UsageError
from netboids.neighborhood.providers import NetworkNeighborhood, VisionNeighborhood
from netboids.swarm import kernels
from netboids.swarm.state import SwarmState, Trajectory


def initial_state(cfg) -> SwarmState:
    """Uniform positions, then uniform headings in [0, 2*pi), boid 0 first, from ``cfg.seed``."""
    g = rngmod.stream(cfg.seed, rngmod.PLACEMENT)
    u = g.random((cfg.n, 2))
    pos = u * np.array([cfg.space_w, cfg.space_h])
    theta = g.uniform(0.0, 2.0 * np.pi, cfg.n)
    vel = cfg.speed * np.column_stack([np.cos(theta), np.sin(theta)])
    return SwarmState(0, pos, vel)


def _check(state: SwarmState, cfg, nbhd) -> None:
    if state.n != cfg.n:
        raise ConfigError(f"state has {state.n} boids but the config says n={cfg.n}")
    nbhd.check(state.n)


def _simulate(pos0, vel0, steps: int, cfg, nbhd):
    pos0 = np.ascontiguousarray(pos0, dtype=np.float64)
    vel0 = np.ascontiguousarray(vel0, dtype=np.float64)
    if isinstance(nbhd, VisionNeighborhood):
        return kernels.simulate_vision(
            pos0, vel0, steps, cfg.w_c, cfg.w_a, cfg.w_s, cfg.d_s,
            nbhd.vision_r, nbhd.vision_a, cfg.speed, cfg.space_w, cfg.space_h)
    if isinstance(nbhd, NetworkNeighborhood):
        adj = nbhd.adjacency
        return kernels.simulate_network(
            pos0, vel0, steps, adj.indptr, adj.indices, cfg.w_c, cfg.w_a, cfg.w_s, cfg.d_s,
            cfg.speed, cfg.space_w, cfg.space_h)
    raise ConfigError(f"unsupported neighborhood {nbhd!r}")


def step(state: SwarmState, cfg, nbhd=None) -> SwarmState:
    """One synchronous update: every boid reacts to the time-``t`` snapshot."""
    nbhd = cfg.neighborhood if nbhd is None else nbhd
    _check(state, cfg, nbhd)
    P, V = _simulate(state.positions, state.velocities, 1, cfg, nbhd)
    return SwarmState(state.time + 1, P[1], V[1])


def simulate_from(state: SwarmState, cfg, steps: int, nbhd=None) -> Trajectory:
    """Advance ``steps`` times from ``state``; the result starts at ``state.time``."""
    if steps < 0:
        raise UsageError(f"steps must be >= 0, got {steps}")
    nbhd = cfg.neighborhood if nbhd is None else nbhd
    _check(state, cfg, nbhd)
    P, V = _simulate(state.positions, state.velocities, steps, cfg, nbhd)
    return Trajectory(P, V, start_time=state.time)


def run(cfg, steps: int) -> Trajectory:
    """Simulate ``steps`` steps from the seeded initial state; returns ``steps + 1`` states."""
    if steps < 1:
        raise UsageError(f"steps must be >= 1, got {steps}")
    return simulate_from(initial_state(cfg), cfg, steps)
