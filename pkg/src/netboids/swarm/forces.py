"""The three steering laws and the per-boid update, written boid by boid.

This is the readable definition of the dynamics.  :mod:`netboids.swarm.kernels`
computes the same thing for whole populations and is checked against these
functions in the test suite.
"""

from __future__ import annotations

from netboids.swarm.state import Boid, SwarmState
from netboids.swarm.vector import Vec2


def cohesion_velocity(self: Boid, neighbors: list[Boid]) -> Vec2:
    """Offset from ``self`` to the neighbors' center of mass (zero if there are none)."""
    if not neighbors:
        return Vec2()
    return Vec2.mean(b.position for b in neighbors) - self.position


def alignment_velocity(self: Boid, neighbors: list[Boid]) -> Vec2:
    if not neighbors:
        return Vec2()
    return Vec2.mean(b.velocity for b in neighbors) - self.velocity


def separation_velocity(self: Boid, close: list[Boid]) -> Vec2:
    """Negated sum of offsets to every boid inside the safe distance."""
    sx = sy = 0.0
    for b in close:
        sx -= b.position.x - self.position.x
        sy -= b.position.y - self.position.y
    return Vec2(sx, sy)


def update_velocity(self: Boid, cV: Vec2, aV: Vec2, sV: Vec2, cfg) -> Vec2:
    """Weighted sum of the unit forces added to the old heading, rescaled to ``cfg.speed``.

    A zero force contributes nothing.  If the sum cancels exactly the old
    velocity is kept.
    """
    v = self.velocity
    total = v + cV.normalized() * cfg.w_c + aV.normalized() * cfg.w_a + sV.normalized() * cfg.w_s
    if total.is_zero():
        return v
    return total.normalized() * cfg.speed


def _reflect(x: float, v: float, bound: float) -> tuple[float, float]:
    while x < 0.0 or x > bound:
        if x < 0.0:
            x = -x
        else:
            x = 2.0 * bound - x
        v = -v
    return x, v


def update_position(self: Boid, v_new: Vec2, cfg) -> tuple[Vec2, Vec2]:
    """Advance by ``v_new`` and mirror off the walls, flipping the offending component."""
    x, vx = _reflect(self.position.x + v_new.x, v_new.x, cfg.space_w)
    y, vy = _reflect(self.position.y + v_new.y, v_new.y, cfg.space_h)
    return Vec2(x, y), Vec2(vx, vy)


def reference_step(state: SwarmState, cfg, nbhd=None) -> SwarmState:
    """Synchronous update of every boid from the time-``t`` snapshot (slow, for checking)."""
    nbhd = cfg.neighborhood if nbhd is None else nbhd
    boids = state.boids
    new_pos, new_vel = [], []
    for b in boids:
        near = [boids[j] for j in nbhd.neighbors(state, b.id)]
        close = [boids[j] for j in nbhd.close(state, b.id, cfg.d_s)]
        v = update_velocity(
            b, cohesion_velocity(b, near), alignment_velocity(b, near), separation_velocity(b, close), cfg
        )
        p, v = update_position(b, v, cfg)
        new_pos.append((p.x, p.y))
        new_vel.append((v.x, v.y))
    return SwarmState(state.time + 1, new_pos, new_vel)
