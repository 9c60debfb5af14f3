"""Swarm state containers.

States are stored as ``(n, 2)`` float64 arrays rather than lists of objects;
:class:`Boid` records are materialized on demand for the scalar reference
operations and for inspection.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from netboids.swarm.vector import Vec2


@dataclass(frozen=True)
class Boid:
    id: int
    position: Vec2
    velocity: Vec2


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("state arrays must be finite")
    a.setflags(write=False)
    return a


class SwarmState:
    """Positions and velocities of all boids at one time step."""

    __slots__ = ("time", "positions", "velocities")

    def __init__(self, time: int, positions, velocities):
        self.time = int(time)
        self.positions = _frozen(positions)
        self.velocities = _frozen(velocities)
        if self.positions.shape != self.velocities.shape:
            raise ValueError("positions and velocities must have the same shape")

    @classmethod
    def from_boids(cls, time: int, boids) -> SwarmState:
        boids = list(boids)
        for k, b in enumerate(boids):
            if b.id != k:
                raise ValueError(f"boid ids must be 0..n-1 in order; got id {b.id} at {k}")
        pos = np.array([[b.position.x, b.position.y] for b in boids], dtype=np.float64).reshape(-1, 2)
        vel = np.array([[b.velocity.x, b.velocity.y] for b in boids], dtype=np.float64).reshape(-1, 2)
        return cls(time, pos, vel)

    @property
    def n(self) -> int:
        return self.positions.shape[0]

    def boid(self, i: int) -> Boid:
        p = self.positions[i]
        v = self.velocities[i]
        return Boid(i, Vec2(float(p[0]), float(p[1])), Vec2(float(v[0]), float(v[1])))

    @property
    def boids(self) -> list[Boid]:
        return [self.boid(i) for i in range(self.n)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SwarmState):
            return NotImplemented
        return (
            self.time == other.time
            and np.array_equal(self.positions, other.positions)
            and np.array_equal(self.velocities, other.velocities)
        )

    def __repr__(self) -> str:
        return f"SwarmState(time={self.time}, n={self.n})"


class Trajectory:
    """A run of consecutive states; index 0 is the state at ``start_time``."""

    def __init__(self, positions, velocities, start_time: int = 0):
        positions = np.asarray(positions, dtype=np.float64)
        velocities = np.asarray(velocities, dtype=np.float64)
        if positions.ndim != 3 or positions.shape[2] != 2 or positions.shape != velocities.shape:
            raise ValueError("trajectory arrays must both have shape (steps + 1, n, 2)")
        positions.setflags(write=False)
        velocities.setflags(write=False)
        self.positions = positions
        self.velocities = velocities
        self.start_time = int(start_time)

    @property
    def n(self) -> int:
        return self.positions.shape[1]

    @property
    def end_time(self) -> int:
        return self.start_time + len(self) - 1

    def __len__(self) -> int:
        return self.positions.shape[0]

    def __getitem__(self, k: int) -> SwarmState:
        if k < 0:
            k += len(self)
        if not 0 <= k < len(self):
            raise IndexError(k)
        return SwarmState(self.start_time + k, self.positions[k], self.velocities[k])

    def __iter__(self):
        for k in range(len(self)):
            yield self[k]

    def at(self, step: int) -> SwarmState:
        """State at absolute simulation step ``step``."""
        return self[step - self.start_time]

    def covers(self, first: int, last: int) -> bool:
        return self.start_time <= first and last <= self.end_time

    def to_csv(self, path, stride: int = 1) -> None:
        """Write ``step,id,x,y,vx,vy`` rows, every ``stride``-th state."""
        path = Path(path)
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["step", "id", "x", "y", "vx", "vy"])
            for k in range(0, len(self), stride):
                step = self.start_time + k
                pos = self.positions[k]
                vel = self.velocities[k]
                for i in range(self.n):
                    w.writerow([step, i, repr(float(pos[i, 0])), repr(float(pos[i, 1])),
                                repr(float(vel[i, 0])), repr(float(vel[i, 1]))])

    @classmethod
    def from_csv(cls, path) -> Trajectory:
        with Path(path).open(newline="") as fh:
            rows = list(csv.DictReader(fh))
        if not rows:
            raise ValueError(f"{path}: empty trajectory file")
        steps = sorted({int(r["step"]) for r in rows})
        n = max(int(r["id"]) for r in rows) + 1
        index = {s: k for k, s in enumerate(steps)}
        pos = np.empty((len(steps), n, 2))
        vel = np.empty((len(steps), n, 2))
        for r in rows:
            k, i = index[int(r["step"])], int(r["id"])
            pos[k, i] = float(r["x"]), float(r["y"])
            vel[k, i] = float(r["vx"]), float(r["vy"])
        return cls(pos, vel, start_time=steps[0])
