"""The six-gene chromosome the observer evolves, and its bounds."""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass

import numpy as np

GENES = ("w_c", "w_a", "w_s", "d_s", "vision_r", "vision_a")

# random initialization range
INIT_LOW = np.array([0.0, 0.0, 0.0, 0.0, 10.0, 0.5 * math.pi])
INIT_HIGH = np.array([1.0, 1.0, 1.0, 1.0, 150.0, 2.0 * math.pi])

# feasible range enforced after mutation; d_s may grow past its initial range
CLAMP_LOW = INIT_LOW.copy()
CLAMP_HIGH = np.array([1.0, 1.0, 1.0, 20.0, 150.0, 2.0 * math.pi])

for _a in (INIT_LOW, INIT_HIGH, CLAMP_LOW, CLAMP_HIGH):
    _a.setflags(write=False)


@dataclass(frozen=True)
class Genome:
    w_c: float
    w_a: float
    w_s: float
    d_s: float
    vision_r: float
    vision_a: float

    def to_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=np.float64)

    @classmethod
    def from_array(cls, a) -> Genome:
        a = np.asarray(a, dtype=np.float64)
        if a.shape != (6,):
            raise ValueError(f"a genome has 6 genes, got shape {a.shape}")
        return cls(*(float(x) for x in a))

    @classmethod
    def from_sim(cls, cfg) -> Genome:
        """The parameters a vision-model config actually uses."""
        nb = cfg.neighborhood
        return cls(cfg.w_c, cfg.w_a, cfg.w_s, cfg.d_s, nb.vision_r, nb.vision_a)

    def clamped(self) -> Genome:
        return Genome.from_array(clamp(self.to_array()))

    def in_bounds(self) -> bool:
        a = self.to_array()
        return bool(np.all(a >= CLAMP_LOW) and np.all(a <= CLAMP_HIGH))

    def as_dict(self) -> dict[str, float]:
        return dict(zip(GENES, astuple(self)))

    @classmethod
    def from_dict(cls, d) -> Genome:
        return cls(*(float(d[g]) for g in GENES))


def clamp(a: np.ndarray) -> np.ndarray:
    return np.minimum(np.maximum(a, CLAMP_LOW), CLAMP_HIGH)


def random_population(size: int, rng: np.random.Generator) -> np.ndarray:
    return rng.uniform(INIT_LOW, INIT_HIGH, size=(size, len(GENES)))
