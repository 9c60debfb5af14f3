"""Simulation configuration and its flat key-value form."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from netboids import kv
from netboids.errors import ConfigError
from netboids.neighborhood.graph import Adjacency
from netboids.neighborhood.providers import NetworkNeighborhood, VisionNeighborhood

SIM_KEYS = (
    "space_w", "space_h", "n", "w_c", "w_a", "w_s", "d_s", "speed",
    "neighborhood.kind", "vision_r", "vision_a", "seed",
)


@dataclass(frozen=True)
class SimConfig:
    """Behavioral and environmental parameters; defaults are the classic-boids settings."""

    space_w: float = 1000.0
    space_h: float = 1000.0
    n: int = 100
    w_c: float = 0.01
    w_a: float = 0.125
    w_s: float = 1.0
    d_s: float = 10.0
    speed: float = 1.0
    neighborhood: VisionNeighborhood | NetworkNeighborhood = field(default_factory=VisionNeighborhood)
    seed: int = 0

    def __post_init__(self):
        for key in ("space_w", "space_h"):
            if not getattr(self, key) > 0:
                raise ConfigError(f"{key} must be > 0, got {getattr(self, key)}")
        if self.n < 1:
            raise ConfigError(f"n must be >= 1, got {self.n}")
        for key in ("w_c", "w_a", "w_s"):
            v = getattr(self, key)
            if not (math.isfinite(v) and v >= 0):
                raise ConfigError(f"{key} must be a finite weight >= 0, got {v}")
        if not self.d_s > 0:
            raise ConfigError(f"d_s must be > 0, got {self.d_s}")
        if not self.speed > 0:
            raise ConfigError(f"speed must be > 0, got {self.speed}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        self.neighborhood.check(self.n)

    @property
    def is_network(self) -> bool:
        return isinstance(self.neighborhood, NetworkNeighborhood)

    def with_(self, **changes) -> SimConfig:
        return replace(self, **changes)

    def to_mapping(self) -> dict:
        out = {
            "space_w": self.space_w,
            "space_h": self.space_h,
            "n": self.n,
            "w_c": self.w_c,
            "w_a": self.w_a,
            "w_s": self.w_s,
            "d_s": self.d_s,
            "speed": self.speed,
            "neighborhood.kind": self.neighborhood.kind,
        }
        if isinstance(self.neighborhood, VisionNeighborhood):
            out["vision_r"] = self.neighborhood.vision_r
            out["vision_a"] = self.neighborhood.vision_a
        out["seed"] = self.seed
        return out

    @classmethod
    def from_mapping(cls, mapping: dict[str, str], adjacency: Adjacency | None = None,
                     strict: bool = True) -> SimConfig:
        """Build from string values; ``adjacency`` is required when the kind is ``network``."""
        if strict:
            unknown = sorted(set(mapping) - set(SIM_KEYS))
            if unknown:
                raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
        d = cls()
        reals = {k: kv.parse_real(k, mapping[k]) for k in
                 ("space_w", "space_h", "w_c", "w_a", "w_s", "d_s", "speed") if k in mapping}
        n = kv.parse_int("n", mapping["n"]) if "n" in mapping else d.n
        seed = kv.parse_int("seed", mapping["seed"]) if "seed" in mapping else d.seed
        kind = mapping.get("neighborhood.kind", "vision").strip().lower()
        if kind == "vision":
            nb = VisionNeighborhood(
                kv.parse_real("vision_r", mapping["vision_r"]) if "vision_r" in mapping else 50.0,
                kv.parse_real("vision_a", mapping["vision_a"]) if "vision_a" in mapping else 2 * math.pi,
            )
        elif kind == "network":
            if adjacency is None:
                raise ConfigError("neighborhood.kind = network requires a graph")
            nb = NetworkNeighborhood(adjacency)
        else:
            raise ConfigError(f"neighborhood.kind must be 'vision' or 'network', got {kind!r}")
        return cls(neighborhood=nb, n=n, seed=seed, **reals)

    def dumps(self) -> str:
        return kv.dumps(self.to_mapping())

    @classmethod
    def load(cls, path, adjacency: Adjacency | None = None) -> SimConfig:
        return cls.from_mapping(kv.read(path), adjacency)

    def save(self, path) -> None:
        kv.write(self.to_mapping(), path)
