"""Experiment scenarios: a simulation config plus the batch protocol around it."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from pathlib import Path

from netboids import kv
from netboids.adversary.de import DEConfig
from netboids.config import SIM_KEYS, SimConfig
from netboids.errors import ConfigError

EXPERIMENTS = ("swarm_quality", "offline", "online")
CONDITIONS = ("classic", "er", "ws", "ba", "file")

# key -> help text; the simulation keys come first and keep their meaning
SCENARIO_KEYS: dict[str, str] = {
    "space_w": "arena width (default 1000)",
    "space_h": "arena height (default 1000)",
    "n": "number of boids (default 100)",
    "w_c": "cohesion weight (default 0.01)",
    "w_a": "alignment weight (default 0.125)",
    "w_s": "separation weight (default 1.0)",
    "d_s": "safe distance (default 10)",
    "speed": "constant boid speed (default 1)",
    "neighborhood.kind": "vision or network; network without 'conditions' runs topology.kind",
    "vision_r": "classic vision range (default 50)",
    "vision_a": "classic vision angle in radians, e.g. 2pi (default 2pi)",
    "seed": "base seed; run r uses seed + r (default 0)",
    "name": "scenario label (default: file stem)",
    "experiment": "swarm_quality | offline | online",
    "conditions": "comma list of classic, er, ws, ba, file",
    "topology.kind": "er | ws | ba | file, used when neighborhood.kind = network",
    "topology.er_edges": "edge count of the random graph (default 300)",
    "topology.ws_k": "ring degree of the small-world graph (default 6)",
    "topology.ws_p": "rewiring probability (default 0.1)",
    "topology.ba_m0": "seed clique size of the scale-free graph (default 6)",
    "topology.ba_m": "edges per new node (default 3)",
    "topology.path": "edge-list file for the 'file' condition",
    "r_a": "attraction range for grouping (default 50)",
    "steps": "simulation length for swarm_quality (default 10000)",
    "runs": "number of seeds per condition",
    "summary_step": "step for the point-in-time summaries (default 5000)",
    "offline.t0": "comma list of observation start steps (default 0,5000)",
    "windows": "comma list of observation windows (default 2,4,8,16)",
    "de.pop_size": "DE population (default 100)",
    "de.generations": "DE generations for offline learning (default 300)",
    "de.f": "DE differential weight (default 0.8)",
    "de.cr": "DE crossover rate (default 0.9)",
    "de.top_k": "genomes averaged for prediction (default 5)",
    "online.total_steps": "online session length (default 10000)",
    "online.learn_steps": "learning period in steps (default 600)",
    "online.predict_steps": "prediction horizon (default 1200)",
    "online.cycle_period": "steps between cycle starts (default 667)",
    "online.generations": "generation cap per cycle (default 50)",
    "output.save_trajectory": "write trajectory CSVs for swarm_quality (default true)",
    "output.trajectory_stride": "keep every k-th step in trajectory CSVs (default 1)",
}

DEFAULT_RUNS = {"swarm_quality": 10, "offline": 30, "online": 10}

PRESETS: dict[str, dict[str, str]] = {
    "desk": {"n": "50", "steps": "2000", "runs": "10", "de.generations": "100",
             "online.total_steps": "2000", "offline.t0": "0,1000"},
    "paper": {"n": "100", "steps": "10000", "de.generations": "300",
              "online.total_steps": "10000", "offline.t0": "0,5000", "online.generations": "50"},
}


@dataclass(frozen=True)
class Topology:
    kind: str = "er"
    er_edges: int = 300
    ws_k: int = 6
    ws_p: float = 0.1
    ba_m0: int = 6
    ba_m: int = 3
    path: str = ""


@dataclass(frozen=True)
class OnlineSettings:
    total_steps: int = 10000
    learn_steps: int = 600
    predict_steps: int = 1200
    cycle_period: int = 667
    generations: int = 50


@dataclass(frozen=True)
class Scenario:
    name: str = "scenario"
    experiment: str = "swarm_quality"
    sim: SimConfig = field(default_factory=SimConfig)
    conditions: tuple[str, ...] = ("classic",)
    topology: Topology = field(default_factory=Topology)
    r_a: float = 50.0
    steps: int = 10000
    runs: int = 10
    summary_step: int = 5000
    t0s: tuple[int, ...] = (0, 5000)
    windows: tuple[int, ...] = (2, 4, 8, 16)
    de: DEConfig = field(default_factory=DEConfig)
    online: OnlineSettings = field(default_factory=OnlineSettings)
    save_trajectory: bool = True
    trajectory_stride: int = 1

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"experiment must be one of {', '.join(EXPERIMENTS)}, got {self.experiment!r}")
        if not self.conditions:
            raise ConfigError("conditions must name at least one condition")
        for c in self.conditions:
            if c not in CONDITIONS:
                raise ConfigError(f"conditions: unknown condition {c!r}")
        if len(set(self.conditions)) != len(self.conditions):
            raise ConfigError("conditions: duplicate entries")
        if "file" in self.conditions and not self.topology.path:
            raise ConfigError("conditions include 'file' but topology.path is empty")
        if not self.r_a > 0:
            raise ConfigError(f"r_a must be > 0, got {self.r_a}")
        if self.steps < 1:
            raise ConfigError(f"steps must be >= 1, got {self.steps}")
        if self.runs < 1:
            raise ConfigError(f"runs must be >= 1, got {self.runs}")
        if not 0 <= self.summary_step:
            raise ConfigError(f"summary_step must be >= 0, got {self.summary_step}")
        if not self.windows or min(self.windows) < 2:
            raise ConfigError("windows must be a non-empty list of integers >= 2")
        if not self.t0s or min(self.t0s) < 0:
            raise ConfigError("offline.t0 must be a non-empty list of steps >= 0")
        if self.trajectory_stride < 1:
            raise ConfigError(f"output.trajectory_stride must be >= 1, got {self.trajectory_stride}")
        if self.online.generations < 0:
            raise ConfigError(f"online.generations must be >= 0, got {self.online.generations}")
        t = self.topology
        if t.er_edges < 0 or t.ws_k < 0 or not 0 <= t.ws_p <= 1 or t.ba_m < 1 or t.ba_m0 < 1:
            raise ConfigError("topology parameters out of range")

    def run_seed(self, r: int) -> int:
        return self.sim.seed + r

    def with_seed(self, seed: int) -> Scenario:
        return replace(self, sim=self.sim.with_(seed=seed))

    def to_mapping(self) -> dict:
        out = self.sim.to_mapping()
        out["neighborhood.kind"] = "vision"
        out.setdefault("vision_r", 50.0)
        out.setdefault("vision_a", 6.283185307179586)
        seed = out.pop("seed")
        out.update({
            "seed": seed,
            "name": self.name,
            "experiment": self.experiment,
            "conditions": ",".join(self.conditions),
            "topology.kind": self.topology.kind,
            "topology.er_edges": self.topology.er_edges,
            "topology.ws_k": self.topology.ws_k,
            "topology.ws_p": self.topology.ws_p,
            "topology.ba_m0": self.topology.ba_m0,
            "topology.ba_m": self.topology.ba_m,
            "topology.path": self.topology.path,
            "r_a": self.r_a,
            "steps": self.steps,
            "runs": self.runs,
            "summary_step": self.summary_step,
            "offline.t0": ",".join(map(str, self.t0s)),
            "windows": ",".join(map(str, self.windows)),
            "de.pop_size": self.de.pop_size,
            "de.generations": self.de.generations,
            "de.f": self.de.F,
            "de.cr": self.de.CR,
            "de.top_k": self.de.top_k,
            "online.total_steps": self.online.total_steps,
            "online.learn_steps": self.online.learn_steps,
            "online.predict_steps": self.online.predict_steps,
            "online.cycle_period": self.online.cycle_period,
            "online.generations": self.online.generations,
            "output.save_trajectory": self.save_trajectory,
            "output.trajectory_stride": self.trajectory_stride,
        })
        return out

    def dumps(self) -> str:
        return kv.dumps(self.to_mapping())

    def config_hash(self) -> str:
        """Short digest of the resolved configuration; stamped on every artifact."""
        return hashlib.sha256(self.dumps().encode()).hexdigest()[:16]

    @classmethod
    def from_mapping(cls, mapping: dict[str, str], name: str = "scenario") -> Scenario:
        unknown = sorted(set(mapping) - set(SCENARIO_KEYS))
        if unknown:
            raise ConfigError(f"unknown scenario key(s): {', '.join(unknown)}")

        def get(key, parse, default):
            return parse(key, mapping[key]) if key in mapping else default

        def ints(key, default):
            if key not in mapping:
                return default
            return tuple(kv.parse_int(key, v) for v in kv.parse_list(mapping[key]))

        sim_map = {k: v for k, v in mapping.items() if k in SIM_KEYS and k != "neighborhood.kind"}
        sim = SimConfig.from_mapping(sim_map)
        kind = mapping.get("neighborhood.kind", "vision").strip().lower()
        if kind not in ("vision", "network"):
            raise ConfigError(f"neighborhood.kind must be 'vision' or 'network', got {kind!r}")

        topo_d = Topology()
        topo = Topology(
            kind=mapping.get("topology.kind", topo_d.kind).strip().lower(),
            er_edges=get("topology.er_edges", kv.parse_int, topo_d.er_edges),
            ws_k=get("topology.ws_k", kv.parse_int, topo_d.ws_k),
            ws_p=get("topology.ws_p", kv.parse_real, topo_d.ws_p),
            ba_m0=get("topology.ba_m0", kv.parse_int, topo_d.ba_m0),
            ba_m=get("topology.ba_m", kv.parse_int, topo_d.ba_m),
            path=mapping.get("topology.path", "").strip(),
        )
        if topo.kind not in CONDITIONS[1:]:
            raise ConfigError(f"topology.kind must be one of er, ws, ba, file, got {topo.kind!r}")
        if "conditions" in mapping:
            conditions = tuple(c.lower() for c in kv.parse_list(mapping["conditions"]))
        else:
            conditions = ("classic",) if kind == "vision" else (topo.kind,)

        experiment = mapping.get("experiment", "swarm_quality").strip().lower()
        de_d = DEConfig()
        de = DEConfig(
            pop_size=get("de.pop_size", kv.parse_int, de_d.pop_size),
            generations=get("de.generations", kv.parse_int, de_d.generations),
            F=get("de.f", kv.parse_real, de_d.F),
            CR=get("de.cr", kv.parse_real, de_d.CR),
            top_k=get("de.top_k", kv.parse_int, de_d.top_k),
        )
        on_d = OnlineSettings()
        online = OnlineSettings(
            total_steps=get("online.total_steps", kv.parse_int, on_d.total_steps),
            learn_steps=get("online.learn_steps", kv.parse_int, on_d.learn_steps),
            predict_steps=get("online.predict_steps", kv.parse_int, on_d.predict_steps),
            cycle_period=get("online.cycle_period", kv.parse_int, on_d.cycle_period),
            generations=get("online.generations", kv.parse_int, on_d.generations),
        )
        return cls(
            name=mapping.get("name", name).strip() or name,
            experiment=experiment,
            sim=sim,
            conditions=conditions,
            topology=topo,
            r_a=get("r_a", kv.parse_real, 50.0),
            steps=get("steps", kv.parse_int, 10000),
            runs=get("runs", kv.parse_int, DEFAULT_RUNS.get(experiment, 10)),
            summary_step=get("summary_step", kv.parse_int, 5000),
            t0s=ints("offline.t0", (0, 5000)),
            windows=ints("windows", (2, 4, 8, 16)),
            de=de,
            online=online,
            save_trajectory=get("output.save_trajectory", kv.parse_bool, True),
            trajectory_stride=get("output.trajectory_stride", kv.parse_int, 1),
        )

    @classmethod
    def load(cls, path, preset: str | None = None, seed: int | None = None,
             experiment: str | None = None) -> Scenario:
        """Read a scenario file; a preset then overrides the file, and ``seed`` overrides both."""
        mapping = kv.read(path)
        return cls.from_mapping(resolve(mapping, preset, seed, experiment), name=Path(path).stem)

    @classmethod
    def from_text(cls, text: str, preset: str | None = None, seed: int | None = None,
                  experiment: str | None = None, name: str = "scenario") -> Scenario:
        return cls.from_mapping(resolve(kv.parse_text(text), preset, seed, experiment), name=name)

    def save(self, path) -> None:
        Path(path).write_text(self.dumps())


def resolve(mapping: dict[str, str], preset: str | None = None, seed: int | None = None,
            experiment: str | None = None) -> dict[str, str]:
    out = dict(mapping)
    if experiment is not None:
        out["experiment"] = experiment
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")
        out.update(PRESETS[preset])
        if preset == "paper":
            out["runs"] = str(DEFAULT_RUNS.get(out.get("experiment", "swarm_quality").strip().lower(), 10))
    if seed is not None:
        out["seed"] = str(seed)
    return out


def scenario_key_help() -> str:
    width = max(map(len, SCENARIO_KEYS))
    return "\n".join(f"  {k:<{width}}  {v}" for k, v in SCENARIO_KEYS.items())


__all__ = ["CONDITIONS", "EXPERIMENTS", "OnlineSettings", "PRESETS", "SCENARIO_KEYS", "Scenario",
           "Topology", "resolve", "scenario_key_help"]
