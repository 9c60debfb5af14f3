"""Seeded batch execution of the three experiment families."""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from netboids import metrics
from netboids import rng as rngmod
from netboids.adversary.de import DEConfig, LearnResult
from netboids.adversary.sessions import OnlineCycle, offline_session, online_session
from netboids.config import SimConfig
from netboids.errors import UsageError
from netboids.harness import artifacts as art
from netboids.harness.scenario import Scenario
from netboids.neighborhood.generators import gen_ba, gen_er, gen_ws
from netboids.neighborhood.graph import Adjacency, load_edge_list, save_edge_list
from netboids.neighborhood.providers import NetworkNeighborhood
from netboids.swarm.simulation import run

log = logging.getLogger(__name__)


@dataclass
class RunArtifacts:
    scenario: Scenario
    out_dir: Path
    config_hash: str
    summary: dict
    graphs: dict[tuple[str, int], Adjacency] = field(default_factory=dict)
    series: dict[tuple[str, int], dict] = field(default_factory=dict)
    learn: dict[tuple[str, int, int, int], LearnResult] = field(default_factory=dict)
    online: dict[tuple[str, int, int], list[OnlineCycle]] = field(default_factory=dict)
    timing: dict[str, float] = field(default_factory=dict)
    files: list[str] = field(default_factory=list)


def make_graph(s: Scenario, cond: str, seed: int) -> Adjacency:
    t, n = s.topology, s.sim.n
    g = rngmod.stream(seed, rngmod.GRAPH)
    if cond == "er":
        return gen_er(n, t.er_edges, g)
    if cond == "ws":
        return gen_ws(n, t.ws_k, t.ws_p, g)
    if cond == "ba":
        return gen_ba(n, t.ba_m0, t.ba_m, g)
    if cond == "file":
        return load_edge_list(t.path)
    raise UsageError(f"condition {cond!r} has no graph")


def condition_config(s: Scenario, cond: str, seed: int, adj: Adjacency | None = None) -> SimConfig:
    if cond == "classic":
        return s.sim.with_(seed=seed)
    adj = make_graph(s, cond, seed) if adj is None else adj
    return s.sim.with_(seed=seed, neighborhood=NetworkNeighborhood(adj))


def de_config(s: Scenario, seed: int) -> DEConfig:
    d = s.de
    return DEConfig(d.pop_size, d.generations, d.F, d.CR, seed, d.top_k)


# work units; top-level so they can cross a process boundary

def _quality_unit(s: Scenario, out: Path, cond: str, r: int):
    started = time.perf_counter()
    seed = s.run_seed(r)
    cfg = condition_config(s, cond, seed)
    traj = run(cfg, s.steps)
    order = metrics.order_series(traj)
    grouping = metrics.grouping_series(traj, s.r_a)
    art.write_quality_run(out, s, cond, r, order, grouping)
    if s.save_trajectory:
        traj.to_csv(art.quality_dir(out, cond) / f"{art.run_tag(r)}_trajectory.csv", s.trajectory_stride)
    return (cond, r), {"order": order, "grouping": grouping}, time.perf_counter() - started


def _offline_unit(s: Scenario, out: Path, cond: str, r: int, t0: int, window: int):
    started = time.perf_counter()
    seed = s.run_seed(r)
    cfg = condition_config(s, cond, seed)
    traj = run(cfg, t0 + window - 1)
    result = offline_session(traj, t0, window, cfg, de_config(s, seed))
    art.write_offline_run(out, s, cond, t0, window, r, result)
    return (cond, t0, window, r), result, time.perf_counter() - started


def _online_unit(s: Scenario, out: Path, cond: str, r: int, window: int):
    started = time.perf_counter()
    seed = s.run_seed(r)
    cfg = condition_config(s, cond, seed)
    o = s.online
    cycles = online_session(cfg, de_config(s, seed), o.total_steps, window, o.learn_steps,
                            o.predict_steps, o.cycle_period, o.generations)
    art.write_online_run(out, s, cond, window, r, cycles)
    return (cond, window, r), cycles, time.perf_counter() - started


def _execute(fn, tasks: list[tuple], jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, *t) for t in tasks]
        return [f.result() for f in futures]


def _prepare(s: Scenario, out, expected: str) -> tuple[Path, dict]:
    if s.experiment != expected:
        raise UsageError(f"scenario experiment is {s.experiment!r}, expected {expected!r}")
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    s.save(out / art.SCENARIO_FILE)
    graphs = {}
    for cond in s.conditions:
        if cond == "classic":
            continue
        for r in range(s.runs):
            adj = make_graph(s, cond, s.run_seed(r))
            p = art.graph_path(out, cond, r)
            p.parent.mkdir(parents=True, exist_ok=True)
            save_edge_list(adj, p)
            graphs[(cond, r)] = adj
            log.info("graph %s run %d: %d edges, %d component(s)", cond, r, adj.m, adj.component_count())
    return out, graphs


def _finish(s: Scenario, out: Path, graphs: dict, timing: dict[str, float]) -> RunArtifacts:
    summary = art.aggregate(out, s)
    art.write_json(out / art.TIMING_FILE, {"units": timing, "total_s": sum(timing.values())})
    manifest = {
        "name": s.name, "experiment": s.experiment, "config_hash": s.config_hash(),
        "base_seed": s.sim.seed, "runs": s.runs, "seeds": [s.run_seed(r) for r in range(s.runs)],
        "conditions": list(s.conditions),
        "graphs": [{"condition": c, "run": r, "seed": s.run_seed(r),
                    "file": str(art.graph_path(out, c, r).relative_to(out)),
                    "edges": adj.m, "components": adj.component_count()}
                   for (c, r), adj in sorted(graphs.items())],
    }
    art.write_json(out / art.MANIFEST_FILE, manifest)
    files = art.list_files(out)
    manifest["files"] = [f for f in files if f != art.MANIFEST_FILE] + [art.MANIFEST_FILE]
    art.write_json(out / art.MANIFEST_FILE, manifest)
    return RunArtifacts(s, out, s.config_hash(), summary, graphs, timing=timing, files=manifest["files"])


def run_swarm_quality(s: Scenario, out, jobs: int = 1) -> RunArtifacts:
    """Simulate every condition for ``runs`` seeds and summarize order and grouping."""
    out, graphs = _prepare(s, out, "swarm_quality")
    tasks = [(s, out, c, r) for c in s.conditions for r in range(s.runs)]
    results = _execute(_quality_unit, tasks, jobs)
    timing = {f"{k[0]}/{art.run_tag(k[1])}": dt for k, _, dt in results}
    arts = _finish(s, out, graphs, timing)
    arts.series = {k: v for k, v, _ in results}
    return arts


def run_offline_learning(s: Scenario, out, jobs: int = 1) -> RunArtifacts:
    """Learn from each (t0, window) observation of every condition for ``runs`` seeds."""
    out, graphs = _prepare(s, out, "offline")
    tasks = [(s, out, c, r, t0, w) for c in s.conditions for t0 in s.t0s for w in s.windows
             for r in range(s.runs)]
    results = _execute(_offline_unit, tasks, jobs)
    timing = {f"{c}/t0_{t0}_w{w}/{art.run_tag(r)}": dt for (c, t0, w, r), _, dt in results}
    arts = _finish(s, out, graphs, timing)
    arts.learn = {k: v for k, v, _ in results}
    return arts


def run_online_learning(s: Scenario, out, jobs: int = 1) -> RunArtifacts:
    """Run the sample-learn-predict schedule for each window of every condition."""
    out, graphs = _prepare(s, out, "online")
    tasks = [(s, out, c, r, w) for c in s.conditions for w in s.windows for r in range(s.runs)]
    results = _execute(_online_unit, tasks, jobs)
    timing = {f"{c}/w{w}/{art.run_tag(r)}": dt for (c, w, r), _, dt in results}
    arts = _finish(s, out, graphs, timing)
    arts.online = {k: v for k, v, _ in results}
    return arts


RUNNERS = {
    "swarm_quality": run_swarm_quality,
    "offline": run_offline_learning,
    "online": run_online_learning,
}


def run_experiment(s: Scenario, out, jobs: int = 1) -> RunArtifacts:
    return RUNNERS[s.experiment](s, out, jobs)


def report(out) -> dict:
    """Re-aggregate an existing experiment directory without simulating."""
    return art.aggregate(out)
