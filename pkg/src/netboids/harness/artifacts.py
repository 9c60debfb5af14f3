"""On-disk layout of an experiment directory, and aggregation from it.

Summaries are always computed from the persisted per-run files, both right
after a batch finishes and when ``report`` re-aggregates later, so the two
paths cannot disagree.  Everything except ``timing.json`` is a deterministic
function of the scenario snapshot.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from netboids import metrics
from netboids.adversary.de import LearnResult
from netboids.adversary.genome import GENES
from netboids.errors import ConfigError
from netboids.harness.scenario import Scenario
from netboids.metrics import MetricSeries

SCENARIO_FILE = "scenario.cfg"
MANIFEST_FILE = "manifest.json"
SUMMARY_FILE = "summary.json"
TIMING_FILE = "timing.json"


def run_tag(r: int) -> str:
    return f"run{r:03d}"


def graph_path(out: Path, cond: str, r: int) -> Path:
    return out / "graphs" / f"{cond}_{run_tag(r)}.edges"


def quality_dir(out: Path, cond: str) -> Path:
    return out / "runs" / cond


def offline_dir(out: Path, cond: str, t0: int, window: int) -> Path:
    return out / "runs" / cond / f"t0_{t0}_w{window}"


def online_dir(out: Path, cond: str, window: int) -> Path:
    return out / "runs" / cond / f"w{window}"


def _cell(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def write_table(path: Path, header: list[str], rows, meta: dict | None = None) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        for k, v in (meta or {}).items():
            fh.write(f"# {k}={v}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(v) for v in row])


def read_table(path: Path) -> tuple[dict, list[str], list[list[str]]]:
    meta, lines = {}, []
    with path.open(newline="") as fh:
        for line in fh:
            if line.startswith("#"):
                k, _, v = line[1:].strip().partition("=")
                meta[k] = v
            else:
                lines.append(line)
    rows = list(csv.reader(lines))
    return meta, rows[0], rows[1:]


def write_json(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def stamp(s: Scenario, seed: int, **extra) -> dict:
    return {"seed": seed, "config_hash": s.config_hash(), **extra}


# swarm quality

def write_quality_run(out: Path, s: Scenario, cond: str, r: int, order: np.ndarray,
                      grouping: np.ndarray) -> list[Path]:
    d = quality_dir(out, cond)
    d.mkdir(parents=True, exist_ok=True)
    seed = s.run_seed(r)
    steps = np.arange(order.size)
    paths = []
    for name, values in (("order", order), ("grouping", grouping)):
        p = d / f"{run_tag(r)}_{name}.csv"
        MetricSeries(name, steps, values, stamp(s, seed, condition=cond, run=r)).to_csv(p)
        paths.append(p)
    return paths


def _series_block(run_series: list[np.ndarray], summary_step: int) -> dict:
    pooled = np.concatenate(run_series)
    means = [math.fsum(x) / x.size for x in run_series]
    at = None
    if all(summary_step < x.size for x in run_series):
        at = metrics.summarize([x[summary_step] for x in run_series]).as_dict()
    return {
        "run_means": means,
        "whole": metrics.summarize(pooled).as_dict(),
        "at_step": at,
        "final": [float(x[-1]) for x in run_series],
    }


def aggregate_quality(out: Path, s: Scenario) -> dict:
    per_cond: dict[str, dict[str, list[np.ndarray]]] = {}
    for cond in s.conditions:
        per_cond[cond] = {"order": [], "grouping": []}
        for r in range(s.runs):
            for name in ("order", "grouping"):
                p = quality_dir(out, cond) / f"{run_tag(r)}_{name}.csv"
                per_cond[cond][name].append(MetricSeries.from_csv(p).values.astype(np.float64))
    summary = _header(s)
    summary["conditions"] = {}
    for cond, series in per_cond.items():
        summary["conditions"][cond] = {
            "seeds": [s.run_seed(r) for r in range(s.runs)],
            "order": _series_block(series["order"], s.summary_step),
            "grouping": _series_block(series["grouping"], s.summary_step),
        }
    tests = {}
    if "classic" in per_cond and s.runs >= 2:
        base = summary["conditions"]["classic"]
        for cond in s.conditions:
            if cond == "classic":
                continue
            other = summary["conditions"][cond]
            tests[cond] = {}
            for name in ("order", "grouping"):
                t, p = metrics.welch_t_test(other[name]["run_means"], base[name]["run_means"])
                tests[cond][name] = {
                    "t": t, "p": p,
                    "mean": math.fsum(other[name]["run_means"]) / s.runs,
                    "classic_mean": math.fsum(base[name]["run_means"]) / s.runs,
                }
    summary["t_tests"] = tests

    rows = []
    for cond, block in summary["conditions"].items():
        for name in ("order", "grouping"):
            for span in ("whole", "at_step"):
                st = block[name][span]
                if st is not None:
                    rows.append([cond, name, span] + [st[k] for k in ("mean", "std", "p5", "p95", "min", "max")])
    write_table(out / "summary.csv", ["condition", "metric", "span", "mean", "std", "p5", "p95", "min", "max"],
                rows, {"config_hash": s.config_hash()})
    write_table(out / "ttests.csv", ["condition", "metric", "t", "p", "mean", "classic_mean"],
                [[c, m, v["t"], v["p"], v["mean"], v["classic_mean"]]
                 for c, per in tests.items() for m, v in per.items()],
                {"config_hash": s.config_hash()})
    for name in ("order", "grouping"):
        cols = [np.mean(np.vstack(per_cond[c][name]), axis=0) for c in s.conditions]
        steps = range(cols[0].size)
        write_table(out / f"{name}_mean.csv", ["step", *s.conditions],
                    ([t, *(float(c[t]) for c in cols)] for t in steps), {"config_hash": s.config_hash()})
    return summary


# offline learning

HISTORY_HEADER = ["generation", "best_eps_L"]


def write_offline_run(out: Path, s: Scenario, cond: str, t0: int, window: int, r: int,
                      result: LearnResult) -> list[Path]:
    d = offline_dir(out, cond, t0, window)
    seed = s.run_seed(r)
    meta = stamp(s, seed, condition=cond, t0=t0, window=window, run=r)
    hist = d / f"{run_tag(r)}_history.csv"
    write_table(hist, HISTORY_HEADER, enumerate(result.fitness_history), meta)
    res = d / f"{run_tag(r)}_learn.json"
    write_json(res, {**meta, "result": result.to_dict(with_runtime=False)})
    return [hist, res]


def load_offline_run(out: Path, cond: str, t0: int, window: int, r: int) -> LearnResult:
    d = json.loads((offline_dir(out, cond, t0, window) / f"{run_tag(r)}_learn.json").read_text())
    return LearnResult.from_dict(d["result"])


def aggregate_offline(out: Path, s: Scenario) -> dict:
    summary = _header(s)
    cells = []
    table_rows: dict[tuple[int, int], list] = {}
    dist_rows = []
    for cond in s.conditions:
        for t0 in s.t0s:
            for w in s.windows:
                results = [load_offline_run(out, cond, t0, w, r) for r in range(s.runs)]
                eps = np.array([res.best_fitness for res in results])
                genes = np.array([res.best.to_array() for res in results])
                best = int(np.argmin(eps))
                st = metrics.summarize(eps).as_dict()
                cell = {
                    "condition": cond, "t0": t0, "window": w,
                    "eps_L": {"median": float(np.median(eps)), **st},
                    "per_run": eps.tolist(),
                    "median_genome": dict(zip(GENES, np.median(genes, axis=0).tolist())),
                    "best_run": {"seed": s.run_seed(best), "eps_L": float(eps[best]),
                                 "genome": results[best].best.as_dict()},
                }
                cells.append(cell)
                table_rows.setdefault((t0, w), []).append(
                    [cond, float(eps[best]), *results[best].best.to_array().tolist()])
                dist_rows.append([cond, t0, w, cell["eps_L"]["median"],
                                  *(st[k] for k in ("mean", "std", "p5", "p95", "min", "max")),
                                  *np.median(genes, axis=0).tolist()])
    summary["cells"] = cells
    for (t0, w), rows in table_rows.items():
        write_table(out / f"best_estimates_t0_{t0}_w{w}.csv", ["condition", "eps_L", *GENES], rows,
                    {"config_hash": s.config_hash(), "t0": t0, "window": w})
    write_table(out / "eps_L_summary.csv",
                ["condition", "t0", "window", "median", "mean", "std", "p5", "p95", "min", "max",
                 *(f"median_{g}" for g in GENES)],
                dist_rows, {"config_hash": s.config_hash()})
    return summary


# online learning

CYCLE_HEADER = ["cycle", "observe_start", "predict_start", "predict_end", "eps_L", "cumulated_eps_P"]


def write_online_run(out: Path, s: Scenario, cond: str, window: int, r: int, cycles) -> list[Path]:
    d = online_dir(out, cond, window)
    seed = s.run_seed(r)
    meta = stamp(s, seed, condition=cond, window=window, run=r)
    cyc = d / f"{run_tag(r)}_cycles.csv"
    write_table(cyc, CYCLE_HEADER, [
        [c.plan.index, c.plan.observe_start, c.plan.predict_start, c.plan.predict_end,
         c.learn.best_fitness, c.prediction.cumulated] for c in cycles], meta)
    pred = d / f"{run_tag(r)}_prediction.csv"
    write_table(pred, ["cycle", "step", "eps_P"], (
        [c.plan.index, c.plan.predict_start + k + 1, e]
        for c in cycles for k, e in enumerate(c.prediction.errors.tolist())), meta)
    js = d / f"{run_tag(r)}_cycles.json"
    write_json(js, {**meta, "cycles": [
        {"index": c.plan.index, "learn": c.learn.to_dict(with_runtime=False)} for c in cycles]})
    for c in cycles:
        write_table(d / f"{run_tag(r)}_cycle{c.plan.index:02d}_history.csv", HISTORY_HEADER,
                    enumerate(c.learn.fitness_history), {**meta, "cycle": c.plan.index})
    return [cyc, pred, js]


@dataclass
class OnlineRunTable:
    eps_L: np.ndarray
    cumulated: np.ndarray
    predict_start: np.ndarray
    errors: dict[int, np.ndarray] = field(default_factory=dict)


def load_online_run(out: Path, cond: str, window: int, r: int) -> OnlineRunTable:
    d = online_dir(out, cond, window)
    _, _, rows = read_table(d / f"{run_tag(r)}_cycles.csv")
    table = OnlineRunTable(
        eps_L=np.array([float(x[4]) for x in rows]),
        cumulated=np.array([float(x[5]) for x in rows]),
        predict_start=np.array([int(x[2]) for x in rows]),
    )
    _, _, prows = read_table(d / f"{run_tag(r)}_prediction.csv")
    grouped: dict[int, list[float]] = {}
    for c, _, e in prows:
        grouped.setdefault(int(c), []).append(float(e))
    table.errors = {c: np.array(v) for c, v in grouped.items()}
    return table


def aggregate_online(out: Path, s: Scenario) -> dict:
    summary = _header(s)
    cells = []
    cycle_rows, pred_rows = [], []
    for cond in s.conditions:
        for w in s.windows:
            runs = [load_online_run(out, cond, w, r) for r in range(s.runs)]
            n_cycles = runs[0].eps_L.size
            eps = np.vstack([t.eps_L for t in runs])
            cum = np.vstack([t.cumulated for t in runs])
            cell = {
                "condition": cond, "window": w, "cycles": n_cycles,
                "mean_eps_L": eps.mean(axis=0).tolist(),
                "median_eps_L": np.median(eps, axis=0).tolist(),
                "min_eps_L": eps.min(axis=0).tolist(),
                "max_eps_L": eps.max(axis=0).tolist(),
                "mean_cumulated_eps_P": cum.mean(axis=0).tolist(),
                "overall_mean_cumulated_eps_P": float(cum.mean()),
            }
            cells.append(cell)
            for c in range(n_cycles):
                cycle_rows.append([cond, w, c, cell["mean_eps_L"][c], cell["median_eps_L"][c],
                                   cell["min_eps_L"][c], cell["max_eps_L"][c], cell["mean_cumulated_eps_P"][c]])
                mean_err = np.mean(np.vstack([t.errors.get(c, np.zeros(0)) for t in runs]), axis=0)
                pred_rows.extend([cond, w, c, k + 1, e] for k, e in enumerate(mean_err.tolist()))
    summary["cells"] = cells
    write_table(out / "online_cycles.csv",
                ["condition", "window", "cycle", "mean_eps_L", "median_eps_L", "min_eps_L", "max_eps_L",
                 "mean_cumulated_eps_P"], cycle_rows, {"config_hash": s.config_hash()})
    write_table(out / "online_prediction_mean.csv", ["condition", "window", "cycle", "offset", "mean_eps_P"],
                pred_rows, {"config_hash": s.config_hash()})
    return summary


def _header(s: Scenario) -> dict:
    return {
        "name": s.name, "experiment": s.experiment, "config_hash": s.config_hash(),
        "base_seed": s.sim.seed, "runs": s.runs, "conditions_run": list(s.conditions),
    }


AGGREGATORS = {
    "swarm_quality": aggregate_quality,
    "offline": aggregate_offline,
    "online": aggregate_online,
}


def load_scenario(out: Path) -> Scenario:
    p = Path(out) / SCENARIO_FILE
    if not p.is_file():
        raise ConfigError(f"no scenario snapshot in {out} (expected {p})")
    return Scenario.load(p)


def aggregate(out, s: Scenario | None = None) -> dict:
    """Recompute every summary file in ``out`` from its per-run artifacts."""
    out = Path(out)
    s = load_scenario(out) if s is None else s
    summary = AGGREGATORS[s.experiment](out, s)
    write_json(out / SUMMARY_FILE, summary)
    return summary


def list_files(out: Path) -> list[str]:
    return sorted(str(p.relative_to(out)) for p in out.rglob("*") if p.is_file())
