"""Swarm-quality metrics and the statistics used to compare boid types."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from netboids.errors import UsageError
from netboids.swarm import kernels
from netboids.swarm.state import SwarmState, Trajectory

DEFAULT_ATTRACTION_RANGE = 50.0


def order(state: SwarmState) -> float:
    """Magnitude of the mean unit heading: 1 when aligned, 0 when headings cancel."""
    return float(kernels.order_series(state.velocities[None, :, :])[0])


def order_series(traj: Trajectory) -> np.ndarray:
    return kernels.order_series(np.ascontiguousarray(traj.velocities))


def grouping(state: SwarmState, r_a: float = DEFAULT_ATTRACTION_RANGE) -> int:
    """Number of groups, linking any two boids closer than ``r_a / 2`` (transitively)."""
    if not r_a > 0:
        raise UsageError(f"attraction range must be > 0, got {r_a}")
    return int(kernels.group_count(np.ascontiguousarray(state.positions), 0.5 * r_a))


def grouping_series(traj: Trajectory, r_a: float = DEFAULT_ATTRACTION_RANGE) -> np.ndarray:
    if not r_a > 0:
        raise UsageError(f"attraction range must be > 0, got {r_a}")
    return kernels.grouping_series(np.ascontiguousarray(traj.positions), 0.5 * r_a)


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    std: float
    p5: float
    p95: float
    min: float
    max: float

    def as_dict(self) -> dict:
        return {"mean": self.mean, "std": self.std, "p5": self.p5, "p95": self.p95,
                "min": self.min, "max": self.max}


def nearest_rank(sorted_values, pct: float):
    """Smallest value with at least ``pct`` percent of the sample at or below it."""
    n = len(sorted_values)
    rank = max(1, math.ceil(pct / 100.0 * n))
    return sorted_values[rank - 1]


def summarize(series) -> SummaryStats:
    x = np.asarray(series, dtype=np.float64).ravel()
    if x.size == 0:
        raise UsageError("cannot summarize an empty series")
    s = np.sort(x)
    mean = math.fsum(s) / s.size
    std = float(np.std(s, ddof=1)) if s.size > 1 else 0.0
    return SummaryStats(
        mean=float(mean), std=std,
        p5=float(nearest_rank(s, 5)), p95=float(nearest_rank(s, 95)),
        min=float(s[0]), max=float(s[-1]),
    )


# Student-t tail via the regularized incomplete beta function
# (continued fraction evaluated with the modified Lentz method).

def _betacf(a: float, b: float, x: float, max_iter: int = 500, eps: float = 1e-15) -> float:
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    d = tiny if abs(d) < tiny else d
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            break
    return h


def betainc_regularized(a: float, b: float, x: float) -> float:
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def student_t_sf(t: float, df: float) -> float:
    """P(T > t) for Student's t with ``df`` degrees of freedom."""
    if math.isinf(t):
        return 0.0 if t > 0 else 1.0
    tail = 0.5 * betainc_regularized(0.5 * df, 0.5, df / (df + t * t))
    return tail if t >= 0 else 1.0 - tail


def welch_t_test(a, b) -> tuple[float, float]:
    """Welch's unequal-variance t statistic and two-sided p-value."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size < 2 or b.size < 2:
        raise UsageError("welch_t_test needs at least two observations per sample")
    ma, mb = float(a.mean()), float(b.mean())
    qa = float(a.var(ddof=1)) / a.size
    qb = float(b.var(ddof=1)) / b.size
    se2 = qa + qb
    if se2 == 0.0:
        if ma == mb:
            return 0.0, 1.0
        return math.copysign(math.inf, ma - mb), 0.0
    t = (ma - mb) / math.sqrt(se2)
    df = se2 * se2 / (qa * qa / (a.size - 1) + qb * qb / (b.size - 1))
    p = 2.0 * student_t_sf(abs(t), df)
    return t, min(1.0, max(0.0, p))


@dataclass
class MetricSeries:
    name: str
    steps: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.steps = np.asarray(self.steps, dtype=np.int64)
        self.values = np.asarray(self.values)
        if self.steps.shape != self.values.shape:
            raise ValueError("steps and values must have the same length")
        if self.steps.size > 1 and np.any(np.diff(self.steps) <= 0):
            raise ValueError("metric steps must be strictly increasing")

    def to_csv(self, path) -> None:
        with Path(path).open("w", newline="") as fh:
            fh.write(f"# name={self.name}\n")
            for k, v in self.meta.items():
                fh.write(f"# {k}={v}\n")
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["step", "value"])
            is_int = np.issubdtype(self.values.dtype, np.integer)
            for s, v in zip(self.steps.tolist(), self.values.tolist()):
                w.writerow([s, v if is_int else repr(float(v))])

    @classmethod
    def from_csv(cls, path) -> MetricSeries:
        name, meta, steps, values = "", {}, [], []
        with Path(path).open(newline="") as fh:
            for line in fh:
                line = line.rstrip("\r\n")
                if line.startswith("#"):
                    key, _, val = line[1:].strip().partition("=")
                    if key == "name":
                        name = val
                    else:
                        meta[key] = val
                elif line and line != "step,value":
                    s, v = line.split(",")
                    steps.append(int(s))
                    values.append(v)
        if values and all(v.lstrip("-").isdigit() for v in values):
            arr = np.array([int(v) for v in values], dtype=np.int64)
        else:
            arr = np.array([float(v) for v in values])
        return cls(name, np.array(steps, dtype=np.int64), arr, meta)
