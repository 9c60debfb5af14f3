import math

import numpy as np
import pytest
from scipy import stats
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from netboids.errors import UsageError
from netboids.metrics import (
    MetricSeries,
    betainc_regularized,
    grouping,
    grouping_series,
    nearest_rank,
    order,
    order_series,
    student_t_sf,
    summarize,
    welch_t_test,
)
from netboids.swarm import SwarmState, Trajectory

from conftest import random_state


def headings(*vs):
    return SwarmState(0, [[0.0, 0.0]] * len(vs), vs)


def components_oracle(pos, r_a):
    d = np.linalg.norm(pos[:, None] - pos[None], axis=2)
    return connected_components(csr_matrix(d < r_a / 2), directed=False)[0]


class TestOrder:
    def test_examples(self):
        assert order(headings((1, 0), (1, 0), (1, 0))) == 1.0
        assert order(headings((1, 0), (-1, 0))) == 0.0
        assert order(headings((1, 0), (0, 1), (-1, 0))) == pytest.approx(1 / 3, abs=1e-15)

    def test_uses_unit_headings(self):
        assert order(headings((5, 0), (0.1, 0))) == 1.0

    def test_series(self):
        t = Trajectory(np.zeros((3, 2, 2)), np.array([[[1, 0], [1, 0]], [[1, 0], [-1, 0]], [[0, 1], [0, 2]]]))
        assert order_series(t).tolist() == [1.0, 0.0, 1.0]


class TestGrouping:
    def test_examples(self):
        assert grouping(SwarmState(0, [[3.0, 3.0]] * 5, [[1.0, 0.0]] * 5), 50.0) == 1
        spread = SwarmState(0, [[0.0, 0.0], [30.0, 0.0], [60.0, 0.0]], [[1.0, 0.0]] * 3)
        assert grouping(spread, 50.0) == 3

    def test_chain_is_one_group(self):
        xs = np.arange(10) * 0.4 * 50.0
        s = SwarmState(0, np.column_stack([xs, np.zeros(10)]), np.tile([1.0, 0.0], (10, 1)))
        assert components_oracle(s.positions, 50.0) == 1
        assert grouping(s, 50.0) == 1

    def test_strict_threshold(self):
        s = SwarmState(0, [[0.0, 0.0], [25.0, 0.0]], [[1.0, 0.0]] * 2)
        assert grouping(s, 50.0) == 2

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_components_oracle(self, seed):
        s = random_state(30, seed, 150.0, 150.0)
        assert grouping(s, 50.0) == components_oracle(s.positions, 50.0)

    def test_series_and_validation(self):
        P = np.stack([random_state(20, k, 100.0, 100.0).positions for k in range(4)])
        t = Trajectory(P, np.ones_like(P))
        assert grouping_series(t, 40.0).tolist() == [components_oracle(p, 40.0) for p in P]
        with pytest.raises(UsageError):
            grouping(t[0], 0.0)


class TestSummarize:
    def test_constant(self):
        s = summarize([1, 1, 1])
        assert (s.mean, s.std) == (1.0, 0.0)

    def test_nearest_rank(self):
        s = summarize(range(100))
        assert s.p5 == 4 and s.p95 == 94
        assert (s.min, s.max) == (0, 99)
        assert nearest_rank([10, 20, 30], 0) == 10

    def test_single(self):
        s = summarize([2.5])
        assert s.as_dict() == {"mean": 2.5, "std": 0.0, "p5": 2.5, "p95": 2.5, "min": 2.5, "max": 2.5}

    def test_matches_numpy(self):
        x = np.random.default_rng(0).normal(size=257)
        s = summarize(x)
        assert s.mean == pytest.approx(x.mean(), abs=1e-14)
        assert s.std == pytest.approx(x.std(ddof=1), abs=1e-14)
        assert s.p5 == np.percentile(x, 5, method="inverted_cdf")
        assert s.p95 == np.percentile(x, 95, method="inverted_cdf")

    def test_empty(self):
        with pytest.raises(UsageError):
            summarize([])


class TestWelch:
    def test_identical_samples(self):
        assert welch_t_test([1, 2, 3], [1, 2, 3]) == (0.0, 1.0)

    def test_jittered_constants(self):
        a = [0 + 1e-9 * i for i in range(4)]
        b = [1 + 1e-9 * i for i in range(4)]
        t, p = welch_t_test(a, b)
        ref = stats.ttest_ind(a, b, equal_var=False)
        assert p < 0.001
        assert t == pytest.approx(ref.statistic, rel=1e-9)

    def test_zero_variance_conventions(self):
        assert welch_t_test([2, 2], [2, 2]) == (0.0, 1.0)
        t, p = welch_t_test([1, 1], [2, 2])
        assert t == -math.inf and p == 0.0

    def test_antisymmetric(self):
        a, b = [0.3, 0.5, 0.9, 0.4], [0.8, 0.7, 0.95, 0.85, 0.9]
        t1, p1 = welch_t_test(a, b)
        t2, p2 = welch_t_test(b, a)
        assert t1 == -t2 and p1 == p2

    @pytest.mark.parametrize("seed", range(30))
    def test_matches_scipy(self, seed):
        g = np.random.default_rng(seed)
        a = g.normal(0, g.uniform(0.1, 3), g.integers(2, 15))
        b = g.normal(g.uniform(-2, 2), g.uniform(0.1, 3), g.integers(2, 15))
        t, p = welch_t_test(a, b)
        ref = stats.ttest_ind(a, b, equal_var=False)
        assert t == pytest.approx(ref.statistic, rel=1e-10)
        assert p == pytest.approx(ref.pvalue, rel=1e-8, abs=1e-300)

    def test_shift_invariant(self):
        a, b = [0.3, 0.5, 0.9, 0.4], [0.8, 0.7, 0.95, 0.85]
        assert welch_t_test(a, b)[1] == pytest.approx(welch_t_test(np.add(a, 7), np.add(b, 7))[1], rel=1e-9)

    def test_needs_two_observations(self):
        with pytest.raises(UsageError):
            welch_t_test([1], [1, 2])

    def test_special_functions_against_scipy(self):
        from scipy import special
        for a, b, x in [(0.5, 0.5, 0.3), (2.0, 3.0, 0.9), (10.0, 0.5, 0.99), (4.5, 0.5, 0.01)]:
            assert betainc_regularized(a, b, x) == pytest.approx(special.betainc(a, b, x), rel=1e-12)
        for t, df in [(0.0, 3.0), (2.5, 7.3), (-1.2, 18.0), (40.0, 4.0)]:
            assert student_t_sf(t, df) == pytest.approx(stats.t.sf(t, df), rel=1e-10)


class TestMetricSeries:
    def test_csv_roundtrip(self, tmp_path):
        p = tmp_path / "m.csv"
        ms = MetricSeries("order", [0, 1, 2], [0.1, 1 / 3, 1.0], {"seed": 4})
        ms.to_csv(p)
        lines = p.read_text().splitlines()
        assert lines[:3] == ["# name=order", "# seed=4", "step,value"]
        back = MetricSeries.from_csv(p)
        assert back.name == "order" and back.meta == {"seed": "4"}
        assert back.values.tolist() == [0.1, 1 / 3, 1.0]

    def test_integer_roundtrip(self, tmp_path):
        p = tmp_path / "g.csv"
        MetricSeries("grouping", [0, 5], np.array([12, 3])).to_csv(p)
        back = MetricSeries.from_csv(p)
        assert back.values.dtype.kind == "i" and back.values.tolist() == [12, 3]

    def test_steps_strictly_increasing(self):
        with pytest.raises(ValueError):
            MetricSeries("x", [0, 0], [1.0, 2.0])
