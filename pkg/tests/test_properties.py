"""Randomized invariants, sized to finish well under half a minute."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netboids.adversary import DEConfig, Observation, de_run, evolve
from netboids.adversary.de import mutate
from netboids.adversary.genome import CLAMP_HIGH, CLAMP_LOW, random_population
from netboids.config import SimConfig
from netboids.metrics import grouping, order
from netboids.neighborhood import NetworkNeighborhood, VisionNeighborhood, gen_er, gen_ws, vision_neighbors
from netboids.swarm import Boid, SwarmState, Vec2
from netboids.swarm.forces import (
    alignment_velocity,
    cohesion_velocity,
    separation_velocity,
    update_position,
    update_velocity,
)
from netboids.swarm.simulation import run

from conftest import random_state

PROFILE = settings(max_examples=40, deadline=None)
coord = st.floats(0.0, 1000.0, allow_nan=False)
seeds = st.integers(0, 2**32 - 1)
angles = st.floats(0.0, 2 * math.pi, exclude_max=True)


def heading(theta):
    return Vec2(math.cos(theta), math.sin(theta))


boid_st = st.builds(lambda x, y, th: (x, y, th), coord, coord, angles)


def make_boids(specs):
    return [Boid(i, Vec2(x, y), heading(th)) for i, (x, y, th) in enumerate(specs)]


def shift(b, dx, dy):
    return Boid(b.id, b.position + Vec2(dx, dy), b.velocity)


def brute_components(pos, r_a):
    n = len(pos)
    label = list(range(n))

    def root(i):
        while label[i] != i:
            i = label[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if math.dist(pos[i], pos[j]) < r_a / 2:
                label[root(i)] = root(j)
    return len({root(i) for i in range(n)})


@PROFILE
@given(me=boid_st, others=st.lists(boid_st, min_size=1, max_size=8),
       dx=st.floats(-500, 500), dy=st.floats(-500, 500))
def test_cohesion_alignment_translation_invariant(me, others, dx, dy):
    me, *nb = make_boids([me, *others])
    cV, aV = cohesion_velocity(me, nb), alignment_velocity(me, nb)
    me2, nb2 = shift(me, dx, dy), [shift(b, dx, dy) for b in nb]
    cV2, aV2 = cohesion_velocity(me2, nb2), alignment_velocity(me2, nb2)
    assert cV2.x == pytest.approx(cV.x, abs=1e-9) and cV2.y == pytest.approx(cV.y, abs=1e-9)
    assert aV2 == aV


@PROFILE
@given(x=coord, y=coord, d=st.floats(1e-3, 10.0), th=angles)
def test_separation_symmetric_cancellation(x, y, d, th):
    me = Boid(0, Vec2(x, y), heading(th))
    left, right = Boid(1, Vec2(x - d, y), heading(th)), Boid(2, Vec2(x + d, y), heading(th))
    sV = separation_velocity(me, [left, right])
    assert abs(sV.x) <= 1e-12 * max(1.0, abs(x)) and sV.y == 0.0


@PROFILE
@given(x=st.floats(100, 900), y=st.floats(100, 900), th=angles, steps=st.integers(1, 50))
def test_empty_neighborhood_moves_straight(x, y, th, steps):
    cfg = SimConfig(n=1)
    p, v = Vec2(x, y), heading(th)
    for _ in range(steps):
        me = Boid(0, p, v)
        v_new = update_velocity(me, cohesion_velocity(me, []), alignment_velocity(me, []),
                                separation_velocity(me, []), cfg)
        p, v = update_position(me, v_new, cfg)
    assert v.x == pytest.approx(math.cos(th), abs=1e-12) and v.y == pytest.approx(math.sin(th), abs=1e-12)
    assert p.x == pytest.approx(x + steps * math.cos(th), abs=1e-9)
    assert p.y == pytest.approx(y + steps * math.sin(th), abs=1e-9)


@PROFILE
@given(thetas=st.lists(angles, min_size=1, max_size=40), rot=angles)
def test_order_bounded_and_rotation_invariant(thetas, rot):
    n = len(thetas)
    s = SwarmState(0, np.zeros((n, 2)), [[math.cos(t), math.sin(t)] for t in thetas])
    r = SwarmState(0, np.zeros((n, 2)), [[math.cos(t + rot), math.sin(t + rot)] for t in thetas])
    phi = order(s)
    assert 0.0 <= phi <= 1.0
    assert order(r) == pytest.approx(phi, abs=1e-12)


@PROFILE
@given(n=st.integers(1, 30), seed=seeds, side=st.floats(20.0, 400.0), r_a=st.floats(5.0, 100.0))
def test_grouping_matches_brute_force(n, seed, side, r_a):
    s = random_state(n, seed, side, side)
    assert grouping(s, r_a) == brute_components(s.positions.tolist(), r_a)
    perm = np.random.default_rng(seed).permutation(n)
    relabeled = SwarmState(0, s.positions[perm], s.velocities[perm])
    assert grouping(relabeled, r_a) == grouping(s, r_a)


@PROFILE
@given(n=st.integers(2, 50), seed=seeds, r=st.floats(1.0, 300.0))
def test_vision_full_circle_is_radius_scan(n, seed, r):
    s = random_state(n, seed, 300.0, 300.0)
    for i in range(n):
        expect = [j for j in range(n) if j != i and math.dist(s.positions[i], s.positions[j]) <= r]
        assert vision_neighbors(s, i, r, 2 * math.pi) == expect


@settings(max_examples=25, deadline=None)
@given(seed=seeds)
def test_er_edge_count(seed):
    adj = gen_er(100, 300, seed)
    assert adj.m == 300
    assert all(i not in adj.neighbors(i) for i in range(100))


@settings(max_examples=25, deadline=None)
@given(seed=seeds, n=st.integers(10, 120), half_k=st.integers(1, 4), p=st.floats(0.0, 1.0))
def test_ws_edge_count(seed, n, half_k, p):
    assert gen_ws(n, 2 * half_k, p, seed).m == n * half_k


@settings(max_examples=15, deadline=None)
@given(seed=seeds, gens=st.integers(1, 15), F=st.floats(0.0, 2.0), CR=st.floats(0.0, 1.0))
def test_de_best_fitness_monotone(seed, gens, F, CR):
    target = np.array([0.3, 0.6, 0.2, 5.0, 80.0, 3.0])
    res = evolve(lambda pop: ((pop - target) ** 2).sum(axis=1), DEConfig(pop_size=10, generations=gens,
                                                                         F=F, CR=CR, seed=seed))
    h = res.fitness_history
    assert len(h) == gens + 1
    assert all(b <= a for a, b in zip(h, h[1:]))
    assert res.best.in_bounds()


@PROFILE
@given(seed=seeds)
def test_mutation_with_zero_scale_is_identity(seed):
    r1, r2, r3 = random_population(3, np.random.default_rng(seed))
    assert (mutate(r1, r2, r3, 0.0) == r1).all()
    donor = mutate(r1, r2, r3, 2.0)
    assert (donor >= CLAMP_LOW).all() and (donor <= CLAMP_HIGH).all()


@settings(max_examples=10, deadline=None)
@given(seed=seeds, network=st.booleans())
def test_run_bit_exact(seed, network):
    cfg = SimConfig(n=20, seed=seed, neighborhood=VisionNeighborhood(80.0, 1.5 * math.pi))
    if network:
        cfg = SimConfig(n=20, seed=seed, neighborhood=NetworkNeighborhood(gen_er(20, 40, seed)))
    a, b = run(cfg, 60), run(cfg, 60)
    assert a.positions.tobytes() == b.positions.tobytes()
    assert a.velocities.tobytes() == b.velocities.tobytes()


@settings(max_examples=5, deadline=None)
@given(seed=seeds)
def test_de_run_bit_exact(seed):
    cfg = SimConfig(n=15, seed=seed)
    obs = Observation.from_trajectory(run(cfg, 5), 1, 3)
    de = DEConfig(pop_size=6, generations=3, seed=seed)
    a, b = de_run(obs, cfg, de), de_run(obs, cfg, de)
    assert a.to_dict(with_runtime=False) == b.to_dict(with_runtime=False)
