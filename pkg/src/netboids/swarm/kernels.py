"""Compiled bulk versions of the boid update.

All routines are sequential and avoid fast-math, so results are bit-identical
from run to run.  Neighbor scans sort boids by x once per step and sweep each
boid's right-hand side until the x gap exceeds the interaction radius; each
unordered pair is visited once and credited to both endpoints.

Scratch layout for ``acc`` (n x 7): neighbor count, summed neighbor
position (2), summed neighbor velocity (2), separation sum (2).
"""

from __future__ import annotations

import numpy as np
from numba import njit

TWO_PI = 2.0 * np.pi

# genome column order shared with netboids.adversary.genome
W_C, W_A, W_S, D_S, VISION_R, VISION_A = range(6)


@njit(cache=True)
def _integrate(pos, vel, opos, ovel, acc, w_c, w_a, w_s, speed, space_w, space_h):
    n = pos.shape[0]
    for i in range(n):
        px = pos[i, 0]
        py = pos[i, 1]
        vx = vel[i, 0]
        vy = vel[i, 1]
        nx = vx
        ny = vy
        cnt = acc[i, 0]
        if cnt > 0.0:
            cx = acc[i, 1] / cnt - px
            cy = acc[i, 2] / cnt - py
            m = np.sqrt(cx * cx + cy * cy)
            if m > 0.0:
                nx += w_c * (cx / m)
                ny += w_c * (cy / m)
            ax = acc[i, 3] / cnt - vx
            ay = acc[i, 4] / cnt - vy
            m = np.sqrt(ax * ax + ay * ay)
            if m > 0.0:
                nx += w_a * (ax / m)
                ny += w_a * (ay / m)
        sx = acc[i, 5]
        sy = acc[i, 6]
        m = np.sqrt(sx * sx + sy * sy)
        if m > 0.0:
            nx += w_s * (sx / m)
            ny += w_s * (sy / m)
        m = np.sqrt(nx * nx + ny * ny)
        if m > 0.0:
            nx = (nx / m) * speed
            ny = (ny / m) * speed
        else:
            nx = vx
            ny = vy
        x = px + nx
        while x < 0.0 or x > space_w:
            if x < 0.0:
                x = -x
            else:
                x = 2.0 * space_w - x
            nx = -nx
        y = py + ny
        while y < 0.0 or y > space_h:
            if y < 0.0:
                y = -y
            else:
                y = 2.0 * space_h - y
            ny = -ny
        opos[i, 0] = x
        opos[i, 1] = y
        ovel[i, 0] = nx
        ovel[i, 1] = ny


@njit(cache=True)
def _sees(vx, vy, vn, dx, dy, dist, cos_half):
    if dist == 0.0 or vn == 0.0:
        return True
    return dx * vx + dy * vy >= cos_half * vn * dist


@njit(cache=True)
def step_vision(pos, vel, opos, ovel, acc, w_c, w_a, w_s, d_s, vision_r, vision_a,
                speed, space_w, space_h):
    n = pos.shape[0]
    acc[:, :] = 0.0
    vr2 = vision_r * vision_r
    ds2 = d_s * d_s
    full = vision_a >= TWO_PI
    cos_half = np.cos(0.5 * vision_a)
    order = np.argsort(pos[:, 0], kind="mergesort")
    for a in range(n):
        i = order[a]
        px = pos[i, 0]
        py = pos[i, 1]
        vix = vel[i, 0]
        viy = vel[i, 1]
        vin = np.sqrt(vix * vix + viy * viy)
        for b in range(a + 1, n):
            j = order[b]
            dx = pos[j, 0] - px
            if dx > vision_r:
                break
            dy = pos[j, 1] - py
            d2 = dx * dx + dy * dy
            if d2 > vr2:
                continue
            i_sees_j = True
            j_sees_i = True
            if not full:
                dist = np.sqrt(d2)
                vjx = vel[j, 0]
                vjy = vel[j, 1]
                vjn = np.sqrt(vjx * vjx + vjy * vjy)
                i_sees_j = _sees(vix, viy, vin, dx, dy, dist, cos_half)
                j_sees_i = _sees(vjx, vjy, vjn, -dx, -dy, dist, cos_half)
            close = d2 < ds2
            if i_sees_j:
                acc[i, 0] += 1.0
                acc[i, 1] += pos[j, 0]
                acc[i, 2] += pos[j, 1]
                acc[i, 3] += vel[j, 0]
                acc[i, 4] += vel[j, 1]
                if close:
                    acc[i, 5] -= dx
                    acc[i, 6] -= dy
            if j_sees_i:
                acc[j, 0] += 1.0
                acc[j, 1] += px
                acc[j, 2] += py
                acc[j, 3] += vix
                acc[j, 4] += viy
                if close:
                    acc[j, 5] += dx
                    acc[j, 6] += dy
    _integrate(pos, vel, opos, ovel, acc, w_c, w_a, w_s, speed, space_w, space_h)


@njit(cache=True)
def step_network(pos, vel, opos, ovel, acc, indptr, indices, w_c, w_a, w_s, d_s,
                 speed, space_w, space_h):
    n = pos.shape[0]
    acc[:, :] = 0.0
    for i in range(n):
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            acc[i, 0] += 1.0
            acc[i, 1] += pos[j, 0]
            acc[i, 2] += pos[j, 1]
            acc[i, 3] += vel[j, 0]
            acc[i, 4] += vel[j, 1]
    # collision avoidance ignores the graph: every pair inside d_s repels
    ds2 = d_s * d_s
    order = np.argsort(pos[:, 0], kind="mergesort")
    for a in range(n):
        i = order[a]
        px = pos[i, 0]
        py = pos[i, 1]
        for b in range(a + 1, n):
            j = order[b]
            dx = pos[j, 0] - px
            if dx >= d_s:
                break
            dy = pos[j, 1] - py
            if dx * dx + dy * dy < ds2:
                acc[i, 5] -= dx
                acc[i, 6] -= dy
                acc[j, 5] += dx
                acc[j, 6] += dy
    _integrate(pos, vel, opos, ovel, acc, w_c, w_a, w_s, speed, space_w, space_h)


@njit(cache=True)
def simulate_vision(pos0, vel0, steps, w_c, w_a, w_s, d_s, vision_r, vision_a,
                    speed, space_w, space_h):
    n = pos0.shape[0]
    P = np.empty((steps + 1, n, 2))
    V = np.empty((steps + 1, n, 2))
    P[0] = pos0
    V[0] = vel0
    acc = np.empty((n, 7))
    for t in range(steps):
        step_vision(P[t], V[t], P[t + 1], V[t + 1], acc, w_c, w_a, w_s, d_s,
                    vision_r, vision_a, speed, space_w, space_h)
    return P, V


@njit(cache=True)
def simulate_network(pos0, vel0, steps, indptr, indices, w_c, w_a, w_s, d_s,
                     speed, space_w, space_h):
    n = pos0.shape[0]
    P = np.empty((steps + 1, n, 2))
    V = np.empty((steps + 1, n, 2))
    P[0] = pos0
    V[0] = vel0
    acc = np.empty((n, 7))
    for t in range(steps):
        step_network(P[t], V[t], P[t + 1], V[t + 1], acc, indptr, indices, w_c, w_a, w_s,
                     d_s, speed, space_w, space_h)
    return P, V


@njit(cache=True)
def _position_error(a, b):
    s = 0.0
    for i in range(a.shape[0]):
        dx = a[i, 0] - b[i, 0]
        dy = a[i, 1] - b[i, 1]
        s += np.sqrt(dx * dx + dy * dy)
    return s


@njit(cache=True)
def population_errors(pos0, vel0, target, genomes, steps, speed, space_w, space_h):
    """Summed position mismatch against ``target`` after ``steps`` vision-model steps, per genome."""
    n = pos0.shape[0]
    out = np.empty(genomes.shape[0])
    pa = np.empty((n, 2))
    va = np.empty((n, 2))
    pb = np.empty((n, 2))
    vb = np.empty((n, 2))
    acc = np.empty((n, 7))
    for g in range(genomes.shape[0]):
        pa[:, :] = pos0
        va[:, :] = vel0
        for _ in range(steps):
            step_vision(pa, va, pb, vb, acc, genomes[g, W_C], genomes[g, W_A], genomes[g, W_S],
                        genomes[g, D_S], genomes[g, VISION_R], genomes[g, VISION_A],
                        speed, space_w, space_h)
            pa, pb = pb, pa
            va, vb = vb, va
        out[g] = _position_error(pa, target)
    return out


@njit(cache=True)
def prediction_errors(pos0, vel0, actual, genomes, speed, space_w, space_h):
    """Per-genome, per-step mismatch against ``actual[t]`` (t = 1..horizon) under the vision model."""
    n = pos0.shape[0]
    horizon = actual.shape[0]
    out = np.empty((genomes.shape[0], horizon))
    pa = np.empty((n, 2))
    va = np.empty((n, 2))
    pb = np.empty((n, 2))
    vb = np.empty((n, 2))
    acc = np.empty((n, 7))
    for g in range(genomes.shape[0]):
        pa[:, :] = pos0
        va[:, :] = vel0
        for t in range(horizon):
            step_vision(pa, va, pb, vb, acc, genomes[g, W_C], genomes[g, W_A], genomes[g, W_S],
                        genomes[g, D_S], genomes[g, VISION_R], genomes[g, VISION_A],
                        speed, space_w, space_h)
            pa, pb = pb, pa
            va, vb = vb, va
            out[g, t] = _position_error(pa, actual[t])
    return out


@njit(cache=True)
def order_series(V):
    T = V.shape[0]
    n = V.shape[1]
    out = np.empty(T)
    for t in range(T):
        sx = 0.0
        sy = 0.0
        for i in range(n):
            vx = V[t, i, 0]
            vy = V[t, i, 1]
            m = np.sqrt(vx * vx + vy * vy)
            if m > 0.0:
                sx += vx / m
                sy += vy / m
        # rounding can push an aligned swarm a hair above 1
        out[t] = min(1.0, np.sqrt(sx * sx + sy * sy) / n)
    return out


@njit(cache=True)
def _find(parent, a):
    root = a
    while parent[root] != root:
        root = parent[root]
    while parent[a] != root:
        nxt = parent[a]
        parent[a] = root
        a = nxt
    return root


@njit(cache=True)
def group_count(pos, radius):
    """Connected components of the graph linking boids strictly closer than ``radius``."""
    n = pos.shape[0]
    parent = np.arange(n)
    count = n
    r2 = radius * radius
    order = np.argsort(pos[:, 0], kind="mergesort")
    for a in range(n):
        i = order[a]
        for b in range(a + 1, n):
            j = order[b]
            dx = pos[j, 0] - pos[i, 0]
            if dx >= radius:
                break
            dy = pos[j, 1] - pos[i, 1]
            if dx * dx + dy * dy < r2:
                ri = _find(parent, i)
                rj = _find(parent, j)
                if ri != rj:
                    parent[ri] = rj
                    count -= 1
    return count


@njit(cache=True)
def grouping_series(P, radius):
    T = P.shape[0]
    out = np.empty(T, dtype=np.int64)
    for t in range(T):
        out[t] = group_count(P[t], radius)
    return out
