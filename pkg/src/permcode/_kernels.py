"""Compiled inner loops.

Everything here works on 1-based int64 permutation arrays.  Kernels never
draw random numbers themselves: callers pass blocks of uniforms in [0, 1)
taken from an injected ``numpy.random.Generator``.
"""

import math

import numpy as np
from numba import njit

F1, F2, F3, F4 = 1, 2, 3, 4

PMX, CX, OX = 0, 1, 2
SWAP, INVERSION, SCRAMBLE = 0, 1, 2

# uniforms consumed by one offspring: crossover pick, two cuts, mutation
# coin, mutation pick, two positions, up to n - 1 for a segment shuffle
OFFSPRING_HEADER = 7


def offspring_stride(n):
    return OFFSPRING_HEADER + n


def step_stride(n, t):
    return t + OFFSPRING_HEADER + n


@njit(cache=True)
def hamming(a, b):
    c = 0
    for i in range(a.shape[0]):
        if a[i] != b[i]:
            c += 1
    return c


@njit(cache=True)
def is_compatible(rows, m, p, d):
    for r in range(m):
        if hamming(rows[r], p) < d:
            return False
    return True


@njit(cache=True)
def fitness(rows, m, p, d, kind):
    n = p.shape[0]
    if kind == F3:
        best = n
        for r in range(m):
            h = hamming(rows[r], p)
            if h < best:
                best = h
        return float(best)
    acc = 0.0
    for r in range(m):
        h = hamming(rows[r], p)
        if kind == F1:
            if h >= d:
                acc += h
        elif kind == F2:
            if h >= d:
                acc += h
            else:
                acc += math.ldexp(float(h), h - d)
        elif h < d:
            acc += 1.0
    return acc


@njit(cache=True)
def fitness_batch(perms, rows, m, d, kind, out):
    for k in range(perms.shape[0]):
        out[k] = fitness(rows, m, perms[k], d, kind)


@njit(cache=True)
def better(kind, a, b):
    if kind == F4:
        return a < b
    return a > b


@njit(cache=True)
def first_compatible(batch, rows, m, d):
    for k in range(batch.shape[0]):
        if is_compatible(rows, m, batch[k], d):
            return k
    return -1


@njit(cache=True)
def _draw(u, k):
    # uniform integer in [0, k) from u in [0, 1)
    r = int(u * k)
    if r >= k:
        r = k - 1
    return r


@njit(cache=True)
def pmx(a, b, i, j, out):
    n = a.shape[0]
    pos_a = np.empty(n, np.int64)
    in_seg = np.zeros(n, np.bool_)
    for k in range(n):
        pos_a[a[k] - 1] = k
    for k in range(i, j + 1):
        out[k] = a[k]
        in_seg[a[k] - 1] = True
    for k in range(n):
        if i <= k <= j:
            continue
        v = b[k]
        while in_seg[v - 1]:
            v = b[pos_a[v - 1]]
        out[k] = v


@njit(cache=True)
def cx(a, b, out):
    n = a.shape[0]
    pos_a = np.empty(n, np.int64)
    done = np.zeros(n, np.bool_)
    for k in range(n):
        pos_a[a[k] - 1] = k
    cycle = 0
    for start in range(n):
        if done[start]:
            continue
        k = start
        while True:
            done[k] = True
            out[k] = a[k] if cycle % 2 == 0 else b[k]
            k = pos_a[b[k] - 1]
            if k == start:
                break
        cycle += 1


@njit(cache=True)
def ox(a, b, i, j, out):
    n = a.shape[0]
    in_seg = np.zeros(n, np.bool_)
    for k in range(i, j + 1):
        out[k] = a[k]
        in_seg[a[k] - 1] = True
    src = (j + 1) % n
    dst = (j + 1) % n
    for _ in range(n - (j - i + 1)):
        while in_seg[b[src] - 1]:
            src = (src + 1) % n
        out[dst] = b[src]
        src = (src + 1) % n
        dst = (dst + 1) % n


@njit(cache=True)
def swap(p, i, k, out):
    out[:] = p
    out[i] = p[k]
    out[k] = p[i]


@njit(cache=True)
def inversion(p, i, j, out):
    out[:] = p
    for k in range(j - i + 1):
        out[i + k] = p[j - k]


@njit(cache=True)
def scramble(p, i, j, u, out):
    out[:] = p
    s = j
    c = 0
    while s > i:
        r = i + _draw(u[c], s - i + 1)
        tmp = out[s]
        out[s] = out[r]
        out[r] = tmp
        s -= 1
        c += 1


@njit(cache=True)
def _cuts(u1, u2, n):
    i = _draw(u1, n)
    j = _draw(u2, n)
    if i > j:
        return j, i
    return i, j


@njit(cache=True)
def offspring(a, b, u, xo_ids, mut_ids, mut_rate, out, tmp):
    """One child from parents ``a`` and ``b``; returns the mutation id or -1."""
    n = a.shape[0]
    xo = xo_ids[_draw(u[0], xo_ids.shape[0])]
    i, j = _cuts(u[1], u[2], n)
    if xo == PMX:
        pmx(a, b, i, j, tmp)
    elif xo == CX:
        cx(a, b, tmp)
    else:
        ox(a, b, i, j, tmp)
    if n < 2 or not u[3] < mut_rate:
        out[:] = tmp
        return -1
    mut = mut_ids[_draw(u[4], mut_ids.shape[0])]
    if mut == SWAP:
        x = _draw(u[5], n)
        y = _draw(u[6], n - 1)
        if y >= x:
            y += 1
        swap(tmp, x, y, out)
    else:
        i, j = _cuts(u[5], u[6], n)
        if mut == INVERSION:
            inversion(tmp, i, j, out)
        else:
            scramble(tmp, i, j, u[OFFSPRING_HEADER:], out)
    return mut


@njit(cache=True)
def tournament(u, fit, kind, t, sel):
    """Draw ``t`` distinct indices and rank them best-first into ``sel``.

    Ties keep the lower population index ahead.
    """
    size = fit.shape[0]
    for k in range(t):
        r = _draw(u[k], size - k)
        for q in range(k):
            if sel[q] <= r:
                r += 1
        q = k
        while q > 0 and sel[q - 1] > r:
            sel[q] = sel[q - 1]
            q -= 1
        sel[q] = r
    for a in range(1, t):
        x = sel[a]
        q = a
        while q > 0 and better(kind, fit[x], fit[sel[q - 1]]):
            sel[q] = sel[q - 1]
            q -= 1
        sel[q] = x


@njit(cache=True)
def ga_steps(pop, fit, rows, m, d, kind, t, xo_ids, mut_ids, mut_rate, u, nsteps, best, best_fit):
    """Run up to ``nsteps`` steady-state steps.

    Returns ``(steps_done, found, best_fit)``; stops right after the step
    whose offspring becomes a best individual compatible with the code.
    """
    n = pop.shape[1]
    stride = t + OFFSPRING_HEADER + n
    sel = np.empty(t, np.int64)
    child = np.empty(n, np.int64)
    tmp = np.empty(n, np.int64)
    for s in range(nsteps):
        base = s * stride
        tournament(u[base:base + t], fit, kind, t, sel)
        offspring(pop[sel[0]], pop[sel[1]], u[base + t:base + stride],
                  xo_ids, mut_ids, mut_rate, child, tmp)
        f = fitness(rows, m, child, d, kind)
        worst = sel[t - 1]
        pop[worst, :] = child
        fit[worst] = f
        if better(kind, f, best_fit):
            best_fit = f
            best[:] = child
            if is_compatible(rows, m, child, d):
                return s + 1, True, best_fit
    return nsteps, False, best_fit
