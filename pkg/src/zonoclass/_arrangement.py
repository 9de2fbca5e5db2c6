"""Chamber enumeration for central hyperplane arrangements.

Hyperplanes are inserted one at a time.  Every chamber is kept as the list of
its extreme rays together with, for each ray, a bitmask of the inserted
hyperplanes that contain it.  A new hyperplane either leaves a chamber on one
side (all rays weakly on one side) or splits it, in which case the rays of the
two halves are the old rays on each side plus the intersections of the
hyperplane with the 2-faces spanned by adjacent (+, -) ray pairs.  Adjacency
is decided combinatorially from the masks, so no LP is needed per chamber.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError


@dataclass(frozen=True)
class Chambers:
    signs: np.ndarray  # (N, m) entries +1/-1, one column per input normal
    points: np.ndarray  # (N, d) interior point of each chamber, ambient coords
    min_margin: float  # smallest normalized |<n, c>| over all chambers / normals


def group_parallel(units, eps):
    """Group unit vectors that span the same line.

    Returns (reps, group, orient): ``units[i] == orient[i] * units[reps[group[i]]]``.
    """
    reps = []
    group = np.empty(len(units), dtype=int)
    orient = np.empty(len(units), dtype=int)
    for i, u in enumerate(units):
        for g, j in enumerate(reps):
            dot = float(units[j] @ u)
            if np.linalg.norm(units[j] - np.copysign(1.0, dot) * u) <= 10 * eps:
                group[i] = g
                orient[i] = 1 if dot > 0 else -1
                break
        else:
            group[i] = len(reps)
            orient[i] = 1
            reps.append(i)
    return np.array(reps, dtype=int), group, orient


def span_basis(vectors, eps):
    """Orthonormal rows spanning the row space of ``vectors``."""
    vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
    if vectors.size == 0:
        return np.zeros((0, vectors.shape[1]))
    _, s, vt = np.linalg.svd(vectors, full_matrices=False)
    if len(s) == 0 or s[0] <= eps:
        return np.zeros((0, vectors.shape[1]))
    rank = int(np.sum(s > eps * max(1.0, s[0])))
    return vt[:rank]


def _independent_prefix(units, k, eps):
    chosen = []
    for i in range(len(units)):
        trial = units[chosen + [i]]
        if np.linalg.matrix_rank(trial, tol=eps) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == k:
                break
    return chosen


def _adjacent(masks, p, n, need):
    common = masks[p] & masks[n]
    if common.bit_count() < need:
        return None
    for w, mw in enumerate(masks):
        if w != p and w != n and common & ~mw == 0:
            return None
    return common


def enumerate_chambers(normals, eps=1e-9, max_chambers=10**6):
    """All chambers of the arrangement ``{x : <n, x> = 0}`` for the given normals.

    Normals may be parallel to each other and need not span the ambient space;
    the enumeration then happens inside their span (chambers are cylinders
    over the orthogonal complement, represented by points in the span).
    """
    normals = np.atleast_2d(np.asarray(normals, dtype=float))
    m, d = normals.shape
    if m == 0:
        return Chambers(np.zeros((1, 0), dtype=np.int8), np.zeros((1, d)), np.inf)

    norms = np.linalg.norm(normals, axis=1)
    units = normals / norms[:, None]
    reps, group, orient = group_parallel(units, eps)
    basis = span_basis(units[reps], eps)
    k = basis.shape[0]
    u = units[reps] @ basis.T
    u /= np.linalg.norm(u, axis=1)[:, None]
    g = len(reps)

    first = _independent_prefix(u, k, eps)
    order = first + [i for i in range(g) if i not in set(first)]

    # initial simplicial cones from the k independent hyperplanes
    binv = np.linalg.inv(u[first])
    signs0 = np.array(np.meshgrid(*[[1, -1]] * k, indexing="ij")).reshape(k, -1).T
    n0 = len(signs0)
    rays = np.empty((n0 * k, k))
    masks = []
    full = sum(1 << first[j] for j in range(k))
    for c, s in enumerate(signs0):
        for j in range(k):
            r = binv[:, j] * s[j]
            rays[c * k + j] = r / np.linalg.norm(r)
            masks.append(full & ~(1 << first[j]))
    counts = np.full(n0, k)
    signs = np.zeros((n0, g), dtype=np.int8)
    signs[:, first] = signs0
    if n0 > max_chambers:
        raise CapExceededError("chamber count", max_chambers)

    need = k - 2
    for h in order[k:]:
        uh = u[h]
        bit = 1 << h
        vals = rays @ uh
        pos = vals > eps
        neg = vals < -eps
        starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
        haspos = np.logical_or.reduceat(pos, starts)
        hasneg = np.logical_or.reduceat(neg, starts)
        for t in np.flatnonzero(~pos & ~neg):
            masks[t] |= bit

        split = haspos & hasneg
        keep = ~split
        ray_keep = np.repeat(keep, counts)
        new_rays = [rays[ray_keep]]
        new_masks = [masks[t] for t in np.flatnonzero(ray_keep)]
        new_counts = [counts[keep]]
        kept_signs = signs[keep]
        kept_signs[:, h] = np.where(hasneg[keep], -1, 1)
        new_signs = [kept_signs]

        split_idx = np.flatnonzero(split)
        if len(signs) + len(split_idx) > max_chambers:
            raise CapExceededError("chamber count", max_chambers)
        extra_rays, extra_counts, extra_signs = [], [], []
        for c in split_idx:
            a, b = starts[c], starts[c] + counts[c]
            local_masks = masks[a:b]
            local_vals = vals[a:b]
            P = np.flatnonzero(pos[a:b])
            N = np.flatnonzero(neg[a:b])
            Z = np.flatnonzero(~pos[a:b] & ~neg[a:b])
            cut_rays, cut_masks = [], []
            for p in P:
                for n in N:
                    common = _adjacent(local_masks, p, n, need)
                    if common is None:
                        continue
                    w = local_vals[p] * rays[a + n] - local_vals[n] * rays[a + p]
                    cut_rays.append(w / np.linalg.norm(w))
                    cut_masks.append(common | bit)
            for side, idx in ((1, P), (-1, N)):
                block = [rays[a + i] for i in idx] + [rays[a + i] for i in Z] + cut_rays
                extra_rays.append(np.array(block))
                new_masks.extend([local_masks[i] for i in idx])
                new_masks.extend([local_masks[i] for i in Z])
                new_masks.extend(cut_masks)
                extra_counts.append(len(block))
                row = signs[c].copy()
                row[h] = side
                extra_signs.append(row)

        if extra_rays:
            new_rays.extend(extra_rays)
            new_counts.append(np.array(extra_counts))
            new_signs.append(np.array(extra_signs, dtype=np.int8))
        rays = np.concatenate(new_rays)
        masks = new_masks
        counts = np.concatenate(new_counts)
        signs = np.concatenate(new_signs)

    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    points = np.add.reduceat(rays, starts, axis=0)
    points /= np.linalg.norm(points, axis=1)[:, None]
    margins = (points @ u.T) * signs
    min_margin = float(margins.min())
    if min_margin <= eps:
        raise ArithmeticError(f"chamber interior point lies on a hyperplane (margin {min_margin:.3g})")

    full_signs = signs[:, group] * orient[None, :]
    return Chambers(full_signs.astype(np.int8), points @ basis, min_margin)


def generic_direction(normals, eps=1e-9):
    """Deterministic point avoiding every hyperplane n-perp, inside span(normals)."""
    basis = span_basis(normals, eps)
    k = basis.shape[0]
    normals = np.atleast_2d(np.asarray(normals, dtype=float))
    units = normals / np.linalg.norm(normals, axis=1)[:, None]
    for attempt in range(64):
        coeffs = np.array([math.sqrt(p) for p in _PRIMES[attempt : attempt + k]])
        coeffs = np.mod(coeffs * (attempt + 1), 1.0) + 0.5
        c = coeffs @ basis
        c /= np.linalg.norm(c)
        if np.abs(units @ c).min() > 1e-6:
            return c
    raise ArithmeticError("no generic direction found")


_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
           83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167,
           173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257,
           263, 269, 271, 277, 281, 283, 293, 307, 311, 313, 317, 331, 337, 347, 349, 353]
