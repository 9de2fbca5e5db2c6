"""Independent reference computations used to check the library.

Everything here is deliberately naive: exhaustive sign patterns with an LP
feasibility test, convex hulls from scipy, brute-force bijections.  None of
it shares code with the chamber enumeration or the congruence matcher.
"""

import itertools
import math

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull


def angles_deg(*degrees, lengths=None):
    lengths = lengths or [1.0] * len(degrees)
    return [[l * math.cos(math.radians(a)), l * math.sin(math.radians(a))] for a, l in zip(degrees, lengths)]


def realizable(rows, slack=1e-7):
    """LP: is there x with rows @ x >= slack * |row| (after scaling x to the unit box)?"""
    rows = np.atleast_2d(rows)
    m, d = rows.shape
    norms = np.linalg.norm(rows, axis=1)
    res = linprog(
        np.r_[np.zeros(d), -1.0],
        A_ub=np.hstack([-rows, norms[:, None]]),
        b_ub=np.zeros(m),
        bounds=[(-1, 1)] * d + [(None, 1)],
        method="highs",
    )
    return res.status == 0 and res.x[-1] > slack


def brute_force_sign_patterns(reps):
    """All sign vectors s with {s_i r_i} an open half-space cut, by exhausting 2^n patterns."""
    reps = np.atleast_2d(reps)
    out = []
    for s in itertools.product((1, -1), repeat=len(reps)):
        if realizable(np.array(s)[:, None] * reps):
            out.append(s)
    return sorted(out)


def hull_vertices(points):
    """Extreme points of a full-dimensional point cloud (scipy Qhull)."""
    points = np.asarray(points, dtype=float)
    hull = ConvexHull(points)
    return points[np.sort(hull.vertices)]


def all_sign_sums(reps):
    reps = np.atleast_2d(reps)
    signs = np.array(list(itertools.product((1, -1), repeat=len(reps))))
    return signs @ reps


def gram_bijection_exists(A, B, atol=1e-9):
    """Exhaust bijections pi with <a_i, a_j> = <b_pi(i), b_pi(j)>."""
    A, B = np.atleast_2d(A), np.atleast_2d(B)
    if A.shape != B.shape:
        return False
    ga, gb = A @ A.T, B @ B.T
    for perm in itertools.permutations(range(len(B))):
        if np.allclose(ga, gb[np.ix_(perm, perm)], atol=atol):
            return True
    return False


def brute_force_rank2_flats(vectors, atol=1e-9):
    """Rank-2 flats as frozensets of indices, by closing every non-parallel pair."""
    vectors = np.asarray(vectors, dtype=float)
    found = set()
    for i, j in itertools.combinations(range(len(vectors)), 2):
        pair = vectors[[i, j]]
        if np.linalg.matrix_rank(pair, tol=1e-8) < 2:
            continue
        members = frozenset(
            k for k in range(len(vectors))
            if np.linalg.matrix_rank(np.vstack([pair, vectors[k]]), tol=1e-8) == 2
        )
        found.add(members)
    return found


def set_distance(P, Q):
    """Max over P of the distance to the nearest point of Q (and vice versa)."""
    P, Q = np.atleast_2d(P), np.atleast_2d(Q)
    d = np.linalg.norm(P[:, None, :] - Q[None, :, :], axis=2)
    return max(d.min(axis=1).max(), d.min(axis=0).max())


def dihedral_maps(n):
    """All 2n orthogonal maps of the regular n-gon symmetry group."""
    out = []
    for k in range(n):
        t = 2 * math.pi * k / n
        c, s = math.cos(t), math.sin(t)
        out.append(np.array([[c, -s], [s, c]]))
        out.append(np.array([[c, s], [s, -c]]))
    return out
