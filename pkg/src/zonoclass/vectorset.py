"""Finite centrally symmetric vector sets: reduction, semi-stars, flats, congruence.

A :class:`VectorSet` is always stored in canonical order ``[p0, -p0, p1, -p1, ...]``
where each ``p`` is the representative of its +/- pair whose first nonzero
coordinate is positive.  The negation of index ``i`` is therefore ``i ^ 1``.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.spatial import cKDTree

from ._arrangement import enumerate_chambers, span_basis
from .errors import DimensionMismatchError, EmptyInputError

DEFAULT_MAX_CHAMBERS = 10**6


@dataclass(frozen=True)
class ToleranceContext:
    """Absolute/relative tolerances used for every equality or zero test."""

    eps_abs: float = 1e-9
    eps_rel: float = 1e-9

    def __post_init__(self):
        if not (self.eps_abs > 0 and self.eps_rel > 0):
            raise ValueError("tolerances must be positive")

    def bound(self, scale=1.0):
        return self.eps_abs + self.eps_rel * abs(scale)

    def is_zero(self, x, scale=1.0):
        return abs(x) <= self.bound(scale)

    def close(self, a, b, scale=None):
        if scale is None:
            scale = max(abs(a), abs(b))
        return abs(a - b) <= self.bound(scale)

    def allclose(self, a, b, scale=None):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        if a.shape != b.shape:
            return False
        if scale is None:
            scale = max(np.abs(a).max(initial=0.0), np.abs(b).max(initial=0.0))
        return bool(np.all(np.abs(a - b) <= self.bound(scale)))

    def sign(self, x, scale=1.0):
        if self.is_zero(x, scale):
            return 0
        return 1 if x > 0 else -1


DEFAULT_TOL = ToleranceContext()


def _positive_representative(v, tol):
    scale = np.abs(v).max()
    for x in v:
        if abs(x) > tol.bound(scale):
            return v if x > 0 else -v
    return v


def match_points(points, targets, tol, scale=None):
    """Index of the target matching each point within tolerance, -1 if none."""
    points = np.atleast_2d(points)
    targets = np.atleast_2d(targets)
    if scale is None:
        scale = max(np.abs(targets).max(initial=0.0), 1.0)
    dist, idx = cKDTree(targets).query(points, distance_upper_bound=tol.bound(scale) * 10)
    idx = np.where(np.isfinite(dist), idx, -1)
    return idx


class VectorSet:
    """Reduced, centrally symmetric set of nonzero vectors in R^d."""

    def __init__(self, representatives, tol=None):
        tol = tol or DEFAULT_TOL
        reps = np.atleast_2d(np.asarray(representatives, dtype=float))
        if reps.size == 0:
            raise EmptyInputError("a VectorSet needs at least one vector")
        if not np.all(np.isfinite(reps)):
            raise ValueError("non-finite coordinates")
        reps = np.array([_positive_representative(v, tol) for v in reps])
        order = np.lexsort(np.round(reps, 9).T[::-1])[::-1]
        reps = reps[order]
        vecs = np.empty((2 * len(reps), reps.shape[1]))
        vecs[0::2] = reps
        vecs[1::2] = -reps
        vecs.setflags(write=False)
        self.vectors = vecs
        self.tol = tol
        self._check()

    def _check(self):
        norms = self.norms
        if np.any(norms <= self.tol.eps_abs):
            raise ValueError("zero vector in VectorSet")
        units = self.representatives / norms[0::2, None]
        # chord length between unit directions, taken the short way round the line
        diff = np.linalg.norm(units[:, None, :] - units[None, :, :], axis=2)
        summ = np.linalg.norm(units[:, None, :] + units[None, :, :], axis=2)
        chord = np.minimum(diff, summ)
        np.fill_diagonal(chord, np.inf)
        if np.any(chord <= 10 * self.tol.bound(1.0)):
            raise ValueError("VectorSet is not reduced: two pairs span the same line")

    @property
    def dim(self):
        return self.vectors.shape[1]

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __getitem__(self, idx):
        return self.vectors[idx]

    def __repr__(self):
        return f"VectorSet(dim={self.dim}, size={len(self)})"

    @property
    def representatives(self):
        return self.vectors[0::2]

    @cached_property
    def norms(self):
        return np.linalg.norm(self.vectors, axis=1)

    @cached_property
    def span(self):
        """Orthonormal rows spanning the linear span of the set."""
        return span_basis(self.representatives, self.tol.eps_abs)

    @property
    def rank(self):
        return self.span.shape[0]

    @cached_property
    def _tree(self):
        return cKDTree(self.vectors)

    def index_of(self, v):
        """Index of ``v`` in the set within tolerance, or None."""
        v = np.asarray(v, dtype=float)
        dist, idx = self._tree.query(v)
        if dist <= self.tol.bound(max(np.linalg.norm(v), 1.0)) * 10:
            return int(idx)
        return None

    def indices_of(self, points):
        """Vectorized :meth:`index_of`; -1 marks points not in the set."""
        return match_points(points, self.vectors, self.tol, scale=max(self.norms.max(), 1.0))

    def same_as(self, other):
        if len(self) != len(other) or self.dim != other.dim:
            return False
        return bool(np.all(self.indices_of(other.vectors) >= 0))


def canonicalize(raw, tol=None):
    """Reduced centrally symmetric set generating the same zonotope as ``raw``.

    Zero vectors are dropped and negatives added.  Vectors on a common line are
    merged: lengths pointing the same way are summed, and the line is given
    the larger of its two directed totals.
    """
    tol = tol or DEFAULT_TOL
    rows = [np.asarray(v, dtype=float).ravel() for v in raw]
    if not rows:
        raise EmptyInputError("no input vectors")
    dims = {len(r) for r in rows}
    if len(dims) != 1:
        raise DimensionMismatchError(f"vectors of different dimensions {sorted(dims)}")
    arr = np.array(rows)
    norms = np.linalg.norm(arr, axis=1)
    scale = max(norms.max(), 1.0)
    arr, norms = arr[norms > tol.bound(scale)], norms[norms > tol.bound(scale)]
    if len(arr) == 0:
        raise EmptyInputError("all input vectors are zero")

    lines = []  # (unit, {+1: [total, vectors], -1: [total, vectors]})
    for v, n in zip(arr, norms):
        u = v / n
        for unit, sides in lines:
            dot = float(unit @ u)
            if np.linalg.norm(unit - np.copysign(1.0, dot) * u) <= 10 * tol.bound(1.0):
                side = sides[1 if dot > 0 else -1]
                side[0] += n
                side[1].append(v)
                break
        else:
            lines.append((u, {1: [n, [v]], -1: [0.0, []]}))
    reps = []
    for unit, sides in lines:
        sgn = 1 if sides[1][0] >= sides[-1][0] else -1
        total, members = sides[sgn]
        # a lone vector is kept bit-for-bit so documents round-trip exactly
        reps.append(members[0] if len(members) == 1 else sgn * unit * total)
    return VectorSet(reps, tol)


def vectorset_from_array(vectors, tol=None):
    """Strict constructor: ``vectors`` must already be reduced and symmetric."""
    tol = tol or DEFAULT_TOL
    arr = np.atleast_2d(np.asarray(vectors, dtype=float))
    out = canonicalize(arr, tol)
    if len(out) != len(arr) or not np.all(out.indices_of(arr) >= 0):
        raise ValueError("input is not a reduced centrally symmetric set")
    return out


@dataclass(frozen=True)
class SemiStar:
    parent: VectorSet = field(repr=False)
    members: tuple
    direction: np.ndarray = field(repr=False)

    @property
    def vectors(self):
        return self.parent.vectors[list(self.members)]

    @property
    def signs(self):
        """+1/-1 per pair: +1 when the positive representative is a member."""
        return np.array([1 if i % 2 == 0 else -1 for i in self.members], dtype=np.int8)

    def total(self):
        return self.vectors.sum(axis=0)

    def norm(self):
        return float(np.linalg.norm(self.total()))

    def negated(self):
        return SemiStar(self.parent, tuple(i ^ 1 for i in self.members), -self.direction)


def semi_star_from_direction(R, c):
    """The semi-star ``{r in R : <r, c> > 0}``; ``c`` must avoid every r-perp."""
    c = np.asarray(c, dtype=float)
    dots = R.representatives @ c
    cn = np.linalg.norm(c)
    bounds = R.tol.bound(1.0) * R.norms[0::2] * cn
    if np.any(np.abs(dots) <= bounds):
        raise ValueError("direction is orthogonal to a vector of the set")
    members = tuple(2 * i + (0 if x > 0 else 1) for i, x in enumerate(dots))
    return SemiStar(R, members, c)


def semi_stars(R, max_chambers=DEFAULT_MAX_CHAMBERS, with_margin=False):
    """Every semi-star of ``R`` once, sorted by member tuple.

    One semi-star per chamber of the arrangement of hyperplanes r-perp.
    """
    ch = enumerate_chambers(R.representatives, R.tol.eps_abs, max_chambers)
    members = 2 * np.arange(len(R) // 2)[None, :] + (ch.signs < 0)
    order = np.lexsort(members.T[::-1])
    out = [SemiStar(R, tuple(int(i) for i in members[j]), ch.points[j]) for j in order]
    if with_margin:
        return out, ch.min_margin
    return out


def chamber_signs(R, max_chambers=DEFAULT_MAX_CHAMBERS):
    """Sign matrix (N, n/2) of the semi-stars of ``R``, same order as :func:`semi_stars`."""
    ch = enumerate_chambers(R.representatives, R.tol.eps_abs, max_chambers)
    order = np.lexsort((ch.signs < 0).T[::-1])
    return ch.signs[order], ch.points[order]


@dataclass(frozen=True)
class Flat:
    parent: VectorSet = field(repr=False)
    members: frozenset
    rank: int

    @property
    def indices(self):
        return sorted(self.members)

    @property
    def vectors(self):
        return self.parent.vectors[self.indices]

    def __len__(self):
        return len(self.members)

    def as_vectorset(self):
        return VectorSet(self.parent.vectors[self.indices[0::2]], self.parent.tol)


def span_closure(R, indices):
    """Indices of all vectors of ``R`` in the span of ``R[indices]``, and its rank."""
    indices = list(indices)
    if not indices:
        return frozenset(), 0
    q = span_basis(R.vectors[indices], R.tol.eps_abs)
    resid = R.vectors - (R.vectors @ q.T) @ q
    inside = np.linalg.norm(resid, axis=1) <= R.tol.bound(1.0) * np.maximum(R.norms, 1.0)
    return frozenset(int(i) for i in np.flatnonzero(inside)), q.shape[0]


def flats(R, max_rank):
    """All flats of rank at most ``max_rank``, grouped by rank then sorted."""
    if max_rank < 0:
        raise ValueError("max_rank must be non-negative")
    out = [Flat(R, frozenset(), 0)]
    level = [frozenset()]
    npairs = len(R) // 2
    for k in range(1, min(max_rank, R.rank) + 1):
        found = {}
        for base in level:
            for p in range(npairs):
                if 2 * p in base:
                    continue
                members, rank = span_closure(R, list(base) + [2 * p])
                if rank == k and members not in found:
                    found[members] = Flat(R, members, k)
        level = sorted(found, key=lambda m: sorted(m))
        out.extend(found[m] for m in level)
    return out


@dataclass(frozen=True)
class OrthogonalMap:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("orthogonal map needs a square matrix")
        if not np.allclose(m.T @ m, np.eye(len(m)), atol=1e-7):
            raise ValueError("matrix is not orthogonal")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def det(self):
        return int(round(np.linalg.det(self.matrix)))

    def __call__(self, v):
        return np.asarray(v, dtype=float) @ self.matrix.T

    def __matmul__(self, other):
        return OrthogonalMap(self.matrix @ other.matrix)

    def inverse(self):
        return OrthogonalMap(self.matrix.T)

    @classmethod
    def identity(cls, d):
        return cls(np.eye(d))


def apply(T, R):
    """Image of ``R`` under ``T`` (canonically reordered)."""
    if T.dim != R.dim:
        raise DimensionMismatchError(f"map of dim {T.dim} on set of dim {R.dim}")
    return VectorSet(T(R.representatives), R.tol)


def stabilizes(T, R):
    """True iff ``T R = R`` as sets."""
    if T.dim != R.dim:
        raise DimensionMismatchError(f"map of dim {T.dim} on set of dim {R.dim}")
    idx = R.indices_of(T(R.vectors))
    return bool(np.all(idx >= 0) and len(set(idx.tolist())) == len(R))


def maps_semi_star_into(T, S):
    """``T S`` contained in the parent set; for a semi-star this already forces ``T R = R``."""
    return bool(np.all(S.parent.indices_of(T(S.vectors)) >= 0))


def image_semi_star(T, S):
    """``T S`` as a semi-star of the parent (``T`` must stabilize the parent)."""
    R = S.parent
    idx = R.indices_of(T(S.vectors))
    if np.any(idx < 0):
        raise ValueError("map does not send the semi-star into the set")
    return SemiStar(R, tuple(sorted(int(i) for i in idx)), T(S.direction))


def _as_points(S):
    if isinstance(S, (SemiStar, Flat)):
        return S.vectors, S.parent.tol
    if isinstance(S, VectorSet):
        return S.vectors, S.tol
    return np.atleast_2d(np.asarray(S, dtype=float)), None


def _orthonormal_complement(q, d):
    """Rows completing orthonormal rows ``q`` to a basis; Gram-Schmidt on e_1..e_d."""
    basis = list(q)
    for i in range(d):
        if len(basis) == d:
            break
        v = np.zeros(d)
        v[i] = 1.0
        for b in basis:
            v = v - (b @ v) * b
        n = np.linalg.norm(v)
        if n > 1e-6:
            basis.append(v / n)
    return np.array(basis[len(q):]).reshape(-1, d)


class CongruenceMatcher:
    """Finds orthogonal maps from a fixed point set onto others.

    Gram-matrix matching: candidate images are pruned by norm and by the
    sorted row of inner products; a bijection is only searched on a basis of
    the source, the map is then solved and verified on every point.
    """

    def __init__(self, S, tol=None):
        A, tol_a = _as_points(S)
        self.tol = tol or tol_a or DEFAULT_TOL
        self.points = A
        n, d = A.shape
        self.gram = A @ A.T
        self.rows = np.sort(self.gram, axis=1)
        self.norms2 = np.diag(self.gram)
        self.sorted_norms2 = np.sort(self.norms2)
        self.sorted_gram = np.sort(self.gram, axis=None)

        # matching order: (norm, sorted row), ties by coordinates
        keys = np.column_stack([np.round(self.norms2, 9)[:, None], np.round(self.rows, 9), np.round(A, 9)])
        order = np.lexsort(keys.T[::-1])
        rank = span_basis(A, self.tol.eps_abs).shape[0]
        basis = []
        for i in order:
            if len(basis) == rank:
                break
            if np.linalg.matrix_rank(A[basis + [int(i)]], tol=self.tol.bound(1.0) * 1e3) == len(basis) + 1:
                basis.append(int(i))
        self.basis = basis
        ab = A[basis]
        self._pinv_t = np.linalg.pinv(ab).T
        self._complement = _orthonormal_complement(span_basis(ab, self.tol.eps_abs), d)

    def match(self, S2):
        """Orthogonal map ``T`` with ``T S = S2`` as sets, or None."""
        B, _ = _as_points(S2)
        A = self.points
        if A.shape != B.shape:
            return None
        n, d = A.shape
        ga, gb = self.gram, B @ B.T
        scale = max(np.abs(ga).max(), np.abs(gb).max(), 1.0)
        eps = self.tol.bound(scale) * 10
        nb = np.diag(gb)
        # sorting scalars is stable under perturbation, so these compare robustly
        if not np.all(np.abs(self.sorted_norms2 - np.sort(nb)) <= eps):
            return None
        if not np.all(np.abs(self.sorted_gram - np.sort(gb, axis=None)) <= eps):
            return None
        basis = self.basis
        k = len(basis)
        if span_basis(B, self.tol.eps_abs).shape[0] != k:
            return None
        rows_b = np.sort(gb, axis=1)
        na, rows_a = self.norms2, self.rows
        candidates = [
            np.flatnonzero((np.abs(nb - na[i]) <= eps) & np.all(np.abs(rows_b - rows_a[i]) <= eps, axis=1))
            for i in basis
        ]
        tree = cKDTree(B)

        def solve(images):
            cb = B[images]
            qb = span_basis(cb, self.tol.eps_abs)
            m = cb.T @ self._pinv_t + _orthonormal_complement(qb, d).T @ self._complement
            if not np.allclose(m.T @ m, np.eye(d), atol=1e-7):
                return None
            dist, idx = tree.query(A @ m.T)
            if np.all(dist <= eps) and len(np.unique(idx)) == n:
                return OrthogonalMap(m)
            return None

        assigned = []

        def search(pos):
            if pos == k:
                return solve(assigned)
            i = basis[pos]
            for j in candidates[pos]:
                j = int(j)
                if j in assigned:
                    continue
                if all(abs(gb[j, assigned[t]] - ga[i, basis[t]]) <= eps for t in range(pos)):
                    assigned.append(j)
                    found = search(pos + 1)
                    assigned.pop()
                    if found is not None:
                        return found
            return None

        return search(0)


def are_congruent(S, S2, tol=None):
    """Orthogonal map sending the point set ``S`` onto ``S2``, or None."""
    return CongruenceMatcher(S, tol).match(S2)


def unique_points(points, tol=None):
    """Drop points within tolerance of an earlier one; order of first occurrence kept."""
    tol = tol or DEFAULT_TOL
    points = np.atleast_2d(np.asarray(points, dtype=float))
    scale = max(np.abs(points).max(initial=0.0), 1.0)
    pairs = cKDTree(points).query_pairs(tol.bound(scale) * 10, output_type="ndarray")
    drop = np.zeros(len(points), dtype=bool)
    if len(pairs):
        drop[pairs.max(axis=1)] = True
    return points[~drop]
