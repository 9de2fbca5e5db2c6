"""Root systems: reflection closure test, Weyl groups, decomposition, Coxeter types, catalog."""

import itertools
import math
import re
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ._arrangement import generic_direction, span_basis
from .cones import in_cone
from .errors import UnmatchedDiagramError
from .vectorset import (
    DEFAULT_TOL,
    Flat,
    OrthogonalMap,
    VectorSet,
    canonicalize,
    semi_star_from_direction,
    unique_points,
)

DEFAULT_MAX_GROUP = 10**5
PHI = (1 + math.sqrt(5)) / 2


@dataclass(frozen=True)
class Reflection:
    root: np.ndarray
    map: OrthogonalMap


def reflection_matrix(r):
    r = np.asarray(r, dtype=float)
    rr = float(r @ r)
    if rr == 0.0:
        raise ValueError("cannot reflect in the zero vector")
    return np.eye(len(r)) - 2.0 * np.outer(r, r) / rr


def reflection(r):
    """Reflection in the hyperplane r-perp."""
    r = np.asarray(r, dtype=float)
    return Reflection(r, OrthogonalMap(reflection_matrix(r)))


def _reflected(R):
    """``images[p, i] = T_{r_p} R[i]`` for every pair representative ``r_p``."""
    reps = R.representatives
    coef = 2.0 * (R.vectors @ reps.T) / (R.norms[0::2] ** 2)[None, :]
    return R.vectors[None, :, :] - coef.T[:, :, None] * reps[:, None, :]


def reflection_permutations(R):
    """(n/2, n) index images of every reflection ``T_r``; -1 where ``T_r s`` leaves R."""
    images = _reflected(R)
    h, n, d = images.shape
    return R.indices_of(images.reshape(-1, d)).reshape(h, n)


@dataclass
class WeylGroup:
    generators: list
    elements: np.ndarray = field(repr=False)  # (order, d, d)
    truncated: bool
    permutations: np.ndarray = field(default=None, repr=False)

    @property
    def order(self):
        return len(self.elements)

    def maps(self):
        return [OrthogonalMap(m) for m in self.elements]


@dataclass(frozen=True)
class CoxeterType:
    family: str  # A, B, D, I2, H, F, E, I1
    rank: int
    orbit_lengths: tuple = (1.0,)
    p: int = None  # dihedral parameter for I2

    @property
    def label(self):
        if self.family == "I1":
            return "I1"
        if self.family == "I2":
            return f"I2({self.p})"
        if self.family in ("A", "B", "D"):
            return f"{self.family}({self.rank})"
        return f"{self.family}{self.rank}"

    def same_type(self, other):
        return (self.family, self.rank, self.p) == (other.family, other.rank, other.p)

    def __str__(self):
        return self.label


@dataclass
class RootSystemReport:
    is_root_system: bool
    violating_pair: tuple = None
    components: list = field(default_factory=list)  # [(Flat, CoxeterType or None)]
    weyl: WeylGroup = None

    def __bool__(self):
        return self.is_root_system


def is_root_system(R):
    """Whether ``T_r R = R`` for every ``r`` in ``R``; else the first violating pair."""
    perms = reflection_permutations(R)
    bad = np.argwhere(perms < 0)
    if len(bad):
        p, s = bad[0]
        return RootSystemReport(False, (2 * int(p), int(s)))
    return RootSystemReport(True)


def _basis_indices(R):
    chosen = []
    for i in range(0, len(R), 2):
        if np.linalg.matrix_rank(R.vectors[chosen + [i]], tol=1e-7) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == R.rank:
                break
    return chosen


def weyl_closure(R, cap=DEFAULT_MAX_GROUP):
    """Group generated by all ``T_r``, by breadth-first closure.

    For a root system each element is keyed by the permutation it induces on
    ``R`` (exact); otherwise by its matrix entries rounded to 12 digits.
    """
    gens = [reflection(r) for r in R.representatives]
    perms = reflection_permutations(R)
    if np.all(perms >= 0):
        return _closure_by_permutation(R, gens, perms, cap)
    return _closure_by_matrix(R, gens, cap)


def _closure_by_permutation(R, gens, perms, cap):
    n = len(R)
    ident = np.arange(n, dtype=np.int32)
    perms = perms.astype(np.int32)
    seen = {ident.tobytes()}
    elements = [ident]
    frontier = ident[None, :]
    truncated = False
    while len(frontier) and not truncated:
        cand = perms[:, frontier].reshape(-1, n)
        fresh = []
        for row in cand:
            key = row.tobytes()
            if key not in seen:
                if len(elements) >= cap:
                    truncated = True
                    break
                seen.add(key)
                elements.append(row)
                fresh.append(row)
        frontier = np.array(fresh, dtype=np.int32).reshape(-1, n)
    elems = np.array(elements)
    basis = _basis_indices(R)
    a = R.vectors[basis]
    q = span_basis(a, R.tol.eps_abs)
    fix = np.eye(R.dim) - q.T @ q
    imgs = R.vectors[elems[:, basis]]
    mats = np.einsum("okd,ke->ode", imgs, np.linalg.pinv(a.T)) + fix[None]
    return WeylGroup(gens, mats, truncated, elems)


def _closure_by_matrix(R, gens, cap):
    d = R.dim
    g = np.array([t.map.matrix for t in gens])

    def key(m):
        return (np.round(m, 12) + 0.0).tobytes()  # + 0.0 turns -0.0 into 0.0

    ident = np.eye(d)
    seen = {key(ident)}
    elements = [ident]
    frontier = ident[None]
    truncated = False
    while len(frontier) and not truncated:
        cand = np.einsum("gij,mjk->gmik", g, frontier).reshape(-1, d, d)
        cand = np.where(np.abs(cand) < 1e-13, 0.0, cand)
        fresh = []
        for m in cand:
            k = key(m)
            if k not in seen:
                if len(elements) >= cap:
                    truncated = True
                    break
                seen.add(k)
                elements.append(m)
                fresh.append(m)
        frontier = np.array(fresh).reshape(-1, d, d)
    return WeylGroup(gens, np.array(elements), truncated)


def orbit(G, v):
    """Distinct images ``T v`` over the group."""
    if G.truncated:
        raise ValueError("orbit of a truncated group is incomplete")
    v = np.asarray(v, dtype=float)
    return unique_points(G.elements @ v)


def decompose(R):
    """Irreducible components: connected classes of the non-orthogonality graph."""
    reps = R.representatives
    gram = reps @ reps.T
    scale = np.outer(R.norms[0::2], R.norms[0::2])
    adj = np.abs(gram) > R.tol.bound(1.0) * scale
    ncomp, labels = connected_components(csr_matrix(adj), directed=False)
    comps = {}
    for p, lab in enumerate(labels):
        comps.setdefault(lab, []).extend([2 * p, 2 * p + 1])
    out = []
    for members in sorted(comps.values()):
        rank = span_basis(R.vectors[members], R.tol.eps_abs).shape[0]
        out.append(Flat(R, frozenset(members), rank))
    return out


def simple_roots(R, c=None):
    """Extreme rays of the cone over the positive system ``{r : <r, c> > 0}``."""
    reps = R.representatives
    if c is None:
        c = generic_direction(reps @ R.span.T, R.tol.eps_abs) @ R.span
    c = np.asarray(c, dtype=float)
    units = reps / R.norms[0::2, None]
    base = c
    for attempt in range(16):
        if np.abs(units @ c).min() > 1e-9 * np.linalg.norm(c):
            break
        nudge = generic_direction(reps @ R.span.T, R.tol.eps_abs) @ R.span
        c = base + 10.0 ** (-3 - attempt) * np.linalg.norm(base) * nudge
    else:
        raise ValueError("could not make the direction generic")
    positive = semi_star_from_direction(R, c).vectors
    simple = []
    for i, p in enumerate(positive):
        others = np.delete(positive, i, axis=0)
        if not in_cone(p, others, R.tol.eps_abs):
            simple.append(p)
    return np.array(simple)


def coxeter_matrix(simple, tol=None, max_label=12):
    """Coxeter matrix from pairwise angles ``pi - pi/m`` of simple roots."""
    tol = tol or DEFAULT_TOL
    simple = np.atleast_2d(simple)
    k = len(simple)
    units = simple / np.linalg.norm(simple, axis=1)[:, None]
    cos = units @ units.T
    m = np.ones((k, k), dtype=int)
    thresh = 10 * tol.eps_rel
    for i, j in itertools.combinations(range(k), 2):
        x = cos[i, j]
        if abs(x) < thresh:
            label = 2
        else:
            label = next((q for q in range(3, max_label + 1) if abs(x + math.cos(math.pi / q)) < thresh), None)
            if label is None:
                raise UnmatchedDiagramError(f"angle with cosine {x:.12f} is not pi - pi/m for m <= {max_label}")
        m[i, j] = m[j, i] = label
    return m


_ROOT_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "H": lambda n: {3: 30, 4: 120}[n],
}


def diagram_type(m):
    """(family, rank, p) of a connected Coxeter matrix."""
    k = len(m)
    if k == 1:
        return "I1", 1, None
    if k == 2:
        if m[0, 1] < 3:
            raise UnmatchedDiagramError("rank-2 diagram is disconnected")
        return "I2", 2, int(m[0, 1])
    edges = {(i, j): int(m[i, j]) for i, j in itertools.combinations(range(k), 2) if m[i, j] >= 3}
    deg = [sum(1 for e in edges if v in e) for v in range(k)]
    if len(edges) != k - 1 or max(deg) > 3:
        raise UnmatchedDiagramError("diagram is not a tree of a finite type")
    labels = sorted(edges.values())
    branch = [v for v in range(k) if deg[v] == 3]
    if branch:
        if labels != [3] * (k - 1) or len(branch) != 1:
            raise UnmatchedDiagramError("branched diagram with labels other than 3")
        arms = sorted(_arm_length(edges, branch[0], nb) for nb in _neighbours(edges, branch[0]))
        if arms[:2] == [1, 1]:
            return "D", k, None
        if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
            return "E", k, None
        raise UnmatchedDiagramError(f"branched diagram with arms {arms}")
    # path
    ends = [v for v in range(k) if deg[v] == 1]
    path = [ends[0]]
    while len(path) < k:
        path.append(next(n for n in _neighbours(edges, path[-1]) if n not in path))
    seq = [edges[tuple(sorted((path[i], path[i + 1])))] for i in range(k - 1)]
    if seq[-1] != 3 and seq[0] == 3:
        seq = seq[::-1]
    if all(x == 3 for x in seq):
        return "A", k, None
    if seq[0] == 4 and all(x == 3 for x in seq[1:]):
        return "B", k, None
    if k == 4 and seq == [3, 4, 3]:
        return "F", 4, None
    if seq[0] == 5 and all(x == 3 for x in seq[1:]) and k in (3, 4):
        return "H", k, None
    raise UnmatchedDiagramError(f"path diagram with labels {seq}")


def _neighbours(edges, v):
    return [b if a == v else a for (a, b) in edges if v in (a, b)]


def _arm_length(edges, center, start):
    length, prev, cur = 1, center, start
    while True:
        nxt = [n for n in _neighbours(edges, cur) if n != prev]
        if not nxt:
            return length
        prev, cur = cur, nxt[0]
        length += 1


def reflection_orbits(R, perms=None):
    """Partition of the indices of ``R`` into orbits of its reflection group."""
    if perms is None:
        perms = reflection_permutations(R)
    n = len(R)
    rows = np.repeat(np.arange(n), len(perms))
    cols = perms.T.ravel()
    ok = cols >= 0
    graph = csr_matrix((np.ones(ok.sum()), (rows[ok], cols[ok])), shape=(n, n))
    _, labels = connected_components(graph, directed=False)
    groups = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)
    return sorted(groups.values())


def identify_type(R, max_label=12):
    """Coxeter type of an irreducible root system."""
    simple = simple_roots(R)
    m = coxeter_matrix(simple, R.tol, max_label)
    family, rank, p = diagram_type(m)
    if rank != R.rank:
        raise UnmatchedDiagramError(f"{len(simple)} simple roots for a rank-{R.rank} set")
    expected = 2 * p if family == "I2" else 2 if family == "I1" else _ROOT_COUNTS[family](rank)
    if expected != len(R):
        raise UnmatchedDiagramError(f"diagram {family}{rank} but {len(R)} vectors")
    orbits = reflection_orbits(R)
    lengths = tuple(sorted(float(R.norms[o[0]]) for o in orbits))
    return CoxeterType(family, rank, lengths, p)


def analyze(R, with_types=True, weyl_cap=None):
    """Root-system report with typed irreducible components (and the Weyl group on request)."""
    report = is_root_system(R)
    if not report.is_root_system:
        return report
    comps = decompose(R)
    report.components = [(F, identify_type(F.as_vectorset()) if with_types else None) for F in comps]
    if weyl_cap is not None:
        report.weyl = weyl_closure(R, weyl_cap)
    return report


# ---------------------------------------------------------------- catalog

_LABEL = re.compile(r"^\s*(I2|I1|[ABDEFH])\s*[:(]?\s*(\d*)\s*\)?\s*(?::\s*orbit\s*=\s*([0-9eE.+\-, ]+))?\s*$")


def parse_label(label):
    """``"B:3"``, ``"B(3)"``, ``"I2:6:orbit=1,2"``, ``"H3"`` -> (family, n, orbit)."""
    if isinstance(label, CoxeterType):
        return label.family, label.p if label.family == "I2" else label.rank, None
    m = _LABEL.match(label)
    if not m:
        raise ValueError(f"cannot parse catalog label {label!r}")
    family, n, orbit = m.groups()
    if family == "I1":
        n = n or "1"
    if not n:
        raise ValueError(f"missing rank in label {label!r}")
    orbit = tuple(float(x) for x in orbit.split(",")) if orbit else None
    return family, int(n), orbit


def _pm_pairs(d):
    out = []
    for i, j in itertools.combinations(range(d), 2):
        for sj in (1, -1):
            v = np.zeros(d)
            v[i], v[j] = 1, sj
            out.append(v)
    return out


def _unit(d, i):
    v = np.zeros(d)
    v[i] = 1.0
    return v


def _even_permutations(k):
    return [p for p in itertools.permutations(range(k))
            if sum(1 for a, b in itertools.combinations(p, 2) if a > b) % 2 == 0]


def _signed(v):
    nz = [i for i, x in enumerate(v) if x != 0]
    out = []
    for signs in itertools.product((1, -1), repeat=len(nz)):
        w = np.array(v, dtype=float)
        for i, s in zip(nz, signs):
            w[i] *= s
        out.append(w)
    return out


def a_embedding(d):
    """Rows: orthonormal basis of the sum-zero hyperplane of R^(d+1)."""
    rows = []
    for k in range(1, d + 1):
        v = np.zeros(d + 1)
        v[:k] = 1.0
        v[k] = -k
        rows.append(v / math.sqrt(k * (k + 1)))
    return np.array(rows)


def _e8_roots():
    roots = []
    for v in _pm_pairs(8):
        roots.append(v)
    for s in itertools.product((0.5, -0.5), repeat=8):
        if sum(1 for x in s if x < 0) % 2 == 0:
            roots.append(np.array(s))
    return np.array(roots)


def _scale_orbits(vectors, first_mask, orbit, default):
    orbit = orbit or default
    if len(orbit) == 1:
        orbit = (orbit[0], orbit[0] * default[1] / default[0])
    a, b = orbit
    norms = np.linalg.norm(vectors, axis=1)[:, None]
    return np.where(first_mask[:, None], vectors / norms * a, vectors / norms * b)


def _scale_single(vectors, orbit):
    if not orbit:
        return vectors
    if len(orbit) != 1:
        raise ValueError("this family has a single orbit; give one length")
    return vectors / np.linalg.norm(vectors, axis=1)[:, None] * orbit[0]


def catalog(label, orbit=None, tol=None):
    """Root system of an irreducible type with standard coordinates.

    ``orbit`` gives vector lengths: one value for single-orbit families, two
    values (first orbit, second orbit) for I2(even), B and F4.  Defaults keep
    the natural lengths (B and F4 short 1, long sqrt 2; I2 all 1).
    """
    family, n, parsed_orbit = parse_label(label)
    orbit = orbit if orbit is not None else parsed_orbit
    tol = tol or DEFAULT_TOL
    if family == "I1":
        if n != 1:
            raise ValueError("I1 has rank 1")
        vecs = _scale_single(np.array([[1.0]]), orbit)
    elif family == "I2":
        if n < 3:
            raise ValueError("I2(p) needs p >= 3")
        ang = np.arange(n) * math.pi / n
        vecs = np.column_stack([np.cos(ang), np.sin(ang)])
        if n % 2 == 0:
            vecs = _scale_orbits(vecs, np.arange(n) % 2 == 0, orbit, (1.0, 1.0))
        else:
            vecs = _scale_single(vecs, orbit)
    elif family == "A":
        if n < 1:
            raise ValueError("A(n) needs n >= 1")
        raw = []
        for i, j in itertools.combinations(range(n + 1), 2):
            v = np.zeros(n + 1)
            v[i], v[j] = 1, -1
            raw.append(v)
        vecs = _scale_single(np.array(raw) @ a_embedding(n).T, orbit)
    elif family == "B":
        if n < 2:
            raise ValueError("B(n) needs n >= 2")
        vecs = np.array([_unit(n, i) for i in range(n)] + _pm_pairs(n))
        vecs = _scale_orbits(vecs, np.arange(len(vecs)) < n, orbit, (1.0, math.sqrt(2)))
    elif family == "D":
        if n < 3:
            raise ValueError("D(n) needs n >= 3")
        vecs = _scale_single(np.array(_pm_pairs(n)), orbit)
    elif family == "F":
        if n != 4:
            raise ValueError("F exists only in rank 4")
        short = [_unit(4, i) for i in range(4)]
        short += [np.array((0.5,) + s) for s in itertools.product((0.5, -0.5), repeat=3)]
        vecs = np.array(short + _pm_pairs(4))
        vecs = _scale_orbits(vecs, np.arange(len(vecs)) < len(short), orbit, (1.0, math.sqrt(2)))
    elif family == "H":
        if n == 3:
            raw = [_unit(3, i) for i in range(3)]
            for p in _even_permutations(3):
                raw += _signed(np.array((PHI, 1.0, 1 / PHI))[list(p)] / 2)
        elif n == 4:
            raw = [_unit(4, i) for i in range(4)]
            raw += [np.array(s) for s in itertools.product((0.5, -0.5), repeat=4)]
            for p in _even_permutations(4):
                raw += _signed(np.array((PHI, 1.0, 1 / PHI, 0.0))[list(p)] / 2)
        else:
            raise ValueError("H exists only in ranks 3 and 4")
        vecs = _scale_single(np.array(raw), orbit)
    elif family == "E":
        e8 = _e8_roots()
        if n == 8:
            vecs = e8
        elif n == 7:
            keep = np.abs(e8[:, 6] + e8[:, 7]) < 1e-12
            r = e8[keep]
            vecs = np.column_stack([r[:, :6], (r[:, 6] - r[:, 7]) / math.sqrt(2)])
        elif n == 6:
            keep = (np.abs(e8[:, 6] + e8[:, 7]) < 1e-12) & (np.abs(e8[:, 5] - e8[:, 6]) < 1e-12)
            r = e8[keep]
            vecs = np.column_stack([r[:, :5], (r[:, 5] + r[:, 6] - r[:, 7]) / math.sqrt(3)])
        else:
            raise ValueError("E exists only in ranks 6, 7, 8")
        vecs = _scale_single(vecs, orbit)
    else:  # pragma: no cover - regex admits nothing else
        raise ValueError(f"unknown family {family}")
    return canonicalize(vecs, tol)


def catalog_labels(dim):
    """Irreducible catalog labels of rank ``dim`` (one label per family, A3 and D3 both kept)."""
    labels = []
    if dim == 1:
        return ["I1"]
    if dim == 2:
        return [f"I2:{p}" for p in range(3, 13)]
    labels += [f"A:{dim}", f"B:{dim}", f"D:{dim}"]
    if dim in (3, 4):
        labels.append(f"H:{dim}")
    if dim == 4:
        labels.append("F:4")
    if dim in (6, 7, 8):
        labels.append(f"E:{dim}")
    return labels
