"""Zonotopes given by their generator star: vertices, faces, projections, meshes."""

import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._arrangement import enumerate_chambers, generic_direction, span_basis
from .errors import DegenerateError, DimensionMismatchError
from .vectorset import (
    DEFAULT_MAX_CHAMBERS,
    Flat,
    VectorSet,
    canonicalize,
    chamber_signs,
    flats,
    semi_stars,
    span_closure,
    unique_points,
)


class Zonotope:
    """``Zon(R)`` for a reduced centrally symmetric generator set ``R``."""

    def __init__(self, gens, max_chambers=DEFAULT_MAX_CHAMBERS):
        if not isinstance(gens, VectorSet):
            gens = canonicalize(gens)
        self.gens = gens
        self.max_chambers = max_chambers
        self._semi_stars = None
        self._signs = None
        self._vertices = None

    def __repr__(self):
        return f"Zonotope(dim={self.dim}, generators={len(self.gens)})"

    @property
    def dim(self):
        return self.gens.dim

    @property
    def tol(self):
        return self.gens.tol

    def semi_stars(self):
        if self._semi_stars is None:
            self._semi_stars = semi_stars(self.gens, self.max_chambers)
        return self._semi_stars

    def sign_matrix(self):
        """(N, n/2) semi-star sign matrix; cheaper than materializing SemiStar objects."""
        if self._signs is None:
            if self._semi_stars is not None:
                self._signs = np.array([s.signs for s in self._semi_stars])
            else:
                self._signs, _ = chamber_signs(self.gens, self.max_chambers)
        return self._signs

    def vertices(self):
        if self._vertices is None:
            self._vertices = vertices(self)
        return self._vertices


def vertices(Z):
    """Vertices ``sum(S)`` over all semi-stars, ordered like the semi-stars."""
    if Z._vertices is not None:
        return Z._vertices
    verts = Z.sign_matrix() @ Z.gens.representatives
    _assert_distinct(verts, Z.tol)
    return verts


def _assert_distinct(points, tol):
    from scipy.spatial import cKDTree

    scale = max(np.abs(points).max(initial=0.0), 1.0)
    pairs = cKDTree(points).query_pairs(tol.bound(scale) * 10)
    if pairs:
        raise ArithmeticError("two semi-stars produced the same vertex")


@dataclass(frozen=True)
class FaceDescriptor:
    r_plus: tuple
    r_zero: Flat
    translate: np.ndarray = field(repr=False)
    face_dim: int
    direction: np.ndarray = field(repr=False)

    @property
    def center(self):
        # Zon(R0) is centred at the origin, so the face is centred at the translate
        return self.translate

    def vertices(self):
        """Vertices of the face: translate + vertices of Zon(r_zero)."""
        if self.face_dim == 0:
            return self.translate[None, :]
        sub = self.r_zero.as_vectorset()
        signs, _ = chamber_signs(sub)
        return self.translate + signs @ sub.representatives

    def polygon(self):
        """Vertices of a 2-face in cyclic order, counter-clockwise seen from ``direction``."""
        if self.face_dim != 2:
            raise ValueError("polygon() needs a 2-face")
        verts = self.vertices()
        plane = span_basis(self.r_zero.vectors, 1e-9)
        e1, e2 = plane
        d = len(e1)
        if d == 3 and np.dot(np.cross(e1, e2), self.direction) < 0:
            e2 = -e2
        elif d == 2 and e1[0] * e2[1] - e1[1] * e2[0] < 0:
            e2 = -e2
        rel = verts - self.translate
        ang = np.arctan2(rel @ e2, rel @ e1)
        return verts[np.argsort(ang, kind="stable")]


def face_in_direction(Z, c):
    """The face of ``Z`` maximizing ``<., c>``."""
    R = Z.gens
    c = np.asarray(c, dtype=float)
    if c.shape != (R.dim,):
        raise DimensionMismatchError("direction has wrong dimension")
    cn = np.linalg.norm(c)
    if cn <= R.tol.eps_abs:
        raise ValueError("direction must be nonzero")
    dots = R.vectors @ c
    bound = R.tol.bound(1.0) * R.norms * cn
    plus = tuple(int(i) for i in np.flatnonzero(dots > bound))
    zero = [int(i) for i in np.flatnonzero(np.abs(dots) <= bound)]
    members, rank = span_closure(R, zero)
    if members != frozenset(zero):
        raise ArithmeticError("zero set of a direction is not a flat")
    translate = R.vectors[list(plus)].sum(axis=0) if plus else np.zeros(R.dim)
    return FaceDescriptor(plus, Flat(R, members, rank), translate, rank, c)


def faces_from_flats(Z, k, all_translates=False):
    """Faces whose generator set is a rank-``k`` flat.

    By default one representative face per flat; with ``all_translates`` every
    face, i.e. one per chamber of the complement projected onto the flat's
    orthogonal complement.
    """
    R = Z.gens
    if k > R.rank:
        raise ValueError("k exceeds the rank of the generators")
    out = []
    for F in flats(R, k):
        if F.rank != k:
            continue
        out.extend(_faces_of_flat(Z, F, all_translates))
    return out


def _faces_of_flat(Z, F, all_translates):
    R = Z.gens
    if len(F) == len(R):
        c = np.zeros(R.dim)
        return [FaceDescriptor((), F, np.zeros(R.dim), F.rank, c)]
    q = span_basis(F.vectors, R.tol.eps_abs) if len(F) else np.zeros((0, R.dim))
    rest = [i for i in range(0, len(R), 2) if i not in F.members]
    proj = R.vectors[rest] - (R.vectors[rest] @ q.T) @ q
    if all_translates:
        ch = enumerate_chambers(proj, R.tol.eps_abs, Z.max_chambers)
        order = np.lexsort((ch.signs < 0).T[::-1])
        dirs = ch.points[order]
    else:
        dirs = [generic_direction(proj, R.tol.eps_abs)]
    faces = []
    for c in dirs:
        face = face_in_direction(Z, c)
        if face.r_zero.members != F.members:
            raise ArithmeticError("face direction hit an extra hyperplane")
        faces.append(face)
    return faces


@dataclass(frozen=True)
class Inscribed:
    inscribed: bool
    radius: float
    spread: float

    def __bool__(self):
        return self.inscribed


def semi_star_norms(Z):
    return np.linalg.norm(Z.sign_matrix() @ Z.gens.representatives, axis=1)


def is_inscribed(Z):
    """Whether all vertices lie on one sphere about the origin.

    Central symmetry pins any circumcentre to the origin, so the vertex norms
    (the semi-star norms) decide.
    """
    norms = semi_star_norms(Z)
    lo, hi = float(norms.min()), float(norms.max())
    spread = hi - lo
    return Inscribed(bool(spread <= Z.tol.bound(hi) * 10), float(norms.mean()), spread)


def is_homogeneous(Z):
    """Equal edge lengths and inscribed."""
    n = Z.gens.norms
    if not n.max() - n.min() <= Z.tol.bound(n.max()) * 10:
        return False
    return bool(is_inscribed(Z))


def normalize(Z):
    R = Z.gens
    return Zonotope(VectorSet(R.representatives / R.norms[0::2, None], R.tol), Z.max_chambers)


def hyperplane_basis(r):
    """Orthonormal rows spanning r-perp.

    Gram-Schmidt of r followed by the standard basis vectors, skipping the axis
    with the largest |r_i| (lowest index on ties).
    """
    r = np.asarray(r, dtype=float)
    d = len(r)
    pivot = int(np.argmax(np.abs(r)))
    basis = [r / np.linalg.norm(r)]
    for i in range(d):
        if i == pivot:
            continue
        v = np.zeros(d)
        v[i] = 1.0
        for b in basis:
            v = v - (b @ v) * b
        basis.append(v / np.linalg.norm(v))
    return np.array(basis[1:])


def project_along(Z, r):
    """Orthogonal projection of ``Z`` onto r-perp, in the basis of :func:`hyperplane_basis`."""
    R = Z.gens
    r = np.asarray(r, dtype=float)
    if r.shape != (R.dim,):
        raise DimensionMismatchError("projection direction has wrong dimension")
    if np.linalg.norm(r) <= R.tol.eps_abs:
        raise ValueError("projection direction must be nonzero")
    units = R.representatives / R.norms[0::2, None]
    ru = r / np.linalg.norm(r)
    chord = np.minimum(np.linalg.norm(units - ru, axis=1), np.linalg.norm(units + ru, axis=1))
    if chord.min() > 10 * R.tol.bound(1.0):
        warnings.warn("projection direction is not parallel to a generator", stacklevel=2)
    basis = hyperplane_basis(r)
    # project the full symmetric set so parallel images add up on both sides of each line
    images = R.vectors @ basis.T
    keep = np.linalg.norm(images, axis=1) > R.tol.bound(max(R.norms.max(), 1.0)) * 10
    if not np.any(keep):
        raise DegenerateError("projection kills every generator")
    return Zonotope(canonicalize(images[keep], R.tol), Z.max_chambers)


def edge_generators(Z):
    """Generators recovered as half the difference of adjacent vertices.

    Two vertices are adjacent when their semi-stars differ in exactly one +/- pair.
    """
    signs = Z.sign_matrix()
    verts = vertices(Z)
    index = {row.tobytes(): i for i, row in enumerate(signs)}
    found = []
    for i, row in enumerate(signs):
        for p in range(signs.shape[1]):
            if row[p] < 0:
                continue
            flipped = row.copy()
            flipped[p] = -1
            j = index.get(flipped.tobytes())
            if j is not None:
                found.append((verts[i] - verts[j]) / 2)
    # every edge direction shows up once per parallel edge; keep one copy before merging lines
    return canonicalize(unique_points(found, Z.tol), Z.tol)


def export_mesh(Z, path):
    """Write ``Z`` (d = 2 or 3) as an ASCII OBJ file; returns (n_vertices, n_faces)."""
    if Z.dim not in (2, 3):
        raise DimensionMismatchError("mesh export supports d = 2 or 3 only")
    text, nv, nf = mesh_obj(Z)
    Path(path).write_text(text)
    return nv, nf


def mesh_obj(Z):
    verts = vertices(Z)
    order = np.lexsort(np.round(verts, 9).T[::-1])
    verts = verts[order]
    lines = [f"# zonotope with {len(Z.gens) // 2} generator pairs"]
    pad = [0.0] if Z.dim == 2 else []
    for v in verts:
        lines.append("v " + " ".join(_fmt(x) for x in list(v) + pad))
    from scipy.spatial import cKDTree

    tree = cKDTree(verts)
    if Z.dim == 2:
        face = FaceDescriptor((), Flat(Z.gens, frozenset(range(len(Z.gens))), 2),
                              np.zeros(2), 2, np.zeros(2))
        polys = [face.polygon()]
    else:
        polys = [f.polygon() for f in faces_from_flats(Z, 2, all_translates=True)]
    for poly in polys:
        _, idx = tree.query(poly)
        lines.append("f " + " ".join(str(int(i) + 1) for i in idx))
    return "\n".join(lines) + "\n", len(verts), len(polys)


def _fmt(x):
    x = 0.0 if abs(x) < 1e-12 else float(x)
    return f"{x:.12g}"
