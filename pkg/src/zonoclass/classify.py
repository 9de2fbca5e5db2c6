"""Vertex-transitivity, homogeneity and root-system characterizations of zonotopes."""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceededError, ConsistencyError, PreconditionError
from .rootsystem import (
    DEFAULT_MAX_GROUP,
    CoxeterType,
    RootSystemReport,
    analyze,
    is_root_system,
)
from .vectorset import (
    DEFAULT_MAX_CHAMBERS,
    DEFAULT_TOL,
    CongruenceMatcher,
    VectorSet,
    canonicalize,
    chamber_signs,
    flats,
    semi_stars,
)
from .zonotope import Zonotope, is_inscribed

WITNESS_MAP_LIMIT = 1024

_GROUP_ORDERS = {
    "I1": lambda t: 2,
    "I2": lambda t: 2 * t.p,
    "A": lambda t: math.factorial(t.rank + 1),
    "B": lambda t: 2**t.rank * math.factorial(t.rank),
    "D": lambda t: 2 ** (t.rank - 1) * math.factorial(t.rank),
    "E": lambda t: {6: 51840, 7: 2903040, 8: 696729600}[t.rank],
    "F": lambda t: 1152,
    "H": lambda t: {3: 120, 4: 14400}[t.rank],
}


def group_order(types):
    """Order of the reflection group with the given irreducible components."""
    return math.prod(_GROUP_ORDERS[t.family](t) for t in types)


@dataclass
class Transitivity:
    vertex_transitive: bool
    maps: list = None  # maps[i] sends the base semi-star onto semi-star i
    witness: tuple = None  # (0, i): semi-stars admitting no congruence
    semi_star_count: int = 0
    min_margin: float = None

    def __bool__(self):
        return self.vertex_transitive


def is_vertex_transitive(R, max_chambers=DEFAULT_MAX_CHAMBERS):
    """Decide vertex-transitivity of ``Zon(R)`` by semi-star congruence.

    All semi-stars are matched against the first one; congruence between any
    two then follows by composing through it.
    """
    stars, margin = semi_stars(R, max_chambers, with_margin=True)
    matcher = CongruenceMatcher(stars[0])
    maps = []
    for i, S in enumerate(stars):
        T = matcher.match(S)
        if T is None:
            return Transitivity(False, None, (0, i), len(stars), margin)
        maps.append(T)
    return Transitivity(True, maps, None, len(stars), margin)


def failing_two_flat(R):
    """First rank-2 flat of ``R`` that is not a root system, or None."""
    for F in flats(R, 2):
        if F.rank == 2 and not is_root_system(F.as_vectorset()):
            return F
    return None


def check_two_face_criterion(R, cross_check=True):
    """Whether every rank-2 flat of ``R`` is a 2-D root system (all 2-faces vertex-transitive)."""
    holds = failing_two_flat(R) is None
    if cross_check and holds != is_root_system(R).is_root_system:
        raise ConsistencyError("2-face criterion disagrees with the reflection test")
    return holds


def _unit_symmetric_set(R, tol):
    if isinstance(R, VectorSet):
        vecs, tol = R.vectors, R.tol
    else:
        vecs = np.atleast_2d(np.asarray(R, dtype=float))
        tol = tol or DEFAULT_TOL
    norms = np.linalg.norm(vecs, axis=1)
    if not np.all(np.abs(norms - 1.0) <= tol.bound(1.0) * 10):
        raise PreconditionError("semi-star norm criterion needs unit vectors; normalize first")
    if isinstance(R, VectorSet):
        return R
    out = canonicalize(vecs, tol)
    if len(out) != len(vecs) or not np.all(out.indices_of(vecs) >= 0):
        raise PreconditionError("input is not centrally symmetric (or has repeated vectors)")
    return out


def semi_star_norm_criterion(R, tol=None, max_chambers=DEFAULT_MAX_CHAMBERS, cross_check=True):
    """For a centrally symmetric set of unit vectors: do all semi-stars have the same norm?

    For such sets this holds exactly for root systems; ``cross_check`` raises
    :class:`ConsistencyError` if the reflection test disagrees.
    """
    R = _unit_symmetric_set(R, tol)
    signs, _ = chamber_signs(R, max_chambers)
    norms = np.linalg.norm(signs @ R.representatives, axis=1)
    holds = bool(norms.max() - norms.min() <= R.tol.bound(norms.max()) * 10)
    if cross_check and holds != is_root_system(R).is_root_system:
        raise ConsistencyError("semi-star norm criterion disagrees with the reflection test")
    return holds


def homogeneous_vertex_pattern_Bd(d, x0=1.0, step=math.sqrt(2)):
    """Sign/permutation closure of ``(x0, x0 + step, ..., x0 + (d-1) step)``.

    With the defaults this is exactly the vertex set of the B_d zonotope with
    unit roots; ``x0 = 0`` gives the D_d pattern up to scale.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    base = [x0 + step * i for i in range(d)]
    pts = set()
    for perm in itertools.permutations(base):
        for signs in itertools.product((1, -1), repeat=d):
            pts.add(tuple(s * x if x != 0 else 0.0 for s, x in zip(signs, perm)))
    return np.array(sorted(pts))


@dataclass
class ClassificationVerdict:
    input_summary: dict
    vertex_transitive: bool
    vt_mode: str  # "computed" or "inferred"
    vt_witness: dict
    homogeneous: bool
    inscribed: dict
    root_system: RootSystemReport
    permutahedron_types: list = field(default_factory=list)
    two_face_criterion: bool = None
    equivalences_consistent: bool = True
    min_margin: float = None

    def to_dict(self):
        rs = self.root_system
        return {
            "input_summary": self.input_summary,
            "vertex_transitive": self.vertex_transitive,
            "vt_mode": self.vt_mode,
            "vt_witness": self.vt_witness,
            "homogeneous": self.homogeneous,
            "inscribed": self.inscribed,
            "root_system": {
                "is_root_system": rs.is_root_system,
                "violating_pair": list(rs.violating_pair) if rs.violating_pair else None,
                "components": [
                    {
                        "members": F.indices,
                        "rank": F.rank,
                        "type": t.label if t else None,
                        "orbit_lengths": list(t.orbit_lengths) if t else None,
                    }
                    for F, t in rs.components
                ],
            },
            "permutahedron_types": [t.label for t in self.permutahedron_types],
            "two_face_criterion": self.two_face_criterion,
            "equivalences_consistent": self.equivalences_consistent,
            "min_margin": self.min_margin,
        }


def classify(raw, tol=None, max_chambers=DEFAULT_MAX_CHAMBERS, max_group=DEFAULT_MAX_GROUP):
    """Full verdict for the zonotope generated by ``raw``.

    The reflection test runs first; the semi-star congruence test runs when
    the chamber count is within ``max_chambers``, otherwise vertex-transitivity
    is taken from the root-system answer and marked ``inferred``.
    """
    R = raw if isinstance(raw, VectorSet) else canonicalize(raw, tol)
    summary = {
        "dim": R.dim,
        "generator_count": len(R),
        "rank": R.rank,
        "spans_ambient": R.rank == R.dim,
    }
    report = analyze(R)
    types = [t for _, t in report.components]

    predicted = group_order(types) if report.is_root_system else None
    vt = None
    if predicted is None or predicted <= max_chambers:
        try:
            vt = is_vertex_transitive(R, max_chambers)
        except CapExceededError:
            vt = None

    if vt is not None:
        vertex_transitive = vt.vertex_transitive
        mode = "computed"
        if vt.vertex_transitive:
            mats = [T.matrix.tolist() for T in vt.maps] if len(vt.maps) <= WITNESS_MAP_LIMIT else None
            witness = {"kind": "congruence_maps", "count": len(vt.maps), "maps": mats}
        else:
            witness = {"kind": "non_congruent_pair", "semi_stars": list(vt.witness)}
        Z = Zonotope(R, max_chambers)
        ins = is_inscribed(Z)
        inscribed = {"value": ins.inscribed, "radius": ins.radius, "spread": ins.spread, "mode": "computed"}
        margin = vt.min_margin
    else:
        vertex_transitive = report.is_root_system
        mode = "inferred"
        witness = {"kind": "inferred_from_root_system", "count": predicted}
        # vertex-transitive polytopes are inscribed; otherwise unknown without enumeration
        inscribed = {"value": True if vertex_transitive else None, "radius": None, "spread": None,
                     "mode": "inferred"}
        margin = None

    norms = R.norms
    equal_edges = bool(norms.max() - norms.min() <= R.tol.bound(norms.max()) * 10)
    homogeneous = bool(equal_edges and inscribed["value"])

    two_face = check_two_face_criterion(R, cross_check=False) if R.rank <= 8 else None
    consistent = vertex_transitive == report.is_root_system
    if two_face is not None:
        consistent = consistent and two_face == report.is_root_system
    if homogeneous and not vertex_transitive:
        consistent = False

    return ClassificationVerdict(
        input_summary=summary,
        vertex_transitive=vertex_transitive,
        vt_mode=mode,
        vt_witness=witness,
        homogeneous=homogeneous,
        inscribed=inscribed,
        root_system=report,
        permutahedron_types=types if vertex_transitive else [],
        two_face_criterion=two_face,
        equivalences_consistent=consistent,
        min_margin=margin,
    )


def same_zonotope_shape(R1, R2):
    """Whether the normalized stars give congruent zonotopes, via one semi-star each.

    A congruence between semi-stars extends to the whole star by central
    symmetry, so one semi-star of each suffices.
    """
    from .zonotope import face_in_direction, normalize
    from ._arrangement import generic_direction

    if R1.dim != R2.dim or len(R1) != len(R2):
        return False
    stars = []
    for R in (R1, R2):
        Z = normalize(Zonotope(R))
        c = generic_direction(Z.gens.representatives, Z.tol.eps_abs)
        face = face_in_direction(Z, c)
        stars.append(Z.gens.vectors[list(face.r_plus)])
    return CongruenceMatcher(stars[0]).match(stars[1]) is not None


def homogeneous_census(dims=range(3, 9)):
    """Irreducible homogeneous zonotopes per dimension, coinciding types merged.

    Each catalog type is normalized and checked to be an irreducible root
    system (no vertex enumeration); types whose zonotopes coincide are merged.
    Returns ``{d: [[labels sharing one zonotope], ...]}``.
    """
    from .rootsystem import catalog, catalog_labels, decompose
    from .zonotope import normalize

    out = {}
    for d in dims:
        kinds = []
        for label in catalog_labels(d):
            R = normalize(Zonotope(catalog(label))).gens
            if not is_root_system(R) or len(decompose(R)) != 1:
                raise ConsistencyError(f"catalog entry {label} is not an irreducible root system")
            for group in kinds:
                if same_zonotope_shape(group[0][1], R):
                    group.append((label, R))
                    break
            else:
                kinds.append([(label, R)])
        out[d] = [[lab for lab, _ in group] for group in kinds]
    return out
