import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import angles_deg
from zonoclass import (
    CoxeterType,
    Zonotope,
    canonicalize,
    catalog,
    decompose,
    identify_type,
    is_root_system,
    orbit,
    reflection,
    simple_roots,
    stabilizes,
    vertices,
    weyl_closure,
)
from zonoclass.cones import in_cone
from zonoclass.errors import UnmatchedDiagramError
from zonoclass.rootsystem import (
    analyze,
    catalog_labels,
    coxeter_matrix,
    diagram_type,
    parse_label,
    reflection_matrix,
    reflection_orbits,
)
from zonoclass.vectorset import semi_stars

FULL_CATALOG = [lab for d in range(1, 9) for lab in catalog_labels(d)]
ROOT_COUNTS = {"A": lambda n: n * (n + 1), "B": lambda n: 2 * n * n, "D": lambda n: 2 * n * (n - 1)}


# ---------------------------------------------------------------- reflections

def test_reflection_examples():
    assert np.allclose(reflection([1, 0]).map.matrix, np.diag([-1, 1]))
    T = reflection(np.array([1, 1]) / math.sqrt(2)).map.matrix
    assert np.allclose(T, [[0, -1], [-1, 0]])
    assert np.allclose(T @ [1, 1], [-1, -1])
    with pytest.raises(ValueError):
        reflection_matrix([0, 0])


vec3 = st.lists(st.floats(-10, 10, allow_nan=False), min_size=3, max_size=3).filter(
    lambda v: np.linalg.norm(v) > 1e-3
)


@given(vec3, st.floats(0.01, 100), vec3)
def test_reflection_involution_and_scale_invariance(r, lam, x):
    r = np.array(r)
    T = reflection(r).map.matrix
    assert np.allclose(T @ T, np.eye(3), atol=1e-12)
    assert np.allclose(T @ r, -r, atol=1e-9 * np.linalg.norm(r))
    assert np.allclose(reflection(lam * r).map.matrix, T, atol=1e-12)
    assert np.allclose(reflection(-r).map.matrix, T, atol=1e-12)
    # fixes r-perp pointwise
    x = np.array(x)
    perp = x - (x @ r) / (r @ r) * r
    assert np.allclose(T @ perp, perp, atol=1e-9 * max(1.0, np.linalg.norm(x)))
    assert math.isclose(abs(np.linalg.det(T)), 1.0, rel_tol=1e-9)


# ---------------------------------------------------------------- root-system test

def test_is_root_system_examples(hexagon, skew_pair):
    assert is_root_system(hexagon)
    assert is_root_system(canonicalize([[2, 0], [0, 1]]))
    rep = is_root_system(skew_pair)
    assert not rep and rep.violating_pair is not None
    r, s = rep.violating_pair
    image = reflection(skew_pair.vectors[r]).map(skew_pair.vectors[s])
    assert skew_pair.index_of(image) is None


@pytest.mark.parametrize("label", FULL_CATALOG)
def test_catalog_entries_are_root_systems(label):
    R = catalog(label)
    assert is_root_system(R)
    for r in R.representatives[:: max(1, len(R) // 20)]:
        assert stabilizes(reflection(r).map, R)


def test_catalog_root_counts():
    for d in range(3, 9):
        for fam, count in ROOT_COUNTS.items():
            assert len(catalog(f"{fam}:{d}")) == count(d)
    assert len(catalog("B:3")) == 18
    assert len(catalog("E:8")) == 240
    assert len(catalog("E:7")) == 126
    assert len(catalog("E:6")) == 72
    assert len(catalog("F:4")) == 48
    assert len(catalog("H:3")) == 30
    assert len(catalog("H:4")) == 120
    assert catalog("I2:3").same_as(canonicalize(angles_deg(0, 60, 120)))


def test_e8_built_from_integer_and_half_integer_roots():
    R = catalog("E:8")
    half = np.all(np.isclose(np.abs(R.vectors), 0.5), axis=1)
    assert half.sum() == 128 and (~half).sum() == 112
    assert np.all((R.vectors[half] < 0).sum(axis=1) % 2 == 0)


def test_catalog_orbit_scaling():
    R = catalog("B:3", orbit=(2.0, 3.0))
    assert sorted(set(np.round(R.norms, 12))) == [2.0, 3.0]
    assert is_root_system(R)
    assert sorted(set(np.round(catalog("I2:6:orbit=1,2").norms, 12))) == [1.0, 2.0]
    assert np.allclose(catalog("A:3", orbit=(2.0,)).norms, 2.0)
    one = catalog("F:4", orbit=(2.0,))
    assert np.allclose(sorted(set(np.round(one.norms, 12))), [2.0, 2 * math.sqrt(2)])
    with pytest.raises(ValueError):
        catalog("A:3", orbit=(1.0, 2.0))


@pytest.mark.parametrize("bad", ["Q:3", "A", "I1:2", "I2:2", "A:0", "B:1", "D:2", "F:3", "H:5", "E:5", "B:x"])
def test_catalog_rejects_bad_labels(bad):
    with pytest.raises(ValueError):
        catalog(bad)


def test_parse_label_forms():
    assert parse_label("B:3") == ("B", 3, None)
    assert parse_label("B(3)") == ("B", 3, None)
    assert parse_label("H3") == ("H", 3, None)
    assert parse_label("I1") == ("I1", 1, None)
    assert parse_label("I2:6:orbit=1,2") == ("I2", 6, (1.0, 2.0))
    assert parse_label(CoxeterType("I2", 2, (1.0,), 5)) == ("I2", 5, None)
    assert parse_label(CoxeterType("E", 6)) == ("E", 6, None)


# ---------------------------------------------------------------- Weyl closure

def test_weyl_closure_examples(square, hexagon):
    assert weyl_closure(square).order == 4
    assert weyl_closure(catalog("I2:4")).order == 8
    assert weyl_closure(hexagon).order == 6 == len(semi_stars(hexagon))
    assert weyl_closure(catalog("B:3")).order == 48 == len(semi_stars(catalog("B:3")))


@pytest.mark.parametrize("label", ["I2:5", "A:3", "B:3", "D:4", "H:3"])
def test_weyl_group_is_closed_and_stabilizes(label):
    R = catalog(label)
    G = weyl_closure(R)
    assert not G.truncated
    mats = G.elements

    def key(m):
        return (np.round(m, 8) + 0.0).tobytes()  # + 0.0 folds -0.0 into 0.0

    keys = {key(m) for m in mats}
    assert len(keys) == G.order
    rng = np.random.default_rng(0)
    for _ in range(30):
        a, b = mats[rng.integers(G.order)], mats[rng.integers(G.order)]
        assert key(a @ b) in keys
        assert key(a.T) in keys
    for T in G.maps()[:: max(1, G.order // 30)]:
        assert stabilizes(T, R)


def test_weyl_closure_truncates():
    G = weyl_closure(catalog("B:3"), cap=10)
    assert G.truncated and G.order == 10
    with pytest.raises(ValueError):
        orbit(G, [1, 2, 3])


def test_weyl_closure_of_non_root_system(skew_pair):
    # 70 degrees: the reflections generate a dihedral group of order 2 * 18 (70 = 7 * 180 / 18)
    G = weyl_closure(skew_pair)
    assert G.order == 36 and not G.truncated
    G = weyl_closure(skew_pair, cap=5)
    assert G.truncated


def test_orbit_examples(hexagon):
    G = weyl_closure(hexagon)
    assert len(orbit(G, [0.3, 0.1])) == 6
    assert len(orbit(G, [0.0, 0.0])) == 1
    R = catalog("B:3")
    V = vertices(Zonotope(R))
    O = orbit(weyl_closure(R), V[0])
    assert len(O) == 48
    assert np.all(canonicalize(V).dim == 3)
    dist = np.linalg.norm(O[:, None, :] - V[None, :, :], axis=2)
    assert dist.min(axis=1).max() < 1e-9


# ---------------------------------------------------------------- decomposition

def test_decompose_examples(square, hexagon):
    assert len(decompose(square)) == 2
    assert len(decompose(hexagon)) == 1
    b3 = catalog("B:3").vectors
    i25 = catalog("I2:5").vectors
    block = np.vstack([np.hstack([b3, np.zeros((len(b3), 2))]), np.hstack([np.zeros((len(i25), 3)), i25])])
    R = canonicalize(block)
    comps = decompose(R)
    assert sorted(len(F) for F in comps) == [10, 18]
    assert sorted(F.rank for F in comps) == [2, 3]
    for F, G in itertools.combinations(comps, 2):
        assert np.allclose(F.vectors @ G.vectors.T, 0)
    rep = analyze(R)
    assert sorted(t.label for _, t in rep.components) == ["B(3)", "I2(5)"]


def test_analyze_non_root_system_and_weyl(skew_pair, hexagon):
    assert analyze(skew_pair).components == []
    rep = analyze(hexagon, weyl_cap=100)
    assert rep.weyl.order == 6
    assert analyze(hexagon, with_types=False).components[0][1] is None


# ---------------------------------------------------------------- simple roots and types

def test_simple_roots_hexagon(hexagon):
    S = simple_roots(hexagon, [1.0, 0.1])
    assert len(S) == 2
    cos = S[0] @ S[1] / (np.linalg.norm(S[0]) * np.linalg.norm(S[1]))
    assert math.isclose(cos, math.cos(math.radians(120)))
    # oracle: each simple root is outside the cone of the other positive roots
    positive = [v for v in hexagon.vectors if v @ [1.0, 0.1] > 0]
    for s in S:
        others = [p for p in positive if not np.allclose(p, s)]
        assert not in_cone(s, others)


def test_simple_roots_b2():
    R = catalog("B:2", orbit=(1.0,))
    S = simple_roots(R)
    cos = S[0] @ S[1] / (np.linalg.norm(S[0]) * np.linalg.norm(S[1]))
    assert math.isclose(cos, math.cos(math.radians(135)))


def test_simple_roots_per_component(square):
    for F in decompose(square):
        assert len(simple_roots(F.as_vectorset())) == 1


def test_simple_roots_non_generic_direction_is_nudged(hexagon):
    S = simple_roots(hexagon, [0.0, 1.0])  # orthogonal to (1, 0)
    assert len(S) == 2


@pytest.mark.parametrize("label", [lab for lab in FULL_CATALOG if not lab.startswith("E:8")])
def test_simple_root_count_equals_rank(label):
    R = catalog(label)
    assert len(simple_roots(R)) == R.rank


EXPECTED_TYPES = {
    "I1": "I1", "I2:3": "I2(3)", "I2:8": "I2(8)", "A:3": "A(3)", "D:3": "A(3)", "B:3": "B(3)",
    "H:3": "H3", "A:4": "A(4)", "B:4": "B(4)", "D:4": "D(4)", "F:4": "F4", "H:4": "H4",
    "D:5": "D(5)", "E:6": "E6", "E:7": "E7", "E:8": "E8", "B:8": "B(8)",
}


@pytest.mark.parametrize("label,expected", sorted(EXPECTED_TYPES.items()))
def test_identify_type(label, expected):
    assert identify_type(catalog(label)).label == expected


def test_identify_type_orbit_lengths(hexagon):
    t = identify_type(hexagon)
    assert t.label == "I2(3)" and len(t.orbit_lengths) == 1
    t = identify_type(catalog("B:3", orbit=(1.0, math.sqrt(2))))
    assert t.label == "B(3)"
    assert np.allclose(t.orbit_lengths, [1.0, math.sqrt(2)])
    assert len(identify_type(catalog("I2:6")).orbit_lengths) == 2
    assert len(identify_type(catalog("F:4")).orbit_lengths) == 2
    assert len(identify_type(catalog("E:6")).orbit_lengths) == 1
    assert str(t) == "B(3)" and t.same_type(CoxeterType("B", 3))


def test_reflection_orbits_split_long_and_short():
    R = catalog("B:3")
    orbits = reflection_orbits(R)
    assert sorted(len(o) for o in orbits) == [6, 12]


def test_coxeter_matrix_labels():
    # H3 simple roots: labels 5 and 3
    m = coxeter_matrix(simple_roots(catalog("H:3")))
    assert sorted(m[np.triu_indices(3, 1)]) == [2, 3, 5]
    with pytest.raises(UnmatchedDiagramError):
        coxeter_matrix(np.array(angles_deg(0, 110)))


@pytest.mark.parametrize(
    "edges,expected",
    [
        ({(0, 1): 3, (1, 2): 3, (2, 3): 3}, ("A", 4, None)),
        ({(0, 1): 4, (1, 2): 3}, ("B", 3, None)),
        ({(0, 1): 3, (1, 2): 4}, ("B", 3, None)),
        ({(0, 1): 3, (1, 2): 4, (2, 3): 3}, ("F", 4, None)),
        ({(0, 1): 5, (1, 2): 3, (2, 3): 3}, ("H", 4, None)),
        ({(0, 1): 3, (1, 2): 3, (1, 3): 3}, ("D", 4, None)),
        ({(0, 1): 3, (1, 2): 3, (2, 3): 3, (3, 4): 3, (2, 5): 3}, ("E", 6, None)),
        ({(0, 1): 7}, ("I2", 2, 7)),
    ],
)
def test_diagram_type(edges, expected):
    k = 1 + max(max(e) for e in edges)
    m = np.full((k, k), 2)
    np.fill_diagonal(m, 1)
    for (i, j), lab in edges.items():
        m[i, j] = m[j, i] = lab
    assert diagram_type(m) == expected


@pytest.mark.parametrize(
    "edges",
    [
        {(0, 1): 2},
        {(0, 1): 3, (1, 2): 3, (2, 0): 3},
        {(0, 1): 4, (1, 2): 4},
        {(0, 1): 5, (1, 2): 3, (2, 3): 3, (3, 4): 3},
        {(0, 1): 3, (1, 2): 3, (1, 3): 4},
        {(0, 1): 3, (1, 2): 3, (2, 3): 3, (3, 4): 3, (4, 5): 3, (2, 6): 3, (6, 7): 3},
        {(0, 1): 3, (0, 2): 3, (0, 3): 3, (0, 4): 3},
        {(0, 1): 3, (1, 2): 3, (2, 3): 3, (1, 4): 3, (2, 5): 3},
    ],
)
def test_diagram_type_rejects_infinite_types(edges):
    k = 1 + max(max(e) for e in edges)
    m = np.full((k, k), 2)
    np.fill_diagonal(m, 1)
    for (i, j), lab in edges.items():
        m[i, j] = m[j, i] = lab
    with pytest.raises(UnmatchedDiagramError):
        diagram_type(m)


def test_identify_type_rejects_wrong_root_count():
    # a B3 diagram is recovered from this subset of simple roots but the vector count is wrong
    R = catalog("B:3")
    sub = canonicalize([v for v in R.representatives if np.count_nonzero(np.abs(v) > 1e-12) == 1] + [[1, 1, 0]])
    with pytest.raises(UnmatchedDiagramError):
        identify_type(sub)
