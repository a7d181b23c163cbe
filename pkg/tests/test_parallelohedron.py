from collections import Counter
from fractions import Fraction

import pytest

from conftest import built
from parallo import linalg
from parallo.catalog import catalog
from parallo.errors import DualCellAnomaly, NotAParallelohedron
from parallo.parallelohedron import (
    Parallelohedron,
    classify_dual3,
    dual3_census,
    venkov_check,
)
from parallo.polytope import Polytope

F = Fraction


def test_venkov_pass_on_catalog():
    for name in ("cube", "hexagonal-prism", "rhombic-dodecahedron",
                 "elongated-dodecahedron", "truncated-octahedron"):
        assert venkov_check(catalog(name).polytope).ok


def test_venkov_octahedron_witness():
    octa = Polytope.from_vertices(
        [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    )
    verdict = venkov_check(octa)
    assert not verdict.ok
    assert verdict.witnesses[0].condition == "facet-symmetry"
    with pytest.raises(NotAParallelohedron):
        Parallelohedron.build(octa)


def test_venkov_asymmetric_witness():
    skew = Polytope.from_vertices(
        [(0, 0, 0), (2, 0, 0), (0, 2, 0), (2, 3, 0),
         (0, 0, 1), (2, 0, 1), (0, 2, 1), (2, 3, 1)]
    )
    verdict = venkov_check(skew)
    assert not verdict.ok
    assert verdict.witnesses[0].condition == "central-symmetry"


def test_belt_structure():
    expectations = {
        "cube": {4: 3},
        "hexagonal-prism": {4: 3, 6: 1},
        "rhombic-dodecahedron": {6: 4},
        "elongated-dodecahedron": {4: 1, 6: 4},
        "truncated-octahedron": {6: 6},
    }
    for name, hist in expectations.items():
        para = built(name)
        assert Counter(b.length for b in para.belts) == Counter(
            {k: v for k, v in hist.items()}
        )
        # belts partition the ridges
        seen = [r for b in para.belts for r in b.ridges]
        assert sorted(seen) == list(range(len(para.ridges)))
        # opposite positions in a belt are opposite facets
        for b in para.belts:
            m = b.length
            for i in range(m):
                assert b.facets[(i + m // 2) % m] == \
                    para.opposite_facet[b.facets[i]]


def test_ridge_primitive():
    cube = built("cube")
    assert not any(cube.ridge_primitive(r) for r in range(len(cube.ridges)))
    prism = built("hexagonal-prism")
    vertical = [
        r for r in range(len(prism.ridges)) if prism.ridge_primitive(r)
    ]
    assert len(vertical) == 6
    for r in vertical:
        a, b = (prism.polytope.vertices[i]
                for i in prism.ridges[r].vertex_ids)
        assert a[:2] == b[:2]  # vertical edges of the prism
    rd = built("rhombic-dodecahedron")
    assert all(rd.ridge_primitive(r) for r in range(len(rd.ridges)))


def test_facet_vectors_and_neighbor_identity():
    for name in ("cube", "truncated-octahedron", "elongated-dodecahedron"):
        para = built(name)
        p = para.polytope
        for fi, t in enumerate(para.facet_vectors):
            opp = para.opposite_facet[fi]
            assert para.facet_vectors[opp] == linalg.vneg(t)
            # facet hyperplane bisects 0 and t_F
            assert p.facet_offsets[fi] == linalg.dot(p.facet_normals[fi], t) / 2
            shared = {
                i for i, v in enumerate(p.vertices)
                if p.contains(linalg.vsub(v, t))
            }
            assert shared == set(p.facet_vertex_ids[fi])


def test_dual_cell_center_counts():
    para = built("truncated-octahedron")
    p = para.polytope
    for cell in para.dual_cells(1):
        assert len(cell.centers) == 2
        assert linalg.zeros(3) in cell.centers
    for cell in para.dual_cells(2):
        assert len(cell.centers) == 3  # all ridges primitive here
    prism = built("hexagonal-prism")
    ridge_counts = Counter(len(c.centers) for c in prism.dual_cells(2))
    assert ridge_counts == Counter({4: 12, 3: 6})
    cube = built("cube")
    for cell in cube.dual_cells(3):
        assert len(cell.centers) == 8


def test_dual3_censuses():
    expectations = {
        "cube": {"cube": 8},
        "hexagonal-prism": {"triangular prism": 12},
        "rhombic-dodecahedron": {"octahedron": 6, "tetrahedron": 8},
        "elongated-dodecahedron": {"quadrangular pyramid": 10, "tetrahedron": 8},
        "truncated-octahedron": {"tetrahedron": 24},
    }
    seen_types = set()
    for name, expected in expectations.items():
        census = dual3_census(built(name))
        assert census == expected
        seen_types |= set(census)
    assert seen_types == {
        "cube", "triangular prism", "octahedron", "tetrahedron",
        "quadrangular pyramid",
    }


def test_classify_dual3_rejects_flat_cells():
    para = built("cube")
    facet_cell = para.dual_cells(1)[0]
    with pytest.raises(DualCellAnomaly):
        classify_dual3(facet_cell)


def test_primitivity_profiles():
    expectations = {
        "cube": {1: True, 2: False, 3: False},
        "hexagonal-prism": {1: True, 2: False, 3: False},
        "rhombic-dodecahedron": {1: True, 2: True, 3: False},
        "elongated-dodecahedron": {1: True, 2: False, 3: False},
        "truncated-octahedron": {1: True, 2: True, 3: True},
    }
    for name, profile in expectations.items():
        assert built(name).primitivity_profile() == profile


def test_primitivity_matches_belt_lengths():
    for name in ("hexagonal-prism", "elongated-dodecahedron"):
        para = built(name)
        for rid, cell in enumerate(para.dual_cells(2)):
            assert (len(cell.centers) == 3) == para.ridge_primitive(rid)


def test_k_irreducibility():
    assert built("rhombic-dodecahedron").is_k_irreducible(2)[0]
    ok, witness = built("cube").is_k_irreducible(2)
    assert not ok and witness is not None
    face, n1, n2 = witness
    assert linalg.rank(n1) + linalg.rank(n2) == linalg.rank(n1 + n2)
    assert not built("elongated-dodecahedron").is_k_irreducible(2)[0]
    assert built("truncated-octahedron").is_k_irreducible(2)[0]


def test_d2_hexagon_parallelohedron():
    hexagon = catalog("lattice-A2-gram").polytope
    para = Parallelohedron.build(hexagon)
    assert len(para.belts) == 1 and para.belts[0].length == 6
    assert para.primitivity_profile() == {1: True, 2: True}
    square = catalog("lattice-Z2").polytope
    para2 = Parallelohedron.build(square)
    assert len(para2.belts) == 1 and para2.belts[0].length == 4
