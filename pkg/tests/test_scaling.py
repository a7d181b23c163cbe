from fractions import Fraction

import pytest

from conftest import POLYTOPE_CATALOG, built, ridge_graph
from oracles import random_unimodular, ridge_image_map
from parallo import linalg
from parallo.errors import GeometryError
from parallo.parallelohedron import Parallelohedron
from parallo.scaling import (
    CanonicalScaling,
    ScalingWitness,
    Walk,
    build_ridge_graph,
    canonical_scaling,
    certify,
    gain_along_walk,
    half_belt_check,
    local_cycle_check,
    ridge_dependence,
    voronoi_form,
)

F = Fraction


def _hex_facets(p):
    return [fi for fi, n in enumerate(p.facet_normals)
            if sum(abs(x) for x in n) == 3]


def _square_facets(p):
    return [fi for fi, n in enumerate(p.facet_normals)
            if sorted(map(abs, n)) == [0, 0, 1]]


def _find_edge(graph, n_from, n_to):
    """Ridge-graph edge whose facet normals are the given pair."""
    p = graph.para.polytope
    for e in graph.edges:
        pair = (p.facet_normals[e.facets[0]], p.facet_normals[e.facets[1]])
        if pair == (linalg.vec(n_from), linalg.vec(n_to)):
            return e
        if pair == (linalg.vec(n_to), linalg.vec(n_from)):
            return e
    raise AssertionError("no such edge")


def test_ridge_dependence_truncated_octahedron():
    para = built("truncated-octahedron")
    graph = ridge_graph("truncated-octahedron")
    e = _find_edge(graph, (1, 1, 1), (1, 1, -1))
    n1, n2, n3, alpha, facets = ridge_dependence(para, e.ridge)
    assert {n1, n2} == {linalg.vec((1, 1, 1)), linalg.vec((1, 1, -1))}
    assert n3 in (linalg.vec((0, 0, 1)), linalg.vec((0, 0, -1)))
    # unique dependence, normalized: alpha entries (1, -1, +-2)
    assert abs(alpha[0]) == abs(alpha[1]) == 1 and abs(alpha[2]) == 2
    combo = [linalg.vscale(a, x) for a, x in zip(alpha, (n1, n2, n3))]
    assert all(sum(col) == 0 for col in zip(*combo))


def test_gain_values_truncated_octahedron():
    p = built("truncated-octahedron").polytope
    graph = ridge_graph("truncated-octahedron")
    e = _find_edge(graph, (1, 1, 1), (1, 1, -1))
    a, b = e.facets
    assert graph.gain(a, b, e.ridge) == 1
    hexes = set(_hex_facets(p))
    e2 = _find_edge(graph, (1, 1, 1), (0, 0, 1))
    hx, sq = e2.facets if e2.facets[0] in hexes else tuple(reversed(e2.facets))
    assert graph.gain(hx, sq, e2.ridge) == 2
    assert graph.gain(sq, hx, e2.ridge) == F(1, 2)


def test_gain_reciprocity_everywhere():
    for name in POLYTOPE_CATALOG:
        graph = ridge_graph(name)
        for e in graph.edges:
            a, b = e.facets
            assert graph.gain(a, b, e.ridge) * graph.gain(b, a, e.ridge) == 1


def test_backtrack_gain_is_one():
    for name in POLYTOPE_CATALOG:
        graph = ridge_graph(name)
        for e in graph.edges[:5]:
            a, b = e.facets
            walk = Walk((a, b, a), (e.ridge, e.ridge))
            assert gain_along_walk(graph, walk) == 1


def test_half_belt_and_full_belt_gains():
    for name in POLYTOPE_CATALOG:
        para = built(name)
        graph = ridge_graph(name)
        for belt in para.belts:
            if belt.length != 6:
                continue
            assert half_belt_check(graph, belt) == 1
            loop = Walk(belt.facets + (belt.facets[0],), belt.ridges)
            assert gain_along_walk(graph, loop) == 1
        for belt in para.belts:
            if belt.length == 4:
                with pytest.raises(GeometryError):
                    half_belt_check(graph, belt)
                break


def test_walk_multiplicativity(rng):
    for name in POLYTOPE_CATALOG:
        graph = ridge_graph(name)
        if not graph.edges:
            continue
        adjacency = graph.adjacency
        for _ in range(100):
            start = rng.choice([f for f, ns in adjacency.items() if ns])
            facets, ridges = [start], []
            for _ in range(rng.randint(1, 6)):
                nbrs = adjacency[facets[-1]]
                if not nbrs:
                    break
                g, ei = rng.choice(nbrs)
                facets.append(g)
                ridges.append(graph.edges[ei].ridge)
            if len(ridges) < 2:
                continue
            cut = rng.randint(1, len(ridges) - 1)
            w1 = Walk(tuple(facets[: cut + 1]), tuple(ridges[:cut]))
            w2 = Walk(tuple(facets[cut:]), tuple(ridges[cut:]))
            whole = w1.then(w2)
            assert gain_along_walk(graph, whole) == \
                gain_along_walk(graph, w1) * gain_along_walk(graph, w2)


def test_ridge_graph_shapes():
    cube = ridge_graph("cube")
    assert len(cube.edges) == 0 and cube.n_components == 6
    prism = ridge_graph("hexagonal-prism")
    assert len(prism.edges) == 6 and prism.n_components == 3
    degrees = [len(prism.adjacency[f]) for f in range(8)]
    assert sorted(degrees) == [0, 0, 2, 2, 2, 2, 2, 2]
    to = ridge_graph("truncated-octahedron")
    assert len(to.edges) == 36 and to.n_components == 1


def test_canonical_scaling_values():
    cube = canonical_scaling(ridge_graph("cube"))
    assert isinstance(cube, CanonicalScaling)
    assert set(cube.values) == {F(1)}

    to_graph = ridge_graph("truncated-octahedron")
    s = canonical_scaling(to_graph)
    p = built("truncated-octahedron").polytope
    assert all(s.values[fi] == 1 for fi in _hex_facets(p))
    assert all(s.values[fi] == 2 for fi in _square_facets(p))

    prism = canonical_scaling(ridge_graph("hexagonal-prism"))
    assert set(prism.values) == {F(1)}


def test_scaling_satisfies_every_edge():
    for name in POLYTOPE_CATALOG:
        graph = ridge_graph(name)
        s = canonical_scaling(graph)
        assert isinstance(s, CanonicalScaling)
        for e in graph.edges:
            a, b = e.facets
            assert s.values[b] == s.values[a] * graph.gain(a, b, e.ridge)
        para = built(name)
        for f in range(graph.n_facets):
            assert s.values[f] == s.values[para.opposite_facet[f]]


def test_canonical_scaling_witness_on_doctored_gains():
    graph = ridge_graph("truncated-octahedron")
    bad_edges = list(graph.edges)
    from dataclasses import replace

    bad_edges[0] = replace(bad_edges[0], gain=bad_edges[0].gain * 3)
    from parallo.scaling import RidgeGraph

    bad = RidgeGraph(graph.para, bad_edges)
    witness = canonical_scaling(bad)
    assert isinstance(witness, ScalingWitness)
    if witness.walk is not None and witness.kind == "cycle":
        assert witness.walk.closed
    assert witness.gain != 1


def test_voronoi_form_cube_identity():
    para = built("cube")
    s = canonical_scaling(ridge_graph("cube"))
    cert = voronoi_form(para, s)
    assert cert.verdict == "certified"
    assert cert.gram == linalg.identity(3)


def test_voronoi_form_truncated_octahedron():
    cert = certify(built("truncated-octahedron"))
    assert cert.verdict == "certified"
    g = cert.gram
    scale = g[0][0]
    assert scale > 0
    assert g == tuple(
        tuple(scale * x for x in row) for row in linalg.identity(3)
    )


def test_voronoi_form_prism_block_structure():
    cert = certify(built("hexagonal-prism"))
    assert cert.verdict == "certified"
    g = cert.gram
    assert g[0][2] == g[1][2] == g[2][0] == g[2][1] == 0
    # hexagon block proportional to the generating hexagonal metric
    scale = g[0][0] / 2
    assert (g[0][0], g[0][1], g[1][1]) == (2 * scale, scale, 2 * scale)
    assert g[2][2] > 0
    assert len(cert.solution_basis) == 2


def test_local_cycle_checks():
    para = built("truncated-octahedron")
    graph = ridge_graph("truncated-octahedron")
    lat = para.polytope.face_lattice
    for vertex in lat.faces(0):
        res = local_cycle_check(para, vertex, graph)
        assert not res.skipped and res.product == 1
    rd = built("rhombic-dodecahedron")
    rd_graph = ridge_graph("rhombic-dodecahedron")
    degrees = set()
    for vertex in rd.polytope.face_lattice.faces(0):
        res = local_cycle_check(rd, vertex, rd_graph)
        assert not res.skipped and res.product == 1
        degrees.add(len(res.walk.ridges))
    assert degrees == {3, 4}
    cube = built("cube")
    for vertex in cube.polytope.face_lattice.faces(0):
        res = local_cycle_check(cube, vertex)
        assert res.skipped and "non-primitive" in res.reason


def test_normal_rescaling_leaves_closed_products(rng):
    for name in ("truncated-octahedron", "elongated-dodecahedron"):
        para = built(name)
        graph = ridge_graph(name)
        scale = {
            fi: F(rng.randint(1, 9), rng.randint(1, 9))
            for fi in range(para.polytope.n_facets)
        }
        scaled = build_ridge_graph(para, normal_scale=scale)
        for belt in para.belts:
            if belt.length != 6:
                continue
            loop = Walk(belt.facets + (belt.facets[0],), belt.ridges)
            assert gain_along_walk(scaled, loop) == \
                gain_along_walk(graph, loop) == 1
        # random closed walks: out along tree of edges, back the same way
        for e in graph.edges[:10]:
            a, b = e.facets
            walk = Walk((a, b, a), (e.ridge, e.ridge))
            assert gain_along_walk(scaled, walk) == 1


def test_affine_invariance_of_closed_walk_gains(rng):
    for name in ("hexagonal-prism", "truncated-octahedron"):
        para = built(name)
        graph = ridge_graph(name)
        for _ in range(3):
            a = random_unimodular(rng, 3)
            image = Parallelohedron.build(para.polytope.apply_affine(a))
            igraph = build_ridge_graph(image)
            rmap = ridge_image_map(para, image, a, linalg.zeros(3))
            fmap = {}
            for rid, irid in enumerate(rmap):
                pa, pb = para.ridge_facets[rid]
                ia, ib = image.ridge_facets[irid]
                # align facets via the vertex image of the facet sets
                for src, candidates in ((pa, (ia, ib)), (pb, (ia, ib))):
                    src_ids = {
                        tuple(linalg.matvec(a, para.polytope.vertices[i]))
                        for i in para.polytope.facet_vertex_ids[src]
                    }
                    for cand in candidates:
                        cand_ids = {
                            image.polytope.vertices[i]
                            for i in image.polytope.facet_vertex_ids[cand]
                        }
                        if src_ids == cand_ids:
                            fmap[src] = cand
            for belt in para.belts:
                if belt.length != 6:
                    continue
                walk = Walk(belt.facets[:4], belt.ridges[:3])
                mapped = Walk(
                    tuple(fmap[f] for f in walk.facets),
                    tuple(rmap[r] for r in walk.ridges),
                )
                assert gain_along_walk(graph, walk) == \
                    gain_along_walk(igraph, mapped)
