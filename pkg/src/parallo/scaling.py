"""Gain function, canonical scaling, and the certifying quadratic form.

At a primitive ridge exactly three tiling facets meet; their normals
span a 2-plane and carry a unique (up to scale) linear dependence
a1*n1 + a2*n2 + a3*n3 = 0. The gain from facet i to facet j across the
ridge is |a_j / a_i|: any positive facet weighting that makes weighted
normals around every ridge sum to zero must multiply by exactly this
factor when traveling i -> j. Weights compatible with all gains exist
iff the product of gains around every closed walk in the ridge graph
(facets as nodes, primitive ridges as edges) equals 1; the walk check
over a spanning tree covers the whole cycle space.

Once a canonical scaling s exists, a symmetric G with
G t_F = c * s(F) * n_F for all facets makes every facet hyperplane the
G-bisector of 0 and t_F, i.e. turns the polytope into the Voronoi cell
of its own center lattice under G. The recovery here solves that linear
system exactly, searches the solution space for a positive-definite
representative, and then *independently* verifies the result by
rebuilding the Voronoi cell and comparing vertex sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import linalg
from .errors import GeometryError
from .lattice import dv_cell
from .linalg import Mat, Vec
from .parallelohedron import Parallelohedron


@dataclass(frozen=True)
class RidgeEdge:
    ridge: int                 # id into the polytope's codim-2 faces
    facets: tuple[int, int]    # belt order: gain applies facets[0] -> facets[1]
    third_facet: int
    alpha: tuple[Fraction, Fraction, Fraction]
    gain: Fraction             # |alpha[1] / alpha[0]|


@dataclass(frozen=True)
class Walk:
    """Alternating facet/ridge sequence; facets[i], facets[i+1] share ridges[i]."""

    facets: tuple[int, ...]
    ridges: tuple[int, ...]

    @property
    def closed(self) -> bool:
        return len(self.facets) > 1 and self.facets[0] == self.facets[-1]

    def reversed(self) -> "Walk":
        return Walk(tuple(reversed(self.facets)), tuple(reversed(self.ridges)))

    def then(self, other: "Walk") -> "Walk":
        if self.facets[-1] != other.facets[0]:
            raise ValueError("walks do not compose")
        return Walk(self.facets + other.facets[1:], self.ridges + other.ridges)


class RidgeGraph:
    """Facets as nodes, primitive ridges as gain-weighted edges."""

    def __init__(self, para: Parallelohedron, edges: list[RidgeEdge]):
        self.para = para
        self.edges = tuple(edges)
        n = para.polytope.n_facets
        adj: dict[int, list[tuple[int, int]]] = {f: [] for f in range(n)}
        for ei, e in enumerate(self.edges):
            a, b = e.facets
            adj[a].append((b, ei))
            adj[b].append((a, ei))
        self.adjacency = {f: tuple(sorted(ns)) for f, ns in adj.items()}
        self.edge_of_ridge = {e.ridge: ei for ei, e in enumerate(self.edges)}
        comp = list(range(n))

        def find(x):
            while comp[x] != x:
                comp[x] = comp[comp[x]]
                x = comp[x]
            return x

        for e in self.edges:
            ra, rb = find(e.facets[0]), find(e.facets[1])
            if ra != rb:
                comp[max(ra, rb)] = min(ra, rb)
        roots = sorted({find(f) for f in range(n)})
        label = {r: i for i, r in enumerate(roots)}
        self.component = tuple(label[find(f)] for f in range(n))
        self.n_components = len(roots)

    @property
    def n_facets(self) -> int:
        return self.para.polytope.n_facets

    def gain(self, f_from: int, f_to: int, ridge: int) -> Fraction:
        """Gain across a primitive ridge, directed f_from -> f_to."""
        ei = self.edge_of_ridge.get(ridge)
        if ei is None:
            raise GeometryError(f"ridge {ridge} is not primitive")
        e = self.edges[ei]
        if (f_from, f_to) == e.facets:
            return e.gain
        if (f_to, f_from) == e.facets:
            return 1 / e.gain
        raise GeometryError("facets do not match the ridge")


def ridge_dependence(para: Parallelohedron, ridge_id: int,
                     normal_scale=None):
    """Normals of the three tiling facets at a primitive ridge and the
    unique dependence among them.

    Returns (n1, n2, n3, alpha, (f1, f2, f3)): f1, f2 are the two facets
    of the polytope containing the ridge (in belt order), f3 the belt
    successor whose translate supplies the third tiling facet. alpha is
    the kernel vector normalized to integer content 1.

    `normal_scale` optionally rescales each facet's canonical normal by
    a positive rational (index -> factor); gains of closed walks are
    invariant under this, which the test suite exercises.
    """
    bid, pos = para.belt_of_ridge[ridge_id]
    belt = para.belts[bid]
    if belt.length != 6:
        raise GeometryError(f"ridge {ridge_id} is not primitive (belt length 4)")
    m = belt.length
    f1, f2 = belt.facets[pos], belt.facets[(pos + 1) % m]
    f3 = belt.facets[(pos + 2) % m]
    t1, t2 = para.facet_vectors[f1], para.facet_vectors[f2]
    t3 = para.facet_vectors[f3]
    diff = linalg.vsub(t1, t2)
    if diff != t3 and diff != linalg.vneg(t3):
        raise GeometryError(
            "belt successor does not carry the neighbor-difference direction"
        )

    def normal(fi):
        n = para.polytope.facet_normals[fi]
        if normal_scale is not None and fi in normal_scale:
            factor = linalg.frac(normal_scale[fi])
            if factor <= 0:
                raise ValueError("normal rescaling must be positive")
            n = linalg.vscale(factor, n)
        return n

    n1, n2, n3 = normal(f1), normal(f2), normal(f3)
    columns = linalg.transpose((n1, n2, n3))
    kernel = linalg.nullspace(columns)
    if len(kernel) != 1:
        raise GeometryError(
            "normals at the ridge do not have a unique linear dependence"
        )
    alpha = kernel[0]
    if any(a == 0 for a in alpha):
        raise GeometryError("degenerate dependence at a primitive ridge")
    return n1, n2, n3, alpha, (f1, f2, f3)


def build_ridge_graph(para: Parallelohedron, normal_scale=None) -> RidgeGraph:
    """One node per facet, one gain-weighted edge per primitive ridge."""
    edges = []
    for rid in range(len(para.ridges)):
        if not para.ridge_primitive(rid):
            continue
        _, _, _, alpha, (f1, f2, _f3) = ridge_dependence(para, rid, normal_scale)
        gain = abs(alpha[1] / alpha[0])
        edges.append(RidgeEdge(rid, (f1, f2), _f3, tuple(alpha), gain))
    return RidgeGraph(para, edges)


def gain_along_walk(graph: RidgeGraph, walk: Walk) -> Fraction:
    """Product of directed gains along a walk in the ridge graph."""
    if len(walk.facets) != len(walk.ridges) + 1:
        raise ValueError("walk has mismatched facet/ridge counts")
    total = Fraction(1)
    for i, rid in enumerate(walk.ridges):
        total *= graph.gain(walk.facets[i], walk.facets[i + 1], rid)
    return total


@dataclass(frozen=True)
class ScalingWitness:
    """A closed walk whose gain product differs from 1."""

    kind: str         # "cycle" | "opposite-facet"
    walk: Walk | None
    facet_pair: tuple[int, int] | None
    gain: Fraction

    def __str__(self):
        if self.kind == "cycle":
            return (f"violating cycle through facets {self.walk.facets} "
                    f"with gain {self.gain}")
        return (f"opposite facets {self.facet_pair} forced to distinct "
                f"values (ratio {self.gain})")


@dataclass(frozen=True)
class CanonicalScaling:
    """Positive facet weights satisfying every gain constraint."""

    values: tuple[Fraction, ...]
    base_facets: tuple[int, ...]     # one per ridge-graph component
    groups: tuple[int, ...]          # facet -> merged component label


def _tree_walk(parent, f) -> Walk:
    """Walk from a component's base facet to f along spanning-tree edges."""
    facets = [f]
    ridges = []
    while parent[f] is not None:
        pf, rid = parent[f]
        facets.append(pf)
        ridges.append(rid)
        f = pf
    return Walk(tuple(reversed(facets)), tuple(reversed(ridges)))


def canonical_scaling(graph: RidgeGraph):
    """Construct facet weights from the gains, or return a witness.

    Per component: the facet with the lexicographically least canonical
    normal gets weight 1; weights propagate along a spanning tree; every
    non-tree edge is checked exactly. Opposite facets in one component
    must agree automatically (asserted); across components the opposite
    component is rescaled to match, which cannot break any gain.
    """
    para = graph.para
    p = para.polytope
    n = p.n_facets
    values: list[Fraction | None] = [None] * n
    parent: list[tuple[int, int] | None] = [None] * n
    base_facets = []
    for comp in range(graph.n_components):
        members = [f for f in range(n) if graph.component[f] == comp]
        base = min(members, key=lambda f: p.facet_normals[f])
        base_facets.append(base)
        values[base] = Fraction(1)
        queue = [base]
        while queue:
            f = queue.pop(0)
            for g, ei in graph.adjacency[f]:
                edge = graph.edges[ei]
                gain = graph.gain(f, g, edge.ridge)
                if values[g] is None:
                    values[g] = values[f] * gain
                    parent[g] = (f, edge.ridge)
                    queue.append(g)
                elif values[g] != values[f] * gain:
                    to_f = _tree_walk(parent, f)
                    from_g = _tree_walk(parent, g).reversed()
                    cycle = to_f.then(
                        Walk((f, g), (edge.ridge,))).then(from_g)
                    return ScalingWitness(
                        "cycle", cycle, None, gain_along_walk(graph, cycle)
                    )
    groups = list(graph.component)
    for f in range(n):
        g = para.opposite_facet[f]
        if groups[f] == groups[g]:
            if values[f] != values[g]:
                walk = None
                if graph.component[f] == graph.component[g]:
                    walk = _tree_walk(parent, f).reversed().then(
                        _tree_walk(parent, g))
                return ScalingWitness(
                    "opposite-facet", walk, (f, g), values[g] / values[f]
                )
        else:
            factor = values[f] / values[g]
            src = groups[g]
            for h in range(n):
                if groups[h] == src:
                    values[h] *= factor
                    groups[h] = groups[f]
    labels = sorted(set(groups))
    relabel = {old: i for i, old in enumerate(labels)}
    return CanonicalScaling(
        tuple(values), tuple(base_facets), tuple(relabel[g] for g in groups)
    )


@dataclass(frozen=True)
class VoronoiCertificate:
    """Outcome of the quadratic-form recovery and its verification."""

    verdict: str  # "certified" | "scaling-fails" | "form-not-pd" | "dv-mismatch"
    scaling: CanonicalScaling | None
    gram: Mat | None
    component_factors: tuple[Fraction, ...] | None
    witness: ScalingWitness | None = None
    solution_basis: tuple[Vec, ...] = ()
    voronoi_vertices: tuple[Vec, ...] = ()


def _sym_from_upper(entries: Vec, d: int) -> Mat:
    g = [[Fraction(0)] * d for _ in range(d)]
    k = 0
    for i in range(d):
        for j in range(i, d):
            g[i][j] = entries[k]
            g[j][i] = entries[k]
            k += 1
    return tuple(tuple(row) for row in g)


def _pd_search(basis: list[Vec], d: int, n_groups: int):
    """First integer {1,0,-1} combination giving positive factors and PD form."""
    n_upper = d * (d + 1) // 2
    dim = len(basis)
    if dim == 0:
        return None
    weight_sets: list[tuple[int, ...]]
    if 3 ** dim <= 3 ** 12:
        weight_sets = list(product((1, 0, -1), repeat=dim))
    else:  # bounded fallback: all-ones, then sparse combinations
        weight_sets = [(1,) * dim]
        for i in range(dim):
            for s in (1, -1):
                w = [0] * dim
                w[i] = s
                weight_sets.append(tuple(w))
    for w in weight_sets:
        if not any(w):
            continue
        u = [Fraction(0)] * (n_upper + n_groups)
        for wi, b in zip(w, basis):
            if wi:
                for k in range(len(u)):
                    u[k] += wi * b[k]
        factors = u[n_upper:]
        if any(c <= 0 for c in factors):
            continue
        gram = _sym_from_upper(tuple(u[:n_upper]), d)
        if linalg.is_positive_definite(gram):
            return tuple(u)
    return None


def voronoi_form(para: Parallelohedron, scaling: CanonicalScaling) -> VoronoiCertificate:
    """Recover a certifying metric from a canonical scaling and verify it.

    Solves G t_F = c_k(F) * s(F) * n_F over symmetric G and one positive
    factor per merged scaling component, picks a positive-definite
    solution, then rebuilds the Voronoi cell of the center lattice under
    G and requires its vertex set to equal the polytope's exactly.
    """
    p = para.polytope
    d = p.dim
    n_upper = d * (d + 1) // 2
    n_groups = len(set(scaling.groups))
    upper_index = {}
    k = 0
    for i in range(d):
        for j in range(i, d):
            upper_index[(i, j)] = k
            k += 1
    rows = []
    for fi in range(p.n_facets):
        t = para.facet_vectors[fi]
        nrm = p.facet_normals[fi]
        s = scaling.values[fi]
        for r in range(d):
            row = [Fraction(0)] * (n_upper + n_groups)
            for j in range(d):
                a, b = min(r, j), max(r, j)
                row[upper_index[(a, b)]] += t[j]
            row[n_upper + scaling.groups[fi]] = -s * nrm[r]
            rows.append(tuple(row))
    basis = linalg.nullspace(tuple(rows))
    if not basis:
        return VoronoiCertificate(
            "scaling-fails", scaling, None, None,
            witness=None, solution_basis=(),
        )
    u = _pd_search(basis, d, n_groups)
    if u is None:
        return VoronoiCertificate(
            "form-not-pd", scaling, None, None,
            solution_basis=tuple(basis),
        )
    u = linalg.scale_to_content_one(u)
    gram = _sym_from_upper(u[:n_upper], d)
    factors = u[n_upper:]
    cell = dv_cell(para.lattice.with_gram(gram))
    if cell.vertices != p.vertices:
        return VoronoiCertificate(
            "dv-mismatch", scaling, gram, factors,
            solution_basis=tuple(basis),
            voronoi_vertices=cell.vertices,
        )
    return VoronoiCertificate(
        "certified", scaling, gram, factors,
        solution_basis=tuple(basis),
        voronoi_vertices=cell.vertices,
    )


def certify(para: Parallelohedron) -> VoronoiCertificate:
    """Full pipeline: gains -> scaling -> quadratic form -> verification."""
    graph = build_ridge_graph(para)
    result = canonical_scaling(graph)
    if isinstance(result, ScalingWitness):
        return VoronoiCertificate("scaling-fails", None, None, None, witness=result)
    return voronoi_form(para, result)


@dataclass(frozen=True)
class LocalCycleCheck:
    """Gain product around a codim-3 face, or the reason it was skipped."""

    face_vertex_ids: tuple[int, ...]
    skipped: bool
    reason: str | None
    walk: Walk | None
    product: Fraction | None


def local_cycle_check(para: Parallelohedron, face,
                      graph: RidgeGraph | None = None) -> LocalCycleCheck:
    """Product of gains around a codim-3 face whose ridges are all primitive."""
    lat = para.polytope.face_lattice
    d = para.dim
    ridge_ids = lat.superfaces(face, d - 2)
    if any(not para.ridge_primitive(r) for r in ridge_ids):
        return LocalCycleCheck(
            face.vertex_ids, True,
            "face lies on a non-primitive ridge", None, None,
        )
    facet_ids = {
        fi
        for fi in range(para.polytope.n_facets)
        if set(face.vertex_ids).issubset(para.polytope.facet_vertex_ids[fi])
    }
    ridges_of_facet: dict[int, list[int]] = {fi: [] for fi in facet_ids}
    for r in ridge_ids:
        for fi in para.ridge_facets[r]:
            ridges_of_facet[fi].append(r)
    if any(len(rs) != 2 for rs in ridges_of_facet.values()):
        raise GeometryError("face link is not a cycle")
    start = min(facet_ids)
    facets = [start]
    ridges = [min(ridges_of_facet[start])]
    while True:
        rid = ridges[-1]
        a, b = para.ridge_facets[rid]
        nxt = b if a == facets[-1] else a
        if nxt == start:
            break
        facets.append(nxt)
        r1, r2 = ridges_of_facet[nxt]
        ridges.append(r2 if r1 == rid else r1)
    facets.append(start)
    walk = Walk(tuple(facets), tuple(ridges))
    if graph is None:
        graph = build_ridge_graph(para)
    return LocalCycleCheck(
        face.vertex_ids, False, None, walk, gain_along_walk(graph, walk)
    )


def half_belt_check(graph: RidgeGraph, belt) -> Fraction:
    """Gain product over three consecutive edges of a 6-belt (expect 1)."""
    if belt.length != 6:
        raise GeometryError("half-belt products need a belt of length 6")
    total = Fraction(1)
    for i in range(3):
        total *= graph.gain(belt.facets[i], belt.facets[i + 1], belt.ridges[i])
    return total
