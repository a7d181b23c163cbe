"""Convex polytopes with exact rational coordinates.

Both descriptions (vertices and facet halfspaces <n, x> <= b) are kept,
with facet normals canonicalized to primitive integer outward vectors.
The dual description is computed by brute force over d-element subsets
with exact solves: at desk scale (d <= 6, a few dozen facets) this is
fast enough and trivially auditable.

The face lattice is the closure of the facet vertex-sets under
intersection, graded from the empty face (dim -1) up to the whole
polytope (dim d). Faces are identified with their vertex-index sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from . import linalg
from .errors import GeometryError
from .linalg import Mat, Vec

Halfspace = tuple[Vec, Fraction]  # (normal, offset): <normal, x> <= offset


def affine_rank(points: list[Vec]) -> int:
    """Dimension of the affine hull of a point set (-1 for empty)."""
    if not points:
        return -1
    p0 = points[0]
    return linalg.rank(tuple(linalg.vsub(p, p0) for p in points[1:]))


def central_symmetry(points: list[Vec]) -> tuple[bool, Vec]:
    """Whether a point set is invariant under reflection in its centroid."""
    n = len(points)
    c = tuple(sum(col, Fraction(0)) / n for col in zip(*points))
    mirrored = {tuple(2 * ci - xi for ci, xi in zip(c, p)) for p in points}
    return mirrored == set(points), c


def centroid(points) -> Vec:
    pts = list(points)
    return tuple(sum(col, Fraction(0)) / len(pts) for col in zip(*pts))


@dataclass(frozen=True)
class Face:
    """A face of a polytope: its dimension and sorted vertex indices."""

    dim: int
    vertex_ids: tuple[int, ...]

    def center_in(self, polytope: "Polytope") -> Vec:
        return centroid(polytope.vertices[i] for i in self.vertex_ids)


class FaceLattice:
    """All faces graded by dimension, with containment queries."""

    def __init__(self, faces_by_dim: dict[int, tuple[Face, ...]]):
        self.faces_by_dim = faces_by_dim
        self.top_dim = max(faces_by_dim)

    def faces(self, dim: int) -> tuple[Face, ...]:
        return self.faces_by_dim.get(dim, ())

    def f_vector(self) -> tuple[int, ...]:
        """Face counts for dimensions 0 .. d-1."""
        return tuple(len(self.faces(k)) for k in range(self.top_dim))

    def superfaces(self, face: Face, dim: int) -> list[int]:
        """Indices of dim-faces whose vertex set contains the face's."""
        s = set(face.vertex_ids)
        return [
            i
            for i, g in enumerate(self.faces(dim))
            if s.issubset(g.vertex_ids)
        ]

    def subfaces(self, face: Face, dim: int) -> list[int]:
        s = set(face.vertex_ids)
        return [
            i
            for i, g in enumerate(self.faces(dim))
            if s.issuperset(g.vertex_ids)
        ]


def _hyperplane_through(points: list[Vec], dim: int):
    """Unique hyperplane <n, x> = b through the points, or None."""
    rows = tuple(p + (Fraction(-1),) for p in points)
    kernel = linalg.nullspace(rows)
    if len(kernel) != 1:
        return None
    nb = kernel[0]
    normal, offset = nb[:dim], nb[dim]
    if all(x == 0 for x in normal):
        return None
    return normal, offset


def _canonical_halfspace(normal: Vec, offset: Fraction) -> Halfspace:
    """Scale so the normal is a primitive integer vector (same direction)."""
    prim = linalg.normalize_primitive(normal)
    lead = next(i for i, x in enumerate(prim) if x != 0)
    scale = normal[lead] / prim[lead]
    if scale < 0:
        prim = linalg.vneg(prim)
        scale = -scale
    return prim, offset / scale


def _facets_from_points(points: list[Vec], dim: int) -> list[Halfspace]:
    """Supporting hyperplanes touching in a (d-1)-dimensional set."""
    candidates: dict[Halfspace, None] = {}
    for subset in combinations(range(len(points)), dim):
        hp = _hyperplane_through([points[i] for i in subset], dim)
        if hp is None:
            continue
        normal, offset = hp
        vals = [linalg.dot(normal, p) - offset for p in points]
        if all(v <= 0 for v in vals):
            pass
        elif all(v >= 0 for v in vals):
            normal, offset = linalg.vneg(normal), -offset
        else:
            continue
        candidates[_canonical_halfspace(normal, offset)] = None
    facets = []
    for normal, offset in candidates:
        on = [p for p in points if linalg.dot(normal, p) == offset]
        if affine_rank(on) == dim - 1:
            facets.append((normal, offset))
    return sorted(facets)


def _positively_spans(normals: list[Vec], dim: int) -> bool:
    """True iff the vectors positively span R^d (origin interior to their hull)."""
    if affine_rank(list(normals)) < dim:
        return False
    for normal, offset in _facets_from_points(list(normals), dim):
        if offset <= 0:  # origin on or outside this supporting hyperplane
            return False
    return True


@dataclass(frozen=True)
class Polytope:
    """Bounded full-dimensional convex polytope, exactly represented."""

    dim: int
    vertices: tuple[Vec, ...]
    facet_normals: tuple[Vec, ...]
    facet_offsets: tuple[Fraction, ...]

    # -- construction ------------------------------------------------

    @staticmethod
    def from_vertices(points) -> "Polytope":
        pts = sorted({linalg.vec(p) for p in points})
        if not pts:
            raise GeometryError("empty vertex set")
        dim = len(pts[0])
        if any(len(p) != dim for p in pts):
            raise GeometryError("inconsistent point dimensions")
        if affine_rank(list(pts)) != dim:
            raise GeometryError("input is not full-dimensional")
        facets = _facets_from_points(list(pts), dim)
        vertices = []
        for p in pts:
            active = [n for n, b in facets if linalg.dot(n, p) == b]
            if active and linalg.rank(tuple(active)) == dim:
                vertices.append(p)
        return Polytope(
            dim,
            tuple(sorted(vertices)),
            tuple(n for n, _ in facets),
            tuple(b for _, b in facets),
        )

    @staticmethod
    def from_halfspaces(halfspaces, dim: int) -> "Polytope":
        hs: dict[Halfspace, None] = {}
        for normal, offset in halfspaces:
            hs[_canonical_halfspace(linalg.vec(normal), linalg.frac(offset))] = None
        planes = sorted(hs)
        if linalg.rank(tuple(n for n, _ in planes)) < dim:
            raise GeometryError("halfspace normals do not span the space")
        if not _positively_spans([n for n, _ in planes], dim):
            raise GeometryError("halfspace intersection is unbounded")
        vertices: set[Vec] = set()
        for subset in combinations(planes, dim):
            a = tuple(n for n, _ in subset)
            b = tuple(off for _, off in subset)
            x, kernel = linalg.solve_linear(a, b)
            if x is None or kernel:
                continue
            if all(linalg.dot(n, x) <= off for n, off in planes):
                vertices.add(x)
        verts = sorted(vertices)
        if affine_rank(verts) != dim:
            raise GeometryError("halfspace intersection has empty interior")
        facets = []
        for normal, offset in planes:
            on = [v for v in verts if linalg.dot(normal, v) == offset]
            if affine_rank(on) == dim - 1:
                facets.append((normal, offset))
        return Polytope(
            dim,
            tuple(verts),
            tuple(n for n, _ in facets),
            tuple(b for _, b in facets),
        )

    # -- basic queries -----------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_facets(self) -> int:
        return len(self.facet_normals)

    def halfspaces(self) -> list[Halfspace]:
        return list(zip(self.facet_normals, self.facet_offsets))

    def contains(self, point: Vec, strict: bool = False) -> bool:
        if strict:
            return all(
                linalg.dot(n, point) < b
                for n, b in zip(self.facet_normals, self.facet_offsets)
            )
        return all(
            linalg.dot(n, point) <= b
            for n, b in zip(self.facet_normals, self.facet_offsets)
        )

    @cached_property
    def facet_vertex_ids(self) -> tuple[tuple[int, ...], ...]:
        """Per facet, sorted indices of the vertices lying on it."""
        out = []
        for n, b in zip(self.facet_normals, self.facet_offsets):
            out.append(
                tuple(
                    i
                    for i, v in enumerate(self.vertices)
                    if linalg.dot(n, v) == b
                )
            )
        return tuple(out)

    @cached_property
    def centroid(self) -> Vec:
        return centroid(self.vertices)

    @cached_property
    def circumradius_sq(self) -> Fraction:
        return max(linalg.dot(v, v) for v in self.vertices)

    def is_centrally_symmetric(self) -> tuple[bool, Vec]:
        return central_symmetry(list(self.vertices))

    # -- face lattice ------------------------------------------------

    @cached_property
    def face_lattice(self) -> FaceLattice:
        n = len(self.vertices)
        facet_sets = [frozenset(ids) for ids in self.facet_vertex_ids]
        found: set[frozenset] = {frozenset(range(n))}
        frontier = set(found)
        while frontier:
            new = set()
            for f in frontier:
                for fs in facet_sets:
                    g = f & fs
                    if g not in found:
                        new.add(g)
            found |= new
            frontier = new
        found.add(frozenset())
        by_dim: dict[int, list[Face]] = {}
        for vs in found:
            ids = tuple(sorted(vs))
            dim = affine_rank([self.vertices[i] for i in ids])
            by_dim.setdefault(dim, []).append(Face(dim, ids))
        return FaceLattice(
            {
                dim: tuple(sorted(fs, key=lambda f: f.vertex_ids))
                for dim, fs in by_dim.items()
            }
        )

    def f_vector(self) -> tuple[int, ...]:
        return self.face_lattice.f_vector()

    # -- transformations ----------------------------------------------

    def translated(self, shift: Vec) -> "Polytope":
        shift = linalg.vec(shift)
        return Polytope(
            self.dim,
            tuple(sorted(linalg.vadd(v, shift) for v in self.vertices)),
            self.facet_normals,
            tuple(
                b + linalg.dot(n, shift)
                for n, b in zip(self.facet_normals, self.facet_offsets)
            ),
        )

    def recentered(self) -> "Polytope":
        return self.translated(linalg.vneg(self.centroid))

    def apply_affine(self, a: Mat, shift: Vec | None = None) -> "Polytope":
        """Image under x -> a x + shift; facets re-derived and verified.

        The facet of <n, x> <= b maps to the canonicalized pushforward
        halfspace <a^-T n, y> <= b + <a^-T n, shift>; each is then
        checked exactly against the mapped vertex set, so the result is
        as trustworthy as a fresh enumeration at a fraction of the cost.
        """
        a = linalg.mat(a)
        if linalg.det(a) == 0:
            raise GeometryError("affine map must be invertible")
        shift = linalg.vec(shift) if shift is not None else linalg.zeros(self.dim)
        verts = tuple(sorted(
            linalg.vadd(linalg.matvec(a, v), shift) for v in self.vertices
        ))
        inv_t = linalg.transpose(linalg.inverse(a))
        facets = []
        for n, b in zip(self.facet_normals, self.facet_offsets):
            m = linalg.matvec(inv_t, n)
            facets.append(_canonical_halfspace(m, b + linalg.dot(m, shift)))
        facets.sort()
        for i, (n, b) in enumerate(facets):
            vals = [linalg.dot(n, v) for v in verts]
            on = sum(1 for x in vals if x == b)
            if any(x > b for x in vals) or on < self.dim:
                raise GeometryError("affine pushforward verification failed")
        return Polytope(
            self.dim,
            verts,
            tuple(n for n, _ in facets),
            tuple(b for _, b in facets),
        )


def affine_hull_polytope(points: list[Vec]):
    """Hull of points in coordinates of their own affine hull.

    Returns (polytope, rank, origin, basis_rows): the polytope lives in
    R^rank; basis rows map its coordinates back via origin + c . basis.
    """
    pts = sorted(set(points))
    p0 = pts[0]
    basis: list[Vec] = []
    for p in pts[1:]:
        d = linalg.vsub(p, p0)
        if linalg.rank(tuple(basis) + (d,)) > len(basis):
            basis.append(d)
    k = len(basis)
    bt = linalg.transpose(tuple(basis))
    coords = []
    for p in pts:
        x, _ = linalg.solve_linear(bt, linalg.vsub(p, p0))
        coords.append(x)
    if k == 0:
        raise GeometryError("a single point has no hull")
    return Polytope.from_vertices(coords), k, p0, tuple(basis)
