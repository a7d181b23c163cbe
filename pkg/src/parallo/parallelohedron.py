"""Parallelohedron structure: Venkov conditions, belts, dual cells.

A convex polytope tiles space by translations iff it is centrally
symmetric, has centrally symmetric facets, and every ridge (codim-2
face) lies in a belt of 4 or 6 facets. Once those hold, each facet F
determines the neighbor translate via the facet vector t_F = 2*c_F, the
facet vectors generate the tile-center lattice, and local stars of the
tiling can be reconstructed without ever materializing the tiling
itself: a face of the polytope belongs to the translate by t exactly
when all its vertices satisfy the shifted inequalities.

Belts are found by walking: enter a facet through a ridge, reflect the
ridge through the facet's center to find the parallel exit ridge, cross
to the other facet, repeat. A ridge is primitive iff its belt closes
after 6 facets (three tiles meet at it rather than four).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import linalg
from .errors import DualCellAnomaly, GeometryError, NotAParallelohedron
from .lattice import Lattice, vectors_in_ball
from .linalg import Vec
from .polytope import (
    Face,
    Polytope,
    affine_hull_polytope,
    central_symmetry,
)


@dataclass(frozen=True)
class VenkovWitness:
    condition: str  # "central-symmetry" | "facet-symmetry" | "belt"
    detail: str
    face_vertex_ids: tuple[int, ...] = ()


@dataclass(frozen=True)
class VenkovVerdict:
    ok: bool
    witnesses: tuple[VenkovWitness, ...] = ()

    def __str__(self):
        if self.ok:
            return "venkov: pass"
        w = self.witnesses[0]
        return f"venkov: fail ({w.condition}: {w.detail})"


@dataclass(frozen=True)
class Belt:
    """Cyclic facet sequence sharing parallel ridges; length 4 or 6."""

    facets: tuple[int, ...]   # cyclic; facets[i], facets[i+1] share ridges[i]
    ridges: tuple[int, ...]   # ids into face_lattice faces(d-2)

    @property
    def length(self) -> int:
        return len(self.facets)


@dataclass(frozen=True)
class DualCell:
    """Tile centers sharing a face, plus the hull of those centers."""

    face: Face
    centers: tuple[Vec, ...]
    hull: Polytope | None  # in affine-hull coordinates, codim <= 3 only


def _reflect_face_ids(p: Polytope, vertex_ids, center: Vec):
    """Vertex ids of the reflection of a face through a point, or None."""
    index = {v: i for i, v in enumerate(p.vertices)}
    out = []
    for i in vertex_ids:
        w = tuple(2 * c - x for c, x in zip(center, p.vertices[i]))
        j = index.get(w)
        if j is None:
            return None
        out.append(j)
    return tuple(sorted(out))


class _BeltWalkError(Exception):
    def __init__(self, detail, face_ids=()):
        self.detail = detail
        self.face_ids = face_ids
        super().__init__(detail)


def _walk_belt(p: Polytope, ridge_ids_by_key, facet_centers, facets_of, start_ridge):
    """Belt through a ridge: facet cycle and aligned ridge cycle."""
    r0 = start_ridge
    f_pair = facets_of[r0]
    if len(f_pair) != 2:
        raise _BeltWalkError(
            f"ridge lies on {len(f_pair)} facets, expected 2",
            p.face_lattice.faces(p.dim - 2)[r0].vertex_ids,
        )
    f_prev, f_cur = f_pair
    facets = [f_prev, f_cur]
    ridges = [r0]
    entry = r0
    for _ in range(2 * p.n_facets + 1):
        ridge_face = p.face_lattice.faces(p.dim - 2)[entry]
        mirrored = _reflect_face_ids(p, ridge_face.vertex_ids, facet_centers[f_cur])
        nxt = ridge_ids_by_key.get(mirrored)
        if nxt is None:
            raise _BeltWalkError(
                "facet is not centrally symmetric around its center "
                "(ridge reflection is not a ridge)",
                ridge_face.vertex_ids,
            )
        pair = facets_of[nxt]
        if f_cur not in pair or len(pair) != 2:
            raise _BeltWalkError("ridge incidence is not dihedral", ridge_face.vertex_ids)
        f_next = pair[0] if pair[1] == f_cur else pair[1]
        ridges.append(nxt)
        if f_next == facets[0] and nxt != r0:
            # closed: the next reflection must return the starting ridge
            back = _reflect_face_ids(
                p, p.face_lattice.faces(p.dim - 2)[nxt].vertex_ids, facet_centers[f_next]
            )
            if ridge_ids_by_key.get(back) != r0:
                raise _BeltWalkError("belt does not close consistently",
                                     ridge_face.vertex_ids)
            return Belt(tuple(facets), tuple(ridges))
        facets.append(f_next)
        f_cur = f_next
        entry = nxt
    raise _BeltWalkError("belt walk failed to close", ())


def _ridge_facet_map(p: Polytope):
    lat = p.face_lattice
    facet_sets = [set(ids) for ids in p.facet_vertex_ids]
    out = []
    for ridge in lat.faces(p.dim - 2):
        s = set(ridge.vertex_ids)
        out.append(tuple(i for i, fs in enumerate(facet_sets) if s.issubset(fs)))
    return out


def _analyze(p: Polytope):
    """Run the Venkov checks; return (verdict, belts, belt_of_ridge)."""
    witnesses = []
    ok, center = p.is_centrally_symmetric()
    if not ok:
        witnesses.append(VenkovWitness("central-symmetry",
                                       "vertex set is not centrally symmetric"))
        return VenkovVerdict(False, tuple(witnesses)), (), {}
    if any(x != 0 for x in center):
        raise GeometryError("polytope must be recentered before analysis")
    for fi, ids in enumerate(p.facet_vertex_ids):
        ok, _ = central_symmetry([p.vertices[i] for i in ids])
        if not ok:
            witnesses.append(VenkovWitness(
                "facet-symmetry",
                f"facet {fi} is not centrally symmetric",
                tuple(ids),
            ))
    if witnesses:
        return VenkovVerdict(False, tuple(witnesses)), (), {}

    lat = p.face_lattice
    ridges = lat.faces(p.dim - 2)
    ridge_ids_by_key = {r.vertex_ids: i for i, r in enumerate(ridges)}
    facet_centers = [
        tuple(sum((p.vertices[i][k] for i in ids), Fraction(0)) / len(ids)
              for k in range(p.dim))
        for ids in p.facet_vertex_ids
    ]
    facets_of = _ridge_facet_map(p)
    belts = []
    belt_of_ridge: dict[int, tuple[int, int]] = {}
    for rid in range(len(ridges)):
        if rid in belt_of_ridge:
            continue
        try:
            belt = _walk_belt(p, ridge_ids_by_key, facet_centers, facets_of, rid)
        except _BeltWalkError as exc:
            witnesses.append(VenkovWitness("belt", exc.detail, tuple(exc.face_ids)))
            continue
        if belt.length not in (4, 6):
            witnesses.append(VenkovWitness(
                "belt",
                f"belt through ridge {rid} has length {belt.length}, expected 4 or 6",
                ridges[rid].vertex_ids,
            ))
            continue
        bid = len(belts)
        belts.append(belt)
        for pos, r in enumerate(belt.ridges):
            belt_of_ridge[r] = (bid, pos)
    if witnesses:
        return VenkovVerdict(False, tuple(witnesses)), (), {}
    return VenkovVerdict(True), tuple(belts), belt_of_ridge


def venkov_check(p: Polytope) -> VenkovVerdict:
    """Minkowski-Venkov test: pass iff p is a parallelohedron."""
    verdict, _, _ = _analyze(p.recentered())
    return verdict


class Parallelohedron:
    """A polytope that passed the Venkov conditions, with its tiling data."""

    def __init__(self, polytope, belts, belt_of_ridge):
        self.polytope = polytope
        self.belts = belts
        self.belt_of_ridge = belt_of_ridge
        self._finish_setup()

    @staticmethod
    def build(p: Polytope) -> "Parallelohedron":
        q = p.recentered()
        verdict, belts, belt_of_ridge = _analyze(q)
        if not verdict.ok:
            raise NotAParallelohedron(verdict)
        return Parallelohedron(q, belts, belt_of_ridge)

    def _finish_setup(self):
        p = self.polytope
        self.facet_centers = tuple(
            Face(p.dim - 1, ids).center_in(p) for ids in p.facet_vertex_ids
        )
        self.facet_vectors = tuple(
            linalg.vscale(2, c) for c in self.facet_centers
        )
        # opposite facet: normal negated, same offset (we are centered)
        key = {
            (n, b): i
            for i, (n, b) in enumerate(zip(p.facet_normals, p.facet_offsets))
        }
        opp = []
        for n, b in zip(p.facet_normals, p.facet_offsets):
            j = key.get((linalg.vneg(n), b))
            if j is None:
                raise GeometryError("facet pairing failed on a symmetric polytope")
            opp.append(j)
        self.opposite_facet = tuple(opp)
        basis = linalg.lattice_basis_from_generators(self.facet_vectors)
        if len(basis) != p.dim:
            raise GeometryError("facet vectors do not span a full-rank lattice")
        self.lattice = Lattice.create(basis)
        self._check_neighbors()

    def _check_neighbors(self):
        """P and P + t_F must intersect in exactly the facet F."""
        p = self.polytope
        for fi, t in enumerate(self.facet_vectors):
            facet_ids = set(p.facet_vertex_ids[fi])
            shared = {
                i
                for i, v in enumerate(p.vertices)
                if p.contains(linalg.vsub(v, t))
            }
            if shared != facet_ids:
                raise GeometryError(
                    f"facet vector of facet {fi} does not reproduce the facet "
                    "as the neighbor intersection"
                )

    # -- ridges ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.polytope.dim

    @cached_property
    def ridges(self) -> tuple[Face, ...]:
        return self.polytope.face_lattice.faces(self.dim - 2)

    @cached_property
    def ridge_facets(self) -> tuple[tuple[int, int], ...]:
        return tuple(_ridge_facet_map(self.polytope))

    def ridge_primitive(self, ridge_id: int) -> bool:
        """True iff the ridge's belt has length 6 (three tiles meet there)."""
        bid, _ = self.belt_of_ridge[ridge_id]
        return self.belts[bid].length == 6

    def belt_of(self, ridge_id: int) -> Belt:
        return self.belts[self.belt_of_ridge[ridge_id][0]]

    # -- dual cells -------------------------------------------------------

    @cached_property
    def _dual_cell_candidates(self) -> tuple[Vec, ...]:
        # any translate sharing a point of P has |t| <= 2 * circumradius
        return tuple(vectors_in_ball(self.lattice, 4 * self.polytope.circumradius_sq))

    def dual_cell(self, face: Face) -> DualCell:
        p = self.polytope
        pts = [p.vertices[i] for i in face.vertex_ids]
        centers = [
            t
            for t in self._dual_cell_candidates
            if all(p.contains(linalg.vsub(v, t)) for v in pts)
        ]
        codim = self.dim - face.dim
        hull = None
        if codim <= 3 and len(centers) > 1:
            hull, k, _, _ = affine_hull_polytope(centers)
        return DualCell(face, tuple(sorted(centers)), hull)

    def dual_cells(self, codim: int) -> list[DualCell]:
        return [
            self.dual_cell(f)
            for f in self.polytope.face_lattice.faces(self.dim - codim)
        ]

    def primitivity_profile(self) -> dict[int, bool]:
        """codim k -> every codim-k face lies in exactly k+1 tiles (k <= 3)."""
        out = {}
        for k in range(1, min(3, self.dim) + 1):
            out[k] = all(
                len(c.centers) == k + 1 for c in self.dual_cells(k)
            )
        return out

    def tiling_facet_normals_at(self, face: Face) -> list[Vec]:
        """Normals (up to sign) of all tiling facets containing the face."""
        cell = self.dual_cell(face)
        vec_to_facet = {t: i for i, t in enumerate(self.facet_vectors)}
        lines = set()
        for t1 in cell.centers:
            for t2 in cell.centers:
                if t1 == t2:
                    continue
                fi = vec_to_facet.get(linalg.vsub(t2, t1))
                if fi is not None:
                    lines.add(linalg.normalize_primitive(
                        self.polytope.facet_normals[fi]))
        return sorted(lines)

    def is_k_irreducible(self, k: int):
        """No codim-k face splits its tiling-facet normals into two
        subsets with linearly independent spans. Returns (bool, witness)."""
        if k <= 1:
            raise ValueError("irreducibility is defined for k > 1")
        for face in self.polytope.face_lattice.faces(self.dim - k):
            lines = self.tiling_facet_normals_at(face)
            m = len(lines)
            total = linalg.rank(tuple(lines))
            for mask in range(1, 2 ** (m - 1)):
                n1 = [lines[i] for i in range(m) if mask >> i & 1]
                n2 = [lines[i] for i in range(m) if not mask >> i & 1]
                if linalg.rank(tuple(n1)) + linalg.rank(tuple(n2)) == total:
                    return False, (face, tuple(n1), tuple(n2))
        return True, None


DUAL3_TYPES = {
    (4, (3, 3, 3, 3)): "tetrahedron",
    (5, (3, 3, 3, 3, 4)): "quadrangular pyramid",
    (6, (3, 3, 3, 3, 3, 3, 3, 3)): "octahedron",
    (6, (3, 3, 4, 4, 4)): "triangular prism",
    (8, (4, 4, 4, 4, 4, 4)): "cube",
}


def classify_dual3(cell: DualCell) -> str:
    """Combinatorial type of a dual 3-cell hull among the five types."""
    if cell.hull is None or cell.hull.dim != 3:
        raise DualCellAnomaly(
            f"dual cell hull is {0 if cell.hull is None else cell.hull.dim}"
            "-dimensional, expected 3",
            centers=cell.centers,
        )
    hull = cell.hull
    signature = (
        hull.n_vertices,
        tuple(sorted(len(ids) for ids in hull.facet_vertex_ids)),
    )
    kind = DUAL3_TYPES.get(signature)
    if kind is None:
        raise DualCellAnomaly(
            f"dual 3-cell signature {signature} matches none of the five "
            "reference types",
            centers=cell.centers,
            detail=signature,
        )
    return kind


def dual3_census(para: Parallelohedron) -> dict[str, int]:
    """Count dual 3-cell types over all codim-3 faces of the polytope."""
    census: dict[str, int] = {}
    for cell in para.dual_cells(3):
        kind = classify_dual3(cell)
        census[kind] = census.get(kind, 0) + 1
    return dict(sorted(census.items()))
