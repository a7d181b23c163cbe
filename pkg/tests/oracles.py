"""Independent oracles the tests check the exact code against.

These deliberately avoid the library's own code paths: hulls come from
scipy's floating-point qhull, lattice minima from a plain exhaustive
coefficient sweep, and unimodular maps from explicit elementary
operations.
"""

from fractions import Fraction
from itertools import product

import numpy as np
from scipy.spatial import ConvexHull

from parallo import linalg


def hull_counts(points) -> tuple[int, int]:
    """(n_vertices, n_facets) from floating-point qhull."""
    arr = np.array([[float(x) for x in p] for p in points], dtype=float)
    hull = ConvexHull(arr)
    # qhull reports simplicial facets; merge coplanar ones by hyperplane
    planes = set()
    for eq in np.round(hull.equations, 9):
        planes.add(tuple(eq))
    return len(hull.vertices), len(planes)


def exhaustive_coset_minimizers(basis, gram, parity, box=3):
    """Minimal positive vectors of a 2L-coset by brute coefficient sweep."""
    d = len(basis)
    best = None
    found = []
    for k in product(range(-box, box + 1), repeat=d):
        coeffs = [2 * kk + pp for kk, pp in zip(k, parity)]
        v = linalg.matvec(linalg.transpose(linalg.mat(basis)), linalg.vec(coeffs))
        n = linalg.dot(v, linalg.matvec(linalg.mat(gram), v))
        if n == 0:
            continue
        if best is None or n < best:
            best = n
            found = [v]
        elif n == best:
            found.append(v)
    return sorted(found)


def random_unimodular(rng, d: int, steps: int = 5):
    """Integer matrix with determinant +-1 from elementary row operations."""
    m = [[Fraction(1 if i == j else 0) for j in range(d)] for i in range(d)]
    for _ in range(steps):
        i, j = rng.sample(range(d), 2)
        c = rng.choice([-1, 1])
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    if rng.random() < 0.5:
        i, j = rng.sample(range(d), 2)
        m[i], m[j] = m[j], m[i]
    return tuple(tuple(row) for row in m)


def facet_image_map(p, q, a, shift):
    """Facet index map of p -> q under the affine bijection x -> a x + shift."""
    a = linalg.mat(a)
    shift = linalg.vec(shift)
    image_sets = []
    for ids in p.facet_vertex_ids:
        img = frozenset(
            linalg.vadd(linalg.matvec(a, p.vertices[i]), shift) for i in ids
        )
        image_sets.append(img)
    q_sets = {
        frozenset(q.vertices[i] for i in ids): fi
        for fi, ids in enumerate(q.facet_vertex_ids)
    }
    return [q_sets[s] for s in image_sets]


def ridge_image_map(para_p, para_q, a, shift):
    """Ridge index map between parallelohedra under an affine bijection."""
    a = linalg.mat(a)
    shift = linalg.vec(shift)
    q_ids = {
        frozenset(r.vertex_ids): i for i, r in enumerate(para_q.ridges)
    }
    q_vertex = {v: i for i, v in enumerate(para_q.polytope.vertices)}
    out = []
    for r in para_p.ridges:
        img = frozenset(
            q_vertex[linalg.vadd(linalg.matvec(a, para_p.polytope.vertices[i]), shift)]
            for i in r.vertex_ids
        )
        out.append(q_ids[img])
    return out
