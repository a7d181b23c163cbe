"""Shared fixtures: seeded RNG and memoized heavy pipeline results.

PARALLO_SEED fixes every randomized property test; building the bigger
catalog entries (especially the d = 4 cell) is expensive, so built
parallelohedra, ridge graphs and verification reports are cached per
session and shared across test modules.
"""

import os
import random

import pytest

from parallo import report as report_mod
from parallo.catalog import catalog
from parallo.parallelohedron import Parallelohedron
from parallo.scaling import build_ridge_graph

SEED = int(os.environ.get("PARALLO_SEED", "20260810"))

_built = {}
_graphs = {}
_reports = {}

POLYTOPE_CATALOG = (
    "cube",
    "hexagonal-prism",
    "rhombic-dodecahedron",
    "elongated-dodecahedron",
    "truncated-octahedron",
)

LATTICE_CATALOG = (
    "lattice-Z2",
    "lattice-Z3",
    "lattice-A2-gram",
    "lattice-FCC",
    "lattice-BCC",
    "lattice-D4",
)


def built(name: str) -> Parallelohedron:
    if name not in _built:
        _built[name] = Parallelohedron.build(catalog(name).polytope)
    return _built[name]


def ridge_graph(name: str):
    if name not in _graphs:
        _graphs[name] = build_ridge_graph(built(name))
    return _graphs[name]


def verified(name: str):
    if name not in _reports:
        entry = catalog(name)
        source = entry.lattice if entry.kind == "lattice" else entry.polytope
        _reports[name] = report_mod.verify(source, name=name,
                                           expected=entry.expected)
    return _reports[name]


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture(params=POLYTOPE_CATALOG)
def catalog_solid(request):
    return request.param
