"""End-to-end verification pipeline and machine-readable reports.

verify() runs: Venkov conditions -> belts -> ridge graph -> canonical
scaling -> quadratic-form recovery -> independent Voronoi-cell
comparison, and collects belts, primitivity, topology (d = 3) and the
certificate into one stable-ordered report. Exit codes follow the
pipeline stage that failed: 0 certified, 2 scaling inconsistency,
3 Venkov failure, 4 form/cell mismatch (1 is reserved for parse errors
in the CLI).

Reports are byte-stable on identical input: keys are sorted, rationals
are canonical "p/q" strings, and the timing field is null unless
explicitly requested.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import serialize, topology
from .errors import NotAParallelohedron
from .lattice import Lattice, dv_cell
from .parallelohedron import Parallelohedron, VenkovVerdict
from .polytope import Polytope
from .scaling import (
    CanonicalScaling,
    ScalingWitness,
    VoronoiCertificate,
    build_ridge_graph,
    canonical_scaling,
    voronoi_form,
)

EXIT_CERTIFIED = 0
EXIT_PARSE = 1
EXIT_SCALING = 2
EXIT_VENKOV = 3
EXIT_DV_MISMATCH = 4


@dataclass
class VerificationReport:
    name: str | None
    dim: int
    venkov: VenkovVerdict
    belts: tuple | None = None
    primitivity: dict | None = None
    ridge_graph: dict | None = None
    scaling: CanonicalScaling | None = None
    witness: ScalingWitness | None = None
    certificate: VoronoiCertificate | None = None
    topology: dict | None = None
    gram_match: dict | None = None
    timing_ms: float | None = None

    @property
    def verdict(self) -> str:
        if not self.venkov.ok:
            return "venkov-fails"
        if self.certificate is None:
            return "scaling-fails"
        return self.certificate.verdict

    @property
    def exit_code(self) -> int:
        return {
            "certified": EXIT_CERTIFIED,
            "scaling-fails": EXIT_SCALING,
            "venkov-fails": EXIT_VENKOV,
            "form-not-pd": EXIT_DV_MISMATCH,
            "dv-mismatch": EXIT_DV_MISMATCH,
        }[self.verdict]

    def as_dict(self, include_timing: bool = False) -> dict:
        doc: dict = {
            "name": self.name,
            "dim": self.dim,
            "verdict": self.verdict,
            "exit_code": self.exit_code,
            "venkov": _venkov_dict(self.venkov),
            "timing_ms": round(self.timing_ms, 3) if include_timing else None,
        }
        if self.belts is not None:
            doc["belts"] = [
                {"length": b.length, "facets": list(b.facets)}
                for b in self.belts
            ]
        if self.primitivity is not None:
            doc["primitivity"] = {str(k): v for k, v in self.primitivity.items()}
        if self.ridge_graph is not None:
            doc["ridge_graph"] = self.ridge_graph
        if self.scaling is not None:
            doc["scaling"] = {
                "values": [serialize.rational_to_str(v) for v in self.scaling.values],
                "base_facets": list(self.scaling.base_facets),
                "components": list(self.scaling.groups),
            }
        if self.witness is not None:
            doc["witness"] = _witness_dict(self.witness)
        if self.certificate is not None:
            doc["certificate"] = certificate_dict(self.certificate)
        if self.topology is not None:
            doc["topology"] = self.topology
        if self.gram_match is not None:
            doc["gram_match"] = self.gram_match
        return doc


def _venkov_dict(v: VenkovVerdict) -> dict:
    return {
        "ok": v.ok,
        "witnesses": [
            {
                "condition": w.condition,
                "detail": w.detail,
                "face_vertex_ids": list(w.face_vertex_ids),
            }
            for w in v.witnesses
        ],
    }


def _witness_dict(w: ScalingWitness) -> dict:
    doc = {"kind": w.kind, "gain": serialize.rational_to_str(w.gain)}
    if w.walk is not None:
        doc["facets"] = list(w.walk.facets)
    if w.facet_pair is not None:
        doc["facet_pair"] = list(w.facet_pair)
    return doc


def certificate_dict(cert: VoronoiCertificate) -> dict:
    doc: dict = {"verdict": cert.verdict}
    if cert.scaling is not None:
        doc["scaling"] = [
            serialize.rational_to_str(v) for v in cert.scaling.values
        ]
    if cert.gram is not None:
        doc["gram"] = serialize.matrix_to_strs(cert.gram)
    if cert.component_factors is not None:
        doc["component_factors"] = [
            serialize.rational_to_str(c) for c in cert.component_factors
        ]
    if cert.witness is not None:
        doc["witness"] = _witness_dict(cert.witness)
    if cert.verdict == "form-not-pd":
        doc["solution_basis"] = [
            serialize.vector_to_strs(b) for b in cert.solution_basis
        ]
    return doc


def _gram_match(recovered, source) -> dict:
    """Is recovered == q * source for one positive rational q?"""
    scale = None
    for i in range(len(source)):
        for j in range(len(source)):
            if source[i][j] != 0:
                scale = recovered[i][j] / source[i][j]
                break
        if scale is not None:
            break
    matched = (
        scale is not None
        and scale > 0
        and all(
            recovered[i][j] == scale * source[i][j]
            for i in range(len(source))
            for j in range(len(source))
        )
    )
    return {
        "matched": matched,
        "scale": serialize.rational_to_str(scale) if scale is not None else None,
    }


def surface_dict(para: Parallelohedron, pi: bool,
                 expected: dict | None = None) -> dict:
    """Topology report JSON, with flags where computed values disagree
    with stored reference values."""
    if para.dim != 3:
        return {
            "surface": "pi" if pi else "delta",
            "unsupported_dimension": True,
            "ridge_components": topology.ridge_connectivity(para),
        }
    complex_ = topology.pi_complex(para) if pi else topology.delta_complex(para)
    rep = topology.topology_report(complex_)
    span = topology.half_belt_span_d3(para)
    doc = {
        "surface": rep.surface,
        "component_count": rep.component_count,
        "components": [
            {
                "cells": list(c.cell_counts),
                "chi": c.chi,
                "compact": c.compact,
                "h1_rank": c.h1_rank,
            }
            for c in rep.components
        ],
        "half_belt_span": {
            "h1_rank": span.h1_rank,
            "span_rank": span.span_rank,
            "spanned": span.spanned,
            "cycles": span.n_cycles,
        },
        "flags": [],
    }
    if expected is not None:
        ref = expected.get("pi" if pi else "delta")
        if ref is not None:
            computed_ranks = sorted(c.h1_rank for c in rep.components)
            for field_name, computed, reference in (
                ("component_count", rep.component_count, ref["component_count"]),
                ("h1_ranks", computed_ranks, sorted(ref["h1_ranks"])),
            ):
                if computed != reference:
                    doc["flags"].append({
                        "field": field_name,
                        "computed": computed,
                        "reference": reference,
                        "reference_source": ref.get("source", "unknown"),
                        "reference_disputed": bool(ref.get("disputed", False)),
                    })
    return doc


def verify(source: Polytope | Lattice, name: str | None = None,
           expected: dict | None = None) -> VerificationReport:
    """Full certification pipeline for a polytope or a lattice's cell."""
    t0 = time.perf_counter()
    source_gram = None
    if isinstance(source, Lattice):
        source_gram = source.gram
        p = dv_cell(source)
    else:
        p = source
    try:
        para = Parallelohedron.build(p)
    except NotAParallelohedron as exc:
        rep = VerificationReport(name, p.dim, exc.verdict)
        rep.timing_ms = (time.perf_counter() - t0) * 1e3
        return rep
    graph = build_ridge_graph(para)
    rep = VerificationReport(name, p.dim, VenkovVerdict(True))
    rep.belts = para.belts
    rep.primitivity = para.primitivity_profile()
    rep.ridge_graph = {
        "nodes": p.n_facets,
        "edges": len(graph.edges),
        "components": graph.n_components,
    }
    result = canonical_scaling(graph)
    if isinstance(result, ScalingWitness):
        rep.witness = result
        rep.certificate = VoronoiCertificate(
            "scaling-fails", None, None, None, witness=result
        )
    else:
        rep.scaling = result
        rep.certificate = voronoi_form(para, result)
        if rep.certificate.verdict == "certified" and source_gram is not None:
            rep.gram_match = _gram_match(rep.certificate.gram, source_gram)
    if p.dim == 3:
        rep.topology = {
            "delta": surface_dict(para, pi=False, expected=expected),
            "pi": surface_dict(para, pi=True, expected=expected),
        }
    else:
        rep.topology = {
            "ridge_components": topology.ridge_connectivity(para),
        }
    rep.timing_ms = (time.perf_counter() - t0) * 1e3
    return rep
