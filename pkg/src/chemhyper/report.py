"""Builders for the machine-readable report document emitted by the CLI."""

from __future__ import annotations

import math
from typing import Sequence

from .bounds import BoundsReport
from .cheeger import QValue
from .hypergraph import ChemicalHypergraph, is_bipartite, is_connected
from .jacobi import Spectrum
from .verify import Check


def _finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x} in report")
    return x


def input_summary(g: ChemicalHypergraph, names: Sequence[str]) -> dict:
    return {
        "N": g.N,
        "M": g.M,
        "connected": is_connected(g),
        "bipartite": is_bipartite(g),
        "max_cardinality": max((len(h) for h in g.hyperedges), default=0),
        "has_catalysts": g.has_catalysts(),
        "vertex_names": {str(i): name for i, name in enumerate(names)},
    }


def spectrum_section(spec: Spectrum) -> dict:
    return {
        "eigenvalues": [_finite(x) for x in spec.eigenvalues],
        "lambda_max": _finite(spec.largest),
    }


def bounds_section(report: BoundsReport, names: Sequence[str]) -> dict:
    w = report.lower_eta_witness
    eq = report.upper_equality
    return {
        "lambda_max": _finite(report.lambda_max),
        "upper": report.upper,
        "upper_equality": {
            "is_equality": eq.is_equality,
            "bipartite": eq.bipartite,
            "constant_cardinality": eq.constant_cardinality,
        },
        "eta_star": _finite(report.lower_eta),
        "eta_star_fraction": str(w.eta.exact),
        "eta_exact": report.lower_is_exact,
        "witness": {
            "vertices": [names[v] for v in w.vertices],
            "hyperedges": w.edge_ids,
            "side1": sorted(names[v] for v in w.bipartition.part1),
            "side2": sorted(names[v] for v in w.bipartition.part2),
        },
        "upper_gap": _finite(report.upper_gap),
        "lower_gap": _finite(report.lower_gap),
    }


def cheeger_section(q: QValue, lambda_max: float) -> dict:
    return {
        "Q": _finite(q.value),
        "Q_fraction": str(q.exact),
        "argmax_hyperedge": q.argmax_hyperedge,
        "per_edge": [_finite(x) for x in q.per_edge],
        "lambda_max": _finite(lambda_max),
    }


def checks_section(checks: Sequence[Check]) -> list:
    if not checks:
        raise ValueError("a report needs at least one check")
    return [{"name": c.name, "passed": c.passed, "residual": _finite(c.residual)} for c in checks]
