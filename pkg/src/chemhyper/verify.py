"""Property battery run on single hypergraphs and on generated ensembles."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

import numpy as np

from . import bounds as _bounds
from .cheeger import verify_q_characterization
from .generators import GeneratorSpec, generate
from .hypergraph import ChemicalHypergraph, flip_orientation, strip_catalysts
from .spectra import hyperedge_spectrum, nonzero, raw_spectrum, spectrum

SPECTRAL_TOL = 1e-9
BOUND_TOL = 1e-8

CSV_COLUMNS = (
    "family",
    "seed",
    "n",
    "m",
    "lambda_max",
    "upper",
    "eta_star",
    "eta_exact",
    "q",
    "sandwich_residual",
    "equality_residual",
    "isospectral_residual",
    "orientation_residual",
    "trace_residual",
    "duality_residual",
    "q_residual",
    "passed",
    "failed_checks",
)


@dataclass
class Check:
    name: str
    passed: bool
    residual: float

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "residual": self.residual}


@dataclass
class InstanceResult:
    n: int
    m: int
    lambda_max: float
    upper: int
    eta_star: float
    eta_exact: bool
    q: float
    checks: list = field(default_factory=list)
    family: str = ""
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def row(self) -> dict:
        res = {c.name: c.residual for c in self.checks}
        return {
            "family": self.family,
            "seed": "" if self.seed is None else self.seed,
            "n": self.n,
            "m": self.m,
            "lambda_max": self.lambda_max,
            "upper": self.upper,
            "eta_star": self.eta_star,
            "eta_exact": self.eta_exact,
            "q": self.q,
            "sandwich_residual": res.get("sandwich"),
            "equality_residual": res.get("upper_equality"),
            "isospectral_residual": res.get("catalyst_isospectral"),
            "orientation_residual": res.get("orientation_invariance"),
            "trace_residual": res.get("trace"),
            "duality_residual": res.get("vertex_hyperedge_duality"),
            "q_residual": res.get("q_characterization"),
            "passed": self.passed,
            "failed_checks": ";".join(c.name for c in self.checks if not c.passed),
        }


def spectrum_residual(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        return float("inf")
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def check_instance(
    g: ChemicalHypergraph,
    *,
    seed: int = 0,
    samples: int = 1000,
    flips: int = 10,
    n_limit: int = _bounds.DEFAULT_EXACT_LIMIT,
    restarts: int = 8,
    tol: float = SPECTRAL_TOL,
    bound_tol: float = BOUND_TOL,
) -> InstanceResult:
    """Run every invariant on one connected hypergraph."""
    checks = []
    eig = spectrum(g).eigenvalues
    lam = float(eig[-1])
    stripped = strip_catalysts(g)
    eig_stripped = spectrum(stripped).eigenvalues

    checks.append(Check("nonnegative", bool(eig[0] >= -tol), float(max(0.0, -eig[0]))))
    trace_res = abs(float(eig.sum()) - g.N)
    checks.append(Check("trace", trace_res <= tol, trace_res))

    iso = spectrum_residual(raw_spectrum(g).eigenvalues, eig_stripped)
    checks.append(Check("catalyst_isospectral", iso <= tol, iso))

    rng = np.random.Generator(np.random.Philox(int(seed) & 0xFFFFFFFFFFFFFFFF))
    flipped = stripped
    worst_flip = 0.0
    for _ in range(flips):
        flipped = flip_orientation(flipped, int(rng.integers(flipped.M)))
        worst_flip = max(worst_flip, spectrum_residual(eig, spectrum(flipped).eigenvalues))
    checks.append(Check("orientation_invariance", worst_flip <= tol, worst_flip))

    dual = spectrum_residual(nonzero(eig), nonzero(hyperedge_spectrum(stripped).eigenvalues))
    checks.append(Check("vertex_hyperedge_duality", dual <= tol, dual))

    report = _bounds.bounds_report(g, n_limit=n_limit, seed=seed, restarts=restarts, tol=bound_tol)
    sandwich_res = max(report.lower_eta - lam, lam - report.upper, 0.0)
    checks.append(Check("sandwich", report.checks["sandwich"], sandwich_res))
    checks.append(
        Check("upper_equality", report.checks["equality_agrees"], abs(report.upper - lam))
    )
    if report.lower_is_exact:
        greedy = _bounds.best_bipartite_sub_greedy(g, seed=seed, restarts=restarts).eta.value
        excess = max(greedy - report.lower_eta, 0.0)
        checks.append(Check("greedy_below_exact", excess <= _bounds.TIE_TOL, excess))

    qc = verify_q_characterization(g, samples=samples, seed=seed)
    q_res = max(qc.achieve_residual, qc.worst_quotient - qc.q, qc.q - lam, 0.0)
    checks.append(Check("q_characterization", qc.passed, q_res))

    return InstanceResult(
        n=g.N,
        m=g.M,
        lambda_max=lam,
        upper=report.upper,
        eta_star=report.lower_eta,
        eta_exact=report.lower_is_exact,
        q=qc.q,
        checks=checks,
    )


def run_ensemble(specs: Iterable[GeneratorSpec], **kwargs) -> Iterator[InstanceResult]:
    """Check each generated instance in order; ``kwargs`` go to ``check_instance``."""
    for spec in specs:
        g = generate(spec)
        result = check_instance(g, seed=spec.seed, **kwargs)
        result.family = spec.family
        result.seed = spec.seed
        yield result
