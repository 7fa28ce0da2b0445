"""The Cheeger-like constant Q = max_h sum_{v in h} 1/deg(v) and its L1 characterization."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import ZeroFunction
from .hypergraph import ChemicalHypergraph, strip_catalysts, validate
from .spectra import degree_vector, incidence, spectrum

ACHIEVE_TOL = 1e-12
DOMINATE_TOL = 1e-12
SPECTRAL_TOL = 1e-8


@dataclass(frozen=True)
class QValue:
    value: float
    argmax_hyperedge: int
    per_edge: np.ndarray
    exact: Fraction


def q_constant(g: ChemicalHypergraph) -> QValue:
    """Q over the non-catalyst members of each hyperedge; ties go to the lowest id.

    Hyperedge ids refer to ``g`` as given; a hyperedge made only of catalysts
    scores 0.
    """
    validate(g)
    deg = g.degrees()
    sums = [sum((Fraction(1, deg[v]) for v in h.members), Fraction(0)) for h in g.hyperedges]
    best = max(range(len(sums)), key=lambda i: (sums[i], -i))
    return QValue(float(sums[best]), best, np.array([float(s) for s in sums]), sums[best])


def l1_quotient(g: ChemicalHypergraph, gamma) -> float:
    """sum_v (1/deg v)|sum_{h: v input} gamma - sum_{h: v output} gamma| / sum_h |gamma(h)|."""
    gamma = np.asarray(gamma, dtype=float)
    if gamma.shape != (g.M,):
        raise ValueError(f"hyperedge function must have length {g.M}, got shape {gamma.shape}")
    total = float(np.sum(np.abs(gamma)))
    if total == 0.0:
        raise ZeroFunction("hyperedge function is identically zero")
    signed = incidence(g).T @ gamma
    return float(np.sum(np.abs(signed) / degree_vector(g)) / total)


def indicator(g: ChemicalHypergraph, h_id: int) -> np.ndarray:
    gamma = np.zeros(g.M)
    gamma[h_id] = 1.0
    return gamma


@dataclass
class QCheck:
    passed: bool
    q: float
    achieved: float
    achieve_residual: float
    worst_quotient: float
    worst_sample: Optional[int]
    lambda_max: float
    q_below_lambda: bool
    samples: int


def sample_hyperedge_functions(m: int, samples: int, seed: int) -> np.ndarray:
    """``samples`` rows of i.i.d. uniform[-1, 1] entries; each row has its own Philox key,
    so the draw for row i does not depend on how many rows are requested."""
    out = np.empty((samples, m))
    for i in range(samples):
        rng = np.random.Generator(np.random.Philox(key=int(seed) & 0xFFFFFFFFFFFFFFFF, counter=[0, 0, 0, i]))
        row = rng.uniform(-1.0, 1.0, size=m)
        while not np.any(row):
            row = rng.uniform(-1.0, 1.0, size=m)
        out[i] = row
    return out


def verify_q_characterization(g: ChemicalHypergraph, samples: int = 1000, seed: int = 0) -> QCheck:
    """Check that the argmax indicator attains Q, that random functions never
    exceed it, and that Q <= lambda_max."""
    q = q_constant(g)
    achieved = l1_quotient(g, indicator(g, q.argmax_hyperedge))
    inc = incidence(g)
    w = 1.0 / degree_vector(g)
    worst, worst_i = -np.inf, None
    if samples:
        gammas = sample_hyperedge_functions(g.M, samples, seed)
        quot = (np.abs(gammas @ inc) @ w) / np.abs(gammas).sum(axis=1)
        worst_i = int(np.argmax(quot))
        worst = float(quot[worst_i])
    lam = spectrum(strip_catalysts(g)).largest
    achieve_res = abs(achieved - q.value)
    below = q.value <= lam + SPECTRAL_TOL
    passed = achieve_res <= ACHIEVE_TOL and worst <= q.value + DOMINATE_TOL and below
    return QCheck(passed, q.value, achieved, achieve_res, worst, worst_i, lam, below, samples)
