"""Incidence matrix, normalized Laplacians and Rayleigh quotients."""

from __future__ import annotations

import numpy as np

from .errors import ZeroDegreeVertex, ZeroFunction
from .hypergraph import ChemicalHypergraph, strip_catalysts, validate
from .jacobi import DEFAULT_TOL, Spectrum, eig_symmetric

ZERO_TOL = 1e-8


def incidence(g: ChemicalHypergraph) -> np.ndarray:
    """Signed M x N incidence: +1 for input-only, -1 for output-only, 0 otherwise."""
    inc = np.zeros((g.M, g.N))
    for hid, h in enumerate(g.hyperedges):
        for v in h.pure_inputs:
            inc[hid, v] = 1.0
        for v in h.pure_outputs:
            inc[hid, v] = -1.0
    return inc


def raw_incidence(g: ChemicalHypergraph) -> np.ndarray:
    """Input memberships minus output memberships, built from the hyperedges as
    given. A catalyst contributes +1 and -1 to the same entry, so this equals
    ``incidence`` without going through catalyst stripping."""
    inc = np.zeros((g.M, g.N))
    for hid, h in enumerate(g.hyperedges):
        for v in h.inputs:
            inc[hid, v] += 1.0
        for v in h.outputs:
            inc[hid, v] -= 1.0
    return inc


def degree_vector(g: ChemicalHypergraph) -> np.ndarray:
    deg = np.asarray(g.degrees(), dtype=float)
    if np.any(deg == 0):
        raise ZeroDegreeVertex(f"vertex {int(np.argmin(deg))} has degree 0")
    return deg


def vertex_laplacian(g: ChemicalHypergraph) -> np.ndarray:
    """L = D^-1 I^T I, acting on vertex functions."""
    inc = incidence(g)
    return (inc.T @ inc) / degree_vector(g)[:, None]


def symmetric_laplacian(g: ChemicalHypergraph) -> np.ndarray:
    """D^-1/2 I^T I D^-1/2, similar to the vertex Laplacian."""
    inc = incidence(g)
    scaled = inc / np.sqrt(degree_vector(g))
    s = scaled.T @ scaled
    return 0.5 * (s + s.T)


def raw_spectrum(g: ChemicalHypergraph, tol: float = DEFAULT_TOL) -> Spectrum:
    """Spectrum of g with its catalysts in place, from ``raw_incidence``."""
    validate(g)
    scaled = raw_incidence(g) / np.sqrt(degree_vector(g))
    s = scaled.T @ scaled
    return eig_symmetric(0.5 * (s + s.T), tol=tol, vectors=False)


def hyperedge_laplacian(g: ChemicalHypergraph) -> np.ndarray:
    """I D^-1 I^T, acting on hyperedge functions."""
    inc = incidence(g)
    k = (inc / degree_vector(g)) @ inc.T
    return 0.5 * (k + k.T)


def spectrum(g: ChemicalHypergraph, vectors: bool = False, tol: float = DEFAULT_TOL) -> Spectrum:
    """Eigenvalues of the normalized Laplacian, ascending.

    Catalysts are stripped first; this does not change the spectrum.
    Eigenvectors, if requested, are those of the symmetric form.
    """
    validate(g)
    return eig_symmetric(symmetric_laplacian(strip_catalysts(g)), tol=tol, vectors=vectors)


def hyperedge_spectrum(g: ChemicalHypergraph, tol: float = DEFAULT_TOL) -> Spectrum:
    validate(g)
    return eig_symmetric(hyperedge_laplacian(strip_catalysts(g)), tol=tol, vectors=False)


def lambda_max(g: ChemicalHypergraph) -> float:
    return spectrum(g).largest


def nonzero(values, zero_tol: float = ZERO_TOL) -> np.ndarray:
    values = np.sort(np.asarray(values, dtype=float))
    return values[np.abs(values) > zero_tol]


def top_vertex_function(g: ChemicalHypergraph) -> np.ndarray:
    """A maximizer of the vertex Rayleigh quotient: D^-1/2 times the top symmetric eigenvector."""
    spec = spectrum(g, vectors=True)
    return spec.eigenvectors[:, -1] / np.sqrt(degree_vector(g))


def _nonzero_function(x, size: int, what: str) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (size,):
        raise ValueError(f"{what} must have length {size}, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{what} has non-finite entries")
    if not np.any(x):
        raise ZeroFunction(f"{what} is identically zero")
    return x


def rayleigh_vertex(g: ChemicalHypergraph, f) -> float:
    """sum_h (sum_{inputs} f - sum_{outputs} f)^2 / sum_v deg(v) f(v)^2."""
    f = _nonzero_function(f, g.N, "vertex function")
    inc = incidence(g)
    deg = degree_vector(g)
    denom = float(np.dot(deg, f * f))
    if denom == 0.0:
        raise ZeroFunction("vertex function vanishes on every vertex of positive degree")
    return float(np.sum((inc @ f) ** 2) / denom)


def rayleigh_hyperedge(g: ChemicalHypergraph, gamma) -> float:
    """sum_v (1/deg v)(sum_{h: v input} gamma - sum_{h: v output} gamma)^2 / sum_h gamma(h)^2."""
    gamma = _nonzero_function(gamma, g.M, "hyperedge function")
    inc = incidence(g)
    deg = degree_vector(g)
    signed = inc.T @ gamma
    return float(np.sum(signed * signed / deg) / np.dot(gamma, gamma))
