import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chemhyper.errors import ZeroDegreeVertex, ZeroFunction
from chemhyper.generators import complete_graph
from chemhyper.hypergraph import ChemicalHypergraph
from chemhyper.spectra import (
    hyperedge_laplacian,
    hyperedge_spectrum,
    incidence,
    lambda_max,
    nonzero,
    raw_incidence,
    rayleigh_hyperedge,
    rayleigh_vertex,
    spectrum,
    symmetric_laplacian,
    top_vertex_function,
    vertex_laplacian,
)

from helpers import chemical_ensemble, oriented_ensemble
from oracles import laplacian_apply


def test_incidence_figure1(fig1):
    assert incidence(fig1).tolist() == [
        [1, 1, 0, -1, -1, 0],
        [0, -1, -1, 0, 1, 1],
    ]


def test_hyperedge_laplacian_figure1(fig1):
    assert np.allclose(hyperedge_laplacian(fig1), [[3, -1], [-1, 3]], atol=1e-15)
    assert np.allclose(hyperedge_spectrum(fig1).eigenvalues, [2, 4], atol=1e-12)


def test_figure1_spectrum(fig1):
    values = spectrum(fig1).eigenvalues
    assert np.allclose(values, [0, 0, 0, 0, 2, 4], atol=1e-12)
    assert lambda_max(fig1) == pytest.approx(4.0, abs=1e-12)


def test_k3_matrix(k3):
    expected = np.array([[1, -0.5, -0.5], [-0.5, 1, -0.5], [-0.5, -0.5, 1]])
    assert np.abs(vertex_laplacian(k3) - expected).max() <= 1e-15
    assert np.allclose(spectrum(k3).eigenvalues, [0, 1.5, 1.5], atol=1e-12)


@pytest.mark.parametrize("n", range(2, 9))
def test_complete_graph_spectrum(n):
    values = spectrum(complete_graph(n)).eigenvalues
    assert abs(values[0]) <= 1e-12
    assert np.abs(values[1:] - n / (n - 1)).max() <= 1e-12


def test_single_edge(single_edge):
    assert np.allclose(spectrum(single_edge).eigenvalues, [0, 2], atol=1e-12)


def test_matches_pointwise_definition():
    rng = np.random.default_rng(3)
    for g in oriented_ensemble(10) + chemical_ensemble(10):
        lap = vertex_laplacian(g)
        for _ in range(10):
            f = rng.normal(size=g.N)
            assert np.abs(lap @ f - laplacian_apply(g, f)).max() <= 1e-12


def test_symmetric_form_is_similar():
    for g in oriented_ensemble(20):
        ref = np.sort(np.linalg.eigvals(vertex_laplacian(g)).real)
        assert np.abs(spectrum(g).eigenvalues - ref).max() <= 1e-9
        s = symmetric_laplacian(g)
        assert np.array_equal(s, s.T)


def test_spectrum_properties():
    for g in oriented_ensemble(50) + chemical_ensemble(50):
        values = spectrum(g).eigenvalues
        assert values.min() >= -1e-9
        assert abs(values.sum() - g.N) <= 1e-9
        dual = hyperedge_spectrum(g).eigenvalues
        a, b = nonzero(values), nonzero(dual)
        assert len(a) == len(b)
        assert np.abs(a - b).max(initial=0.0) <= 1e-9


def test_eigenvectors(fig1):
    spec = spectrum(fig1, vectors=True)
    s = symmetric_laplacian(fig1)
    v = spec.eigenvectors
    assert np.abs(s @ v - v * spec.eigenvalues).max() <= 1e-10


def test_rayleigh_attains_lambda_max():
    for g in oriented_ensemble(20):
        f = top_vertex_function(g)
        assert rayleigh_vertex(g, f) == pytest.approx(lambda_max(g), abs=1e-9)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 29), st.data())
def test_rayleigh_bounded(idx, data):
    g = oriented_ensemble(1, start=idx)[0]
    f = data.draw(st.lists(st.floats(-10, 10), min_size=g.N, max_size=g.N))
    gamma = data.draw(st.lists(st.floats(-10, 10), min_size=g.M, max_size=g.M))
    lam = lambda_max(g)
    if any(abs(x) > 1e-3 for x in f):
        assert rayleigh_vertex(g, f) <= lam + 1e-9
    if any(abs(x) > 1e-3 for x in gamma):
        assert rayleigh_hyperedge(g, gamma) <= lam + 1e-9


def test_rayleigh_zero_function(fig1):
    with pytest.raises(ZeroFunction):
        rayleigh_vertex(fig1, np.zeros(6))
    with pytest.raises(ZeroFunction):
        rayleigh_hyperedge(fig1, [0.0, 0.0])
    with pytest.raises(ValueError):
        rayleigh_vertex(fig1, [1.0])


def test_zero_degree_rejected():
    with pytest.raises(ZeroDegreeVertex):
        spectrum(ChemicalHypergraph.from_edges(3, [([0], [1])]))


def test_nonzero_filter():
    assert nonzero([0.0, 1e-10, 2.0, -3e-9]).tolist() == [2.0]


def test_raw_incidence_matches_stripped():
    for g in chemical_ensemble(30):
        assert np.array_equal(raw_incidence(g), incidence(g))
    g = ChemicalHypergraph.from_edges(3, [([0, 1], [1, 2]), ([1], [0])])
    assert raw_incidence(g).tolist() == [[1, 0, -1], [-1, 1, 0]]
