from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chemhyper.bounds import eta
from chemhyper.cheeger import (
    indicator,
    l1_quotient,
    q_constant,
    sample_hyperedge_functions,
    verify_q_characterization,
)
from chemhyper.errors import ZeroFunction
from chemhyper.generators import complete_graph, random_graph
from chemhyper.hypergraph import ChemicalHypergraph, edge_sub
from chemhyper.spectra import lambda_max

from helpers import chemical_ensemble, oriented_ensemble


def test_single_edge(single_edge):
    q = q_constant(single_edge)
    assert q.exact == 2 and q.argmax_hyperedge == 0
    assert lambda_max(single_edge) == pytest.approx(2.0, abs=1e-12)


@pytest.mark.parametrize("n", range(2, 9))
def test_complete_graph(n):
    q = q_constant(complete_graph(n))
    assert q.exact == Fraction(2, n - 1)
    assert q.argmax_hyperedge == 0
    assert q.value <= lambda_max(complete_graph(n))


def test_figure1(fig1):
    q = q_constant(fig1)
    assert q.exact == 3
    assert q.per_edge.tolist() == [3.0, 3.0]
    check = verify_q_characterization(fig1)
    assert check.passed and check.achieved == 3.0


def test_catalysts_do_not_count():
    g = ChemicalHypergraph.from_edges(3, [([0, 1], [1, 2]), ([1], [0])])
    # degrees: v0 2, v1 1, v2 1; hyperedge 0 has members {0, 2}
    assert q_constant(g).per_edge.tolist() == [1.5, 1.5]


def test_indicator_achieves_q():
    for g in oriented_ensemble(30) + chemical_ensemble(30):
        q = q_constant(g)
        assert abs(l1_quotient(g, indicator(g, q.argmax_hyperedge)) - q.value) <= 1e-12


def test_k5_passes():
    check = verify_q_characterization(complete_graph(5), samples=1000)
    assert check.passed
    assert check.worst_quotient <= check.q + 1e-12


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 49), st.floats(0.01, 100), st.booleans())
def test_scale_invariant(idx, scale, negate):
    g = oriented_ensemble(1, start=idx)[0]
    gamma = sample_hyperedge_functions(g.M, 1, seed=idx)[0]
    c = -scale if negate else scale
    assert l1_quotient(g, c * gamma) == pytest.approx(l1_quotient(g, gamma), rel=1e-12)


def test_random_functions_dominated():
    for g in oriented_ensemble(20):
        q = q_constant(g).value
        for gamma in sample_hyperedge_functions(g.M, 100, seed=11):
            assert l1_quotient(g, gamma) <= q + 1e-12


def test_q_is_single_hyperedge_eta():
    for g in oriented_ensemble(20):
        q = q_constant(g)
        single = max(eta(g, edge_sub(g, [k])).exact for k in range(g.M))
        assert single == q.exact
        assert q.value <= lambda_max(g) + 1e-8


def test_graph_form():
    for s in range(20):
        g = random_graph(7, 0.5, seed=s)
        deg = g.degrees()
        expected = max(
            Fraction(1, deg[next(iter(h.inputs))]) + Fraction(1, deg[next(iter(h.outputs))])
            for h in g.hyperedges
        )
        assert q_constant(g).exact == expected


def test_sampling_is_prefix_stable():
    a = sample_hyperedge_functions(5, 10, seed=3)
    b = sample_hyperedge_functions(5, 4, seed=3)
    assert np.array_equal(a[:4], b)
    assert np.all(np.abs(a) <= 1.0)
    assert not np.array_equal(a, sample_hyperedge_functions(5, 10, seed=4))


def test_zero_function(fig1):
    with pytest.raises(ZeroFunction):
        l1_quotient(fig1, [0.0, 0.0])
