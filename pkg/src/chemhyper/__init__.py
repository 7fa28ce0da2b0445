"""Normalized Laplacian of chemical hypergraphs and bounds on its largest eigenvalue."""

from .bounds import (
    BoundsReport,
    EtaValue,
    best_bipartite_sub_exact,
    best_bipartite_sub_greedy,
    bounds_report,
    check_upper_equality,
    eta,
    max_cardinality,
)
from .cheeger import QValue, l1_quotient, q_constant, verify_q_characterization
from .errors import HypergraphError
from .hypergraph import (
    Bipartition,
    ChemicalHypergraph,
    Hyperedge,
    SubHypergraph,
    cardinality,
    degree,
    edge_sub,
    find_bipartition,
    flip_orientation,
    induced_sub,
    is_connected,
    strip_catalysts,
    validate,
)
from .jacobi import Spectrum, eig_symmetric
from .spectra import (
    hyperedge_laplacian,
    incidence,
    rayleigh_hyperedge,
    rayleigh_vertex,
    raw_spectrum,
    spectrum,
    symmetric_laplacian,
    vertex_laplacian,
)

__version__ = "0.1.0"
