"""Upper and lower bounds on the largest Laplacian eigenvalue.

The upper bound is the largest hyperedge cardinality. The lower bound is
eta of a bipartite sub-hypergraph,

    eta = sum_{v in V'} deg_sub(v)^2 / deg(v)  /  (number of sub-hyperedges),

where deg is the degree in the ambient hypergraph. A sub-hypergraph here is a
vertex subset V' together with a selection of hyperedges, each restricted to
V'. Selecting every hyperedge that meets V' gives the vertex-induced
sub-hypergraph; selecting a few hyperedges and taking the vertices they cover
gives the edge-induced one (e.g. the star of a vertex in a graph). Both kinds
are searched.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple, Optional

import networkx as nx
import numpy as np

from .errors import DisconnectedInput, NoInducedEdges, TooLarge
from .hypergraph import (
    Bipartition,
    ChemicalHypergraph,
    SubHypergraph,
    components,
    find_bipartition,
    induced_sub,
    is_bipartite,
    is_connected,
    strip_catalysts,
    validate,
)
from .spectra import spectrum

log = logging.getLogger(__name__)

DEFAULT_EXACT_LIMIT = 12
TIE_TOL = 1e-12
SANDWICH_TOL = 1e-8
ENUMERATE_LIMIT = 12


@dataclass(frozen=True)
class EtaValue:
    value: float
    numerator: float
    denominator: int
    exact: Fraction

    def __float__(self) -> float:
        return self.value


class UpperEquality(NamedTuple):
    is_equality: bool
    bipartite: bool
    constant_cardinality: bool


@dataclass(frozen=True)
class BipartiteSub:
    """Result of a lower-bound search: the best sub-hypergraph found and its eta."""

    eta: EtaValue
    sub: SubHypergraph
    bipartition: Bipartition

    @property
    def vertices(self) -> list[int]:
        return sorted(self.sub.vertices)

    @property
    def edge_ids(self) -> list[int]:
        return list(self.sub.edge_ids)


@dataclass
class BoundsReport:
    lambda_max: float
    upper: int
    upper_equality: UpperEquality
    lower_eta: float
    lower_eta_witness: BipartiteSub
    lower_is_exact: bool
    upper_gap: float
    lower_gap: float
    spectral_equality: bool
    checks: dict = field(default_factory=dict)

    @property
    def sandwich_holds(self) -> bool:
        return self.checks.get("sandwich", False)


def max_cardinality(g: ChemicalHypergraph) -> int:
    return max(len(h) for h in g.hyperedges)


def check_upper_equality(g: ChemicalHypergraph) -> UpperEquality:
    """Combinatorial test for lambda_max == max |h|: bipartite with constant cardinality.

    The characterization needs a connected hypergraph. Catalysts can hold a
    hypergraph together that falls apart once they are stripped; the spectrum
    is then the union of the component spectra, so equality holds iff some
    component is bipartite with every cardinality equal to the global max |h|.
    The ``bipartite`` and ``constant_cardinality`` flags describe the whole
    stripped hypergraph.
    """
    validate(g)
    if not is_connected(g):
        raise DisconnectedInput("upper-bound equality is characterized for connected hypergraphs only")
    stripped = strip_catalysts(g)
    sizes = [len(h) for h in stripped.hyperedges]
    bip = is_bipartite(stripped)
    const = len(set(sizes)) == 1
    comps = components(stripped)
    if len(comps) == 1:
        return UpperEquality(bip and const, bip, const)
    top = max(sizes)
    equality = False
    for comp in comps:
        sub = induced_sub(stripped, comp)
        if {len(e.members) for e in sub.edges} == {top} and find_bipartition(sub) is not None:
            equality = True
            break
    return UpperEquality(equality, bip, const)


def eta(g: ChemicalHypergraph, sub: SubHypergraph) -> EtaValue:
    """eta of ``sub``; ambient degrees are taken from ``g``."""
    if not sub.edges:
        raise NoInducedEdges("sub-hypergraph has no hyperedges")
    deg = g.degrees()
    num = Fraction(0)
    for v in sub.vertices:
        d = sub.degree(v)
        if d:
            num += Fraction(d * d, deg[v])
    exact = num / len(sub.edges)
    return EtaValue(float(exact), float(num), len(sub.edges), exact)


# -- search machinery, on the catalyst-free hypergraph ---------------------


class _Problem:
    def __init__(self, g: ChemicalHypergraph):
        self.g = g
        self.n = g.N
        self.edge_map = [i for i, h in enumerate(g.hyperedges) if h.members]
        self.ins = [g.hyperedges[i].pure_inputs for i in self.edge_map]
        self.outs = [g.hyperedges[i].pure_outputs for i in self.edge_map]
        self.m = len(self.edge_map)
        deg = g.degrees()
        self.w = np.array([1.0 / d if d else 0.0 for d in deg])
        self.abs_inc = np.zeros((self.m, self.n))
        self.in_inc = np.zeros((self.m, self.n))
        self.out_inc = np.zeros((self.m, self.n))
        for k in range(self.m):
            for v in self.ins[k]:
                self.in_inc[k, v] = 1.0
            for v in self.outs[k]:
                self.out_inc[k, v] = 1.0
        self.abs_inc = self.in_inc + self.out_inc

    def compatible(self, k: int, a: frozenset, b: frozenset) -> bool:
        vh = a | b
        ins, outs = self.ins[k] & vh, self.outs[k] & vh
        if not ins and not outs:
            return False
        return (ins <= a and outs <= b) or (ins <= b and outs <= a)

    def value(self, vh: frozenset, s) -> float:
        if not s:
            return -np.inf
        deg = np.zeros(self.n)
        for k in s:
            deg += self.abs_inc[k]
        mask = np.zeros(self.n, dtype=bool)
        mask[list(vh)] = True
        return float(np.sum(self.w[mask] * deg[mask] ** 2) / len(s))

    def key(self, vh, s) -> tuple:
        covered = set()
        for k in s:
            covered |= (self.ins[k] | self.outs[k]) & vh
        return (tuple(sorted(covered)), tuple(sorted(self.edge_map[k] for k in s)))

    def result(self, vh, s) -> BipartiteSub:
        verts, ids = self.key(vh, s)
        sub = induced_sub(self.g, verts, ids)
        part = find_bipartition(sub)
        if part is None:  # pragma: no cover - guarded by construction
            raise AssertionError("search produced a non-bipartite sub-hypergraph")
        return BipartiteSub(eta(self.g, sub), sub, part)


class _Best:
    def __init__(self):
        self.value = -np.inf
        self.key: Optional[tuple] = None
        self.state = None

    def offer(self, value: float, key_fn: Callable[[], tuple], state) -> None:
        if value > self.value + TIE_TOL:
            self.value, self.key, self.state = value, key_fn(), state
        elif value >= self.value - TIE_TOL:
            key = key_fn()
            if self.key is None or key < self.key:
                self.value = max(self.value, value)
                self.key, self.state = key, state


def max_density_subset(k: np.ndarray) -> tuple[float, np.ndarray]:
    """Maximize x^T K x / x^T x over nonzero 0/1 vectors x, for symmetric K >= 0.

    Dinkelbach iteration; each parametric step maximizes the supermodular
    function x^T K x - t |x| with a minimum s-t cut.
    """
    m = k.shape[0]
    if m <= ENUMERATE_LIMIT:
        return _enumerate_density(k)
    x = np.ones(m, dtype=bool)
    t = float(k.sum() / m)
    for _ in range(200):
        y = _parametric_cut(k, t)
        if not y.any():
            break
        fy = float(k[np.ix_(y, y)].sum())
        if fy - t * y.sum() <= TIE_TOL * max(1.0, t):
            break
        x, t = y, fy / y.sum()
    return t, np.flatnonzero(x)


@functools.lru_cache(maxsize=None)
def _subset_table(m: int) -> np.ndarray:
    codes = np.arange(1, 1 << m, dtype=np.int64)
    return ((codes[:, None] >> np.arange(m)) & 1).astype(float)


def _enumerate_density(k: np.ndarray) -> tuple[float, np.ndarray]:
    x = _subset_table(k.shape[0])
    values = np.einsum("ij,jk,ik->i", x, k, x) / x.sum(axis=1)
    best = int(np.argmax(values))
    return float(values[best]), np.flatnonzero(x[best])


def _parametric_cut(k: np.ndarray, t: float) -> np.ndarray:
    m = k.shape[0]
    off = k - np.diag(np.diag(k))
    u = np.diag(k) - t + off.sum(axis=1)
    graph = nx.DiGraph()
    graph.add_nodes_from(["s", "t"])
    graph.add_nodes_from(range(m))
    for i in range(m):
        if u[i] > 0:
            graph.add_edge("s", i, capacity=float(u[i]))
        elif u[i] < 0:
            graph.add_edge(i, "t", capacity=float(-u[i]))
        for j in range(i + 1, m):
            if off[i, j] > 0:
                graph.add_edge(i, j, capacity=float(off[i, j]))
                graph.add_edge(j, i, capacity=float(off[i, j]))
    _, (source_side, _) = nx.minimum_cut(graph, "s", "t")
    y = np.zeros(m, dtype=bool)
    for node in source_side:
        if node != "s":
            y[node] = True
    return y


def _colorings(n: int, chunk: int = 1 << 16):
    """Yield blocks of vertex 3-colorings (0 = excluded, 1, 2), one per global swap class."""
    total = 3**n
    powers = 3 ** np.arange(n, dtype=np.int64)
    for start in range(1, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = ((idx[:, None] // powers) % 3).astype(np.int8)
        first = digits[np.arange(len(idx)), np.argmax(digits > 0, axis=1)]
        yield digits[first == 1]


def best_bipartite_sub_exact(
    g: ChemicalHypergraph, n_limit: int = DEFAULT_EXACT_LIMIT
) -> BipartiteSub:
    """Maximize eta over all bipartite sub-hypergraphs of ``g``.

    Every sub-hypergraph is described by a 3-coloring of the vertices
    (excluded / side 1 / side 2) and a subset of the hyperedges compatible
    with it, so the search enumerates 3^N / 2 colorings. For each coloring,
    the set of all compatible hyperedges is scored directly; a row-sum
    (Perron) bound decides whether a proper subset could do better, in which
    case the subset problem is solved exactly by ``max_density_subset``.

    Raises:
        TooLarge: if N exceeds ``n_limit``.
    """
    validate(g)
    if g.N > n_limit:
        raise TooLarge(
            f"exact search limited to N <= {n_limit} (got N = {g.N}); use best_bipartite_sub_greedy"
        )
    p = _Problem(g)
    best = _Best()
    for k in range(p.m):
        vh = p.ins[k] | p.outs[k]
        best.offer(float(p.w[list(vh)].sum()), lambda vh=vh, k=k: p.key(vh, [k]), (vh, [k]))

    pending = []
    for digits in _colorings(p.n):
        a = (digits == 1).astype(float)
        b = (digits == 2).astype(float)
        vmask = a + b
        in_a, in_b = a @ p.in_inc.T, b @ p.in_inc.T
        out_a, out_b = a @ p.out_inc.T, b @ p.out_inc.T
        touched = vmask @ p.abs_inc.T > 0
        compat = touched & (((in_b == 0) & (out_a == 0)) | ((in_a == 0) & (out_b == 0)))
        cnt = compat.sum(axis=1)
        ok = cnt > 0
        if not ok.any():
            continue
        compat, cnt, vmask, digits = compat[ok], cnt[ok], vmask[ok], digits[ok]
        deg = compat.astype(float) @ p.abs_inc
        weighted = deg * vmask * p.w
        values = np.sum(weighted * deg, axis=1) / cnt
        rows = np.where(compat, weighted @ p.abs_inc.T, -np.inf).max(axis=1)

        top = values.max()
        for i in np.flatnonzero(values >= max(top, best.value) - TIE_TOL):
            vh, s = _state(digits[i], compat[i])
            best.offer(float(values[i]), lambda vh=vh, s=s: p.key(vh, s), (vh, s))
        loose = (rows > values + TIE_TOL) & (rows > best.value + TIE_TOL)
        if loose.any():
            relax = _relaxation_bound(p, vmask[loose], compat[loose])
            keep = relax > np.maximum(values[loose], best.value) + TIE_TOL
            sel = np.flatnonzero(loose)[keep]
            if len(sel):
                pending.append((relax[keep], digits[sel], compat[sel]))

    if pending:
        bounds = np.concatenate([item[0] for item in pending])
        all_digits = np.concatenate([item[1] for item in pending])
        all_compat = np.concatenate([item[2] for item in pending])
        order = np.argsort(-bounds, kind="stable")
    else:
        bounds, order = np.zeros(0), np.zeros(0, dtype=int)
    seen = set()
    solved = 0
    for i in order:
        if bounds[i] <= best.value + TIE_TOL:
            break
        digits, compat = all_digits[i], all_compat[i]
        vmask = digits > 0
        ids = np.flatnonzero(compat)
        sig = (np.packbits(vmask).tobytes(), np.packbits(compat).tobytes())
        if sig in seen:
            continue
        seen.add(sig)
        sub_inc = p.abs_inc[np.ix_(ids, np.flatnonzero(vmask))]
        kmat = (sub_inc * p.w[vmask]) @ sub_inc.T
        value, chosen = max_density_subset(kmat)
        solved += 1
        vh, _ = _state(digits, compat)
        s = [int(ids[j]) for j in chosen]
        best.offer(value, lambda vh=vh, s=s: p.key(vh, s), (vh, s))
    log.debug("exact search: %d pending colorings, %d subset problems solved", len(order), solved)
    vh, s = best.state
    return p.result(vh, s)


def _relaxation_bound(p: _Problem, vmask: np.ndarray, compat: np.ndarray, chunk: int = 4096):
    """Largest eigenvalue of each coloring's hyperedge matrix: the real-valued
    relaxation of the subset problem, hence an upper bound on it."""
    out = np.empty(len(vmask))
    for start in range(0, len(vmask), chunk):
        vm = vmask[start : start + chunk]
        cm = compat[start : start + chunk].astype(float)
        scaled = p.abs_inc[None, :, :] * (vm * p.w)[:, None, :]
        kmat = scaled @ p.abs_inc.T
        kmat *= cm[:, :, None] * cm[:, None, :]
        out[start : start + chunk] = np.linalg.eigvalsh(kmat)[:, -1]
    return out


def _state(digits: np.ndarray, compat: np.ndarray) -> tuple[frozenset, list[int]]:
    vh = frozenset(int(v) for v in np.flatnonzero(digits > 0))
    return vh, [int(k) for k in np.flatnonzero(compat)]


def best_bipartite_sub_greedy(
    g: ChemicalHypergraph,
    seed: int = 0,
    restarts: int = 8,
    visit: Optional[Callable[[float], None]] = None,
) -> BipartiteSub:
    """Local search for a bipartite sub-hypergraph with large eta.

    Starts from every single hyperedge and from ``restarts`` random vertex
    colorings. Moves add or drop one hyperedge or one vertex and are taken
    only if they keep the sub-hypergraph bipartite and strictly increase eta;
    among equally good moves the smaller sub-hypergraph wins. ``visit`` is
    called with the eta of every state the search settles on.
    """
    validate(g)
    p = _Problem(g)
    rng = np.random.Generator(np.random.Philox(seed))
    starts = []
    for k in range(p.m):
        starts.append((p.ins[k], p.outs[k], frozenset([k])))
    for _ in range(restarts):
        digits = rng.integers(0, 3, size=p.n)
        a = frozenset(int(v) for v in np.flatnonzero(digits == 1))
        b = frozenset(int(v) for v in np.flatnonzero(digits == 2))
        s = frozenset(k for k in range(p.m) if p.compatible(k, a, b))
        if s:
            starts.append((a, b, s))

    best = _Best()
    for a, b, s in starts:
        a, b, s, value = _climb(p, a, b, s, visit)
        vh = a | b
        best.offer(value, lambda vh=vh, s=s: p.key(vh, s), (vh, s))
    vh, s = best.state
    return p.result(vh, s)


def _climb(p: _Problem, a, b, s, visit):
    value = p.value(a | b, s)
    if visit:
        visit(value)
    while True:
        best_move = None
        best_rank = None
        for cand in _moves(p, a, b, s):
            ca, cb, cs = cand
            v = p.value(ca | cb, cs)
            if v <= value + TIE_TOL:
                continue
            rank = (v, -len(ca | cb), -len(cs))
            if best_rank is None or rank[0] > best_rank[0] + TIE_TOL or (
                abs(rank[0] - best_rank[0]) <= TIE_TOL and rank[1:] > best_rank[1:]
            ):
                best_move, best_rank = cand, rank
        if best_move is None:
            return a, b, s, value
        a, b, s = best_move
        value = p.value(a | b, s)
        if visit:
            visit(value)


def _moves(p: _Problem, a: frozenset, b: frozenset, s: frozenset):
    vh = a | b
    for k in range(p.m):
        if k in s:
            if len(s) > 1:
                yield a, b, s - {k}
            continue
        ns = s | {k}
        if p.compatible(k, a, b):
            yield a, b, ns
        ins, outs = p.ins[k] & vh, p.outs[k] & vh
        if (ins <= b and outs <= a) and (ins or outs):
            na, nb = a | (p.outs[k] - vh), b | (p.ins[k] - vh)
        elif ins <= a and outs <= b:
            na, nb = a | (p.ins[k] - vh), b | (p.outs[k] - vh)
        else:
            continue
        if (na, nb) != (a, b) and all(p.compatible(j, na, nb) for j in ns):
            yield na, nb, ns
    for v in sorted(vh):
        na, nb = a - {v}, b - {v}
        ns = frozenset(k for k in s if p.compatible(k, na, nb))
        if ns:
            yield na, nb, ns
    for v in range(p.n):
        if v in vh:
            continue
        for na, nb in ((a | {v}, b), (a, b | {v})):
            if all(p.compatible(k, na, nb) for k in s):
                yield na, nb, s


def lower_bound(
    g: ChemicalHypergraph, n_limit: int = DEFAULT_EXACT_LIMIT, seed: int = 0, restarts: int = 8
) -> tuple[BipartiteSub, bool]:
    if g.N <= n_limit:
        return best_bipartite_sub_exact(g, n_limit), True
    return best_bipartite_sub_greedy(g, seed=seed, restarts=restarts), False


def bounds_report(
    g: ChemicalHypergraph,
    n_limit: int = DEFAULT_EXACT_LIMIT,
    seed: int = 0,
    restarts: int = 8,
    tol: float = SANDWICH_TOL,
) -> BoundsReport:
    """lambda_max with its upper bound, best eta lower bound and the equality test.

    ``checks['sandwich']`` records whether eta* - tol <= lambda_max <= max|h| + tol.
    """
    equality = check_upper_equality(g)
    lam = spectrum(g).largest
    upper = max_cardinality(g)
    witness, exact = lower_bound(g, n_limit=n_limit, seed=seed, restarts=restarts)
    low = witness.eta.value
    spectral_eq = abs(lam - upper) <= tol
    checks = {
        "sandwich": low - tol <= lam <= upper + tol,
        "equality_agrees": spectral_eq == equality.is_equality,
        "witness_bipartite": find_bipartition(witness.sub) is not None,
    }
    return BoundsReport(
        lambda_max=lam,
        upper=upper,
        upper_equality=equality,
        lower_eta=low,
        lower_eta_witness=witness,
        lower_is_exact=exact,
        upper_gap=upper - lam,
        lower_gap=lam - low,
        spectral_equality=spectral_eq,
        checks=checks,
    )
