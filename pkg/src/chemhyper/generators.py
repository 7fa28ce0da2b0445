"""Deterministic fixtures and seeded random families of hypergraphs.

Random families draw from a counter-based Philox stream keyed by the seed, so
a (family, parameters, seed) triple always produces the same hypergraph.
Disconnected or degenerate draws are rejected and redrawn from the same
stream, up to ``MAX_RETRIES`` times.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import BadParameter, ConnectivityRetryExhausted
from .hypergraph import ChemicalHypergraph, Hyperedge, is_connected

MAX_RETRIES = 100

FAMILIES = (
    "complete_graph",
    "complete_minus_edge",
    "bipartite_constant",
    "random_oriented",
    "random_chemical",
    "random_graph",
    "figure1",
)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed) & 0xFFFFFFFFFFFFFFFF))


def _check_prob(name: str, p: float) -> None:
    if not 0.0 < p < 1.0:
        raise BadParameter(f"{name} must lie in (0, 1), got {p}")


def complete_graph(n: int) -> ChemicalHypergraph:
    if n < 2:
        raise BadParameter(f"complete graph needs N >= 2, got {n}")
    return ChemicalHypergraph.from_edges(n, [([i], [j]) for i in range(n) for j in range(i + 1, n)])


def complete_minus_edge(n: int) -> ChemicalHypergraph:
    """K_N without the edge between vertices 0 and 1."""
    if n < 3:
        raise BadParameter(f"complete graph minus an edge needs N >= 3, got {n}")
    edges = [([i], [j]) for i in range(n) for j in range(i + 1, n) if (i, j) != (0, 1)]
    return ChemicalHypergraph.from_edges(n, edges)


def figure1() -> ChemicalHypergraph:
    """Two hyperedges of cardinality 4 on six vertices, bipartite with parts {0,1,2} / {3,4,5}."""
    return ChemicalHypergraph.from_edges(6, [([0, 1], [3, 4]), ([4, 5], [1, 2])])


def bipartite_constant(
    part1_size: int, part2_size: int, m: int, c: int, seed: int = 0
) -> ChemicalHypergraph:
    """M hyperedges of cardinality c, inputs from part 1 (vertices 0..part1_size-1),
    outputs from part 2. Every vertex is covered and the result is connected."""
    if c < 2 or m < 1 or part1_size < 1 or part2_size < 1:
        raise BadParameter("need c >= 2, M >= 1 and nonempty parts")
    lo, hi = max(1, c - part2_size), min(c - 1, part1_size)
    if lo > hi:
        raise BadParameter(f"parts of sizes {part1_size}+{part2_size} cannot host |h| = {c}")
    if m * c < part1_size + part2_size:
        raise BadParameter("too few hyperedge memberships to cover every vertex")
    n = part1_size + part2_size
    rng = _rng(seed)
    for _ in range(MAX_RETRIES):
        edges = []
        for _ in range(m):
            k = int(rng.integers(lo, hi + 1))
            ins = rng.choice(part1_size, size=k, replace=False)
            outs = part1_size + rng.choice(part2_size, size=c - k, replace=False)
            edges.append(Hyperedge.of(ins.tolist(), outs.tolist()))
        g = ChemicalHypergraph(n, tuple(edges))
        if all(g.degrees()) and is_connected(g):
            return g
    raise ConnectivityRetryExhausted(f"no connected, covering draw in {MAX_RETRIES} attempts")


def _draw_oriented(rng, n, m, p_member, p_input):
    edges = []
    for _ in range(m):
        member = rng.random(n) < p_member
        is_input = rng.random(n) < p_input
        while member.sum() < 2:
            member[int(rng.integers(n))] = True
        ins = set(np.flatnonzero(member & is_input).tolist())
        outs = set(np.flatnonzero(member & ~is_input).tolist())
        # repair an empty side by moving one vertex across
        if not ins:
            v = sorted(outs)[int(rng.integers(len(outs)))]
            outs.remove(v)
            ins.add(v)
        elif not outs:
            v = sorted(ins)[int(rng.integers(len(ins)))]
            ins.remove(v)
            outs.add(v)
        edges.append((ins, outs))
    return edges


def random_oriented(
    n: int, m: int, p_member: float = 0.3, p_input: float = 0.5, seed: int = 0
) -> ChemicalHypergraph:
    """Random catalyst-free hypergraph in chemical form (both sides nonempty)."""
    if n < 2 or m < 1:
        raise BadParameter(f"need N >= 2 and M >= 1, got N={n}, M={m}")
    _check_prob("p_member", p_member)
    _check_prob("p_input", p_input)
    rng = _rng(seed)
    for _ in range(MAX_RETRIES):
        g = ChemicalHypergraph.from_edges(n, _draw_oriented(rng, n, m, p_member, p_input))
        if all(g.degrees()) and is_connected(g):
            return g
    raise ConnectivityRetryExhausted(
        f"random_oriented(N={n}, M={m}, p_member={p_member}) stayed disconnected for {MAX_RETRIES} draws"
    )


def random_chemical(
    n: int,
    m: int,
    p_member: float = 0.3,
    p_input: float = 0.5,
    p_catalyst: float = 0.2,
    seed: int = 0,
) -> ChemicalHypergraph:
    """Like ``random_oriented``, then each member becomes a catalyst with
    probability ``p_catalyst``. Draws leaving a vertex with degree 0 are redrawn."""
    if n < 2 or m < 1:
        raise BadParameter(f"need N >= 2 and M >= 1, got N={n}, M={m}")
    _check_prob("p_member", p_member)
    _check_prob("p_input", p_input)
    if not 0.0 <= p_catalyst < 1.0:
        raise BadParameter(f"p_catalyst must lie in [0, 1), got {p_catalyst}")
    rng = _rng(seed)
    for _ in range(MAX_RETRIES):
        edges = []
        for ins, outs in _draw_oriented(rng, n, m, p_member, p_input):
            cat = {v for v in sorted(ins | outs) if p_catalyst > 0 and rng.random() < p_catalyst}
            edges.append((ins | cat, outs | cat))
        g = ChemicalHypergraph.from_edges(n, edges)
        if all(g.degrees()) and is_connected(g):
            return g
    raise ConnectivityRetryExhausted(
        f"random_chemical(N={n}, M={m}) produced no valid draw in {MAX_RETRIES} attempts"
    )


def random_graph(n: int, p_edge: float = 0.5, seed: int = 0) -> ChemicalHypergraph:
    """Connected G(N, p) graph with each edge oriented at random."""
    if n < 2:
        raise BadParameter(f"need N >= 2, got {n}")
    _check_prob("p_edge", p_edge)
    rng = _rng(seed)
    for _ in range(MAX_RETRIES):
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < p_edge:
                    edges.append(([i], [j]) if rng.random() < 0.5 else ([j], [i]))
        if not edges:
            continue
        g = ChemicalHypergraph.from_edges(n, edges)
        if all(g.degrees()) and is_connected(g):
            return g
    raise ConnectivityRetryExhausted(f"G({n}, {p_edge}) stayed disconnected for {MAX_RETRIES} draws")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {"family": self.family, "params": dict(self.params), "seed": self.seed}

    @classmethod
    def from_dict(cls, data: dict) -> "GeneratorSpec":
        return cls(data["family"], dict(data.get("params", {})), int(data.get("seed", 0)))


def generate(spec: GeneratorSpec) -> ChemicalHypergraph:
    family = spec.family.replace("-", "_")
    params = dict(spec.params)
    try:
        if family == "complete_graph":
            return complete_graph(int(params["n"]))
        if family == "complete_minus_edge":
            return complete_minus_edge(int(params["n"]))
        if family == "figure1":
            return figure1()
        if family == "bipartite_constant":
            return bipartite_constant(
                int(params["part1"]), int(params["part2"]), int(params["m"]), int(params["c"]), spec.seed
            )
        if family == "random_oriented":
            return random_oriented(
                int(params["n"]),
                int(params["m"]),
                float(params.get("p_member", 0.3)),
                float(params.get("p_input", 0.5)),
                spec.seed,
            )
        if family == "random_chemical":
            return random_chemical(
                int(params["n"]),
                int(params["m"]),
                float(params.get("p_member", 0.3)),
                float(params.get("p_input", 0.5)),
                float(params.get("p_catalyst", 0.2)),
                spec.seed,
            )
        if family == "random_graph":
            return random_graph(int(params["n"]), float(params.get("p_edge", 0.5)), spec.seed)
    except KeyError as exc:
        raise BadParameter(f"family {spec.family!r} needs parameter {exc.args[0]!r}") from None
    raise BadParameter(f"unknown family {spec.family!r}; choose from {', '.join(FAMILIES)}")
