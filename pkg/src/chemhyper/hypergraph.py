"""Chemical hypergraphs: data model and combinatorial operations.

Vertices are dense integer ids ``0..N-1``. A hyperedge is a pair of vertex
sets (inputs, outputs); a vertex in both is a catalyst for that hyperedge and
is ignored by degrees, cardinalities and the Laplacian. Hyperedges form an
ordered multiset and are identified by their position.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    EmptyHyperedge,
    EmptySubset,
    NonChemicalForm,
    OutOfRangeVertex,
    ZeroDegreeVertex,
)


@dataclass(frozen=True)
class Hyperedge:
    inputs: frozenset
    outputs: frozenset

    @classmethod
    def of(cls, inputs: Iterable[int], outputs: Iterable[int]) -> "Hyperedge":
        return cls(frozenset(int(v) for v in inputs), frozenset(int(v) for v in outputs))

    @property
    def catalysts(self) -> frozenset:
        return self.inputs & self.outputs

    @property
    def pure_inputs(self) -> frozenset:
        return self.inputs - self.outputs

    @property
    def pure_outputs(self) -> frozenset:
        return self.outputs - self.inputs

    @property
    def members(self) -> frozenset:
        """Non-catalyst vertices."""
        return self.inputs ^ self.outputs

    @property
    def vertices(self) -> frozenset:
        return self.inputs | self.outputs

    def __len__(self) -> int:
        return len(self.members)

    def flipped(self) -> "Hyperedge":
        return Hyperedge(self.outputs, self.inputs)

    def stripped(self) -> "Hyperedge":
        return Hyperedge(self.pure_inputs, self.pure_outputs)

    def restricted(self, vertices: frozenset) -> "Hyperedge":
        return Hyperedge(self.inputs & vertices, self.outputs & vertices)

    def __repr__(self) -> str:
        return f"Hyperedge({sorted(self.inputs)}, {sorted(self.outputs)})"


@dataclass(frozen=True)
class ChemicalHypergraph:
    vertex_count: int
    hyperedges: tuple

    @classmethod
    def from_edges(
        cls, vertex_count: int, edges: Iterable[tuple[Iterable[int], Iterable[int]]]
    ) -> "ChemicalHypergraph":
        return cls(int(vertex_count), tuple(Hyperedge.of(i, o) for i, o in edges))

    @property
    def N(self) -> int:
        return self.vertex_count

    @property
    def M(self) -> int:
        return len(self.hyperedges)

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for h in self.hyperedges:
            for v in h.members:
                deg[v] += 1
        return deg

    def has_catalysts(self) -> bool:
        return any(h.catalysts for h in self.hyperedges)

    def edge_tuples(self) -> list[tuple[list[int], list[int]]]:
        return [(sorted(h.inputs), sorted(h.outputs)) for h in self.hyperedges]


@dataclass(frozen=True)
class Bipartition:
    """A 2-coloring ``vertex -> 1 | 2`` over a vertex subset."""

    side: dict

    @property
    def part1(self) -> frozenset:
        return frozenset(v for v, s in self.side.items() if s == 1)

    @property
    def part2(self) -> frozenset:
        return frozenset(v for v, s in self.side.items() if s == 2)

    def __getitem__(self, v: int) -> int:
        return self.side[v]


@dataclass(frozen=True)
class InducedEdge:
    edge_id: int
    inputs: frozenset
    outputs: frozenset

    @property
    def members(self) -> frozenset:
        return self.inputs ^ self.outputs


@dataclass(frozen=True)
class SubHypergraph:
    """A sub-hypergraph: a vertex subset and a selection of parent hyperedges
    restricted to it.

    ``induced_sub`` selects every hyperedge meeting the subset; ``edge_sub``
    selects given hyperedges and takes the vertices they cover.
    """

    parent: ChemicalHypergraph
    vertices: frozenset
    edges: tuple

    @property
    def edge_ids(self) -> tuple:
        return tuple(e.edge_id for e in self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e.members)

    def __len__(self) -> int:
        return len(self.edges)


def validate(g: ChemicalHypergraph, require_chemical_form: bool = False) -> ChemicalHypergraph:
    """Check the standing assumptions on ``g`` and return it unchanged.

    Raises OutOfRangeVertex, EmptyHyperedge, NonChemicalForm or
    ZeroDegreeVertex, in that order of precedence.
    """
    n = g.vertex_count
    if n < 1:
        raise ZeroDegreeVertex("hypergraph has no vertices")
    for hid, h in enumerate(g.hyperedges):
        for v in h.vertices:
            if not 0 <= v < n:
                raise OutOfRangeVertex(f"hyperedge {hid} references vertex {v}, but N = {n}")
    for hid, h in enumerate(g.hyperedges):
        if not h.inputs and not h.outputs:
            raise EmptyHyperedge(f"hyperedge {hid} has no inputs and no outputs")
        if require_chemical_form and (not h.inputs or not h.outputs):
            side = "inputs" if not h.inputs else "outputs"
            raise NonChemicalForm(f"hyperedge {hid} has no {side}")
    deg = g.degrees()
    zero = [v for v in range(n) if deg[v] == 0]
    if zero:
        raise ZeroDegreeVertex(
            f"vertex {zero[0]} has degree 0 (it is in no hyperedge, or only as a catalyst)"
        )
    return g


def degree(g: ChemicalHypergraph, v: int) -> int:
    return sum(1 for h in g.hyperedges if v in h.members)


def cardinality(g: ChemicalHypergraph, h: Union[int, Hyperedge]) -> int:
    edge = g.hyperedges[h] if isinstance(h, int) else h
    return len(edge)


def strip_catalysts(g: ChemicalHypergraph) -> ChemicalHypergraph:
    """Remove every catalyst from its hyperedge; drop hyperedges left empty."""
    edges = []
    for h in g.hyperedges:
        s = h.stripped()
        if s.inputs or s.outputs:
            edges.append(s)
    return ChemicalHypergraph(g.vertex_count, tuple(edges))


def flip_orientation(g: ChemicalHypergraph, h_id: int) -> ChemicalHypergraph:
    if not 0 <= h_id < g.M:
        raise IndexError(f"hyperedge id {h_id} out of range for M = {g.M}")
    edges = list(g.hyperedges)
    edges[h_id] = edges[h_id].flipped()
    return ChemicalHypergraph(g.vertex_count, tuple(edges))


class _DisjointSet:
    def __init__(self, items: Iterable[int]):
        self.parent = {v: v for v in items}

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def is_connected(g: ChemicalHypergraph) -> bool:
    """Co-membership connectivity; input/output roles are irrelevant."""
    ds = _DisjointSet(range(g.vertex_count))
    for h in g.hyperedges:
        vs = sorted(h.vertices)
        for v in vs[1:]:
            ds.union(vs[0], v)
    return len({ds.find(v) for v in range(g.vertex_count)}) <= 1


def components(g: ChemicalHypergraph) -> list[list[int]]:
    ds = _DisjointSet(range(g.vertex_count))
    for h in g.hyperedges:
        vs = sorted(h.vertices)
        for v in vs[1:]:
            ds.union(vs[0], v)
    groups: dict[int, list[int]] = {}
    for v in range(g.vertex_count):
        groups.setdefault(ds.find(v), []).append(v)
    return sorted(groups.values())


class ParityUnionFind:
    """Union-find that also tracks the parity of each element relative to its root."""

    def __init__(self, items: Iterable[int]):
        self.parent = {v: v for v in items}
        self.parity = {v: 0 for v in self.parent}

    def find(self, v: int) -> tuple[int, int]:
        path = []
        while self.parent[v] != v:
            path.append(v)
            v = self.parent[v]
        root = v
        # compress, accumulating parity from the top of the path downwards
        acc = 0
        for u in reversed(path):
            acc ^= self.parity[u]
            self.parity[u] = acc
            self.parent[u] = root
        return root, (self.parity[path[0]] if path else 0)

    def union(self, a: int, b: int, different: bool) -> bool:
        """Constrain ``a`` and ``b`` to equal (or opposite) parity.

        Returns False if the constraint contradicts earlier ones.
        """
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        want = 1 if different else 0
        if ra == rb:
            return (pa ^ pb) == want
        if rb < ra:
            ra, rb, pa, pb = rb, ra, pb, pa
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ want
        return True


def _side_constraints(edges: Iterable[tuple[frozenset, frozenset]], universe: Sequence[int]):
    uf = ParityUnionFind(universe)
    for ins, outs in edges:
        ins, outs = ins - outs, outs - ins
        ins_l, outs_l = sorted(ins), sorted(outs)
        for v in ins_l[1:]:
            if not uf.union(ins_l[0], v, different=False):
                return None
        for v in outs_l[1:]:
            if not uf.union(outs_l[0], v, different=False):
                return None
        if ins_l and outs_l and not uf.union(ins_l[0], outs_l[0], different=True):
            return None
    return uf


def find_bipartition(
    g: Union[ChemicalHypergraph, SubHypergraph]
) -> Optional[Bipartition]:
    """Return a bipartition witness, or None if the (sub-)hypergraph is not bipartite.

    Catalysts are stripped first. A hyperedge with one empty side only forces
    its other side to be monochromatic. The lowest vertex id of each
    constraint component is put on side 1.
    """
    if isinstance(g, SubHypergraph):
        universe = sorted(g.vertices)
        pairs = [(e.inputs, e.outputs) for e in g.edges]
    else:
        universe = list(range(g.vertex_count))
        pairs = [(h.inputs, h.outputs) for h in g.hyperedges]
    uf = _side_constraints(pairs, universe)
    if uf is None:
        return None
    side = {}
    for v in universe:
        # roots are the minimum id of their component, so the root gets side 1
        _, p = uf.find(v)
        side[v] = 1 + p
    return Bipartition(side)


def is_bipartite(g: Union[ChemicalHypergraph, SubHypergraph]) -> bool:
    return find_bipartition(g) is not None


def check_bipartition(
    g: Union[ChemicalHypergraph, SubHypergraph], part: Bipartition
) -> bool:
    """Independent per-hyperedge verification of a bipartition witness."""
    if isinstance(g, SubHypergraph):
        pairs = [(e.inputs, e.outputs) for e in g.edges]
    else:
        pairs = [(h.inputs, h.outputs) for h in g.hyperedges]
    for ins, outs in pairs:
        ins, outs = ins - outs, outs - ins
        in_sides = {part[v] for v in ins}
        out_sides = {part[v] for v in outs}
        if len(in_sides) > 1 or len(out_sides) > 1 or (in_sides and in_sides == out_sides):
            return False
    return True


def induced_sub(
    g: ChemicalHypergraph, vertices: Iterable[int], edge_ids: Optional[Iterable[int]] = None
) -> SubHypergraph:
    """Restrict hyperedges to ``vertices``.

    By default every hyperedge whose restriction is nonempty is kept. With
    ``edge_ids``, only those hyperedges are considered (the ones whose
    restriction is empty are still dropped).
    """
    vs = frozenset(int(v) for v in vertices)
    if not vs:
        raise EmptySubset("vertex subset is empty")
    for v in vs:
        if not 0 <= v < g.vertex_count:
            raise OutOfRangeVertex(f"vertex {v} not in hypergraph with N = {g.vertex_count}")
    ids = range(g.M) if edge_ids is None else sorted(edge_ids)
    edges = []
    for hid in ids:
        h = g.hyperedges[hid]
        ins, outs = h.inputs & vs, h.outputs & vs
        if ins or outs:
            edges.append(InducedEdge(hid, ins, outs))
    return SubHypergraph(g, vs, tuple(edges))


def edge_sub(g: ChemicalHypergraph, edge_ids: Iterable[int]) -> SubHypergraph:
    """The sub-hypergraph made of the given hyperedges and the vertices they cover."""
    ids = sorted(set(edge_ids))
    if not ids:
        raise EmptySubset("no hyperedges selected")
    vs = frozenset().union(*(g.hyperedges[i].vertices for i in ids))
    return induced_sub(g, vs, ids)
