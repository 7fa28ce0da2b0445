"""JSON hypergraph documents.

A document looks like::

    {"version": 1,
     "vertices": ["a", "b", "c"],
     "hyperedges": [{"inputs": ["a"], "outputs": ["b", "c"]}]}

A name listed on both sides of a hyperedge is a catalyst for it. An optional
``"generator"`` object records the GeneratorSpec that produced the document.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

from .errors import InputError
from .generators import GeneratorSpec
from .hypergraph import ChemicalHypergraph, Hyperedge

FORMAT_VERSION = 1


class DocumentError(InputError):
    pass


@dataclass(frozen=True)
class HypergraphDocument:
    hypergraph: ChemicalHypergraph
    names: tuple
    generator: Optional[GeneratorSpec] = None

    def name(self, v: int) -> str:
        return self.names[v]


def default_names(n: int) -> tuple:
    return tuple(f"v{i}" for i in range(n))


def parse_document(text: str) -> HypergraphDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: invalid JSON ({exc.msg})") from None
    return document_from_dict(data)


def document_from_dict(data) -> HypergraphDocument:
    if not isinstance(data, dict):
        raise DocumentError("top level must be a JSON object")
    version = data.get("version")
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported document version {version!r} (expected {FORMAT_VERSION})")
    names = data.get("vertices")
    if not isinstance(names, list) or not all(isinstance(x, str) for x in names):
        raise DocumentError("'vertices' must be a list of strings")
    index = {}
    for i, name in enumerate(names):
        if name in index:
            raise DocumentError(f"vertex name {name!r} is declared twice (positions {index[name]} and {i})")
        index[name] = i
    raw_edges = data.get("hyperedges")
    if not isinstance(raw_edges, list):
        raise DocumentError("'hyperedges' must be a list")
    edges = []
    for k, entry in enumerate(raw_edges):
        if not isinstance(entry, dict):
            raise DocumentError(f"hyperedge {k} must be an object with 'inputs' and 'outputs'")
        sides = []
        for key in ("inputs", "outputs"):
            members = entry.get(key, [])
            if not isinstance(members, list):
                raise DocumentError(f"hyperedge {k}: '{key}' must be a list of vertex names")
            ids = []
            for name in members:
                if name not in index:
                    raise DocumentError(f"hyperedge {k}: undeclared vertex {name!r} in {key}")
                ids.append(index[name])
            sides.append(ids)
        edges.append(Hyperedge.of(*sides))
    generator = None
    if isinstance(data.get("generator"), dict):
        generator = GeneratorSpec.from_dict(data["generator"])
    return HypergraphDocument(ChemicalHypergraph(len(names), tuple(edges)), tuple(names), generator)


def document_to_dict(
    g: ChemicalHypergraph,
    names: Optional[Sequence[str]] = None,
    generator: Optional[GeneratorSpec] = None,
) -> dict:
    names = tuple(names) if names is not None else default_names(g.N)
    doc = {
        "version": FORMAT_VERSION,
        "vertices": list(names),
        "hyperedges": [
            {"inputs": [names[v] for v in sorted(h.inputs)], "outputs": [names[v] for v in sorted(h.outputs)]}
            for h in g.hyperedges
        ],
    }
    if generator is not None:
        doc["generator"] = generator.to_dict()
    return doc


def write_document(
    g: ChemicalHypergraph,
    names: Optional[Sequence[str]] = None,
    generator: Optional[GeneratorSpec] = None,
) -> str:
    return json.dumps(document_to_dict(g, names, generator), indent=2) + "\n"


def load_document(path: Union[str, Path]) -> HypergraphDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise DocumentError(f"{path} is not valid UTF-8") from None
    return parse_document(text)
