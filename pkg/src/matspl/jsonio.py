"""JSON documents for matroids, tagged "schema": "matspl/1".

A matroid document is ``{"schema": "matspl/1", "ground": [...], "def": {...}}``.
The definition may also sit at the top level next to "ground".  Definition
types:

    rank_table    "table": ranks indexed by subset mask, bit i = ground[i]
    bases         "bases": list of label lists
    cyclic_flats  "flats": list of [labels, rank]
    uniform       "r": rank
    gf            "p", "shape", "entries" (row-major); columns follow ground
    graphic       "edges": list of vertex pairs, one per ground element
    transversal   "sets": list of label lists
    named         "name": one of NAMED; ground is optional

Canonical output always uses the rank_table form.
"""
from __future__ import annotations

import json

import numpy as np

from .errors import SchemaError
from .gf import GFMatrix, gf_matroid
from .kernel import Matroid, from_bases, from_cyclic_flats, uniform

SCHEMA = "matspl/1"


def _named():
    from . import constructions as C
    return {
        "vamos": C.vamos,
        "fano": C.fano,
        "K4": lambda: C.complete_graph(4),
        "wheel3": lambda: C.wheel_whirl(3),
        "whirl3": lambda: C.wheel_whirl(3, whirl=True),
        "B5'": lambda: C.edge_transversal(5),
        "B5": lambda: C.simplex_transversal(5),
        "truncated_triple": C.truncated_triple_pair,
    }


NAMED = ("vamos", "fano", "K4", "wheel3", "whirl3", "B5'", "B5", "truncated_triple")


def _need(d: dict, key: str, kind: str):
    if key not in d:
        raise SchemaError(f"{kind} definition needs '{key}'")
    return d[key]


def matroid_from_doc(doc: dict) -> Matroid:
    if not isinstance(doc, dict):
        raise SchemaError("a matroid document must be a JSON object")
    if "schema" in doc and doc["schema"] != SCHEMA:
        raise SchemaError(f"unsupported schema {doc['schema']!r}")
    d = doc.get("def", doc)
    if not isinstance(d, dict) or "type" not in d:
        raise SchemaError("missing definition type")
    kind = d["type"]
    ground = doc.get("ground", d.get("ground"))
    if kind == "named":
        name = _need(d, "name", kind)
        table = _named()
        if name not in table:
            raise SchemaError(f"unknown named matroid {name!r}; known: {', '.join(NAMED)}")
        m = table[name]()
        if ground is not None:
            if len(ground) != m.n:
                raise SchemaError(f"{name} has {m.n} elements, ground lists {len(ground)}")
            m = m.relabel(dict(zip(m.labels, ground)))
        return m
    if ground is None:
        raise SchemaError("missing 'ground'")
    if not isinstance(ground, list) or not all(isinstance(x, str) for x in ground):
        raise SchemaError("'ground' must be a list of strings")
    if kind == "rank_table":
        t = _need(d, "table", kind)
        if len(t) != 1 << len(ground):
            raise SchemaError(f"rank table needs {1 << len(ground)} entries, got {len(t)}")
        return Matroid(ground, np.array(t, dtype=np.int64))
    if kind == "bases":
        return from_bases(ground, _need(d, "bases", kind))
    if kind == "cyclic_flats":
        flats = _need(d, "flats", kind)
        try:
            pairs = [(tuple(s), int(r)) for s, r in flats]
        except (TypeError, ValueError) as exc:
            raise SchemaError("cyclic flats must be [labels, rank] pairs") from exc
        return from_cyclic_flats(ground, pairs)
    if kind == "uniform":
        return uniform(int(_need(d, "r", kind)), ground)
    if kind == "gf":
        g = GFMatrix.from_json({"p": _need(d, "p", kind), "shape": _need(d, "shape", kind),
                                "entries": _need(d, "entries", kind), "labels": ground})
        return gf_matroid(g)
    if kind == "graphic":
        from .constructions import graphic
        edges = _need(d, "edges", kind)
        if len(edges) != len(ground):
            raise SchemaError("graphic definition needs one edge per ground element")
        return graphic(edges, ground)
    if kind == "transversal":
        from .constructions import transversal
        return transversal(ground, _need(d, "sets", kind))
    raise SchemaError(f"unknown definition type {kind!r}")


def _sets(m: Matroid, masks) -> list:
    return [list(m.names(x)) for x in masks]


def matroid_to_doc(m: Matroid, summary: bool = True) -> dict:
    doc = {"schema": SCHEMA, "ground": list(m.labels),
           "def": {"type": "rank_table", "table": [int(x) for x in m.table]}}
    if summary:
        doc["summary"] = {
            "n": m.n,
            "rank": m.r,
            "loops": list(m.names(m.loops())),
            "isthmuses": list(m.names(m.isthmuses())),
            "bases": len(m.bases()),
            "circuits": _sets(m, m.circuits()),
            "flats": len(m.flats()),
            "cyclic_flats": [[list(m.names(z)), r] for z, r in m.cyclic_flats_with_ranks()],
        }
    return doc


def dumps(doc) -> str:
    """Byte-stable JSON text."""
    return json.dumps(doc, sort_keys=True) + "\n"


def load_matroid(path: str) -> Matroid:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: {exc}") from exc
    return matroid_from_doc(doc)
