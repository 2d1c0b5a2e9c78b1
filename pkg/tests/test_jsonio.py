import json

import pytest
from hypothesis import given, settings

from matspl.constructions import complete_graph, fano, vamos
from matspl.errors import AxiomViolation, SchemaError
from matspl.jsonio import NAMED, SCHEMA, dumps, load_matroid, matroid_from_doc, matroid_to_doc
from matspl.kernel import uniform

from conftest import matroids

VAMOS_FLATS = [[["a", "a'", "b", "b'"], 3], [["a", "a'", "c", "c'"], 3],
               [["b", "b'", "c", "c'"], 3], [["b", "b'", "d", "d'"], 3],
               [["c", "c'", "d", "d'"], 3], [[], 0],
               [["a", "a'", "b", "b'", "c", "c'", "d", "d'"], 4]]


def test_definition_types():
    g = ["a", "b", "c"]
    assert matroid_from_doc({"type": "uniform", "r": 2, "ground": g}) == uniform(2, g)
    assert matroid_from_doc({"schema": SCHEMA, "ground": g,
                             "def": {"type": "bases", "bases": [["a", "b"], ["a", "c"], ["b", "c"]]}}) \
        == uniform(2, g)
    assert matroid_from_doc({"ground": g, "def": {"type": "rank_table",
                                                  "table": [0, 1, 1, 2, 1, 2, 2, 2]}}) == uniform(2, g)
    assert matroid_from_doc({"ground": g, "def": {"type": "gf", "p": 2, "shape": [2, 3],
                                                  "entries": [1, 0, 1, 0, 1, 1]}}) == uniform(2, g)
    assert matroid_from_doc({"ground": g, "def": {"type": "graphic",
                                                  "edges": [[0, 1], [1, 2], [0, 2]]}}) == uniform(2, g)
    assert matroid_from_doc({"ground": g, "def": {"type": "transversal",
                                                  "sets": [g, g]}}) == uniform(2, g)
    V = matroid_from_doc({"ground": list(vamos().labels),
                          "def": {"type": "cyclic_flats", "flats": VAMOS_FLATS}})
    assert V == vamos()


def test_named():
    for name in NAMED:
        m = matroid_from_doc({"type": "named", "name": name})
        assert m.n > 0
    K = matroid_from_doc({"type": "named", "name": "K4", "ground": list("uvwxyz")})
    assert K.labels == tuple("uvwxyz") and K.table.tolist() == complete_graph(4).table.tolist()


@pytest.mark.parametrize("doc", [
    [],
    {"schema": "other/9", "type": "uniform", "r": 1, "ground": ["a"]},
    {"ground": ["a"]},
    {"type": "uniform", "r": 1},
    {"type": "uniform", "r": 1, "ground": [1]},
    {"type": "rank_table", "ground": ["a"], "table": [0]},
    {"type": "uniform", "ground": ["a"]},
    {"type": "cyclic_flats", "ground": ["a"], "flats": [5]},
    {"type": "graphic", "ground": ["a", "b"], "edges": [[0, 1]]},
    {"type": "named", "name": "nothing"},
    {"type": "named", "name": "fano", "ground": ["a"]},
    {"type": "mystery", "ground": []},
])
def test_schema_errors(doc):
    with pytest.raises(SchemaError):
        matroid_from_doc(doc)


def test_axiom_violations_pass_through():
    with pytest.raises(AxiomViolation):
        matroid_from_doc({"type": "bases", "ground": ["a", "b"], "bases": [["a"], ["a", "b"]]})


@settings(max_examples=50, deadline=None)
@given(matroids(max_n=6))
def test_round_trip(m):
    doc = json.loads(dumps(matroid_to_doc(m)))
    assert matroid_from_doc(doc) == m
    assert dumps(matroid_to_doc(matroid_from_doc(doc))) == dumps(matroid_to_doc(m))


def test_summary_and_files(tmp_path):
    F = fano()
    doc = matroid_to_doc(F)
    s = doc["summary"]
    assert (s["n"], s["rank"], s["bases"], s["flats"]) == (7, 3, 28, 16)
    assert "summary" not in matroid_to_doc(F, summary=False)
    p = tmp_path / "f.json"
    p.write_text(dumps(doc))
    assert load_matroid(str(p)) == F
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SchemaError):
        load_matroid(str(bad))
