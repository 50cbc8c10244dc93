"""Instance/solution document parsing, validation, and round-tripping."""

import json
from random import Random

import pytest

from swaproute.fileio import (
    InstanceFormatError,
    dumps_canonical,
    instance_from_model,
    instance_to_model,
    parse_instance_text,
    parse_solution_text,
)
from swaproute.models import SolutionModel
from swaproute.reductions import SimpleGraphInput, gen_ola, gen_vc
from support import random_path_instance

BASE = {
    "graph": {"type": "path", "n": 3},
    "tokens": ["a", "b", "c"],
    "initial": ["a", "b", "c"],
    "gates": [{"id": "g1", "pair": ["a", "c"]}],
    "precedence": [],
}


def doc(**overrides) -> str:
    merged = {**BASE, **overrides}
    return json.dumps(merged, indent=2)


def test_parse_minimal_instance():
    inst = parse_instance_text(doc())
    assert inst.graph.kind == "path"
    assert inst.gates[0].pair == frozenset(("a", "c"))


def test_round_trip_random_instances():
    rng = Random(23)
    for _ in range(50):
        inst = random_path_instance(rng, n_max=6, k_max=4)
        text = dumps_canonical(instance_to_model(inst))
        assert parse_instance_text(text) == inst


def test_round_trip_generated_instances():
    h = SimpleGraphInput(("a", "b", "c"), (("a", "b"), ("b", "c")))
    vc = gen_vc(h)
    assert parse_instance_text(dumps_canonical(instance_to_model(vc))) == vc
    ola, _ = gen_ola(SimpleGraphInput(("1", "2"), (("1", "2"),)), 1)
    assert parse_instance_text(dumps_canonical(instance_to_model(ola))) == ola


def test_chain_key_builds_a_chain():
    text = doc(
        gates=[{"id": "g1", "pair": ["a", "c"]}, {"id": "g2", "pair": ["b", "c"]}],
        chain=["g2", "g1"],
        precedence=None,
    )
    text = json.dumps({k: v for k, v in json.loads(text).items() if v is not None})
    inst = parse_instance_text(text)
    assert inst.poset.chain_order() == ("g2", "g1")


def test_missing_precedence_means_antichain():
    raw = {k: v for k, v in BASE.items() if k != "precedence"}
    inst = parse_instance_text(json.dumps(raw))
    assert not inst.poset.covers


def test_rejects_unknown_token_with_line_anchor():
    text = doc(gates=[{"id": "g1", "pair": ["a", "zz"]}])
    with pytest.raises(InstanceFormatError, match=r"line \d+.*'zz'"):
        parse_instance_text(text)


def test_rejects_duplicate_gate_id():
    text = doc(gates=[{"id": "g1", "pair": ["a", "b"]}, {"id": "g1", "pair": ["a", "c"]}])
    with pytest.raises(InstanceFormatError, match="duplicate gate id"):
        parse_instance_text(text)


def test_rejects_chain_and_precedence_together():
    text = doc(chain=["g1"])
    with pytest.raises(InstanceFormatError, match="mutually exclusive"):
        parse_instance_text(text)


def test_rejects_wrong_initial_length():
    text = doc(initial=["a", "b"])
    with pytest.raises(InstanceFormatError, match="2 tokens for 3 vertices"):
        parse_instance_text(text)


def test_rejects_non_bijective_initial():
    text = doc(initial=["a", "a", "b"])
    with pytest.raises(InstanceFormatError):
        parse_instance_text(text)


def test_rejects_cyclic_precedence():
    text = doc(
        gates=[{"id": "g1", "pair": ["a", "b"]}, {"id": "g2", "pair": ["a", "c"]}],
        precedence=[["g1", "g2"], ["g2", "g1"]],
    )
    with pytest.raises(InstanceFormatError, match="cycle"):
        parse_instance_text(text)


def test_rejects_bad_json_with_line_number():
    with pytest.raises(InstanceFormatError, match="line 1"):
        parse_instance_text("{nope}")


def test_rejects_unknown_keys():
    text = doc(planet="mars")
    with pytest.raises(InstanceFormatError):
        parse_instance_text(text)


def test_edges_graph_round_trip():
    text = doc(graph={"type": "edges", "n": 3, "edges": [[1, 2], [2, 3], [1, 3]]})
    inst = parse_instance_text(text)
    assert inst.graph.kind == "explicit"
    again = parse_instance_text(dumps_canonical(instance_to_model(inst)))
    assert again == inst


def test_path_graph_rejects_edge_list():
    text = doc(graph={"type": "path", "n": 3, "edges": [[1, 2]]})
    with pytest.raises(InstanceFormatError, match="does not take"):
        parse_instance_text(text)


def test_solution_round_trip_and_validation():
    sol = SolutionModel(
        length=2, swaps=[(1, 2), (2, 3)], schedule={"g1": 2}, algorithm="exact",
        elapsed_ms=0.5,
    )
    text = dumps_canonical(sol)
    assert parse_solution_text(text) == sol
    bad = json.loads(text)
    bad["length"] = 5
    with pytest.raises(InstanceFormatError, match="5"):
        parse_solution_text(json.dumps(bad))


def test_canonical_dump_is_stable():
    rng = Random(29)
    inst = random_path_instance(rng, n_max=5, k_max=3)
    model = instance_to_model(inst)
    assert dumps_canonical(model) == dumps_canonical(instance_to_model(inst))
