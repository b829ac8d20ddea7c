import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chevpres.ffield import make_field
from chevpres.formats import TEXT_HEADER, dumps, dumps_text, loads, loads_text
from chevpres.presentations import (GeneratorSymbol, Presentation, present_affine_uplus,
                                    present_sl3_sylow, present_sp4_sylow, present_sp4_sylow_even)
from chevpres.rootsys import build_affine_diagram
from chevpres.verify import sp4_extension
from chevpres.words import Word

CASES = [
    lambda: present_sl3_sylow(make_field(3, 2)),
    lambda: present_sp4_sylow(make_field(5, 1)),
    lambda: present_sp4_sylow_even(make_field(2, 4)),
    lambda: present_affine_uplus(build_affine_diagram("B", 3), make_field(3, 3)),
    lambda: present_affine_uplus(build_affine_diagram("F", 4), make_field(5, 2)),
]


def same(P, Q, info=True):
    assert Q.family == P.family and Q.field == P.field
    assert Q.generators == P.generators and Q.relators == P.relators
    if info:
        assert [(i.kind, i.nodes) for i in Q.info] == [(i.kind, i.nodes) for i in P.info]


@pytest.mark.parametrize("make", CASES)
def test_json_roundtrip(make):
    P = make()
    Q = loads(dumps(P, "json"))
    same(P, Q)
    assert Q.meta == P.meta and Q.diagram == P.diagram
    assert [i.tag for i in Q.info] == [i.tag for i in P.info]


@pytest.mark.parametrize("make", CASES)
def test_text_roundtrip(make):
    P = make()
    text = dumps(P, "text")
    assert text.startswith(TEXT_HEADER + "\n") and text.endswith("\n")
    Q = loads(text)
    same(P, Q, info=P.diagram is not None)
    assert dumps(Q, "text") == text


def test_json_shape():
    P = present_sp4_sylow(make_field(3, 1))
    d = json.loads(dumps(P))
    assert d["family"] == "sp4-sylow"
    assert d["field"] == {"p": 3, "a": 1, "modulus": [0, 1]}
    assert d["generators"][0] == {"node": "alpha", "k": 1}
    assert all(name.startswith("g") and isinstance(e, int) for rel in d["relators"] for name, e in rel)


def test_text_sample():
    text = dumps_text(present_sl3_sylow(make_field(2, 1)))
    lines = text.splitlines()
    assert lines[:5] == [TEXT_HEADER, "family sl3-sylow", "field 2 1 0 1", "generators x1_1 x2_1", "relators 4"]
    assert lines[5] == "x1_1^2"


def test_glued_presentation_json_only():
    G = sp4_extension(make_field(3, 1)).glued
    same(G, loads(dumps(G)))
    with pytest.raises(ValueError):
        dumps_text(G)


def test_identity_relator_line():
    F = make_field(3, 1)
    P = Presentation("sl3-sylow", F, (GeneratorSymbol("alpha", 1), GeneratorSymbol("beta", 1)), (Word(),))
    assert dumps_text(P).splitlines()[-1] == "1"
    assert loads_text(dumps_text(P)).relators == (Word(),)


@pytest.mark.parametrize("mutate", [
    lambda t: t.replace("relators 4", "relators 5"),
    lambda t: t.replace("x1_1^2\n", "x1_1^0\n", 1),
    lambda t: t.replace("x1_1^2\n", "y1_1^2\n", 1),
    lambda t: t.replace(TEXT_HEADER, "# something else"),
    lambda t: t.replace("field 2 1 0 1", "field 4 1 0 1"),
])
def test_malformed_text_rejected(mutate):
    text = dumps_text(present_sl3_sylow(make_field(2, 1)))
    with pytest.raises((ValueError, KeyError)):
        loads(mutate(text), "text")


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.tuples(st.integers(0, 3), st.integers(-5, 5)), max_size=8), max_size=6))
def test_roundtrip_arbitrary_words(rels):
    F = make_field(2, 2)
    P = Presentation("sl3-sylow", F, present_sl3_sylow(F).generators, tuple(Word(r) for r in rels))
    assert loads(dumps(P, "text")).relators == P.relators
    assert loads(dumps(P, "json")).relators == P.relators
