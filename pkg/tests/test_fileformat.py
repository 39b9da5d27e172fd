from fractions import Fraction

import pytest

from qmprinciples.errors import ParseError, ValidationError, VersionUnsupported
from qmprinciples.fileformat import (
    dumps,
    loads,
    parse,
    parse_map,
    serialize,
    serialize_map,
    to_instance,
)
from qmprinciples.generate import GenParams, gen_instance
from qmprinciples.preorder import Instance, Phi, closure_of_pairs
from qmprinciples.qspace import INF

from conftest import DATA, A, B, C

HEAD = "qmprinciples-instance 1\n"


def test_load_w3(w3_inst):
    text = (DATA / "w3.inst").read_text()
    assert loads(text) == w3_inst
    assert dumps(loads(text)) == text


def test_roundtrip_generated():
    for seed in range(60):
        kind = ("total", "pairs", "reachability", "specialization-conjugate")[seed % 4]
        inst = gen_instance(GenParams(1 + seed % 6, seed, Fraction(1, 2), Fraction(1, 3), kind))
        text = dumps(inst)
        assert loads(text) == inst
        assert dumps(loads(text)) == text


def test_digraph_metric():
    text = HEAD + "points: a b c\nmetric: digraph\n  a b 1\n  b c 1/2\n  c a 2\npreorder: total\nphi: 0 0 0\n"
    inst = loads(text)
    assert inst.space.d[A][C] == Fraction(3, 2)
    assert inst.space.d[C][B] == 3


def test_digraph_not_connected():
    text = HEAD + "points: a b\nmetric: digraph\n  a b 1\npreorder: total\nphi: 0 0\n"
    with pytest.raises(ValidationError):
        loads(text)


def test_reachability_and_inf():
    text = (HEAD + "points: a b c\nmetric: matrix\n  0 1 1\n  1 0 1\n  1 1 0\n"
            "preorder: reachability\n  a b\n  b c\nphi: inf 2 1\n")
    inst = loads(text)
    assert inst.order == closure_of_pairs(3, [(0, 1), (1, 2)])
    assert inst.phi[A] == INF
    assert parse(serialize(parse(text))) == parse(text)


@pytest.mark.parametrize("text, line", [
    ("", 1),
    ("qmprinciples-instance\n", 1),
    (HEAD + "points: a\nmetric: matrix\n  0\npreorder: total\nphi: 0\ncolor: red\n", 7),
    (HEAD + "points: a\npoints: a\n", 3),
    (HEAD + "points: a\nmetric: matrix\n  0.5\npreorder: total\nphi: 0\n", 4),
    (HEAD + "points: a\nmetric: matrix\n  1/0\npreorder: total\nphi: 0\n", 4),
    (HEAD + "points: a b\nmetric: digraph\n  a z 1\npreorder: total\nphi: 0 0\n", 4),
    (HEAD + "points: a\nmetric: matrix\n  0\npreorder: total\nphi: 0 1\n", 6),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.line == line


def test_version_unsupported():
    with pytest.raises(VersionUnsupported):
        parse("qmprinciples-instance 2\n")


def test_invalid_space_in_file():
    text = HEAD + "points: a b\nmetric: matrix\n  0 0\n  0 0\npreorder: total\nphi: 0 0\n"
    inst_file = parse(text)
    with pytest.raises(ValidationError):
        to_instance(inst_file)


def test_maps():
    pts = ("a", "b", "c")
    text = (DATA / "w3_single.map").read_text()
    kind, images = parse_map(text, pts)
    assert kind == "single" and images == (B, B, C)
    assert serialize_map(kind, images, pts) == text
    kind, images = parse_map("qmprinciples-map 1\nkind: multi\n  a b c\n  b b\n  c c\n", pts)
    assert images == (frozenset({B, C}), frozenset({B}), frozenset({C}))
    with pytest.raises(ParseError):
        parse_map("qmprinciples-map 1\nkind: single\n  a b\n", pts)


def test_non_total_written_as_pairs(w3):
    inst = Instance(w3, closure_of_pairs(3, [(0, 1)]), Phi.of([1, 1, 0]))
    text = dumps(inst)
    assert "preorder: pairs\n  a b\n" in text
    assert loads(text) == inst
