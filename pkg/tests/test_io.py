import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gluckcalc.catalog import spun_twist_certificate, trivial, two_twist_spun_trefoil
from gluckcalc.diagrams import Cancel, Drag, EndReduce, InsertPair, Intro, ReducePair, SlideEnd, Swim
from gluckcalc.handles import budac_trivialize
from gluckcalc.io import (
    ParseError,
    diagram_move_to_json,
    load_json,
    parse_ac_certificate,
    parse_diagram,
    parse_move_script,
    parse_payload,
    parse_undisking,
    to_json,
)
from gluckcalc.presentations import GroupPresentation
from strategies import disk_presentations, random_spec, words


def roundtrip(x):
    return parse_payload(json.loads(json.dumps(to_json(x))))


def test_trivial_file_parses():
    obj = {"circles": 2, "bands": [{"from": 1, "to": 2, "word": []}]}
    assert parse_diagram(obj) == trivial(2)


def test_missing_sign_error_path():
    obj = {"circles": 2, "bands": [{"from": 1, "to": 2, "word": [[1]]}]}
    with pytest.raises(ParseError) as exc:
        parse_diagram(obj)
    assert exc.value.path == "bands[0].word[0]"


def test_zero_circles():
    with pytest.raises(ParseError) as exc:
        parse_diagram({"circles": 0, "bands": []})
    assert exc.value.path == "circles" and "n >= 1" in str(exc.value)


def test_other_parse_errors():
    with pytest.raises(ParseError):
        parse_diagram({"circles": 2, "bands": [{"from": 1, "to": 3}]})
    with pytest.raises(ParseError):
        parse_payload([])
    with pytest.raises(ParseError):
        parse_move_script([{"op": "hop"}])
    with pytest.raises(ParseError):
        parse_move_script([{"op": "end_reduce", "band": 1, "end": "middle"}])


def test_json_syntax_error_reports_line(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{\n  "circles": 2,\n  oops\n}')
    with pytest.raises(ParseError) as exc:
        load_json(f)
    assert exc.value.path == "line 3"


@given(disk_presentations(max_circles=4, max_len=6))
def test_diagram_roundtrip(p):
    assert roundtrip(p) == p


@given(st.integers(0, 3).flatmap(lambda g: st.lists(words(max(g, 1), 6), max_size=3).map(lambda rs: (g, rs))))
def test_presentation_roundtrip(gr):
    g, rs = gr
    if g == 0:
        rs = []
    p = GroupPresentation(g, tuple(rs))
    assert roundtrip(p) == p


@given(st.randoms(use_true_random=False))
def test_spec_and_certificate_roundtrip(rng):
    s = random_spec(rng)
    assert roundtrip(s) == s
    c = budac_trivialize(s)
    assert parse_ac_certificate(json.loads(json.dumps(to_json(c)))) == c


def test_catalog_spec_roundtrip():
    s = two_twist_spun_trefoil()
    assert roundtrip(s) == s


def test_undisking_and_script_roundtrip():
    c = spun_twist_certificate(3)
    assert parse_undisking(json.loads(json.dumps(to_json(c)))) == c
    moves = [
        ReducePair(1, 2),
        InsertPair(1, 1, 2, -1),
        EndReduce(2, "target"),
        SlideEnd(1, 2, "source"),
        Swim(1, 2, 3, -1),
        Cancel(1),
        Intro(2),
        Drag(1, 2, "right"),
    ]
    assert parse_move_script({"moves": [diagram_move_to_json(m) for m in moves]}) == moves
