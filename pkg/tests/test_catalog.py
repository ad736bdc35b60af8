import json

import pytest

from gluckcalc.alexander import alexander_polynomial
from gluckcalc.catalog import (
    NAMES,
    UnsupportedParameter,
    ak,
    entries,
    entry,
    spun_twist,
    spun_twist_certificate,
    trivial,
    two_twist_spun_trefoil,
    validate_kawauchi,
    verify_entry,
)
from gluckcalc.diagrams import group_of
from gluckcalc.handles import gluck_presentation, handle_counts
from gluckcalc.io import diagram_to_json, undisking_to_json
from gluckcalc.presentations import abelianization
from gluckcalc.undisking import verify_undisking
from gluckcalc.words import Word
from oracles import alexander_oracle, count_homs


def test_trivial_examples():
    assert trivial(1).circles == 1 and trivial(1).bands == ()
    assert [(b.source, b.target, len(b.word)) for b in trivial(3).bands] == [(1, 2, 0), (2, 3, 0)]
    assert str(alexander_polynomial(group_of(trivial(4)))) == "1"
    with pytest.raises(UnsupportedParameter):
        trivial(0)


def test_spun_twist_examples():
    assert spun_twist(1).band(1).word == Word([1, 2])
    assert str(alexander_polynomial(group_of(spun_twist(1)))) == "t^2 - t + 1"
    assert str(alexander_polynomial(group_of(spun_twist(2)))) == "2t^2 - 5t + 2"
    with pytest.raises(UnsupportedParameter):
        spun_twist(0)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, -1, -2, -3])
def test_spun_twist_words_against_fox_oracle(n):
    k = n if abs(n) > 1 else -n
    g = group_of(spun_twist(n))
    expected = alexander_oracle(2, [list(r) for r in g.relators])
    a, b = abs(k), abs(2 * k + 1)
    assert expected == [[0, a], [1, -b], [2, a]]
    assert verify_undisking(spun_twist(n), spun_twist_certificate(n))


def test_ak_examples():
    assert [len(r) for r in ak(3).relators] == [6, 7]
    for n in (2, 3, 4, 5):
        assert abelianization(ak(n)).invariants() == ((), 0)
    with pytest.raises(UnsupportedParameter):
        ak(1)


def test_two_twist_spun_trefoil():
    s = two_twist_spun_trefoil()
    assert (s.minima, s.maxima, s.band_count) == (2, 2, 2)
    assert handle_counts(s, "gluck4").counts == (1, 2, 3, 1, 1)
    assert str(alexander_polynomial(group_of(s.fusion))) == "t - 2"


def test_two_twist_maxima_group_matches_tietze_reduction():
    # <a, b | aba = bab, a^2 b = b a^2>
    target = [[1, 2, 1, -2, -1, -2], [1, 1, 2, -1, -1, -2]]
    s = two_twist_spun_trefoil()
    p = gluck_presentation(s)
    rels = [list(r) for r in p.relators[1:]]
    for n in (3, 4):
        assert count_homs(2, rels, n) == count_homs(2, target, n)


def test_every_entry_verifies():
    for e in entries():
        result = verify_entry(e)
        assert result and all(result.values()), (e.name, e.params, result)


def test_entry_lookup():
    assert set(NAMES) == {e.name for e in entries()}
    assert entry("spun-twist", 3).params == (3,)
    with pytest.raises(KeyError):
        entry("nope")


def test_expected_value_tags():
    tags = {exp.provenance for e in entries() for exp in e.expected.values()}
    assert tags <= {"TRIVIAL", "DERIVED", "REFERENCE"}


def test_kawauchi_directory_and_validation(tmp_path):
    assert validate_kawauchi() == []
    good = {
        "name": "twist-2",
        "diagram": diagram_to_json(spun_twist(2)),
        "undisking_bound": 1,
        "certificate": undisking_to_json(spun_twist_certificate(2)),
    }
    (tmp_path / "a.json").write_text(json.dumps(good))
    bad = dict(good, undisking_bound=0)
    (tmp_path / "b.json").write_text(json.dumps(bad))
    (tmp_path / "c.json").write_text("{")
    rows = validate_kawauchi(tmp_path)
    assert [r["ok"] for r in rows] == [True, False, False]
    assert "error" in rows[2]
