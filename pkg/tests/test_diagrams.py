import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gluckcalc.alexander import alexander_polynomial
from gluckcalc.catalog import trivial
from gluckcalc.diagrams import (
    Band,
    BandPass,
    Cancel,
    Drag,
    EndReduce,
    InsertPair,
    Intro,
    LetterMismatch,
    NotATree,
    PreconditionViolated,
    ReducePair,
    RibbonPresentation,
    SlideEnd,
    Swim,
    apply_move,
    band_pass,
    diagram_key,
    group_of,
    is_syntactically_trivial,
    is_triangular,
    to_path_form,
    validate,
)
from gluckcalc.presentations import abelianization
from gluckcalc.words import Word
from oracles import band_relator, count_homs, symmetric_group, _evaluate
from strategies import disk_presentations, random_sound_move

TREFOIL = RibbonPresentation(2, (Band(1, 2, Word([1, 2])),))


def R(n, *bands):
    return RibbonPresentation(n, tuple(Band(s, t, Word(w)) for s, t, w in bands))


def test_validate_examples():
    assert validate(trivial(3)).is_disk
    d = validate(RibbonPresentation(2))
    assert not d.valid and "disconnected" in " ".join(d.messages())
    d = validate(R(2, (1, 2, [5])))
    assert not d.valid and d.range_errors


def test_group_of_examples():
    assert [list(r) for r in group_of(trivial(2)).relators] == [[1, -2]]
    assert [list(r) for r in group_of(TREFOIL).relators] == [[1, 2, 1, -2, -1, -2]]
    assert [list(r) for r in group_of(trivial(3)).relators] == [[1, -2], [2, -3]]


def test_group_of_matches_oracle_relator():
    p = R(3, (1, 2, [3, -1]), (3, 2, [1]))
    for bd, r in zip(p.bands, group_of(p).relators):
        assert list(r) == band_relator(bd.source, bd.target, list(bd.word))


def test_apply_move_examples():
    assert apply_move(trivial(3), Cancel(2)) == trivial(2)
    w, u = Word([2, 1]), Word([-1])
    p = RibbonPresentation(3, (Band(1, 3, w), Band(2, 3, u)))
    out = apply_move(p, SlideEnd(1, 2, "target"))
    assert out.band(1) == Band(1, 2, Word([1, 2, 1]))
    assert apply_move(R(2, (1, 2, [1])), EndReduce(1, "source")) == trivial(2)


def test_move_preconditions():
    with pytest.raises(PreconditionViolated):
        apply_move(trivial(2), ReducePair(1, 1))
    with pytest.raises(PreconditionViolated):
        apply_move(R(2, (1, 2, [2])), EndReduce(1, "source"))
    with pytest.raises(PreconditionViolated):
        apply_move(R(2, (1, 2, [1, 2])), Cancel(1))
    with pytest.raises(PreconditionViolated):
        apply_move(trivial(2), Swim(1, 1, 1))
    with pytest.raises(PreconditionViolated):
        apply_move(trivial(3), SlideEnd(1, 1))


def test_intro_and_insert():
    assert apply_move(RibbonPresentation(1), Intro(1)) == trivial(2)
    assert apply_move(trivial(2), InsertPair(1, 1, 2, -1)).band(1).word == Word([-2, 2])


def test_band_pass_examples():
    q = band_pass(TREFOIL, BandPass(1, 2, (2, 1)))
    assert q.band(1).word == Word([1])
    q = apply_move(apply_move(q, EndReduce(1, "source")), Cancel(1))
    assert is_syntactically_trivial(q)
    assert band_pass(trivial(2), BandPass(1, 1, (1, 1), "insert")) == R(2, (1, 2, [1]))
    with pytest.raises(LetterMismatch):
        band_pass(trivial(2), BandPass(1, 1, (1, 1)))


def test_band_pass_changes_alexander():
    before = alexander_polynomial(group_of(TREFOIL))
    after = alexander_polynomial(group_of(band_pass(TREFOIL, BandPass(1, 2, (2, 1)))))
    assert str(before) == "t^2 - t + 1" and str(after) == "1"


def test_syntactic_triviality_examples():
    assert is_syntactically_trivial(trivial(4))
    assert not is_syntactically_trivial(TREFOIL)
    assert is_syntactically_trivial(R(2, (1, 2, [1, -1])))


def test_is_triangular_examples():
    assert is_triangular(R(3, (1, 2, [3, 2]), (2, 3, [1])))
    assert not is_triangular(trivial(3))
    assert not is_triangular(R(3, (1, 2, [3]), (2, 3, [1, 3, -1])))


def test_path_form_examples():
    assert to_path_form(R(3, (1, 2, []), (1, 3, []))) == trivial(3)
    assert to_path_form(trivial(4)) == trivial(4)
    assert to_path_form(TREFOIL) == TREFOIL
    with pytest.raises(NotATree):
        to_path_form(R(3, (1, 2, []), (2, 1, []), (2, 3, [])))


def test_drag_conjugates_leaf_circle():
    p = R(3, (1, 2, [2, 3]), (2, 3, []))
    q = apply_move(p, Drag(1, 2, "left"))
    assert q.band(1).word == Word([3, 2])
    assert q.band(2).word == Word([2])
    assert alexander_polynomial(group_of(q)) == alexander_polynomial(group_of(p))


def _hom_set(g, rels):
    elems = symmetric_group(3)
    ident = tuple(range(3))
    return {
        imgs for imgs in itertools.product(elems, repeat=g) if all(_evaluate(r, imgs) == ident for r in rels)
    }


def _invariants(p):
    g = group_of(p)
    ab = abelianization(g).invariants()
    delta = alexander_polynomial(g).to_pairs() if g.generators > 1 else [[0, 1]]
    return ab, delta


@settings(max_examples=150, deadline=None)
@given(disk_presentations(max_circles=4, max_len=6), st.randoms(use_true_random=False))
def test_sound_moves_preserve_invariants(p, rng):
    got = random_sound_move(rng, p)
    if got is None:
        return
    m, q = got
    assert validate(q).is_disk
    assert _invariants(q) == _invariants(p)
    gp, gq = group_of(p), group_of(q)
    if isinstance(m, (SlideEnd, Swim, ReducePair, InsertPair, EndReduce)):
        # the identity on generators is the isomorphism, so solution sets in S3 coincide
        assert _hom_set(gp.generators, [list(r) for r in gp.relators]) == _hom_set(
            gq.generators, [list(r) for r in gq.relators]
        )
    else:
        assert count_homs(gp.generators, [list(r) for r in gp.relators], 3) == count_homs(
            gq.generators, [list(r) for r in gq.relators], 3
        )


@given(disk_presentations(max_circles=4, max_len=4))
def test_path_form_is_path_and_idempotent(p):
    q = to_path_form(p)
    assert [(b.source, b.target) for b in q.bands] == [(i, i + 1) for i in range(1, p.circles)]
    assert to_path_form(q) == q
    assert _invariants(q) == _invariants(p)


def test_diagram_key_ignores_labels():
    a = R(3, (1, 2, [3]), (2, 3, []))
    b = R(3, (3, 2, [1]), (2, 1, []))
    assert diagram_key(a) == diagram_key(b)
