import pytest
from hypothesis import given, settings

from gluckcalc.alexander import alexander_polynomial
from gluckcalc.budget import SearchBudget, Unknown
from gluckcalc.catalog import spun_twist, spun_twist_certificate, trivial
from gluckcalc.diagrams import (
    Band,
    BandPass,
    Cancel,
    EndReduce,
    RibbonPresentation,
    band_pass,
    group_of,
    is_syntactically_trivial,
    is_triangular,
    replay_moves,
)
from gluckcalc.undisking import (
    CertificateInvalid,
    UndiskingCertificate,
    certify_undisking,
    greedy,
    triangularize,
    triangularize_detailed,
    trivialize_search,
    verify_undisking,
)
from gluckcalc.words import Word
from strategies import disk_presentations

TREFOIL = spun_twist(1)


def test_trivialize_search_examples():
    assert trivialize_search(RibbonPresentation(2, (Band(1, 2, Word([1])),))) == [
        EndReduce(1, "source"),
        Cancel(1),
    ]
    assert trivialize_search(trivial(5)) == []
    r = trivialize_search(TREFOIL)
    assert isinstance(r, Unknown)
    assert r.details["obstruction"]["alexander"] == "t^2 - t + 1"


def test_certify_undisking_examples():
    c = certify_undisking(TREFOIL, 1)
    assert c.passes == (BandPass(1, 2, (2, 1), "delete"),)
    assert verify_undisking(TREFOIL, c)
    assert certify_undisking(trivial(3), 0) == UndiskingCertificate()
    r = certify_undisking(TREFOIL, 0)
    assert isinstance(r, Unknown)
    assert r.details["obstruction"]["coefficients"] == [[0, 1], [1, -1], [2, 1]]


def test_negative_bound_rejected():
    with pytest.raises(ValueError):
        certify_undisking(trivial(2), -1)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, -1, -2])
def test_twist_family_one_pass(n):
    p = spun_twist(n)
    c = certify_undisking(p, 1)
    assert len(c.passes) == 1 and verify_undisking(p, c)
    stored = spun_twist_certificate(n)
    assert verify_undisking(p, stored)


def test_pass_changes_the_polynomial_to_one():
    c = spun_twist_certificate(2)
    after = band_pass(spun_twist(2), c.passes[0])
    assert str(alexander_polynomial(group_of(after))) == "1"


def test_verify_undisking_rejects_bad_replays():
    bad = UndiskingCertificate((BandPass(1, 1, (2, 1)),))
    assert not verify_undisking(TREFOIL, bad)
    assert not verify_undisking(TREFOIL, UndiskingCertificate())


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_triangularize_twist_family(n):
    p = spun_twist(n)
    t = triangularize_detailed(p, spun_twist_certificate(n))
    assert is_triangular(t.presentation)
    assert alexander_polynomial(group_of(t.presentation)) == alexander_polynomial(group_of(p))
    assert len(t.certificate.passes) == 1
    assert verify_undisking(t.presentation, t.certificate)


def test_triangularize_trivial_with_vacuous_pass():
    out = triangularize(trivial(2), UndiskingCertificate())
    assert is_triangular(out)
    assert str(alexander_polynomial(group_of(out))) == "1"


def test_triangularize_rejects_bad_certificate():
    with pytest.raises(CertificateInvalid):
        triangularize(TREFOIL, UndiskingCertificate())


def test_moves_in_triangularization_replay():
    p = spun_twist(1)
    t = triangularize_detailed(p, spun_twist_certificate(1))
    q = replay_moves(p, t.moves)
    assert q.circles == 3


@settings(max_examples=40, deadline=None)
@given(disk_presentations(max_circles=3, max_len=3))
def test_trivialize_search_is_sound(p):
    r = trivialize_search(p, SearchBudget(max_nodes=2000))
    if isinstance(r, Unknown):
        return
    assert is_syntactically_trivial(replay_moves(p, r))
    assert str(alexander_polynomial(group_of(p))) == "1" or p.circles == 1


@settings(max_examples=40, deadline=None)
@given(disk_presentations(max_circles=3, max_len=4))
def test_greedy_keeps_alexander(p):
    q, moves = greedy(p)
    assert replay_moves(p, moves) == q
    if p.circles > 1 and q.circles > 1:
        assert alexander_polynomial(group_of(q)) == alexander_polynomial(group_of(p))
