"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from gluckcalc.diagrams import Band, RibbonPresentation
from gluckcalc.words import Word


def letters(max_gen):
    return st.integers(1, max_gen).flatmap(lambda g: st.sampled_from([g, -g]))


def words(max_gen=3, max_len=8):
    return st.lists(letters(max_gen), max_size=max_len).map(Word)


@st.composite
def disk_presentations(draw, max_circles=4, max_len=6):
    """Random tree-shaped ribbon presentations."""
    n = draw(st.integers(1, max_circles))
    bands = []
    for c in range(2, n + 1):
        parent = draw(st.integers(1, c - 1))
        w = draw(words(n, max_len))
        if draw(st.booleans()):
            bands.append(Band(parent, c, w))
        else:
            bands.append(Band(c, parent, w))
    order = draw(st.permutations(range(len(bands))))
    return RibbonPresentation(n, tuple(bands[i] for i in order))


def random_sound_move(rng, p):
    """A random move from the sound set that applies to ``p``, or None."""
    from gluckcalc.diagrams import (
        Cancel,
        Drag,
        EndReduce,
        InsertPair,
        Intro,
        PreconditionViolated,
        ReducePair,
        SlideEnd,
        Swim,
        apply_move,
    )

    nb = len(p.bands)
    for _ in range(40):
        kind = rng.choice(["reduce", "insert", "end", "slide", "swim", "cancel", "intro", "drag"])
        if kind == "intro":
            m = Intro(rng.randint(1, p.circles))
        elif nb == 0:
            continue
        else:
            b = rng.randint(1, nb)
            length = len(p.band(b).word)
            if kind == "reduce":
                m = ReducePair(b, rng.randint(1, max(1, length)))
            elif kind == "insert":
                m = InsertPair(b, rng.randint(1, length + 1), rng.randint(1, p.circles), rng.choice([1, -1]))
            elif kind == "end":
                m = EndReduce(b, rng.choice(["source", "target"]))
            elif kind == "cancel":
                m = Cancel(b)
            elif kind == "drag":
                m = Drag(b, rng.randint(1, max(1, length)), rng.choice(["left", "right"]))
            elif nb < 2:
                continue
            elif kind == "slide":
                m = SlideEnd(b, rng.randint(1, nb), rng.choice(["source", "target"]))
            else:
                m = Swim(b, rng.randint(1, nb), rng.randint(1, length + 1), rng.choice([1, -1]))
        try:
            return m, apply_move(p, m)
        except PreconditionViolated:
            continue
    return None


def random_spec(rng, max_m=5, max_omega=6, max_n=4):
    """A ClosedSphereSpec with standard fission, satisfying the Euler identity by construction."""
    from gluckcalc.catalog import trivial
    from gluckcalc.handles import ClosedSphereSpec

    n = rng.randint(1, max_n)
    m = rng.randint(1, max_m)
    omegas = []
    for _ in range(m - 1):
        length = rng.randint(0, max_omega)
        omegas.append(Word(rng.choice([1, -1]) * rng.randint(1, m) for _ in range(length)))
    return ClosedSphereSpec(trivial(n), m, tuple(omegas))
