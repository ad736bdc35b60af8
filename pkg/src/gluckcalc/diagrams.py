"""Ribbon presentations of banded unlink diagrams and their moves.

A ribbon presentation has ``n`` circles (the unlink components) and a list
of bands.  Each band joins a source circle to a target circle and carries a
passage word: the signed piercings of the spanning disks along its core.
The induced relator of band ``(s, t, w)`` is ``w x_s w^-1 x_t^-1``.

Indices of bands, circles and word positions are 1-based throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .presentations import GroupPresentation, encode
from .words import Word, occurrences, reduce, substitute_many


class PreconditionViolated(ValueError):
    pass


class LetterMismatch(PreconditionViolated):
    pass


class InvalidPresentation(ValueError):
    pass


class NotATree(ValueError):
    pass


@dataclass(frozen=True)
class Band:
    source: int
    target: int
    word: Word = field(default_factory=Word)

    def __post_init__(self):
        object.__setattr__(self, "word", Word(self.word))

    def reversed(self) -> "Band":
        """Same band read from the other end; its relator is a conjugate of the inverse."""
        return Band(self.target, self.source, self.word.inverse())

    def relator(self) -> Word:
        w = self.word
        return reduce(tuple(w) + (self.source,) + tuple(w.inverse()) + (-self.target,))

    def endpoints(self) -> Tuple[int, int]:
        return self.source, self.target


@dataclass(frozen=True)
class RibbonPresentation:
    circles: int
    bands: Tuple[Band, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bands", tuple(self.bands))

    def band(self, b: int) -> Band:
        if not 1 <= b <= len(self.bands):
            raise PreconditionViolated(f"band index {b} out of range 1..{len(self.bands)}")
        return self.bands[b - 1]

    def with_band(self, b: int, band: Band) -> "RibbonPresentation":
        bands = list(self.bands)
        bands[b - 1] = band
        return RibbonPresentation(self.circles, tuple(bands))

    def degree(self, c: int) -> int:
        return sum((bd.source == c) + (bd.target == c) for bd in self.bands)

    @property
    def total_length(self) -> int:
        return sum(len(bd.word) for bd in self.bands)

    def reduced(self) -> "RibbonPresentation":
        return RibbonPresentation(
            self.circles, tuple(replace(bd, word=reduce(bd.word)) for bd in self.bands)
        )

    def __str__(self) -> str:
        bands = "; ".join(f"{bd.source}->{bd.target}: {bd.word}" for bd in self.bands)
        return f"RibbonPresentation({self.circles} circles; {bands})"


# --- validation -------------------------------------------------------------------


@dataclass
class Diagnostics:
    circles: int
    bands: int
    connected: bool
    is_tree: bool
    range_errors: List[str] = field(default_factory=list)
    self_bands: List[int] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.connected and not self.range_errors

    @property
    def is_disk(self) -> bool:
        return self.valid and self.is_tree

    def messages(self) -> List[str]:
        out = list(self.range_errors)
        if not self.connected:
            out.append("band graph is disconnected")
        for b in self.self_bands:
            out.append(f"band {b} joins a circle to itself")
        if self.connected and not self.is_tree:
            out.append(f"band graph is not a tree ({self.bands} bands on {self.circles} circles)")
        return out

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "disk": self.is_disk,
            "connected": self.connected,
            "tree": self.is_tree,
            "messages": self.messages(),
        }


def _components(n: int, edges: Iterable[Tuple[int, int]]) -> int:
    parent = list(range(n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    count = n
    for s, t in edges:
        if 1 <= s <= n and 1 <= t <= n:
            rs, rt = find(s), find(t)
            if rs != rt:
                parent[rs] = rt
                count -= 1
    return count


def validate(p: RibbonPresentation) -> Diagnostics:
    errors = []
    if p.circles < 1:
        errors.append("need at least one circle")
    for k, bd in enumerate(p.bands, 1):
        for end, c in (("source", bd.source), ("target", bd.target)):
            if not 1 <= c <= p.circles:
                errors.append(f"band {k} {end} circle {c} out of range 1..{p.circles}")
        for a in bd.word:
            if abs(a) > p.circles:
                errors.append(f"band {k} word references circle {abs(a)} (only {p.circles})")
                break
    selfs = [k for k, bd in enumerate(p.bands, 1) if bd.source == bd.target]
    connected = p.circles >= 1 and _components(p.circles, (bd.endpoints() for bd in p.bands)) == 1
    tree = connected and len(p.bands) == p.circles - 1 and not selfs
    return Diagnostics(p.circles, len(p.bands), connected, tree, errors, selfs)


def require_disk(p: RibbonPresentation) -> None:
    d = validate(p)
    if not d.is_disk:
        raise InvalidPresentation("; ".join(d.messages()) or "not a disk presentation")


def group_of(p: RibbonPresentation) -> GroupPresentation:
    d = validate(p)
    if d.range_errors:
        raise InvalidPresentation("; ".join(d.range_errors))
    return GroupPresentation(p.circles, tuple(bd.relator() for bd in p.bands))


def is_syntactically_trivial(p: RibbonPresentation) -> bool:
    d = validate(p)
    return d.is_disk and all(not reduce(bd.word) for bd in p.bands)


# --- moves -----------------------------------------------------------------------


@dataclass(frozen=True)
class ReducePair:
    """Delete the cancelling letters at ``position`` and ``position + 1``."""

    band: int
    position: int


@dataclass(frozen=True)
class InsertPair:
    """Insert x_g^sign x_g^-sign before ``position``."""

    band: int
    position: int
    generator: int
    sign: int = 1


@dataclass(frozen=True)
class EndReduce:
    """Drop a piercing next to an attaching circle.

    ``end="source"`` deletes a trailing x_s^+-1 (the letter that meets x_s in
    the relator); ``end="target"`` deletes a leading x_t^+-1.
    """

    band: int
    end: str = "source"


@dataclass(frozen=True)
class SlideEnd:
    """Slide the ``end`` of ``band`` along ``over``, which shares that circle."""

    band: int
    over: int
    end: str = "target"


@dataclass(frozen=True)
class Swim:
    """Insert the relator of ``through`` (to the power ``orientation``) before ``position``."""

    band: int
    through: int
    position: int
    orientation: int = 1


@dataclass(frozen=True)
class Cancel:
    """Remove a leaf circle of ``band`` together with the band (target end preferred)."""

    band: int


@dataclass(frozen=True)
class Intro:
    """Add a new circle joined to ``circle`` by an empty band."""

    circle: int


@dataclass(frozen=True)
class Drag:
    """Move the only piercing of a leaf circle past the neighbouring piercing.

    The leaf circle is carried along the band, so its own band picks up the
    crossed piercing.  ``direction`` is ``"left"`` or ``"right"``.
    """

    band: int
    position: int
    direction: str = "left"


DiagramMove = Union[ReducePair, InsertPair, EndReduce, SlideEnd, Swim, Cancel, Intro, Drag]

SOUND_SEARCH_MOVES = (ReducePair, EndReduce, SlideEnd, Swim, Cancel, Intro)


def _reindex_after_delete(p_bands: Sequence[Band], c: int) -> List[Band]:
    shift = lambda k: k - 1 if k > c else k  # noqa: E731
    out = []
    for bd in p_bands:
        w = Word((abs(a) - 1) * (1 if a > 0 else -1) if abs(a) > c else a for a in bd.word)
        out.append(Band(shift(bd.source), shift(bd.target), w))
    return out


def cancel_end(p: RibbonPresentation, b: int) -> Optional[str]:
    """Which end Cancel would remove, or None if neither end is removable."""
    bd = p.band(b)
    if bd.source == bd.target or p.circles < 2:
        return None
    for end, c in (("target", bd.target), ("source", bd.source)):
        if p.degree(c) == 1 and occurrences(bd.word, c) == 0:
            return end
    return None


def apply_move(p: RibbonPresentation, m: DiagramMove) -> RibbonPresentation:
    if isinstance(m, ReducePair):
        bd = p.band(m.band)
        w = bd.word
        i = m.position - 1
        if not (0 <= i < len(w) - 1 and w[i] == -w[i + 1]):
            raise PreconditionViolated(f"no cancelling pair at band {m.band} position {m.position}")
        return p.with_band(m.band, replace(bd, word=w[:i] + w[i + 2 :]))

    if isinstance(m, InsertPair):
        bd = p.band(m.band)
        if not 1 <= m.generator <= p.circles or m.sign not in (1, -1):
            raise PreconditionViolated("inserted letter out of range")
        i = m.position - 1
        if not 0 <= i <= len(bd.word):
            raise PreconditionViolated(f"position {m.position} out of range")
        a = m.generator * m.sign
        return p.with_band(m.band, replace(bd, word=bd.word[:i] + Word([a, -a]) + bd.word[i:]))

    if isinstance(m, EndReduce):
        bd = p.band(m.band)
        w = bd.word
        if m.end == "source":
            if not w or abs(w[-1]) != bd.source:
                raise PreconditionViolated(f"band {m.band} does not end with x{bd.source}^+-1")
            return p.with_band(m.band, replace(bd, word=w[:-1]))
        if m.end == "target":
            if not w or abs(w[0]) != bd.target:
                raise PreconditionViolated(f"band {m.band} does not start with x{bd.target}^+-1")
            return p.with_band(m.band, replace(bd, word=w[1:]))
        raise PreconditionViolated(f"unknown end {m.end!r}")

    if isinstance(m, SlideEnd):
        if m.band == m.over:
            raise PreconditionViolated("cannot slide a band over itself")
        bd, over = p.band(m.band), p.band(m.over)
        if m.end == "target":
            s0, c, w0 = bd.source, bd.target, bd.word
        elif m.end == "source":
            s0, c, w0 = bd.target, bd.source, bd.word.inverse()
        else:
            raise PreconditionViolated(f"unknown end {m.end!r}")
        if over.target == c:
            o, u = over.source, over.word
        elif over.source == c:
            o, u = over.target, over.word.inverse()
        else:
            raise PreconditionViolated(f"band {m.over} does not meet circle {c}")
        new_w = reduce(tuple(u.inverse()) + tuple(w0))
        new = Band(s0, o, new_w) if m.end == "target" else Band(o, s0, new_w.inverse())
        return p.with_band(m.band, new)

    if isinstance(m, Swim):
        if m.band == m.through:
            raise PreconditionViolated("a band cannot swim through itself")
        bd, th = p.band(m.band), p.band(m.through)
        if m.orientation not in (1, -1):
            raise PreconditionViolated("orientation must be +-1")
        rel = th.relator() if m.orientation == 1 else th.relator().inverse()
        i = m.position - 1
        if not 0 <= i <= len(bd.word):
            raise PreconditionViolated(f"position {m.position} out of range")
        return p.with_band(m.band, replace(bd, word=bd.word[:i] + rel + bd.word[i:]))

    if isinstance(m, Cancel):
        end = cancel_end(p, m.band)
        if end is None:
            raise PreconditionViolated(
                f"band {m.band} has no leaf end whose generator is absent from its word"
            )
        bd = p.band(m.band)
        if end == "target":
            c = bd.target
            image = reduce(tuple(bd.word) + (bd.source,) + tuple(bd.word.inverse()))
        else:
            c = bd.source
            image = reduce(tuple(bd.word.inverse()) + (bd.target,) + tuple(bd.word))
        rest = [
            replace(o, word=substitute_many(o.word, {c: image}))
            for k, o in enumerate(p.bands, 1)
            if k != m.band
        ]
        return RibbonPresentation(p.circles - 1, tuple(_reindex_after_delete(rest, c)))

    if isinstance(m, Intro):
        if not 1 <= m.circle <= p.circles:
            raise PreconditionViolated(f"circle {m.circle} out of range")
        n = p.circles + 1
        return RibbonPresentation(n, p.bands + (Band(m.circle, n, Word()),))

    if isinstance(m, Drag):
        return _drag(p, m)

    raise TypeError(f"not a diagram move: {m!r}")


def _drag(p: RibbonPresentation, m: Drag) -> RibbonPresentation:
    bd = p.band(m.band)
    w = bd.word
    i = m.position - 1
    if not 0 <= i < len(w):
        raise PreconditionViolated(f"position {m.position} out of range")
    star = abs(w[i])
    j = i - 1 if m.direction == "left" else i + 1 if m.direction == "right" else None
    if j is None:
        raise PreconditionViolated(f"unknown direction {m.direction!r}")
    if not 0 <= j < len(w):
        raise PreconditionViolated("no neighbouring piercing in that direction")
    y = w[j]
    if abs(y) == star:
        raise PreconditionViolated("neighbouring piercing belongs to the same circle")
    if p.degree(star) != 1:
        raise PreconditionViolated(f"circle {star} is not a leaf")
    if sum(occurrences(o.word, star) for o in p.bands) != 1:
        raise PreconditionViolated(f"circle {star} must be pierced exactly once")
    k_star = next(k for k, o in enumerate(p.bands, 1) if star in o.endpoints())
    if k_star == m.band:
        raise PreconditionViolated("the dragged circle must hang off another band")
    sb = p.band(k_star)
    letters = list(w)
    letters[i], letters[j] = letters[j], letters[i]
    # left: x* -> y x* y^-1 ; right: x* -> y^-1 x* y
    lead = (y,) if m.direction == "left" else (-y,)
    if sb.target == star:
        new_sw = reduce(lead + tuple(sb.word))
    else:
        new_sw = reduce(tuple(sb.word) + tuple(-a for a in reversed(lead)))
    q = p.with_band(m.band, replace(bd, word=Word(letters)))
    return q.with_band(k_star, replace(sb, word=new_sw))


def replay_moves(p: RibbonPresentation, moves: Iterable[DiagramMove]) -> RibbonPresentation:
    for m in moves:
        p = apply_move(p, m)
    return p


# --- band passes -----------------------------------------------------------------


@dataclass(frozen=True)
class BandPass:
    band: int
    position: int
    letter: Tuple[int, int]
    direction: str = "delete"

    @property
    def signed(self) -> int:
        g, s = self.letter
        return g * s


def band_pass(p: RibbonPresentation, bp: BandPass) -> RibbonPresentation:
    """Single-letter edit of a passage word.  Not an isotopy."""
    bd = p.band(bp.band)
    g, s = bp.letter
    if not 1 <= g <= p.circles or s not in (1, -1):
        raise PreconditionViolated(f"letter {bp.letter} out of range")
    w = bd.word
    i = bp.position - 1
    if bp.direction == "delete":
        if not 0 <= i < len(w) or w[i] != g * s:
            raise LetterMismatch(
                f"band {bp.band} position {bp.position} does not hold x{g}^{s}"
            )
        return p.with_band(bp.band, replace(bd, word=w[:i] + w[i + 1 :]))
    if bp.direction == "insert":
        if not 0 <= i <= len(w):
            raise PreconditionViolated(f"position {bp.position} out of range")
        return p.with_band(bp.band, replace(bd, word=w[:i] + Word([g * s]) + w[i:]))
    raise PreconditionViolated(f"unknown direction {bp.direction!r}")


# --- shapes ----------------------------------------------------------------------


def _occ(w: Word, g: int) -> int:
    return occurrences(reduce(w), g)


def triangular_labeling(p: RibbonPresentation) -> Optional[Dict[int, int]]:
    """A relabeling old circle -> new label under which ``p`` is triangular, if any."""
    if p.circles != 3 or len(p.bands) != 2:
        return None
    for perm in itertools.permutations((1, 2, 3)):
        lab = {old: new for old, new in zip((1, 2, 3), perm)}
        by_edge = {}
        for bd in p.bands:
            by_edge[frozenset((lab[bd.source], lab[bd.target]))] = bd
        b1 = by_edge.get(frozenset((1, 2)))
        b2 = by_edge.get(frozenset((2, 3)))
        if b1 is None or b2 is None:
            continue
        inv = {new: old for old, new in lab.items()}
        w1, w2 = b1.word, b2.word
        if _occ(w2, inv[3]) == 0 and _occ(w1, inv[1]) == 0 and _occ(w2, inv[1]) == 1:
            return lab
    return None


def is_triangular(p: RibbonPresentation) -> bool:
    return triangular_labeling(p) is not None


def relabel(p: RibbonPresentation, labels: Dict[int, int]) -> RibbonPresentation:
    """Rename circles by ``labels`` (old -> new), rewriting every passage word."""

    def lw(w):
        return Word(labels[abs(a)] * (1 if a > 0 else -1) for a in w)

    return RibbonPresentation(
        p.circles, tuple(Band(labels[b.source], labels[b.target], lw(b.word)) for b in p.bands)
    )


def oriented(band: Band, source: int) -> Band:
    return band if band.source == source else band.reversed()


def to_path_form(p: RibbonPresentation) -> RibbonPresentation:
    """Slide band ends until the band graph is a path, then relabel along it.

    Band i of the result joins circles i and i+1.
    """
    d = validate(p)
    if not d.is_tree:
        raise NotATree("; ".join(d.messages()) or "band graph is not a tree")
    q, _ = path_form_moves(p)
    return _relabel_path(q)


def path_form_moves(p: RibbonPresentation) -> Tuple[RibbonPresentation, List[DiagramMove]]:
    moves: List[DiagramMove] = []
    while True:
        branch = next((c for c in range(1, p.circles + 1) if p.degree(c) >= 3), None)
        if branch is None:
            return p, moves
        at = [k for k, bd in enumerate(p.bands, 1) if branch in bd.endpoints()]
        moving, over = at[0], at[1]
        here = branch
        while True:
            bd = p.band(moving)
            end = "target" if bd.target == here else "source"
            mv = SlideEnd(moving, over, end)
            p = apply_move(p, mv)
            moves.append(mv)
            ob = p.band(over)
            nxt = ob.source if ob.target == here else ob.target
            if p.degree(nxt) <= 2:
                break
            # keep walking away from the branch point until we reach a leaf
            cands = [
                k for k, b in enumerate(p.bands, 1) if nxt in b.endpoints() and k not in (moving, over)
            ]
            here, over = nxt, cands[0]


def _relabel_path(p: RibbonPresentation) -> RibbonPresentation:
    if p.circles == 1:
        return p
    adj: Dict[int, List[int]] = {c: [] for c in range(1, p.circles + 1)}
    for k, bd in enumerate(p.bands, 1):
        adj[bd.source].append(k)
        adj[bd.target].append(k)
    start = min(c for c in adj if len(adj[c]) == 1)
    order = [start]
    used = []
    cur = start
    while len(order) < p.circles:
        k = next(k for k in adj[cur] if k not in used)
        used.append(k)
        bd = p.band(k)
        cur = bd.target if bd.source == cur else bd.source
        order.append(cur)
    labels = {old: new for new, old in enumerate(order, 1)}
    q = relabel(p, labels)
    bands = []
    for new, k in enumerate(used, 1):
        bands.append(oriented(q.band(k), new))
    return RibbonPresentation(p.circles, tuple(bands))


# --- canonical diagram key -------------------------------------------------------


def diagram_key(p: RibbonPresentation) -> tuple:
    """Key minimized over circle relabelings (exhaustive up to 6 circles)."""
    n = p.circles
    perms = itertools.permutations(range(1, n + 1)) if n <= 6 else [tuple(range(1, n + 1))]
    best = None
    for perm in perms:
        lab = dict(zip(range(1, n + 1), perm))
        items = []
        for bd in p.bands:
            w = Word(lab[abs(a)] * (1 if a > 0 else -1) for a in reduce(bd.word))
            f = (lab[bd.source], lab[bd.target], encode(w))
            r = (lab[bd.target], lab[bd.source], encode(w.inverse()))
            items.append(min(f, r))
        key = (n, tuple(sorted(items)))
        if best is None or key < best:
            best = key
    return best
