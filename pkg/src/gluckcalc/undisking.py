"""Undisking certificates: band passes followed by a sound trivialization.

The search here is a conservative recognizer.  A certificate is a proof of
an upper bound on the undisking number; an :class:`Unknown` result is never
a lower bound.  The one exception is the zero-pass case with Alexander
polynomial different from 1, which is a genuine obstruction and is
reported as such.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, replace
from typing import Dict, Iterator, List, Optional, Tuple

from .alexander import ONE, alexander_polynomial
from .budget import DEFAULT_BUDGET, SearchBudget, Unknown
from .diagrams import (
    BandPass,
    Cancel,
    DiagramMove,
    Drag,
    EndReduce,
    Intro,
    PreconditionViolated,
    ReducePair,
    RibbonPresentation,
    SlideEnd,
    Swim,
    apply_move,
    band_pass,
    cancel_end,
    diagram_key,
    group_of,
    is_syntactically_trivial,
    is_triangular,
    oriented,
    relabel,
    require_disk,
)
from .words import Word, occurrences


class CertificateInvalid(ValueError):
    pass


class TriangularizationError(RuntimeError):
    pass


@dataclass(frozen=True)
class UndiskingCertificate:
    passes: Tuple[BandPass, ...] = ()
    trivialization: Tuple[DiagramMove, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "passes", tuple(self.passes))
        object.__setattr__(self, "trivialization", tuple(self.trivialization))

    @property
    def bound(self) -> int:
        return len(self.passes)


def replay_undisking(p: RibbonPresentation, cert: UndiskingCertificate) -> RibbonPresentation:
    for bp in cert.passes:
        p = band_pass(p, bp)
    for m in cert.trivialization:
        p = apply_move(p, m)
    return p


def verify_undisking(p: RibbonPresentation, cert: UndiskingCertificate) -> bool:
    try:
        return is_syntactically_trivial(replay_undisking(p, cert))
    except (PreconditionViolated, ValueError):
        return False


def alexander_of(p: RibbonPresentation):
    return alexander_polynomial(group_of(p))


# --- greedy normalization ----------------------------------------------------------


def _first_greedy_move(p: RibbonPresentation) -> Optional[DiagramMove]:
    for k, bd in enumerate(p.bands, 1):
        w = bd.word
        for i in range(len(w) - 1):
            if w[i] == -w[i + 1]:
                return ReducePair(k, i + 1)
    for k, bd in enumerate(p.bands, 1):
        w = bd.word
        if w and abs(w[-1]) == bd.source:
            return EndReduce(k, "source")
        if w and abs(w[0]) == bd.target:
            return EndReduce(k, "target")
    for k, bd in enumerate(p.bands, 1):
        end = cancel_end(p, k)
        if end is None:
            continue
        c = bd.target if end == "target" else bd.source
        growth = sum(occurrences(o.word, c) for o in p.bands) * 2 * len(bd.word)
        if growth <= len(bd.word):
            return Cancel(k)
    return None


def greedy(p: RibbonPresentation) -> Tuple[RibbonPresentation, List[DiagramMove]]:
    """Apply length-nonincreasing sound moves until none applies."""
    moves: List[DiagramMove] = []
    while True:
        m = _first_greedy_move(p)
        if m is None:
            return p, moves
        p = apply_move(p, m)
        moves.append(m)


def _children(p: RibbonPresentation, budget: SearchBudget) -> Iterator[List[DiagramMove]]:
    nb = len(p.bands)
    for b in range(1, nb + 1):
        for o in range(1, nb + 1):
            if b == o:
                continue
            bd, ob = p.band(b), p.band(o)
            for end, c in (("target", bd.target), ("source", bd.source)):
                if c in ob.endpoints():
                    yield [SlideEnd(b, o, end)]
    room = budget.max_total_length - p.total_length
    for b in range(1, nb + 1):
        for o in range(1, nb + 1):
            if b == o or len(p.band(o).relator()) > room:
                continue
            for pos in range(1, len(p.band(b).word) + 2):
                for e in (1, -1):
                    yield [Swim(b, o, pos, e)]


def trivialize_search(p: RibbonPresentation, budget: SearchBudget = DEFAULT_BUDGET):
    """Sound moves reaching a syntactically trivial diagram, or :class:`Unknown`.

    Greedy length reduction first, then best-first exploration of slides and
    swims under ``budget``, with a transposition table keyed on the
    relabel-minimized diagram.
    """
    require_disk(p)
    if is_syntactically_trivial(p):
        return []
    delta = alexander_of(p)
    if delta != ONE:
        return Unknown(
            "alexander obstruction",
            0,
            {"obstruction": {"alexander": str(delta), "coefficients": delta.to_pairs()}},
        )
    start, moves = greedy(p)
    if is_syntactically_trivial(start):
        return moves
    seen: Dict[tuple, Tuple[Optional[tuple], List[DiagramMove]]] = {}
    k0 = diagram_key(start)
    seen[k0] = (None, moves)
    heap = [(start.total_length, k0, start)]
    nodes = 0
    while heap:
        _, key, cur = heapq.heappop(heap)
        for step in _children(cur, budget):
            nodes += 1
            if nodes > budget.max_nodes:
                return Unknown("node budget exhausted", budget.max_nodes)
            try:
                nxt = cur
                for m in step:
                    nxt = apply_move(nxt, m)
            except PreconditionViolated:
                continue
            nxt, tail = greedy(nxt)
            if nxt.total_length > budget.max_total_length:
                continue
            ck = diagram_key(nxt)
            if ck in seen:
                continue
            seen[ck] = (key, step + tail)
            if is_syntactically_trivial(nxt):
                return _path(seen, ck)
            heapq.heappush(heap, (nxt.total_length, ck, nxt))
    return Unknown("search space exhausted within length cap", nodes)


def _path(seen, key) -> List[DiagramMove]:
    segs = []
    while key is not None:
        parent, seg = seen[key]
        segs.append(seg)
        key = parent
    return [m for seg in reversed(segs) for m in seg]


# --- certificates ------------------------------------------------------------------


def candidate_passes(p: RibbonPresentation) -> Iterator[BandPass]:
    """Single passes in a fixed order: deletions (last letter first), then insertions."""
    for k, bd in enumerate(p.bands, 1):
        w = bd.word
        for pos in range(len(w), 0, -1):
            a = w[pos - 1]
            yield BandPass(k, pos, (abs(a), 1 if a > 0 else -1), "delete")
    for k, bd in enumerate(p.bands, 1):
        w = bd.word
        for pos in range(1, len(w) + 2):
            for g in range(1, p.circles + 1):
                for s in (1, -1):
                    a = g * s
                    # inserting next to an inverse letter is a deletion in disguise
                    if (pos >= 2 and w[pos - 2] == -a) or (pos <= len(w) and w[pos - 1] == -a):
                        continue
                    yield BandPass(k, pos, (g, s), "insert")


def _pass_sequences(p: RibbonPresentation, j: int) -> Iterator[Tuple[Tuple[BandPass, ...], RibbonPresentation]]:
    if j == 0:
        yield (), p
        return
    for bp in candidate_passes(p):
        q = band_pass(p, bp)
        for rest, r in _pass_sequences(q, j - 1):
            yield (bp,) + rest, r


def certify_undisking(p: RibbonPresentation, k: int, budget: SearchBudget = DEFAULT_BUDGET):
    """An :class:`UndiskingCertificate` with at most ``k`` passes, or :class:`Unknown`."""
    require_disk(p)
    if k < 0:
        raise ValueError("pass bound must be non-negative")
    first = trivialize_search(p, budget)
    if not isinstance(first, Unknown):
        return UndiskingCertificate((), tuple(first))
    nodes = first.nodes
    obstruction = first.details.get("obstruction")
    for j in range(1, k + 1):
        viable = []
        for passes, q in _pass_sequences(p, j):
            nodes += 1
            if nodes > budget.max_nodes:
                return Unknown("node budget exhausted", budget.max_nodes)
            if alexander_of(q) != ONE:
                continue
            g, moves = greedy(q)
            if is_syntactically_trivial(g):
                return UndiskingCertificate(passes, tuple(moves))
            viable.append((passes, q))
        for passes, q in viable:
            left = budget.max_nodes - nodes
            if left <= 0:
                return Unknown("node budget exhausted", budget.max_nodes)
            share = replace(budget, max_nodes=max(1, left // max(1, len(viable))))
            r = trivialize_search(q, share)
            if isinstance(r, Unknown):
                nodes += r.nodes
                continue
            return UndiskingCertificate(passes, tuple(r))
    details = {"obstruction": obstruction} if obstruction and k == 0 else {}
    reason = "alexander obstruction" if details else "no certificate within budget"
    return Unknown(reason, nodes, details)


# --- triangular form ----------------------------------------------------------------


@dataclass(frozen=True)
class Triangularization:
    presentation: RibbonPresentation
    moves: Tuple[DiagramMove, ...]
    labels: Dict[int, int]
    certificate: UndiskingCertificate
    reduced_certificate: Optional[UndiskingCertificate] = None


def _reduce_circles(p: RibbonPresentation) -> Tuple[RibbonPresentation, List[DiagramMove]]:
    """Cancel leaves until two circles remain (or add one when there is only one)."""
    moves: List[DiagramMove] = []
    if p.circles == 1:
        moves.append(Intro(1))
        return apply_move(p, Intro(1)), moves
    while p.circles > 2:
        m = _first_greedy_move(p)
        if m is None:
            m = next((Cancel(k) for k in range(1, len(p.bands) + 1) if cancel_end(p, k)), None)
        if m is None:
            raise TriangularizationError("cannot cancel down to two circles with sound moves")
        p = apply_move(p, m)
        moves.append(m)
    return p, moves


def _emit(state, moves, m):
    moves.append(m)
    return apply_move(state, m)


def triangularize_detailed(
    p: RibbonPresentation, cert: UndiskingCertificate, budget: SearchBudget = DEFAULT_BUDGET
) -> Triangularization:
    require_disk(p)
    if len(cert.passes) > 1 or not verify_undisking(p, cert):
        raise CertificateInvalid("certificate does not replay to a trivial diagram with one pass")

    q, moves = _reduce_circles(p)
    if q.circles == p.circles and not moves:
        cert2 = cert
    else:
        cert2 = certify_undisking(q, 1, budget)
        if isinstance(cert2, Unknown):
            raise TriangularizationError(f"no one-pass certificate after reduction: {cert2.reason}")
    if len(q.bands) != 1:
        raise TriangularizationError("reduction did not leave a single band")

    bd = q.band(1)
    s, t = bd.source, bd.target
    n_len = len(bd.word)
    if cert2.passes:
        bp = cert2.passes[0]
        c = bp.letter[0]
        e = bp.letter[1]
    else:
        bp, c, e = None, s, 1

    q = _emit(q, moves, Intro(c))
    star = q.circles

    if bp is None:
        q = _emit(q, moves, Swim(1, 2, n_len + 1, -1))
        pos = n_len + 1
    elif bp.direction == "delete":
        if e == 1:
            q = _emit(q, moves, Swim(1, 2, bp.position, -1))
            q = _emit(q, moves, ReducePair(1, bp.position + 1))
        else:
            q = _emit(q, moves, Swim(1, 2, bp.position + 1, 1))
            q = _emit(q, moves, ReducePair(1, bp.position))
        pos = bp.position
    else:
        if e == 1:
            q = _emit(q, moves, Swim(1, 2, bp.position, 1))
            pos = bp.position + 1
        else:
            q = _emit(q, moves, Swim(1, 2, bp.position, -1))
            pos = bp.position

    w = q.band(1).word
    if abs(w[pos - 1]) != star:
        raise TriangularizationError("internal: lost the new piercing")
    f = 1 if w[pos - 1] > 0 else -1

    # drag the new piercing to the front
    while pos > 1:
        q = _emit(q, moves, Drag(1, pos, "left"))
        pos -= 1
    # reduce what follows it to x_t^a x_s^b
    while True:
        w = q.band(1).word
        i = next((i for i in range(1, len(w) - 1) if w[i] == -w[i + 1]), None)
        if i is None:
            break
        q = _emit(q, moves, ReducePair(1, i + 1))
    rest = q.band(1).word[1:]
    lead = 0
    while lead < len(rest) and abs(rest[lead]) == t:
        lead += 1
    if any(abs(a) != s for a in rest[lead:]):
        raise TriangularizationError("the passed word is not trivialized by end reductions")
    for _ in range(lead):
        q = _emit(q, moves, Drag(1, pos, "right"))
        pos += 1
    for _ in range(lead):
        q = _emit(q, moves, EndReduce(1, "target"))
    for _ in range(len(rest) - lead):
        q = _emit(q, moves, EndReduce(1, "source"))
    assert q.band(1).word == Word([star * f])

    other = t if c == s else s
    labels = {star: 1, c: 2, other: 3}
    r = relabel(q, labels)
    b_star, b_j = r.band(2), r.band(1)
    out = RibbonPresentation(3, (oriented(b_star, 1), oriented(b_j, 2)))
    if not is_triangular(out):
        raise TriangularizationError("internal: output is not triangular")

    after = band_pass(out, BandPass(2, 1, (1, out.band(2).word[0]), "delete"))
    triv = trivialize_search(after, budget)
    if isinstance(triv, Unknown):
        raise TriangularizationError(f"transported certificate not found: {triv.reason}")
    transported = UndiskingCertificate((BandPass(2, 1, (1, out.band(2).word[0]), "delete"),), tuple(triv))
    assert verify_undisking(out, transported)
    return Triangularization(out, tuple(moves), labels, transported, cert2)


def triangularize(
    p: RibbonPresentation, cert: UndiskingCertificate, budget: SearchBudget = DEFAULT_BUDGET
) -> RibbonPresentation:
    """A triangular presentation related to ``p`` by sound moves and a relabeling."""
    return triangularize_detailed(p, cert, budget).presentation
