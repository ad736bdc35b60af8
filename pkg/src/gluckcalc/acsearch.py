"""Andrews-Curtis trivialization search.

States are canonical forms (cyclically reduced relators, each minimized
over rotation and inversion, then sorted), so relator conjugation,
inversion and reordering are free.  One search edge replaces relator a by
the canonical form of ``a * u b^e u^-1`` with ``|u|`` bounded by the
conjugator cap.  Nodes are explored in order of their path bottleneck
(largest total relator length met on the way), which is iterative
deepening on total length with the transposition table carried across
bounds.  Ties break on the current total length, then the canonical key.

Certificates are rebuilt on the caller's actual presentation: each edge
expands into the conjugations and inversions that bring the two relators
to their canonical representatives, followed by one concat.
"""

from __future__ import annotations

import heapq
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

from .budget import DEFAULT_BUDGET, SearchBudget, Unknown
from .presentations import (
    ACCertificate,
    ACMove,
    Concat,
    Conjugate,
    GroupPresentation,
    Invert,
    Nielsen,
    Stabilize,
    canonical_relator_code,
    cyclic_core_code,
    decode,
    encode,
    inverse_code,
    is_m_trivial_form,
    make_certificate,
    normalize_relator,
)
from .words import Word, substitute_many

State = Tuple[int, Tuple[bytes, ...]]


def _join(x: bytes, y: bytes) -> bytes:
    """Freely reduced product of two reduced code words."""
    k = 0
    n = min(len(x), len(y))
    lx = len(x)
    while k < n and x[lx - 1 - k] ^ 1 == y[k]:
        k += 1
    if k == 0:
        return x + y
    return x[: lx - k] + y[k:]


def _canon(b: bytes) -> bytes:
    return canonical_relator_code(b)


def conjugator_codes(generators: int, max_len: int) -> List[bytes]:
    """All reduced words of length <= max_len, in shortlex order."""
    letters = list(range(2 * generators))
    out = [b""]
    layer = [b""]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for c in letters:
                if w and w[-1] == c ^ 1:
                    continue
                nxt.append(w + bytes([c]))
        out.extend(nxt)
        layer = nxt
    return out


def _goal(key: Tuple[bytes, ...], m: int) -> bool:
    present = set(key)
    return all(bytes([2 * (g - 1)]) in present for g in range(1, m + 1))


def _expand_pairs(
    key: Tuple[bytes, ...], tasks: Sequence[Tuple[int, int, int]], conj: Sequence[Tuple[bytes, bytes]]
) -> list:
    out = []
    for a, b, e in tasks:
        rb = key[b] if e == 1 else inverse_code(key[b])
        ra = key[a]
        rest = key[:a] + key[a + 1 :]
        rest_len = sum(len(r) for r in rest)
        seen_conj = set()
        for u, ui in conj:
            cb = _join(_join(u, rb), ui)
            if cb in seen_conj:
                continue
            seen_conj.add(cb)
            prod = _join(ra, cb)
            core, _ = cyclic_core_code(prod)
            child = _canon(core)
            new_key = tuple(sorted(rest + (child,)))
            out.append((new_key, rest_len + len(child), (a, b, e, u)))
        # rotations of both relators that cancel at the junction; the rotated
        # product is a * u b^e u^-1 conjugated, with u = ra[:i] rb[:j]^-1
        seen_child = set()
        for i in range(len(ra)):
            ra_i = ra[i:] + ra[:i]
            for j in range(len(rb)):
                if ra_i[-1] ^ 1 != rb[j]:
                    continue
                core, _ = cyclic_core_code(_join(ra_i, rb[j:] + rb[:j]))
                child = _canon(core)
                if child in seen_child:
                    continue
                seen_child.add(child)
                u = _join(ra[:i], inverse_code(rb[:j]))
                new_key = tuple(sorted(rest + (child,)))
                out.append((new_key, rest_len + len(child), (a, b, e, u)))
    return out


class _Engine:
    def __init__(self, p, target_m, budget, threads, allow_stabilization, allow_automorphisms):
        self.p = p
        self.m = target_m
        self.budget = budget
        self.threads = max(1, int(threads))
        self.allow_stab = allow_stabilization
        self.allow_auto = allow_automorphisms
        self.nodes = 0
        self._conj_cache: Dict[int, list] = {}
        self._pool = ThreadPoolExecutor(self.threads) if self.threads > 1 else None

    def conj(self, gens: int):
        if gens not in self._conj_cache:
            codes = conjugator_codes(gens, self.budget.max_conjugator_length)
            self._conj_cache[gens] = [(u, inverse_code(u)) for u in codes]
        return self._conj_cache[gens]

    def successors(self, state: State) -> list:
        gens, key = state
        k = len(key)
        tasks = [(a, b, e) for a in range(k) for b in range(k) if a != b for e in (1, -1)]
        conj = self.conj(gens)
        if self._pool is None or len(tasks) < 2:
            raw = _expand_pairs(key, tasks, conj)
        else:
            # one task per work item, concatenated in task order: identical to the serial order
            parts = self._pool.map(lambda t: _expand_pairs(key, (t,), conj), tasks)
            raw = [item for part in parts for item in part]
        out = [((gens, ck), total, ("concat",) + edge) for ck, total, edge in raw]
        if self.allow_stab and gens == self.p.generators:
            ck = tuple(sorted(key + (bytes([2 * gens]),)))
            out.append(((gens + 1, ck), sum(map(len, ck)), ("stabilize",)))
        if self.allow_auto:
            for i in range(1, gens + 1):
                for j in range(1, gens + 1):
                    if i == j:
                        continue
                    for s in (1, -1):
                        img = {i: Word([i, s * j])}
                        rels = [substitute_many(decode(r), img) for r in key]
                        ck = tuple(sorted(_canon(cyclic_core_code(encode(r))[0]) for r in rels))
                        out.append(((gens, ck), sum(map(len, ck)), ("nielsen", i, j, s)))
        return out

    def run(self):
        start_key = tuple(sorted(_canon(cyclic_core_code(encode(r))[0]) for r in self.p.relators))
        start: State = (self.p.generators, start_key)
        parents: Dict[State, Optional[tuple]] = {start: None}
        if _goal(start_key, self.m):
            return self.certificate(start, parents)
        heap = [(sum(map(len, start_key)), sum(map(len, start_key)), start)]
        try:
            while heap:
                bound, _, state = heapq.heappop(heap)
                for child, total, edge in self.successors(state):
                    self.nodes += 1
                    if self.nodes > self.budget.max_nodes:
                        return Unknown("node budget exhausted", self.budget.max_nodes)
                    if total > self.budget.max_total_length or child in parents:
                        continue
                    parents[child] = (state, edge)
                    if _goal(child[1], self.m):
                        return self.certificate(child, parents)
                    heapq.heappush(heap, (max(bound, total), total, child))
        finally:
            if self._pool is not None:
                self._pool.shutdown()
        return Unknown("search space exhausted within length cap", self.nodes)

    def certificate(self, goal: State, parents) -> ACCertificate:
        path = []
        s = goal
        while parents[s] is not None:
            prev, edge = parents[s]
            path.append((prev, edge))
            s = prev
        path.reverse()
        cur = self.p
        moves: List[ACMove] = []

        def emit(mv: ACMove):
            nonlocal cur
            moves.append(mv)
            cur = _apply(cur, mv)

        for (gens, key), edge in path:
            if edge[0] == "stabilize":
                emit(Stabilize())
                continue
            if edge[0] == "nielsen":
                emit(Nielsen(edge[1], edge[2], edge[3]))
                continue
            _, a, b, e, u = edge
            slots = _slot_map(cur, key)
            A, B = slots[a], slots[b]
            _normalize_into(cur, A, emit)
            _normalize_into(cur, B, emit)
            if e == -1:
                emit(Invert(B))
            if u:
                emit(Conjugate(B, decode(u)))
            emit(Concat(A, B))
        for g in range(1, self.m + 1):
            target = bytes([2 * (g - 1)])
            idx = next(
                i
                for i in range(g, len(cur.relators) + 1)
                if _canon(cyclic_core_code(encode(cur.relators[i - 1]))[0]) == target
            )
            _normalize_into(cur, idx, emit)
            if idx != g:
                for mv in _swap_in(g, idx, cur.relators[g - 1]):
                    emit(mv)
        cert = make_certificate(self.p, moves)
        assert cert.claimed_final == cur and is_m_trivial_form(cur, self.m)
        return cert


def _apply(p, mv):
    from .presentations import apply_ac_move

    return apply_ac_move(p, mv)


def _slot_map(p: GroupPresentation, key: Tuple[bytes, ...]) -> List[int]:
    """Map positions of the sorted canonical key to 1-based relator indices of ``p``."""
    tagged = sorted(
        (_canon(cyclic_core_code(encode(r))[0]), i) for i, r in enumerate(p.relators, 1)
    )
    assert tuple(c for c, _ in tagged) == key, "actual presentation drifted from search state"
    return [i for _, i in tagged]


def _swap_in(i: int, j: int, r: Word) -> List[ACMove]:
    """Moves exchanging relator i (= r) with relator j (= a single generator)."""
    return [
        Concat(j, i),
        Invert(i),
        Concat(i, j),
        Conjugate(i, r),
        Invert(j),
        Concat(j, i),
        Invert(j),
    ]


def _normalize_into(p: GroupPresentation, idx: int, emit) -> None:
    """Emit moves turning relator ``idx`` into its canonical representative."""
    _, z, s = normalize_relator(p.relators[idx - 1])
    if z:
        emit(Conjugate(idx, z.inverse()))
    if s == -1:
        emit(Invert(idx))


def ac_search(
    p: GroupPresentation,
    target_m: int,
    budget: SearchBudget = DEFAULT_BUDGET,
    *,
    threads: int = 1,
    allow_stabilization: bool = False,
    allow_automorphisms: bool = False,
):
    """Search for AC moves taking ``p`` to an m-trivial presentation.

    Returns an :class:`ACCertificate` or :class:`Unknown`.  ``threads`` only
    splits successor generation; verdicts and certificates do not depend on it.
    """
    if target_m > p.generators:
        raise ValueError(f"target_m={target_m} exceeds generator count {p.generators}")
    engine = _Engine(p, target_m, budget, threads, allow_stabilization, allow_automorphisms)
    result = engine.run()
    if isinstance(result, ACCertificate):
        object.__setattr__(result, "_nodes", engine.nodes)
    return result


def search_nodes(result) -> int:
    if isinstance(result, Unknown):
        return result.nodes
    return getattr(result, "_nodes", 0)
