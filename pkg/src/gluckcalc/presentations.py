"""Group presentations, Andrews-Curtis moves and certificates.

Relator and generator indices in the public API are 1-based, matching the
serialized move records ``{"op": "concat", "i": 1, "j": 2}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple, Union

from .smith import elementary_divisors
from .words import Word, conjugate, cyclic_reduce, exponent_sum, reduce, substitute_many


class InvalidIndex(IndexError):
    pass


class DestabilizeBlocked(ValueError):
    pass


class ReplayMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GroupPresentation:
    generators: int
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        if self.generators < 0:
            raise ValueError("generator count must be non-negative")
        rels = tuple(reduce(r) for r in self.relators)
        for k, r in enumerate(rels):
            if r.max_generator() > self.generators:
                raise ValueError(
                    f"relator {k + 1} uses x{r.max_generator()} but there are "
                    f"only {self.generators} generators"
                )
        object.__setattr__(self, "relators", rels)

    def with_relators(self, relators: Iterable[Word]) -> "GroupPresentation":
        return GroupPresentation(self.generators, tuple(relators))

    @property
    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def exponent_matrix(self) -> List[List[int]]:
        """g x r matrix of exponent sums (column k is relator k)."""
        return [
            [exponent_sum(r, g) for r in self.relators] for g in range(1, self.generators + 1)
        ]

    def __str__(self) -> str:
        gens = ", ".join(f"x{g}" for g in range(1, self.generators + 1))
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {gens} | {rels} >"


# --- AC moves ---------------------------------------------------------------


@dataclass(frozen=True)
class Concat:
    """r_i -> r_i r_j."""

    i: int
    j: int


@dataclass(frozen=True)
class Invert:
    i: int


@dataclass(frozen=True)
class Conjugate:
    """r_i -> u r_i u^-1."""

    i: int
    u: Word = field(default_factory=Word)


@dataclass(frozen=True)
class Stabilize:
    """Add generator x_{g+1} and relator x_{g+1}."""


@dataclass(frozen=True)
class Destabilize:
    """Remove relator i = x_g and generator x_g (which may appear nowhere else)."""

    i: int


@dataclass(frozen=True)
class Nielsen:
    """Generator automorphism x_i -> x_i x_j^sign applied to every relator."""

    i: int
    j: int
    sign: int = 1


ACMove = Union[Concat, Invert, Conjugate, Stabilize, Destabilize, Nielsen]


def _check(p: GroupPresentation, *idx: int) -> None:
    for i in idx:
        if not 1 <= i <= len(p.relators):
            raise InvalidIndex(f"relator index {i} out of range 1..{len(p.relators)}")


def apply_ac_move(p: GroupPresentation, m: ACMove) -> GroupPresentation:
    rels = list(p.relators)
    if isinstance(m, Concat):
        _check(p, m.i, m.j)
        if m.i == m.j:
            raise InvalidIndex("concat requires i != j")
        rels[m.i - 1] = rels[m.i - 1] * rels[m.j - 1]
    elif isinstance(m, Invert):
        _check(p, m.i)
        rels[m.i - 1] = rels[m.i - 1].inverse()
    elif isinstance(m, Conjugate):
        _check(p, m.i)
        u = Word(m.u)
        if u.max_generator() > p.generators:
            raise InvalidIndex(f"conjugator uses a generator beyond x{p.generators}")
        rels[m.i - 1] = conjugate(rels[m.i - 1], u)
    elif isinstance(m, Stabilize):
        g = p.generators + 1
        return GroupPresentation(g, tuple(rels) + (Word([g]),))
    elif isinstance(m, Destabilize):
        _check(p, m.i)
        r = rels[m.i - 1]
        if len(r) != 1 or r[0] < 0:
            raise DestabilizeBlocked(f"relator {m.i} is not a single generator")
        g = r[0]
        others = rels[: m.i - 1] + rels[m.i :]
        if any(abs(a) == g for w in others for a in w):
            raise DestabilizeBlocked(f"x{g} occurs in another relator")
        shift = {h: Word([h - 1]) for h in range(g + 1, p.generators + 1)}
        return GroupPresentation(p.generators - 1, tuple(substitute_many(w, shift) for w in others))
    elif isinstance(m, Nielsen):
        if not (1 <= m.i <= p.generators and 1 <= m.j <= p.generators) or m.i == m.j:
            raise InvalidIndex("nielsen move needs distinct generators in range")
        if m.sign not in (1, -1):
            raise ValueError("nielsen sign must be +-1")
        img = {m.i: Word([m.i, m.sign * m.j])}
        rels = [substitute_many(r, img) for r in rels]
    else:
        raise TypeError(f"not an AC move: {m!r}")
    return GroupPresentation(p.generators, tuple(rels))


def replay(p: GroupPresentation, moves: Iterable[ACMove]) -> GroupPresentation:
    for m in moves:
        p = apply_ac_move(p, m)
    return p


# --- canonical form -----------------------------------------------------------


def letter_code(a: int) -> int:
    """Byte code ordering letters by generator, positive before inverse."""
    return 2 * (abs(a) - 1) + (0 if a > 0 else 1)


def code_letter(c: int) -> int:
    g = c // 2 + 1
    return g if c % 2 == 0 else -g


def encode(w: Iterable[int]) -> bytes:
    return bytes(letter_code(a) for a in w)


def decode(b: bytes) -> Word:
    return Word(code_letter(c) for c in b)


_INV_TABLE = bytes(c ^ 1 for c in range(256))


def inverse_code(b: bytes) -> bytes:
    return b.translate(_INV_TABLE)[::-1]


def min_rotation(b: bytes) -> Tuple[bytes, int]:
    """Lexicographically least rotation of ``b`` and its start offset."""
    n = len(b)
    if n <= 1:
        return b, 0
    lo = min(b)
    dd = b + b
    best = None
    best_i = 0
    i = b.find(lo)
    while i != -1 and i < n:
        cand = dd[i : i + n]
        if best is None or cand < best:
            best, best_i = cand, i
        i = dd.find(lo, i + 1)
    return best, best_i


def cyclic_core_code(b: bytes) -> Tuple[bytes, int]:
    """Cyclically reduce an already freely reduced code word; returns (core, k)."""
    n = len(b)
    k = 0
    while 2 * k + 1 < n and b[k] ^ 1 == b[n - 1 - k]:
        k += 1
    return b[k : n - k], k


def canonical_relator_code(b: bytes) -> bytes:
    core, _ = cyclic_core_code(b)
    if not core:
        return core
    r1, _ = min_rotation(core)
    r2, _ = min_rotation(inverse_code(core))
    return r1 if r1 <= r2 else r2


def canonical_key(relators: Iterable[Word]) -> Tuple[bytes, ...]:
    return tuple(sorted(canonical_relator_code(encode(reduce(r))) for r in relators))


def canonical_form(p: GroupPresentation) -> GroupPresentation:
    """Representative invariant under relator permutation, inversion and conjugation."""
    return GroupPresentation(p.generators, tuple(decode(b) for b in canonical_key(p.relators)))


def normalize_relator(w: Word) -> Tuple[Word, Word, int]:
    """Return ``(canon, z, s)`` with ``w == z canon^s z^-1`` freely."""
    r = reduce(w)
    core, conj = cyclic_reduce(r)
    if not core:
        return Word(), conj, 1
    b = encode(core)
    r1, i1 = min_rotation(b)
    r2, i2 = min_rotation(inverse_code(b))
    if r1 <= r2:
        # rotation by i1: core = p q, rot = q p = p^-1 core p, so core = p rot p^-1
        pre = core[:i1]
        return decode(r1), reduce(tuple(conj) + tuple(pre)), 1
    inv = core.inverse()
    pre = inv[:i2]
    # core^-1 = pre canon pre^-1  =>  core = pre canon^-1 pre^-1
    return decode(r2), reduce(tuple(conj) + tuple(pre)), -1


# --- abelianization ------------------------------------------------------------


@dataclass(frozen=True)
class Abelianization:
    divisors: Tuple[int, ...]
    free_rank: int

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.divisors if d != 1)

    def invariants(self) -> Tuple[Tuple[int, ...], int]:
        """Isomorphism type of the abelian group: torsion coefficients and free rank."""
        return self.torsion, self.free_rank

    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    def to_dict(self) -> dict:
        return {"divisors": list(self.divisors), "free_rank": self.free_rank}


def abelianization(p: GroupPresentation) -> Abelianization:
    divs = elementary_divisors(p.exponent_matrix()) if p.relators and p.generators else []
    return Abelianization(tuple(divs), p.generators - len(divs))


# --- m-triviality and certificates ------------------------------------------------


def is_m_trivial_form(p: GroupPresentation, m: int) -> bool:
    if m > p.generators:
        raise ValueError(f"m={m} exceeds generator count {p.generators}")
    """Relator i is exactly x_i for i = 1..m; later relators are excess."""
    if m > len(p.relators):
        return False
    return all(p.relators[g - 1] == Word([g]) for g in range(1, m + 1))


@dataclass(frozen=True)
class ACCertificate:
    moves: Tuple[ACMove, ...]
    claimed_final: GroupPresentation

    def __len__(self) -> int:
        return len(self.moves)


def make_certificate(p: GroupPresentation, moves: Sequence[ACMove]) -> ACCertificate:
    return ACCertificate(tuple(moves), replay(p, moves))


def verify_certificate(p: GroupPresentation, c: ACCertificate, target_m: int) -> bool:
    """True iff replay reaches ``c.claimed_final`` and that is m-trivial.

    Raises :class:`ReplayMismatch` when a move cannot be applied or the
    replayed presentation differs from the claimed one.
    """
    try:
        final = replay(p, c.moves)
    except (InvalidIndex, DestabilizeBlocked, ValueError) as exc:
        raise ReplayMismatch(f"replay failed: {exc}") from exc
    if final != c.claimed_final:
        raise ReplayMismatch("replayed presentation differs from claimed_final")
    return target_m <= final.generators and is_m_trivial_form(final, target_m)
