"""Free-group words over 1-indexed generators.

A word is a tuple of nonzero integers: ``g`` stands for the letter x_g and
``-g`` for its inverse.  Band words in ribbon presentations may be
unreduced (band passes and pair insertions create cancelling pairs), so
:class:`Word` does not reduce on construction; relators and every
search-engine quantity go through :func:`reduce` first.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Tuple

Letter = Tuple[int, int]


class Word(tuple):
    """Immutable sequence of signed generator indices."""

    def __new__(cls, letters: Iterable[int] = ()):
        letters = tuple(letters)
        for a in letters:
            if not isinstance(a, int) or isinstance(a, bool) or a == 0:
                raise ValueError(f"invalid letter {a!r}: expected a nonzero int")
        return super().__new__(cls, letters)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "Word":
        out = []
        for pair in pairs:
            g, s = pair
            if g < 1 or s not in (1, -1):
                raise ValueError(f"invalid letter pair {list(pair)!r}")
            out.append(g * s)
        return cls(out)

    def pairs(self) -> list:
        return [[abs(a), 1 if a > 0 else -1] for a in self]

    def letters(self) -> list:
        return [(abs(a), 1 if a > 0 else -1) for a in self]

    def inverse(self) -> "Word":
        return Word(-a for a in reversed(self))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __mul__(self, other) -> "Word":
        # free-group product: concatenate, then reduce
        return reduce(tuple(self) + tuple(other))

    def __rmul__(self, other) -> "Word":
        return reduce(tuple(other) + tuple(self))

    def __add__(self, other) -> "Word":
        return Word(tuple(self) + tuple(other))

    def __getitem__(self, item):
        out = super().__getitem__(item)
        if isinstance(item, slice):
            return Word(out)
        return out

    def is_reduced(self) -> bool:
        return all(self[i] != -self[i + 1] for i in range(len(self) - 1))

    def max_generator(self) -> int:
        return max((abs(a) for a in self), default=0)

    def __repr__(self) -> str:
        return f"Word({list(self)!r})"

    def __str__(self) -> str:
        return format_word(self)


IDENTITY = Word()


def reduce(w: Iterable[int]) -> Word:
    """Freely reduce ``w`` with a single stack pass."""
    stack: list = []
    for a in w:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return Word(stack)


def cyclic_reduce(w: Iterable[int]) -> Tuple[Word, Word]:
    """Return ``(core, conjugator)`` with ``w == conjugator * core * conjugator**-1``."""
    r = reduce(w)
    k = 0
    n = len(r)
    while 2 * k + 1 < n and r[k] == -r[n - 1 - k]:
        k += 1
    return Word(r[k : n - k]), Word(r[:k])


def conjugate(w: Iterable[int], u: Iterable[int]) -> Word:
    """``u w u^-1``, reduced."""
    u = Word(u)
    return reduce(tuple(u) + tuple(w) + tuple(u.inverse()))


def substitute(w: Iterable[int], g: int, by: Iterable[int]) -> Word:
    """Replace x_g by ``by`` (and x_g^-1 by its inverse), then reduce."""
    by = tuple(by)
    inv = tuple(-a for a in reversed(by))
    out: list = []
    for a in w:
        if a == g:
            out.extend(by)
        elif a == -g:
            out.extend(inv)
        else:
            out.append(a)
    return reduce(out)


def substitute_many(w: Iterable[int], images: dict) -> Word:
    """Apply the endomorphism x_g -> images[g] (generators not in ``images`` are fixed)."""
    out: list = []
    for a in w:
        img = images.get(abs(a))
        if img is None:
            out.append(a)
        elif a > 0:
            out.extend(img)
        else:
            out.extend(-b for b in reversed(img))
    return reduce(out)


def exponent_sum(w: Iterable[int], g: int) -> int:
    return sum(1 if a == g else -1 if a == -g else 0 for a in w)


def total_exponent(w: Iterable[int]) -> int:
    return sum(1 if a > 0 else -1 for a in w)


def occurrences(w: Iterable[int], g: int) -> int:
    return sum(1 for a in w if abs(a) == g)


_NAMES = "xyzwabcdefgh"


def format_word(w: Iterable[int], symbolic: bool = False) -> str:
    """Render a word as ``x1 x2^-1`` (or ``x Y`` style when ``symbolic``)."""
    w = tuple(w)
    if not w:
        return "1"
    parts = []
    for a in w:
        g = abs(a)
        if symbolic and g <= len(_NAMES):
            name = _NAMES[g - 1]
            parts.append(name if a > 0 else name.upper())
        else:
            parts.append(f"x{g}" if a > 0 else f"x{g}^-1")
    return ("" if symbolic else " ").join(parts)


def parse_word(text: str) -> Word:
    """Parse the compact symbolic form: lowercase letter = generator, uppercase = inverse."""
    out = []
    for ch in text.replace(" ", ""):
        if ch == "1":
            continue
        g = _NAMES.index(ch.lower()) + 1
        out.append(g if ch.islower() else -g)
    return Word(out)
