"""Exact Laurent polynomials in one variable and abelianized Fox calculus.

Every generator of a ribbon presentation is a meridian, so the
abelianization sends all of them to the single variable ``t``.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Sequence, Tuple

from .words import total_exponent


class NonMeridionalPresentation(ValueError):
    pass


class WrongDeficiency(ValueError):
    pass


class LaurentPoly:
    """Finite sum of c * t^e with integer c.  Zero coefficients are never stored."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Dict[int, int] | Iterable[Tuple[int, int]] | None = None):
        items = coeffs.items() if isinstance(coeffs, dict) else (coeffs or ())
        c: Dict[int, int] = {}
        for e, v in items:
            v = c.get(int(e), 0) + int(v)
            if v:
                c[int(e)] = v
            else:
                c.pop(int(e), None)
        self._c = c

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def from_ascending(cls, coeffs: Sequence[int], low: int = 0) -> "LaurentPoly":
        """``from_ascending([2, -5, 2])`` is 2 - 5t + 2t^2."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def degree_range(self) -> Tuple[int, int]:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return min(self._c), max(self._c)

    def to_pairs(self) -> List[List[int]]:
        return [[e, self._c[e]] for e in sorted(self._c)]

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return isinstance(other, LaurentPoly) and self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        out = dict(self._c)
        for e, v in other._c.items():
            s = out.get(e, 0) + v
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return _raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return _raw({e: v * other for e, v in self._c.items()}) if other else LaurentPoly()
        out: Dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        return _raw({e + k: v for e, v in self._c.items()})

    def evaluate(self, t: int) -> int:
        if t not in (1, -1) and self._c and min(self._c) < 0:
            raise ValueError("negative exponents evaluate exactly only at t = +-1")
        return sum(v * t ** abs(e) if t in (1, -1) else v * t ** e for e, v in self._c.items())

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient of an exact division in Z[t, t^-1]; raises if not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        lo_a, hi_a = self.degree_range()
        lo_b, hi_b = other.degree_range()
        rem = dict(self._c)
        lead = other._c[hi_b]
        quot: Dict[int, int] = {}
        while rem:
            hi = max(rem)
            if hi - hi_b < lo_a - lo_b:
                raise ArithmeticError("inexact Laurent division")
            q, r = divmod(rem[hi], lead)
            if r:
                raise ArithmeticError("inexact Laurent division")
            k = hi - hi_b
            quot[k] = q
            for e, v in other._c.items():
                s = rem.get(e + k, 0) - q * v
                if s:
                    rem[e + k] = s
                else:
                    rem.pop(e + k, None)
        return LaurentPoly(quot)

    def normalized(self) -> "LaurentPoly":
        """Multiply by +-t^k so the lowest exponent is 0 and the top coefficient positive."""
        if not self._c:
            return self
        lo, hi = self.degree_range()
        sign = 1 if self._c[hi] > 0 else -1
        return _raw({e - lo: sign * v for e, v in self._c.items()})

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_pairs()!r})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            mag = abs(v)
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            terms.append(("-" if v < 0 else "+", body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for s, body in terms[1:]:
            out += f" {s} {body}"
        return out


def _raw(c: Dict[int, int]) -> LaurentPoly:
    p = LaurentPoly.__new__(LaurentPoly)
    p._c = c
    return p


ONE = LaurentPoly.constant(1)
ZERO = LaurentPoly()


def fox_derivative(w: Iterable[int], g: int) -> LaurentPoly:
    """d w / d x_g, pushed to Z[t, t^-1] by x_i -> t for every i."""
    out: Dict[int, int] = {}
    e = 0
    for a in w:
        if a == g:
            out[e] = out.get(e, 0) + 1
            e += 1
        elif a == -g:
            e -= 1
            out[e] = out.get(e, 0) - 1
        else:
            e += 1 if a > 0 else -1
    return LaurentPoly(out)


def alexander_matrix(p) -> List[List[LaurentPoly]]:
    """Rows indexed by relators, columns by generators."""
    for i, r in enumerate(p.relators):
        if total_exponent(r) != 0:
            raise NonMeridionalPresentation(
                f"relator {i + 1} has total exponent sum {total_exponent(r)}"
            )
    return [[fox_derivative(r, g) for g in range(1, p.generators + 1)] for r in p.relators]


def determinant(m: List[List[LaurentPoly]]) -> LaurentPoly:
    """Fraction-free (Bareiss) elimination over Z[t, t^-1]."""
    n = len(m)
    if n == 0:
        return ONE
    a = [list(row) for row in m]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def alexander_polynomial(p, deleted_column: int | None = None) -> LaurentPoly:
    """Normalized determinant of the Alexander matrix with one column deleted.

    Requires deficiency exactly one.  ``deleted_column`` is 1-based and defaults
    to the last generator.
    """
    if p.generators - len(p.relators) != 1:
        raise WrongDeficiency(
            f"deficiency {p.generators - len(p.relators)} (need 1): "
            f"{p.generators} generators, {len(p.relators)} relators"
        )
    mat = alexander_matrix(p)
    col = p.generators if deleted_column is None else deleted_column
    if not 1 <= col <= p.generators:
        raise IndexError(f"column {col} out of range")
    minor = [[row[j] for j in range(p.generators) if j != col - 1] for row in mat]
    return determinant(minor).normalized()
