"""Built-in example families.

Every entry carries the invariant values it is expected to have, each
tagged with where the value comes from.  ``verify_entry`` recomputes them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Tuple, Union

from .alexander import LaurentPoly, alexander_polynomial
from .diagrams import Band, BandPass, RibbonPresentation, band_pass, group_of
from .handles import ClosedSphereSpec
from .presentations import GroupPresentation, abelianization
from .undisking import UndiskingCertificate, greedy, verify_undisking
from .words import Word


class UnsupportedParameter(ValueError):
    pass


KAWAUCHI_DIR = Path(__file__).parent / "data" / "kawauchi"


def trivial(n: int) -> RibbonPresentation:
    if n < 1:
        raise UnsupportedParameter("trivial(n) needs n >= 1")
    return RibbonPresentation(n, tuple(Band(i, i + 1) for i in range(1, n)))


# --- spun twist knots ----------------------------------------------------------------


def twist_parameter(n: int) -> int:
    """Twist count k with Delta = k t^2 - (2k+1) t + k for ``spun_twist(n)``.

    n = 1 is the trefoil and n = -1 the figure eight; from |n| = 2 on, k = n.
    """
    if n == 0:
        raise UnsupportedParameter("spun_twist(0) is the unknot and is not a member of the family")
    if n == 1:
        return -1
    if n == -1:
        return 1
    return n


def twist_polynomial(k: int) -> LaurentPoly:
    return LaurentPoly.from_ascending([k, -(2 * k + 1), k]).normalized()


def two_bridge_word(p: int, q: int) -> Word:
    """Schubert word x1^e1 x2^e2 x1^e3 ... with e_i = (-1)^floor(iq/p)."""
    return Word((-1) ** ((i * q) // p) * (1 if i % 2 else 2) for i in range(1, p))


def spun_twist_word(n: int) -> Word:
    k = twist_parameter(n)
    p = abs(4 * k + 1)
    return two_bridge_word(p, p - 2)


def spun_twist(n: int) -> RibbonPresentation:
    """Two circles joined by one band carrying the 2-bridge word of the twist knot."""
    return RibbonPresentation(2, (Band(1, 2, spun_twist_word(n)),))


def spun_twist_pass(n: int) -> BandPass:
    w = spun_twist_word(n)
    pos = (len(w) + 2) // 2
    a = w[pos - 1]
    return BandPass(1, pos, (abs(a), 1 if a > 0 else -1), "delete")


@lru_cache(maxsize=None)
def spun_twist_certificate(n: int) -> UndiskingCertificate:
    """The stored one-pass certificate: delete the middle letter, then reduce."""
    bp = spun_twist_pass(n)
    _, moves = greedy(band_pass(spun_twist(n), bp))
    return UndiskingCertificate((bp,), tuple(moves))


# --- group presentations -----------------------------------------------------------------


def ak(n: int) -> GroupPresentation:
    """<x, y | xyx = yxy, x^(n+1) = y^n>."""
    if n < 2:
        raise UnsupportedParameter("ak(n) needs n >= 2")
    return GroupPresentation(
        2,
        (Word([1, 2, 1, -2, -1, -2]), Word([1] * (n + 1) + [-2] * n)),
    )


# --- closed spheres ------------------------------------------------------------------


STEVEDORE_DISK_WORD = Word([1, -2])
TREFOIL_RELATOR = Word([1, 2, 1, -2, -1, -2])
TWO_TWIST_OMEGA = Word([1, 1, 1, 2])


def two_twist_spun_trefoil() -> ClosedSphereSpec:
    """Two minima, two maxima, one fusion and one fission band.

    The fission relation x2 = w x1 w^-1 with w = x1^3 x2 becomes x1^2 x2 = x2 x1^2
    once the trefoil relation (kept as the dual fusion relator) is used, so
    the maxima-side presentation is <a, b | aba = bab, a^2 b = b a^2>.
    The minima half is a Stevedore ribbon disk with Delta = t - 2.
    """
    return ClosedSphereSpec(
        fusion=RibbonPresentation(2, (Band(1, 2, STEVEDORE_DISK_WORD),)),
        maxima=2,
        fission_words=(TWO_TWIST_OMEGA,),
        fusion_words_dual=(TREFOIL_RELATOR,),
    )


def one_maximum(fusion: RibbonPresentation) -> ClosedSphereSpec:
    """A sphere with a single maximum over the given minima half."""
    return ClosedSphereSpec(fusion=fusion, maxima=1)


# --- entries ---------------------------------------------------------------------------


Payload = Union[RibbonPresentation, ClosedSphereSpec, GroupPresentation]


@dataclass(frozen=True)
class Expected:
    value: object
    provenance: str


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: Tuple[int, ...]
    payload: Payload
    expected: Dict[str, Expected] = field(default_factory=dict)


def _poly(k: int) -> List[List[int]]:
    return twist_polynomial(k).to_pairs()


def entry(name: str, n: int | None = None) -> CatalogEntry:
    if name == "trivial":
        n = 1 if n is None else n
        return CatalogEntry(
            name, (n,), trivial(n), {"alexander": Expected([[0, 1]], "TRIVIAL"), "undisking_bound": Expected(0, "TRIVIAL")}
        )
    if name == "spun-twist":
        n = 1 if n is None else n
        return CatalogEntry(
            name,
            (n,),
            spun_twist(n),
            {
                "alexander": Expected(_poly(twist_parameter(n)), "DERIVED"),
                "undisking_bound": Expected(1, "REFERENCE"),
            },
        )
    if name == "ak":
        n = 3 if n is None else n
        return CatalogEntry(
            name, (n,), ak(n), {"abelianization": Expected({"divisors": [1, 1], "free_rank": 0}, "DERIVED")}
        )
    if name == "two-twist-spun-trefoil":
        return CatalogEntry(
            name,
            (),
            two_twist_spun_trefoil(),
            {
                "euler": Expected(True, "REFERENCE"),
                "gluck4_counts": Expected([1, 2, 3, 1, 1], "REFERENCE"),
                "product_ball": Expected("CERTIFIED_B5", "DERIVED"),
            },
        )
    if name == "one-maximum":
        n = 1 if n is None else n
        return CatalogEntry(
            name,
            (n,),
            one_maximum(trivial(n)),
            {"euler": Expected(True, "TRIVIAL"), "product_ball": Expected("CERTIFIED_B5", "REFERENCE")},
        )
    if name == "one-maximum-spun-trefoil":
        return CatalogEntry(
            name,
            (),
            one_maximum(spun_twist(1)),
            {"euler": Expected(True, "TRIVIAL"), "product_ball": Expected("CERTIFIED_B5", "REFERENCE")},
        )
    raise KeyError(f"unknown catalog entry {name!r}")


NAMES = ("trivial", "spun-twist", "ak", "two-twist-spun-trefoil", "one-maximum", "one-maximum-spun-trefoil")


def entries() -> List[CatalogEntry]:
    """The shipped instances."""
    out = [entry("trivial", n) for n in range(1, 7)]
    out += [entry("spun-twist", n) for n in (1, 2, 3, 4, 5, -1, -2, -3)]
    out += [entry("ak", n) for n in (2, 3, 4)]
    out.append(entry("two-twist-spun-trefoil"))
    out += [entry("one-maximum", n) for n in (1, 2, 3)]
    out.append(entry("one-maximum-spun-trefoil"))
    return out


def sphere_specs() -> List[ClosedSphereSpec]:
    return [e.payload for e in entries() if isinstance(e.payload, ClosedSphereSpec)]


def verify_entry(e: CatalogEntry) -> Dict[str, bool]:
    """Recompute every expected value of ``e``."""
    from .handles import euler_check, handle_counts, verify_product_ball

    out = {}
    for key, exp in e.expected.items():
        if key == "alexander":
            got = alexander_polynomial(group_of(e.payload)).to_pairs()
        elif key == "undisking_bound":
            if exp.value == 0:
                got = 0 if verify_undisking(e.payload, UndiskingCertificate()) else None
            else:
                cert = spun_twist_certificate(e.params[0])
                got = len(cert.passes) if verify_undisking(e.payload, cert) else None
        elif key == "abelianization":
            got = abelianization(e.payload).to_dict()
        elif key == "euler":
            got = euler_check(e.payload)
        elif key == "gluck4_counts":
            got = list(handle_counts(e.payload, "gluck4").counts)
        elif key == "product_ball":
            got = verify_product_ball(e.payload).verdict
        else:
            raise KeyError(key)
        out[key] = got == exp.value
    return out


# --- user-supplied disk tables ------------------------------------------------------------


def validate_kawauchi(directory: Path = KAWAUCHI_DIR) -> List[dict]:
    """Check every ``*.json`` disk record in ``directory``.

    A record is ``{"name": str, "diagram": <diagram>, "undisking_bound": k,
    "certificate": <undisking certificate>}``; the certificate is optional and,
    when present, must replay with at most ``k`` passes.
    """
    from .diagrams import validate
    from .io import ParseError, load_json, parse_diagram, parse_undisking

    rows = []
    for path in sorted(Path(directory).glob("*.json")):
        row = {"file": path.name, "ok": False}
        try:
            obj = load_json(path)
            p = parse_diagram(obj.get("diagram") if isinstance(obj, dict) else None, "diagram")
            d = validate(p)
            row["disk"] = d.is_disk
            bound = obj.get("undisking_bound")
            ok = d.is_disk
            if "certificate" in obj:
                cert = parse_undisking(obj["certificate"], "certificate")
                row["certificate_replays"] = verify_undisking(p, cert)
                ok = ok and row["certificate_replays"] and (bound is None or len(cert.passes) <= bound)
            row["ok"] = ok
        except ParseError as exc:
            row["error"] = str(exc)
        rows.append(row)
    return rows
