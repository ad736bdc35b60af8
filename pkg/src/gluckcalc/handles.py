"""Handle bookkeeping for Gluck twists and punctured products.

A closed ribbon sphere is recorded as its minima half (a ribbon disk
presentation with ``n`` circles and ``n - 1`` fusion bands) together with
the maxima count ``m`` and the fission conjugators ``omega_i``, which are
read through the dual disks and so are plain words over x_1..x_m.

Framings are carried as labels only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .acsearch import ac_search
from .budget import DEFAULT_BUDGET, SearchBudget, Unknown
from .diagrams import RibbonPresentation, validate
from .presentations import (
    ACCertificate,
    Concat,
    Conjugate,
    GroupPresentation,
    InvalidIndex,
    Invert,
    make_certificate,
    verify_certificate,
    ReplayMismatch,
)
from .words import Word, conjugate, reduce


class EulerViolation(ValueError):
    pass


class NonstandardFission(ValueError):
    pass


@dataclass(frozen=True)
class ClosedSphereSpec:
    fusion: RibbonPresentation
    maxima: int
    fission_words: Tuple[Word, ...] = ()
    fusion_words_dual: Optional[Tuple[Word, ...]] = None
    # explicit fission relators replace the standard omega_i x_i omega_i^-1 x_{i+1}^-1
    fission_relators: Optional[Tuple[Word, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "fission_words", tuple(Word(w) for w in self.fission_words))
        if self.fusion_words_dual is not None:
            object.__setattr__(
                self, "fusion_words_dual", tuple(Word(w) for w in self.fusion_words_dual)
            )
        if self.fission_relators is not None:
            object.__setattr__(
                self, "fission_relators", tuple(Word(w) for w in self.fission_relators)
            )

    @property
    def minima(self) -> int:
        return self.fusion.circles

    @property
    def band_count(self) -> int:
        """k: fusion bands plus fission bands."""
        return len(self.fusion.bands) + len(self.fission_words)

    @property
    def standard_fission(self) -> bool:
        return self.fission_relators is None


def euler_identity(n: int, m: int, k: int) -> bool:
    return k - n + 1 == m - 1


def euler_check(spec: ClosedSphereSpec) -> bool:
    return euler_identity(spec.minima, spec.maxima, spec.band_count)


def spec_problems(spec: ClosedSphereSpec) -> List[str]:
    out = []
    if spec.maxima < 1:
        out.append("maxima must be at least 1")
    out += [f"fusion: {msg}" for msg in validate(spec.fusion).messages()]
    if len(spec.fission_words) != spec.maxima - 1:
        out.append(f"expected {spec.maxima - 1} fission words, got {len(spec.fission_words)}")
    words = list(spec.fission_words) + list(spec.fusion_words_dual or ()) + list(
        spec.fission_relators or ()
    )
    if any(w.max_generator() > spec.maxima for w in words):
        out.append(f"dual words may only use x1..x{spec.maxima}")
    if spec.fission_relators is not None and len(spec.fission_relators) != spec.maxima - 1:
        out.append(f"expected {spec.maxima - 1} fission relators")
    if not euler_check(spec):
        out.append(
            f"Euler identity fails: k - n + 1 = {spec.band_count - spec.minima + 1}, "
            f"m - 1 = {spec.maxima - 1}"
        )
    return out


@dataclass(frozen=True)
class HandleLabel:
    index: int
    role: str
    framing: Optional[int] = None


@dataclass(frozen=True)
class HandleStructure:
    dimension: int
    counts: Tuple[int, ...]
    presentation: GroupPresentation
    labels: Tuple[HandleLabel, ...] = ()

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * c for i, c in enumerate(self.counts))

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "counts": list(self.counts),
            "euler_characteristic": self.euler_characteristic,
            "labels": [
                {"index": l.index, "role": l.role, "framing": l.framing} for l in self.labels
            ],
        }


def fission_relator(omega: Word, i: int) -> Word:
    return reduce(tuple(omega) + (i,) + tuple(Word(omega).inverse()) + (-(i + 1),))


def fission_relators(spec: ClosedSphereSpec) -> Tuple[Word, ...]:
    if spec.fission_relators is not None:
        return tuple(reduce(r) for r in spec.fission_relators)
    return tuple(fission_relator(w, i) for i, w in enumerate(spec.fission_words, 1))


def gluck_presentation(spec: ClosedSphereSpec) -> GroupPresentation:
    """Gluck relator x1, then the fission relators, then any dual fusion relators."""
    rels = (Word([1]),) + fission_relators(spec) + tuple(spec.fusion_words_dual or ())
    return GroupPresentation(spec.maxima, rels)


def core_presentation(spec: ClosedSphereSpec) -> GroupPresentation:
    """The m-generator sub-presentation: Gluck relator and fission relators only."""
    return GroupPresentation(spec.maxima, (Word([1]),) + fission_relators(spec))


def handle_counts(spec: ClosedSphereSpec, which: str = "gluck4") -> HandleStructure:
    if not euler_check(spec):
        raise EulerViolation("; ".join(p for p in spec_problems(spec) if "Euler" in p))
    n, m, k = spec.minima, spec.maxima, spec.band_count
    labels = [HandleLabel(2, "gluck", 1)]
    labels += [HandleLabel(2, "fusion", 0)] * len(spec.fusion.bands)
    labels += [HandleLabel(2, "fission", 0)] * len(spec.fission_words)
    if which == "gluck4":
        return HandleStructure(
            4, (1, m, k + 1, n - 1, 1), gluck_presentation(spec), tuple(labels + [HandleLabel(4, "cap")])
        )
    if which == "product5":
        return HandleStructure(5, (1, m, k + 1, n - 1, 0, 0), gluck_presentation(spec), tuple(labels))
    raise ValueError(f"unknown decomposition {which!r} (use gluck4 or product5)")


def budac_trivialize(spec: ClosedSphereSpec) -> ACCertificate:
    """Constructive m-trivialization of the Gluck presentation.

    Relator i+1 reads omega x_i omega^-1 x_{i+1}^-1 and relator i is already x_i,
    so four moves turn it into x_{i+1}.
    """
    if not spec.standard_fission:
        raise NonstandardFission("explicit fission relators have no constructive certificate")
    if len(spec.fission_words) != spec.maxima - 1:
        raise EulerViolation("fission word count must be m - 1")
    moves = []
    for i, omega in enumerate(spec.fission_words, 1):
        phi = i + 1
        moves += [
            Conjugate(phi, omega.inverse()),
            Invert(phi),
            Concat(phi, i),
            Conjugate(phi, omega),
        ]
    return make_certificate(gluck_presentation(spec), moves)


def slide_2handle(
    p: GroupPresentation, i: int, j: int, u: Sequence[int] = (), inverse: bool = False
) -> GroupPresentation:
    """r_i -> r_i . u r_j^(+-1) u^-1."""
    for idx in (i, j):
        if not 1 <= idx <= len(p.relators):
            raise InvalidIndex(f"relator index {idx} out of range 1..{len(p.relators)}")
    if i == j:
        raise InvalidIndex("a 2-handle cannot slide over itself")
    rj = p.relators[j - 1]
    if inverse:
        rj = rj.inverse()
    rels = list(p.relators)
    rels[i - 1] = reduce(tuple(rels[i - 1]) + tuple(conjugate(rj, Word(u))))
    return GroupPresentation(p.generators, tuple(rels))


def step2_presentation(
    spec: ClosedSphereSpec, i: int = 1, j: Optional[int] = None, u: Sequence[int] = (), inverse: bool = False
) -> GroupPresentation:
    base = core_presentation(spec)
    if i != 1:
        raise InvalidIndex("Step 2 slides the Gluck relator, which is relator 1")
    if j is None:
        return base
    return slide_2handle(base, i, j, u, inverse)


def verify_step2(
    spec: ClosedSphereSpec,
    i: int = 1,
    j: Optional[int] = None,
    u: Sequence[int] = (),
    budget: SearchBudget = DEFAULT_BUDGET,
    *,
    inverse: bool = False,
    threads: int = 1,
):
    """Slide the Gluck relator over relator ``j`` and search for m-triviality."""
    slid = step2_presentation(spec, i, j, u, inverse)
    return ac_search(slid, spec.maxima, budget, threads=threads)


@dataclass(frozen=True)
class ProductBallVerdict:
    verdict: str
    route: str
    presentation: GroupPresentation
    certificate: Optional[ACCertificate] = None
    unknown: Optional[Unknown] = None

    @property
    def certified(self) -> bool:
        return self.verdict == "CERTIFIED_B5"


def verify_product_ball(
    spec: ClosedSphereSpec, budget: SearchBudget = DEFAULT_BUDGET, *, threads: int = 1
) -> ProductBallVerdict:
    """Certify the algebraic hypothesis for the punctured product to be a 5-ball."""
    if spec.standard_fission:
        route = "constructive"
        cert = budac_trivialize(spec)
        pres = gluck_presentation(spec)
    else:
        route = "search"
        pres = core_presentation(spec)
        cert = ac_search(pres, spec.maxima, budget, threads=threads)
        if isinstance(cert, Unknown):
            return ProductBallVerdict("UNKNOWN", route, pres, None, cert)
    try:
        ok = verify_certificate(pres, cert, spec.maxima)
    except ReplayMismatch as exc:
        return ProductBallVerdict("UNKNOWN", route, pres, None, Unknown(f"replay failed: {exc}"))
    if not ok:
        return ProductBallVerdict("UNKNOWN", route, pres, None, Unknown("certificate not m-trivial"))
    return ProductBallVerdict("CERTIFIED_B5", route, pres, cert)
