"""JSON records for every payload type, with field-path parse errors.

Words are lists of ``[generator, sign]`` pairs.  Indices are 1-based.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from .diagrams import (
    Band,
    BandPass,
    Cancel,
    DiagramMove,
    Drag,
    EndReduce,
    InsertPair,
    Intro,
    ReducePair,
    RibbonPresentation,
    SlideEnd,
    Swim,
)
from .handles import ClosedSphereSpec
from .presentations import (
    ACCertificate,
    ACMove,
    Concat,
    Conjugate,
    Destabilize,
    GroupPresentation,
    Invert,
    Nielsen,
    Stabilize,
)
from .undisking import UndiskingCertificate
from .words import Word


class ParseError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path or "<root>"
        self.message = message
        super().__init__(f"{self.path}: {message}")


def _join(path: str, key) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def _get(obj, key: str, path: str, default=...):
    if not isinstance(obj, dict):
        raise ParseError(path, "expected an object")
    if key not in obj:
        if default is ...:
            raise ParseError(_join(path, key), "missing field")
        return default
    return obj[key]


def _int(v, path: str, minimum: Optional[int] = None) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(path, f"expected an integer, got {json.dumps(v)}")
    if minimum is not None and v < minimum:
        raise ParseError(path, f"must be >= {minimum}")
    return v


def _list(v, path: str) -> list:
    if not isinstance(v, list):
        raise ParseError(path, "expected a list")
    return v


# --- words and presentations ------------------------------------------------------


def word_to_json(w: Word) -> List[List[int]]:
    return [[abs(a), 1 if a > 0 else -1] for a in w]


def parse_word(obj, path: str = "word") -> Word:
    out = []
    for k, item in enumerate(_list(obj, path)):
        p = _join(path, k)
        if not isinstance(item, list) or len(item) != 2:
            raise ParseError(p, "expected [generator, sign]")
        g = _int(item[0], _join(p, 0), 1)
        s = _int(item[1], _join(p, 1))
        if s not in (1, -1):
            raise ParseError(_join(p, 1), "sign must be 1 or -1")
        out.append(g * s)
    return Word(out)


def presentation_to_json(p: GroupPresentation) -> dict:
    return {"generators": p.generators, "relators": [word_to_json(r) for r in p.relators]}


def parse_presentation(obj, path: str = "") -> GroupPresentation:
    g = _int(_get(obj, "generators", path), _join(path, "generators"), 0)
    rp = _join(path, "relators")
    rels = [parse_word(r, _join(rp, k)) for k, r in enumerate(_list(_get(obj, "relators", path), rp))]
    for k, r in enumerate(rels):
        if r.max_generator() > g:
            raise ParseError(_join(rp, k), f"uses x{r.max_generator()} but generators = {g}")
    return GroupPresentation(g, tuple(rels))


# --- diagrams -------------------------------------------------------------------------


def diagram_to_json(p: RibbonPresentation) -> dict:
    return {
        "circles": p.circles,
        "bands": [{"from": b.source, "to": b.target, "word": word_to_json(b.word)} for b in p.bands],
    }


def parse_diagram(obj, path: str = "") -> RibbonPresentation:
    n = _get(obj, "circles", path)
    n = _int(n, _join(path, "circles"))
    if n < 1:
        raise ParseError(_join(path, "circles"), "n >= 1 required")
    bp = _join(path, "bands")
    bands = []
    for k, rec in enumerate(_list(_get(obj, "bands", path, []), bp)):
        p = _join(bp, k)
        s = _int(_get(rec, "from", p), _join(p, "from"), 1)
        t = _int(_get(rec, "to", p), _join(p, "to"), 1)
        for key, c in (("from", s), ("to", t)):
            if c > n:
                raise ParseError(_join(p, key), f"circle {c} out of range 1..{n}")
        w = parse_word(_get(rec, "word", p, []), _join(p, "word"))
        if w.max_generator() > n:
            raise ParseError(_join(p, "word"), f"references circle {w.max_generator()} (only {n})")
        bands.append(Band(s, t, w))
    return RibbonPresentation(n, tuple(bands))


# --- closed sphere specs --------------------------------------------------------------------


def spec_to_json(s: ClosedSphereSpec) -> dict:
    out = {
        "fusion": diagram_to_json(s.fusion),
        "maxima": s.maxima,
        "fission_words": [word_to_json(w) for w in s.fission_words],
        "fusion_words_dual": None
        if s.fusion_words_dual is None
        else [word_to_json(w) for w in s.fusion_words_dual],
    }
    if s.fission_relators is not None:
        out["fission_relators"] = [word_to_json(w) for w in s.fission_relators]
    return out


def _words(obj, path: str) -> List[Word]:
    return [parse_word(w, _join(path, k)) for k, w in enumerate(_list(obj, path))]


def parse_spec(obj, path: str = "") -> ClosedSphereSpec:
    fusion = parse_diagram(_get(obj, "fusion", path), _join(path, "fusion"))
    m = _int(_get(obj, "maxima", path), _join(path, "maxima"), 1)
    fw = _words(_get(obj, "fission_words", path, []), _join(path, "fission_words"))
    dual = _get(obj, "fusion_words_dual", path, None)
    dual = None if dual is None else tuple(_words(dual, _join(path, "fusion_words_dual")))
    fr = _get(obj, "fission_relators", path, None)
    fr = None if fr is None else tuple(_words(fr, _join(path, "fission_relators")))
    return ClosedSphereSpec(fusion, m, tuple(fw), dual, fr)


# --- AC moves and certificates -----------------------------------------------------------


def ac_move_to_json(m: ACMove) -> dict:
    if isinstance(m, Concat):
        return {"op": "concat", "i": m.i, "j": m.j}
    if isinstance(m, Invert):
        return {"op": "invert", "i": m.i}
    if isinstance(m, Conjugate):
        return {"op": "conjugate", "i": m.i, "u": word_to_json(m.u)}
    if isinstance(m, Stabilize):
        return {"op": "stabilize"}
    if isinstance(m, Destabilize):
        return {"op": "destabilize", "i": m.i}
    if isinstance(m, Nielsen):
        return {"op": "nielsen", "i": m.i, "j": m.j, "sign": m.sign}
    raise TypeError(m)


def parse_ac_move(obj, path: str) -> ACMove:
    op = _get(obj, "op", path)
    i = lambda key: _int(_get(obj, key, path), _join(path, key), 1)  # noqa: E731
    if op == "concat":
        return Concat(i("i"), i("j"))
    if op == "invert":
        return Invert(i("i"))
    if op == "conjugate":
        return Conjugate(i("i"), parse_word(_get(obj, "u", path, []), _join(path, "u")))
    if op == "stabilize":
        return Stabilize()
    if op == "destabilize":
        return Destabilize(i("i"))
    if op == "nielsen":
        sign = _int(_get(obj, "sign", path, 1), _join(path, "sign"))
        return Nielsen(i("i"), i("j"), sign)
    raise ParseError(_join(path, "op"), f"unknown AC move {op!r}")


def ac_certificate_to_json(c: ACCertificate) -> dict:
    return {
        "moves": [ac_move_to_json(m) for m in c.moves],
        "claimed_final": presentation_to_json(c.claimed_final),
    }


def parse_ac_certificate(obj, path: str = "") -> ACCertificate:
    mp = _join(path, "moves")
    moves = [parse_ac_move(m, _join(mp, k)) for k, m in enumerate(_list(_get(obj, "moves", path), mp))]
    final = parse_presentation(_get(obj, "claimed_final", path), _join(path, "claimed_final"))
    return ACCertificate(tuple(moves), final)


# --- diagram moves and undisking certificates ---------------------------------------------


_DIAGRAM_OPS: Dict[str, tuple] = {
    "reduce_pair": (ReducePair, ("band", "position")),
    "insert_pair": (InsertPair, ("band", "position", "generator", "sign")),
    "end_reduce": (EndReduce, ("band", "end")),
    "slide_end": (SlideEnd, ("band", "over", "end")),
    "swim": (Swim, ("band", "through", "position", "orientation")),
    "cancel": (Cancel, ("band",)),
    "intro": (Intro, ("circle",)),
    "drag": (Drag, ("band", "position", "direction")),
}
_OP_OF = {cls: name for name, (cls, _) in _DIAGRAM_OPS.items()}
_STRING_FIELDS = {"end": ("source", "target"), "direction": ("left", "right")}


def diagram_move_to_json(m: DiagramMove) -> dict:
    name = _OP_OF[type(m)]
    return {"op": name, **{f: getattr(m, f) for f in _DIAGRAM_OPS[name][1]}}


def parse_diagram_move(obj, path: str) -> DiagramMove:
    op = _get(obj, "op", path)
    if op not in _DIAGRAM_OPS:
        raise ParseError(_join(path, "op"), f"unknown diagram move {op!r}")
    cls, fields = _DIAGRAM_OPS[op]
    args = []
    for f in fields:
        v = _get(obj, f, path)
        if f in _STRING_FIELDS:
            if v not in _STRING_FIELDS[f]:
                raise ParseError(_join(path, f), f"expected one of {_STRING_FIELDS[f]}")
            args.append(v)
        elif f in ("sign", "orientation"):
            v = _int(v, _join(path, f))
            if v not in (1, -1):
                raise ParseError(_join(path, f), "must be 1 or -1")
            args.append(v)
        else:
            args.append(_int(v, _join(path, f), 1))
    return cls(*args)


def band_pass_to_json(bp: BandPass) -> dict:
    return {"band": bp.band, "position": bp.position, "letter": list(bp.letter), "direction": bp.direction}


def parse_band_pass(obj, path: str) -> BandPass:
    band = _int(_get(obj, "band", path), _join(path, "band"), 1)
    pos = _int(_get(obj, "position", path), _join(path, "position"), 1)
    lp = _join(path, "letter")
    letter = _list(_get(obj, "letter", path), lp)
    if len(letter) != 2:
        raise ParseError(lp, "expected [generator, sign]")
    g = _int(letter[0], _join(lp, 0), 1)
    s = _int(letter[1], _join(lp, 1))
    if s not in (1, -1):
        raise ParseError(_join(lp, 1), "sign must be 1 or -1")
    d = _get(obj, "direction", path, "delete")
    if d not in ("insert", "delete"):
        raise ParseError(_join(path, "direction"), "expected insert or delete")
    return BandPass(band, pos, (g, s), d)


def undisking_to_json(c: UndiskingCertificate) -> dict:
    return {
        "passes": [band_pass_to_json(bp) for bp in c.passes],
        "trivialization": [diagram_move_to_json(m) for m in c.trivialization],
    }


def parse_undisking(obj, path: str = "") -> UndiskingCertificate:
    pp, tp = _join(path, "passes"), _join(path, "trivialization")
    passes = [parse_band_pass(b, _join(pp, k)) for k, b in enumerate(_list(_get(obj, "passes", path, []), pp))]
    moves = [
        parse_diagram_move(m, _join(tp, k))
        for k, m in enumerate(_list(_get(obj, "trivialization", path, []), tp))
    ]
    return UndiskingCertificate(tuple(passes), tuple(moves))


def parse_move_script(obj, path: str = "") -> List[DiagramMove]:
    if isinstance(obj, dict):
        return parse_move_script(_get(obj, "moves", path), _join(path, "moves"))
    return [parse_diagram_move(m, _join(path, k)) for k, m in enumerate(_list(obj, path))]


# --- payload dispatch ------------------------------------------------------------------


Payload = Union[RibbonPresentation, ClosedSphereSpec, GroupPresentation]


def to_json(x) -> Any:
    if isinstance(x, RibbonPresentation):
        return diagram_to_json(x)
    if isinstance(x, ClosedSphereSpec):
        return spec_to_json(x)
    if isinstance(x, GroupPresentation):
        return presentation_to_json(x)
    if isinstance(x, ACCertificate):
        return ac_certificate_to_json(x)
    if isinstance(x, UndiskingCertificate):
        return undisking_to_json(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def parse_payload(obj) -> Payload:
    if not isinstance(obj, dict):
        raise ParseError("", "expected an object")
    if "fusion" in obj:
        return parse_spec(obj)
    if "circles" in obj:
        return parse_diagram(obj)
    if "generators" in obj:
        return parse_presentation(obj)
    raise ParseError("", "not a diagram, sphere spec or group presentation record")


def load_json(path: Union[str, Path]):
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}", exc.msg) from exc


def load_payload(path: Union[str, Path]) -> Payload:
    return parse_payload(load_json(path))
