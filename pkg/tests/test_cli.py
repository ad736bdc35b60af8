import io
import json

import pytest

from gluckcalc.catalog import spun_twist, trivial, two_twist_spun_trefoil
from gluckcalc.cli import run
from gluckcalc.io import diagram_to_json, presentation_to_json, spec_to_json
from gluckcalc.presentations import GroupPresentation
from gluckcalc.words import Word


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, json.loads(buf.getvalue())


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        f = tmp_path / name
        f.write_text(json.dumps(obj))
        return str(f)

    return {
        "t3": write("trivial3.json", diagram_to_json(trivial(3))),
        "st1": write("spun_twist_1.json", diagram_to_json(spun_twist(1))),
        "spec": write("two_twist.json", spec_to_json(two_twist_spun_trefoil())),
        "easy": write("easy.json", presentation_to_json(GroupPresentation(2, (Word([1, -2]), Word([2]))))),
        "bad": write("bad.json", {"circles": 2, "bands": [{"from": 1, "to": 2, "word": [[1]]}]}),
        "dir": tmp_path,
        "write": write,
    }


def test_invariants_trivial(files):
    code, rep = call("invariants", files["t3"])
    assert code == 0 and rep["invariants"]["alexander"]["text"] == "1"


def test_validate(files):
    assert call("validate", files["t3"])[0] == 0


def test_undisking_bound_one(files):
    code, rep = call("undisking", "--bound", "1", files["st1"])
    assert code == 0 and len(rep["certificate"]["passes"]) == 1
    cert = files["write"]("cert.json", rep["certificate"])
    assert call("undisking", "--bound", "1", "--certificate", cert, files["st1"])[0] == 0


def test_undisking_bound_zero_unknown(files):
    code, rep = call("undisking", "--bound", "0", files["st1"])
    assert code == 2 and rep["verdict"] == "UNKNOWN"


def test_ac_search_then_verify(files):
    code, rep = call("ac-search", "--m", "2", files["easy"])
    assert code == 0
    cert = files["write"]("ac.json", rep["certificate"])
    assert call("ac-verify", "--m", "2", files["easy"], cert)[0] == 0


def test_ac_search_budget_unknown(files):
    ak = files["write"]("ak3.json", presentation_to_json(
        GroupPresentation(2, (Word([1, 2, 1, -2, -1, -2]), Word([1, 1, 1, 1, -2, -2, -2])))
    ))
    code, rep = call("ac-search", "--m", "2", ak, "--max-nodes", "1e3")
    assert code == 2 and rep["verdict"] == "UNKNOWN"


def test_handles_and_product_ball(files):
    code, rep = call("handles", files["spec"])
    assert code == 0
    assert call("product-ball", files["spec"])[0] == 0
    assert call("gluck-pres", files["spec"])[0] == 0
    assert call("step2", files["spec"], "--j", "2")[0] == 0


def test_triangularize_and_pathform(files):
    assert call("triangularize", files["st1"])[0] == 0
    assert call("pathform", files["t3"])[0] == 0


def test_moves_apply(files):
    script = files["write"]("script.json", {"moves": [{"op": "cancel", "band": 2}]})
    code, rep = call("moves", "apply", script, files["t3"])
    assert code == 0


def test_catalog(files):
    assert call("catalog", "list")[0] == 0
    code, rep = call("catalog", "get", "spun-twist", "--n", "2")
    assert code == 0 and rep["expected"]["alexander"]["provenance"] == "DERIVED"
    assert call("catalog", "get", "spun-twist", "--n", "0")[0] == 1
    assert call("catalog", "validate-kawauchi")[0] == 0


def test_error_exit_codes(files):
    code, rep = call("validate", files["bad"])
    assert code == 64 and rep["error"]["path"] == "bands[0].word[0]"
    assert call("validate", str(files["dir"] / "missing.json"))[0] == 66
    assert call("frobnicate")[0] == 64
    assert call("ac-search", files["easy"])[0] == 64


def test_threads_do_not_change_report(files):
    outs = []
    for t in ("1", "4"):
        buf = io.StringIO()
        run(["undisking", "--bound", "1", files["st1"], "--threads", t], buf)
        outs.append(buf.getvalue())
    assert outs[0] == outs[1]
