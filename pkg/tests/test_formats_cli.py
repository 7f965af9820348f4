import json
import os
import subprocess
import sys

import pytest

from periodica.common import ParseError
from periodica.fields import Field, QQ
from periodica.formats import (load_algebra, load_complex, load_complex_file,
                               parse_algebra_text, parse_module_expr,
                               complex_to_doc)
from periodica.percomplex import is_acyclic, stalk_complex
from periodica.quiver import build_algebra
from periodica.rep import Rep
from periodica.cli import main

HERE = os.path.dirname(__file__)
SAMPLES = os.path.join(HERE, "..", "sample_inputs")
GOLDEN = os.path.join(HERE, "golden")


def sample(name):
    return os.path.join(SAMPLES, name)


# -- algebra files -------------------------------------------------------------


def test_parse_a2_file():
    alg = load_algebra(sample("a2.alg"))
    assert alg.dim == 3 and alg.label == "a2"


def test_parse_relation_algebra():
    alg = load_algebra(sample("commsquare.alg"))
    assert alg.dim == 9


def test_parse_prime_field():
    pres = parse_algebra_text(
        "field fp 2\nvertices 1\narrow x: 1 -> 1\nnilpotency 2")
    assert pres.field == Field.gf(2)
    assert build_algebra(pres).dim == 2


def test_parse_fraction_coefficients():
    pres = parse_algebra_text(
        "field rationals\nvertices 1\narrow x: 1 -> 1\n"
        "relation 1/2*x*x - x*x*x\nnilpotency 5")
    alg = build_algebra(pres)
    assert alg.dim == 2     # x^2 = 2x^3 = ... collapses to zero


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse_algebra_text("field rationals\nvertices 2\narrow ?: 1 -> 2\n"
                           "nilpotency 2")
    assert exc.value.line == 3
    with pytest.raises(ParseError) as exc:
        parse_algebra_text("field rationals\nvertices 2\n"
                           "arrow a: 1 -> 2\nrelation b*a\nnilpotency 2")
    assert exc.value.line == 4 and exc.value.col >= 9
    with pytest.raises(ParseError):
        parse_algebra_text("vertices 2\nnilpotency 2")
    with pytest.raises(ParseError) as exc:
        parse_algebra_text("field rationals\nvertices 2\nbogus line here\n")
    assert exc.value.line == 3


def test_default_field_env(monkeypatch):
    monkeypatch.setenv("PERIODICA_FIELD", "fp 3")
    pres = parse_algebra_text("vertices 1\narrow x: 1 -> 1\nnilpotency 2")
    assert pres.field == Field.gf(3)


def test_module_expressions(a2):
    assert parse_module_expr(a2, "P(1) + 2*S(2)").dims == (1, 2)
    assert parse_module_expr(a2, "R").dims == (2, 1)
    assert parse_module_expr(a2, "0").is_zero()
    with pytest.raises(ParseError):
        parse_module_expr(a2, "Q(1)")
    with pytest.raises(ParseError):
        parse_module_expr(a2, "P(9)")
    with pytest.raises(ParseError):
        parse_module_expr(a2, "M(1,1)")   # not Nakayama


# -- complex files -------------------------------------------------------------


def test_load_complex_file_and_validation():
    alg = load_algebra(sample("a2.alg"))
    V = load_complex_file(alg, sample("acyclic.cpx"))
    assert is_acyclic(V)
    # breaking d^2 = 0 must be rejected
    doc = {"period": 2, "modules": ["P(2)", "P(2)"],
           "differentials": [[[["1"]], [["1"]]], [[["1"]], [["1"]]]]}
    with pytest.raises(ParseError):
        load_complex(alg, doc)
    # malformed shapes rejected
    with pytest.raises(ParseError):
        load_complex(alg, {"period": 2, "modules": ["P(2)"],
                           "differentials": [None, None]})
    # a non-module map rejected
    doc2 = {"period": 2, "modules": ["P(2)", "P(2)"],
            "differentials": [None, [[["1"]], [["0"]]]]}
    with pytest.raises(ParseError):
        load_complex(alg, doc2)


def test_complex_roundtrip(a2):
    V = stalk_complex(Rep.projective(a2, 2), 2, 1)
    doc = complex_to_doc(V)
    W = load_complex(a2, doc)
    assert W.dim_vector() == V.dim_vector()


# -- CLI ------------------------------------------------------------------------


def run_cli(args):
    import io
    from contextlib import redirect_stdout
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(args)
    return code, buf.getvalue()


def test_cli_algebra_show():
    code, out = run_cli(["algebra", "show", "--algebra", sample("a2.alg")])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["dimension"] == 3
    assert "input_hashes" in doc


def test_cli_cohomology_and_exit_codes(tmp_path):
    code, out = run_cli(["complex", "cohomology",
                         "--algebra", sample("a2.alg"),
                         "--complex", sample("acyclic.cpx")])
    assert code == 0
    assert json.loads(out)["result"]["dims"] == [0, 0]
    bad = tmp_path / "bad.alg"
    bad.write_text("field rationals\nvertices 2\narrow ?: 1 -> 2\n")
    code, _ = run_cli(["algebra", "show", "--algebra", str(bad)])
    assert code == 2
    code, _ = run_cli(["derived-hom", "--name", "dual",
                       "-M", "S(1)", "-N", "S(1)", "--m", "2"])
    assert code == 3          # infinite global dimension: precondition
    code, _ = run_cli(["period", "algebra", "--name", "N(3,2)",
                       "--bound", "2"])
    assert code == 4          # bound too small: truncated, inconclusive
    code, _ = run_cli(["hochschild", "formality", "--name", "dual",
                       "--m", "2", "--qmax", "8"])
    assert code == 5          # honest FAIL verdict


def test_cli_shift_and_cone(tmp_path):
    code, out = run_cli(["complex", "shift",
                         "--algebra", sample("a2.alg"),
                         "--complex", sample("acyclic.cpx"), "--by", "1"])
    assert code == 0
    shifted = json.loads(out)["result"]["shifted"]
    assert shifted["period"] == 2
    mapdoc = {
        "source": {"period": 2, "modules": ["P(1)", "0"],
                   "differentials": [None, None]},
        "target": {"period": 2, "modules": ["P(2)", "0"],
                   "differentials": [None, None]},
        "components": [[[["1"]], [[]]], None],
    }
    mp = tmp_path / "map.json"
    mp.write_text(json.dumps(mapdoc))
    code, out = run_cli(["complex", "cone", "--algebra", sample("a2.alg"),
                         "--map", str(mp)])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["identities_verified"]
    assert doc["result"]["cohomology"] == [[0, 1], [0, 0]]


def test_cli_hom_and_derived():
    code, out = run_cli(["hom", "--algebra", sample("a2.alg"),
                         "-M", "R", "-N", "S(1)"])
    assert code == 0
    assert json.loads(out)["result"]["dim"] == 1
    code, out = run_cli(["derived-hom", "--algebra", sample("a2.alg"),
                         "-M", "S(2)", "-N", "S(1)", "--m", "2",
                         "--prange", "0..3"])
    assert code == 0
    rows = json.loads(out)["result"]["rows"]
    assert [r["dim"] for r in rows] == [0, 1, 0, 1]
    code, out = run_cli(["ext-sum-check", "--algebra", sample("a2.alg"),
                         "-M", "S(2)", "-N", "S(1)", "--m", "2"])
    assert code == 0


def test_cli_hochschild_table():
    code, out = run_cli(["hochschild", "table", "--algebra", sample("a2.alg"),
                         "--m", "2", "--pmax", "4", "--qrange=-6..6"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["vanishing_ok"]
    provs = {c["provenance"] for c in doc["result"]["cells"]}
    assert "computed" in provs
    assert any("vanishes" in p for p in provs)


def test_cli_tilting_stable():
    code, out = run_cli(["tilting", "stable", "--name", "N(3,3)",
                         "-T", "M(1,1)", "-T", "M(1,2)", "--m", "2",
                         "--end-target", "2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["pass"]
    assert doc["result"]["stable_end"]["iso_found"]


def test_cli_markdown_output():
    code, out = run_cli(["reproduce", "ex5.6", "--n", "2", "--m", "2",
                         "--format", "markdown"])
    assert code == 0
    assert out.startswith("# reproduce ex5.6")
    assert "computed_period" in out


def test_cli_determinism():
    args = ["reproduce", "prop3.25", "--name", "kA2", "--m", "2",
            "--seed", "7", "--count", "5"]
    _, out1 = run_cli(args)
    _, out2 = run_cli(args)
    assert out1 == out2


GOLDEN_CASES = {
    "ex5_6_n1_m2_f2.json": ["reproduce", "ex5.6", "--n", "1", "--m", "2",
                            "--field", "fp 2"],
    "ex5_8_n3.json": ["reproduce", "ex5.8", "--n", "3"],
    "ex5_9.json": ["reproduce", "ex5.9"],
    "lemma4_1_ka2_m2.json": ["reproduce", "lemma4.1", "--name", "kA2",
                             "--m", "2"],
    "prop3_10_seed7.json": ["reproduce", "prop3.10", "--name", "kA2",
                            "--m", "2", "--seed", "7", "--pairs", "10"],
    "prop3_25_seed7.json": ["reproduce", "prop3.25", "--name", "kA2",
                            "--m", "2", "--seed", "7", "--count", "10"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_reports(name):
    code, out = run_cli(GOLDEN_CASES[name])
    assert code == 0
    path = os.path.join(GOLDEN, name)
    with open(path, "r", encoding="utf-8") as fh:
        assert fh.read() == out


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "periodica.cli", "reproduce", "ex5.6",
         "--n", "1", "--m", "2"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["pass"]


def test_cli_cohomology_alias_with_embedded_algebra():
    code, out = run_cli(["cohomology", "--complex", sample("v.cpx")])
    assert code == 0
    assert json.loads(out)["result"]["dims"] == [0, 0]


def test_cli_bound_env(monkeypatch):
    monkeypatch.setenv("PERIODICA_BOUND", "2")
    code, _ = run_cli(["period", "algebra", "--name", "N(3,2)"])
    assert code == 4      # default bound from the environment: truncated
