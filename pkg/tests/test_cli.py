import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from boolai.cli import FunctionInput, main, parse_function, serialize_function
from boolai.core import BooleanFunction, parse_anf
from boolai.families import SimplifiedValueVector, majority_vector, random_rsbf, symmetric_expand

from conftest import EXAMPLE1_VECTOR, random_function

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "golden"
EXAMPLE3_HEX = "@" + str(DATA / "example3_reconstruction.hex")

REPORT_KEYS = {
    "n",
    "weight",
    "balanced",
    "degree",
    "nonlinearity",
    "delta",
    "pc_order",
    "rotation_symmetric",
    "symmetric",
    "ai_lower_bounds",
    "warnings",
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


# -- parsing and serialization ----------------------------------------------------


def test_parse_examples():
    assert parse_function(FunctionInput("hex", "8", 2)) == BooleanFunction(2, 0b1000)
    assert parse_function(FunctionInput("anf", "x1*x2 + 1", 2)).table == 0b0111
    f = parse_function(FunctionInput("vector", EXAMPLE1_VECTOR))
    assert f == symmetric_expand(SimplifiedValueVector.parse(EXAMPLE1_VECTOR))


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_function(FunctionInput("anf", "x1"))
    with pytest.raises(ValueError):
        parse_function(FunctionInput("vector", "0101", 4))
    with pytest.raises(ValueError):
        parse_function(FunctionInput("orbits", "0 1"))


@pytest.mark.parametrize("fmt", ["hex", "anf", "vector", "orbits"])
def test_round_trip_each_format(fmt, rng):
    if fmt == "vector":
        f = symmetric_expand(majority_vector(7))
    elif fmt == "orbits":
        f = random_rsbf(7, rng)
    else:
        f = random_function(rng, 6)
    text = serialize_function(f, fmt)
    g = parse_function(FunctionInput(fmt, text, f.n))
    assert g == f
    assert serialize_function(g, fmt) == text


# -- analyze -------------------------------------------------------------------------


@pytest.mark.parametrize(
    "name, argv",
    [
        ("example1_analyze", [EXAMPLE1_VECTOR, "--format", "vector", "--exact-ai=4", "--certify=cor4,thm2,coverage"]),
        ("example3_analyze", [EXAMPLE3_HEX, "--exact-ai"]),
        ("majority3_analyze", ["1100", "--format", "vector", "--exact-ai"]),
    ],
)
def test_analyze_golden(capsys, name, argv):
    report = run_json(capsys, "analyze", *argv)
    expected = json.loads((GOLDEN / f"{name}.json").read_text())
    assert report == expected
    assert REPORT_KEYS <= set(report) <= REPORT_KEYS | {"ai_exact"}


def test_analyze_example1_fields(capsys):
    report = run_json(capsys, "analyze", EXAMPLE1_VECTOR, "--format", "vector", "--certify=cor4")
    (cert,) = report["ai_lower_bounds"]
    assert cert["method"] == "COROLLARY4"
    assert cert["bound"] == 5
    assert cert["evidence"]["U"] == 246
    assert report["weight"] == 16384 and report["balanced"]


def test_analyze_majority_complement_n3(capsys):
    report = run_json(capsys, "analyze", "1100", "--format", "vector", "--exact-ai")
    assert report["ai_exact"] == 2


def test_analyze_constant_zero(capsys):
    report = run_json(capsys, "analyze", "0000", "--exact-ai")
    assert report["ai_exact"] == 0
    assert report["degree"] == "ZERO"
    assert all(c["bound"] == 0 for c in report["ai_lower_bounds"])


def test_analyze_cost_cap_omits_field(capsys):
    report = run_json(capsys, "analyze", "1" * 6 + "0" * 6, "--format", "vector", "--exact-ai", "--budget", "100")
    assert "ai_exact" not in report
    assert [w["code"] for w in report["warnings"]] == ["AI_COST_CAP"]


def test_analyze_generic_skips_coverage_over_budget(capsys):
    f = random_function(np.random.default_rng(4), 12)
    report = run_json(capsys, "analyze", f.to_hex(), "--subset-budget", "10")
    assert "COVERAGE_SKIPPED" in [w["code"] for w in report["warnings"]]


def test_analyze_bounds_below_exact(capsys, rng):
    for _ in range(5):
        f = random_rsbf(7, rng)
        report = run_json(capsys, "analyze", f.to_hex(), "--exact-ai")
        assert all(c["bound"] <= report["ai_exact"] for c in report["ai_lower_bounds"])


def test_analyze_text_output(capsys):
    code, out, _ = run(capsys, "analyze", "8", "--output", "text")
    assert code == 0
    assert "nonlinearity: 1" in out.splitlines()


def test_analyze_is_deterministic(capsys):
    argv = ["analyze", EXAMPLE3_HEX, "--exact-ai", "--certify=thm2,coverage,cor1"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_analyze_reads_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO("x1*x2 + x3\n"))
    report = run_json(capsys, "analyze", "-", "--format", "anf", "--n", "3")
    assert report["degree"] == 2


# -- exit codes ------------------------------------------------------------------------


def test_exit_code_parse_error(capsys):
    code, _, err = run(capsys, "analyze", "8G")
    assert code == 1
    assert "position 1" in err


def test_exit_code_bad_usage(capsys):
    with pytest.raises(SystemExit) as e:
        main(["analyze"])
    assert e.value.code == 1


def test_exit_code_cost_cap(capsys):
    f = random_function(np.random.default_rng(2), 10)
    code, _, _ = run(capsys, "certify", f.to_hex(), "--method", "coverage", "--symmetry", "generic", "--subset-budget", "5")
    assert code == 2
    code, _, _ = run(capsys, "scan", "exhaustive-n", "5")
    assert code == 2


def test_exit_code_not_symmetric(capsys):
    code, _, err = run(capsys, "certify", "A", "--method", "cor4")
    assert code == 1
    assert "not symmetric" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "boolai", "analyze", "8"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["nonlinearity"] == 1


# -- construct --------------------------------------------------------------------------


def test_construct_majority(capsys):
    rec = run_json(capsys, "construct", "majority", "--n", "7", "--emit", "vector")
    assert rec["value_vector"] == "11110000"
    assert rec["function"] == "11110000"


def test_construct_orbit_swap(capsys):
    rec = run_json(capsys, "construct", "orbit-swap", "--n", "9", "--h", "0x1f", "--h-prime", "0xf")
    f = BooleanFunction.from_hex(rec["function"], 9)
    assert f.is_balanced()
    assert rec["certificate"]["method"] == "COROLLARY5"
    assert rec["certificate"]["bound"] == 2
    assert rec["orbits_swapped"]["H"] == [{"representative": 31, "size": 9}]


def test_construct_sigma_sum_warns(capsys):
    rec = run_json(capsys, "construct", "sigma-sum", "--n", "15", "--k", "2,4,6,10,12,14", "--emit", "vector")
    (w,) = rec["warnings"]
    assert w["code"] == "PUBLISHED_VECTOR_MISMATCH"
    assert w["positions"] == [14, 15]
    assert w["U_computed"] == w["U_published"] == 246
    assert rec["value_vector"] != EXAMPLE1_VECTOR


def test_construct_sigma_sum_unpublished_is_quiet(capsys):
    rec = run_json(capsys, "construct", "sigma-sum", "--n", "5", "--k", "1")
    assert rec["warnings"] == []


def test_construct_example2(capsys):
    rec = run_json(capsys, "construct", "example2", "--n", "7", "--i", "2", "--emit", "vector")
    assert [w["code"] for w in rec["warnings"]] == ["CLAIM_NOT_CERTIFIED"]
    rec = run_json(capsys, "construct", "example2", "--n", "7", "--i", "2", "--weight0", "1")
    assert rec["warnings"] == []
    assert rec["certificate"]["bound"] >= rec["claimed"]["bound"]


def test_construct_corollary3(capsys):
    rec = run_json(capsys, "construct", "corollary3", "--n", "5", "--parity", "odd", "--emit", "vector")
    assert rec["value_vector"] == "000101"


def test_construct_even_balanced(capsys):
    rec = run_json(capsys, "construct", "even-balanced", "--n", "6")
    assert rec["imbalance"] == 2
    assert rec["warnings"][0]["code"] == "NOT_BALANCED"


def test_construct_invalid(capsys):
    code, _, _ = run(capsys, "construct", "majority", "--n", "6")
    assert code == 1
    code, _, _ = run(capsys, "construct", "orbit-swap", "--n", "9", "--h", "0x1f")
    assert code == 1


# -- certify -----------------------------------------------------------------------------


def test_certify_cor4_example1(capsys):
    cert = run_json(capsys, "certify", EXAMPLE1_VECTOR, "--format", "vector", "--method", "cor4")
    assert cert["bound"] == 5


def test_certify_coverage_rotation_orbit_swap(capsys):
    rec = run_json(capsys, "construct", "orbit-swap", "--n", "9", "--h", "0x1f", "--h-prime", "0xf")
    cert = run_json(capsys, "certify", rec["function"], "--method", "coverage", "--symmetry", "rotation")
    assert cert["bound"] >= rec["certificate"]["bound"]


def test_certify_thm2_balanced(capsys):
    cert = run_json(capsys, "certify", "A", "--method", "thm2")
    assert cert["bound"] == 1
    assert "vacuous" in cert["evidence"]["note"]


def test_certify_cor1_and_cor5(capsys):
    f = parse_anf("x1 + x2*x3", 3).truth_table()
    cert = run_json(capsys, "certify", f.to_hex(), "--method", "cor1", "--form", "x1+x2+x3")
    assert cert["method"] == "COROLLARY1"
    cert = run_json(capsys, "certify", "E8", "--method", "cor5", "--h-size", "3")
    assert cert["bound"] == 1
    code, _, _ = run(capsys, "certify", "E8", "--method", "cor5")
    assert code == 1


# -- scan --------------------------------------------------------------------------------------


@pytest.mark.slow
def test_scan_exhaustive_oracle_n4(capsys):
    summary = run_json(capsys, "scan", "exhaustive-n", "4", "--check", "ai-oracle")
    assert summary["checked"] == 65536
    assert summary["counterexamples"] == []


def test_scan_symmetric_cor4(capsys):
    summary = run_json(capsys, "scan", "symmetric-n", "11", "--check", "cor4-sound,cert-sound")
    assert summary["checked"] == 1 << 12
    assert summary["counterexamples"] == []


def test_scan_ai_upper_n3(capsys):
    summary = run_json(capsys, "scan", "exhaustive-n", "3", "--check", "ai-upper,thm1-window,nl-bound,cor2-window")
    assert summary["max_ai"] == 2
    assert summary["counterexamples"] == []


def test_scan_random_is_seeded(capsys):
    a = run(capsys, "scan", "random", "6", "--count", "20", "--seed", "3", "--check", "ai-upper")
    b = run(capsys, "scan", "random", "6", "--count", "20", "--seed", "3", "--check", "ai-upper")
    assert a == b and a[0] == 0


def test_scan_unknown_check(capsys):
    code, _, _ = run(capsys, "scan", "exhaustive-n", "2", "--check", "nope")
    assert code == 1


def test_construct_orbit_swap_edge_warns(capsys):
    # |H| = 1: swapping the all-ones point with the zero point
    rec = run_json(capsys, "construct", "orbit-swap", "--n", "7", "--h", "0x7f", "--h-prime", "0")
    (w,) = rec["warnings"]
    assert w["code"] == "CLOSED_FORM_EDGE"
    assert (w["closed_form"], w["coverage"]) == (4, 3)
