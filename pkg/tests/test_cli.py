import json
import math

import pytest

from modpoisson.cli import main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- pmf -------------------------------------------------------------------------

def test_pmf_fq_2_2(capsys):
    code, out, _ = run_cli(["pmf", "--model", "fq", "--q", "2", "--n", "2"], capsys)
    assert code == 0
    assert out.splitlines() == ["k,mass", "1,0.75", "2,0.25"]


def test_pmf_omega_10(capsys):
    code, out, _ = run_cli(["pmf", "--model", "omega", "--N", "10"], capsys)
    assert code == 0
    assert out.splitlines() == ["k,mass", "0,0.10000000000000001", "1,0.69999999999999996",
                                "2,0.20000000000000001"]


def test_pmf_deterministic_bernoulli(capsys):
    code, out, _ = run_cli(["pmf", "--model", "bernoulli", "--weights", "1.0"], capsys)
    assert code == 0
    assert out.splitlines() == ["k,mass", "1,1"]


def test_pmf_json_format(capsys):
    code, out, _ = run_cli(["pmf", "--model", "fq", "--q", "2", "--n", "2",
                            "--format", "json"], capsys)
    obj = json.loads(out)
    assert obj == {"offset": 1, "masses": [0.75, 0.25]}


def test_pmf_missing_parameters_fail(capsys):
    code, _, err = run_cli(["pmf", "--model", "ewens", "--n", "5"], capsys)
    assert code == 1
    assert "theta" in err


def test_pmf_weights_file(tmp_path, capsys):
    path = tmp_path / "w.csv"
    path.write_text("# two fair coins\n0.5\n0.5\n")
    code, out, _ = run_cli(["pmf", "--model", "bernoulli", "--weights-file",
                            str(path)], capsys)
    assert code == 0
    assert out.splitlines()[1] == "0,0.25"


# --- scheme ----------------------------------------------------------------------

def test_scheme_b2_example(capsys):
    code, out, err = run_cli(["scheme", "--lambda", "2", "--b2", "-0.125",
                              "--r", "2"], capsys)
    assert code == 0
    first = out.splitlines()[1]
    k, mass = first.split(",")
    assert k == "0"
    assert float(mass) == pytest.approx(0.875 * math.exp(-2.0), abs=1e-15)
    assert "negative entries" in err  # order-2 scheme with b2 < 0 dips negative


def test_scheme_order_zero_is_poisson(capsys):
    code, out, _ = run_cli(["scheme", "--lambda", "5", "--r", "0"], capsys)
    rows = [line.split(",") for line in out.splitlines()[1:]]
    assert float(rows[0][1]) == pytest.approx(math.exp(-5.0), abs=1e-16)
    assert math.fsum(float(m) for _, m in rows) == pytest.approx(1.0, abs=1e-10)


def test_scheme_harmonic_alphabet_uses_zeta_coefficient(capsys):
    code, out, _ = run_cli(["scheme", "--alphabet", "harmonic", "--lambda", "7.5",
                            "--r", "2"], capsys)
    assert code == 0
    b2 = -math.pi ** 2 / 12.0
    mass0 = math.exp(-7.5) * (1.0 + b2 * (1.0 - 0.0 + 0.0))
    got = float(out.splitlines()[1].split(",")[1])
    assert got == pytest.approx(mass0, rel=1e-10)


def test_scheme_positive_flag_gives_pmf(capsys):
    code, out, _ = run_cli(["scheme", "--lambda", "2", "--b2", "-0.125",
                            "--r", "2", "--positive"], capsys)
    masses = [float(line.split(",")[1]) for line in out.splitlines()[1:]]
    assert all(m >= 0.0 for m in masses)
    assert math.fsum(masses) == pytest.approx(1.0, abs=1e-10)


def test_scheme_warns_when_eta_is_large(capsys):
    # harmonic alphabet has sigma^2 = zeta(2); lambda = 0.5 puts eta >> 1
    code, out, err = run_cli(["scheme", "--alphabet", "harmonic",
                              "--lambda", "0.5", "--r", "2"], capsys)
    assert code == 0
    assert "eta" in err and ">= 1" in err
    assert out.splitlines()[0] == "k,mass"


# --- compare ---------------------------------------------------------------------

def test_compare_ewens_tv_improves(capsys):
    code, out, _ = run_cli(["compare", "--model", "ewens", "--theta", "1",
                            "--n", "1000", "--r", "0:4"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 6
    tv = [float(line.split(",")[6]) for line in lines[1:]]
    assert all(a >= b - 1e-15 for a, b in zip(tv, tv[1:]))  # non-increasing
    assert tv[2] < tv[1] and tv[3] < tv[2]  # strictly better past order 1


def test_compare_bernoulli_theorem_b_holds(tmp_path, capsys):
    path = tmp_path / "w.csv"
    path.write_text("".join(f"{0.004 * (1 + i % 5)}\n" for i in range(120)))
    code, out, _ = run_cli(["compare", "--model", "bernoulli", "--weights-file",
                            str(path), "--r", "1:6", "--bound", "theorem-b"], capsys)
    assert code == 0
    rows = [line.split(",") for line in out.splitlines()[1:]]
    assert len(rows) == 6
    assert all(row[9] == "true" for row in rows)


def test_compare_empty_range_writes_header_only(capsys):
    code, out, _ = run_cli(["compare", "--model", "ewens", "--theta", "1",
                            "--n", "50", "--r", "4:3"], capsys)
    assert code == 0
    assert out.splitlines() == ["model,family,n,r,lambda,sigma2,tv,bound,name,holds,slack"]


def test_compare_jobs_match_serial(capsys):
    args = ["compare", "--model", "ewens", "--theta", "1", "--n", "200",
            "--r", "0:2"]
    _, serial, _ = run_cli(args, capsys)
    _, parallel, _ = run_cli(args + ["--jobs", "2"], capsys)
    assert serial == parallel


def test_compare_jsonl_matches_schema(capsys):
    import jsonschema
    from importlib import resources
    schema = json.loads(resources.files("modpoisson").joinpath("schema.json")
                        .read_text())
    code, out, _ = run_cli(["compare", "--model", "ewens", "--theta", "1",
                            "--n", "100", "--r", "0:1", "--format", "json"], capsys)
    assert code == 0
    validator = {"$ref": "#/$defs/boundReportRow", "$defs": schema["$defs"]}
    for line in out.splitlines():
        jsonschema.validate(json.loads(line), validator)


# --- verify ----------------------------------------------------------------------

def test_verify_charlier_passes(capsys):
    code, out, _ = run_cli(["verify", "--suite", "charlier"], capsys)
    assert code == 0
    summary = json.loads(out)
    assert summary["passed"] is True
    assert summary["checks"] > 0


def test_verify_theorem_b_small_run(capsys):
    code, out, _ = run_cli(["verify", "--suite", "theorem-b", "--instances", "5",
                            "--seed", "42"], capsys)
    assert code == 0
    summary = json.loads(out)
    assert summary["checks"] == 30  # 5 instances x 6 orders
    assert summary["failures"] == []


def test_verify_summary_matches_schema(capsys):
    import jsonschema
    from importlib import resources
    schema = json.loads(resources.files("modpoisson").joinpath("schema.json")
                        .read_text())
    code, out, _ = run_cli(["verify", "--suite", "rates"], capsys)
    assert code == 0
    validator = {"$ref": "#/$defs/verifySummary", "$defs": schema["$defs"]}
    jsonschema.validate(json.loads(out), validator)


def test_verify_randomized_suite_requires_seed(capsys):
    code, _, err = run_cli(["verify", "--suite", "coefficients"], capsys)
    assert code == 2
    assert "seed" in err


def test_verify_unknown_suite_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "unknown"])
    assert exc.value.code == 2


def test_verify_reproducible_bytes(capsys):
    args = ["verify", "--suite", "coefficients", "--seed", "7", "--instances", "10"]
    _, first, _ = run_cli(args, capsys)
    _, second, _ = run_cli(args, capsys)
    assert first == second


def test_mass_output_schema(capsys):
    import jsonschema
    from importlib import resources
    schema = json.loads(resources.files("modpoisson").joinpath("schema.json")
                        .read_text())
    _, out, _ = run_cli(["pmf", "--model", "ewens", "--theta", "2", "--n", "6",
                         "--format", "json"], capsys)
    validator = {"$ref": "#/$defs/massFunction", "$defs": schema["$defs"]}
    jsonschema.validate(json.loads(out), validator)


def test_output_file_writing(tmp_path, capsys):
    target = tmp_path / "out.csv"
    code, out, _ = run_cli(["pmf", "--model", "fq", "--q", "2", "--n", "1",
                            "--output", str(target)], capsys)
    assert code == 0 and out == ""
    assert target.read_text() == "k,mass\n1,1\n"
