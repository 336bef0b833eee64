import json

import pytest

from hermite2d.cli import main
from hermite2d.polyring import SparsePoly
from hermite2d.suites import SUITE_DEFAULTS, SUITES, RunConfig, build_cases


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def poly_of(obj) -> SparsePoly:
    return SparsePoly.from_json_obj({"terms": obj["terms"]})


z1, z2 = SparsePoly.var("z1"), SparsePoly.var("z2")


def test_coeffs_json(capsys):
    code, out, _ = run(capsys, "coeffs", "--m", "1", "--n", "1")
    assert code == 0
    assert poly_of(json.loads(out)) == z1 * z2 - 1
    code, out, _ = run(capsys, "coeffs", "--m", "0", "--n", "0")
    assert poly_of(json.loads(out)) == SparsePoly.constant(1)
    code, out, _ = run(capsys, "coeffs", "--m", "2", "--n", "1", "--g", "0,1;1,0")
    assert poly_of(json.loads(out)) == z1 * z2 ** 2 - z2 * 2


def test_coeffs_csv(capsys):
    code, out, _ = run(capsys, "coeffs", "--m", "2", "--n", "1", "--format", "csv")
    assert code == 0
    assert out == "m,n,exp_z1,exp_z2,coeff\n2,1,2,1,1\n2,1,1,0,-2\n"


def test_coeffs_bad_token(capsys):
    code, _, err = run(capsys, "coeffs", "--m", "1", "--n", "1", "--g", "1,x;0,1")
    assert code == 2
    assert "'x'" in err


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "--m", "1", "--n", "1", "--z", "1+i", "--float")
    obj = json.loads(out)
    assert code == 0 and obj["value"] == "1" and obj["float"] == [1.0, 0.0]
    code, _, _ = run(capsys, "eval", "--m", "1", "--n", "1")
    assert code == 2


def test_matrix_real_basis(capsys):
    code, out, _ = run(capsys, "matrix", "--L", "1", "--kind", "real-basis")
    obj = json.loads(out)
    assert code == 0
    assert obj["entries"] == [["-1/2i", "1/2i"], ["1/2", "1/2"]]


def test_matrix_deformation(capsys):
    code, out, _ = run(capsys, "matrix", "--L", "3", "--kind", "deformation", "--g", "1,0;0,1")
    entries = json.loads(out)["entries"]
    assert entries == [["1" if r == k else "0" for k in range(4)] for r in range(4)]
    code, out, _ = run(capsys, "matrix", "--L", "1", "--kind", "deformation", "--g", "0,1;1,0")
    assert json.loads(out)["entries"] == [["0", "1"], ["1", "0"]]
    code, _, err = run(capsys, "matrix", "--L", "1", "--kind", "deformation")
    assert code == 2 and "--g" in err


def test_det(capsys):
    code, out, _ = run(capsys, "det", "--N", "2", "--s", "0", "--z", "1/2+1/3i", "--oracle")
    obj = json.loads(out)
    assert code == 0
    assert (obj["delta"], obj["pi_power"], obj["positive"], obj["oracle_match"]) == ("1", 2, True, True)
    assert list(obj) == ["N", "s", "z", "g", "delta", "pi_power", "positive", "oracle_match"]
    code, out, _ = run(capsys, "det", "--N", "1", "--s", "0", "--z", "0")
    obj = json.loads(out)
    assert (obj["delta"], obj["pi_power"], obj["positive"]) == ("1", 1, True)
    code, _, err = run(capsys, "det", "--N", "2", "--s", "0", "--g", "1,1;0,1")
    assert code == 2 and "conj" in err
    code, _, err = run(capsys, "det", "--N", "3", "--oracle")
    assert code == 2 and "--oracle" in err


def test_det_not_real_exit_code(capsys, monkeypatch):
    from hermite2d import cli
    from hermite2d.exact import NotRealError

    def boom(spec):
        raise NotRealError("imaginary residue")

    monkeypatch.setattr(cli, "positivity_check", boom)
    code, _, err = run(capsys, "det", "--N", "1")
    assert code == 1 and "imaginary" in err


def test_verify_small_suite(capsys):
    code, out, err = run(capsys, "verify", "orthogonality", "--max-degree", "2", "--jobs", "1")
    lines = out.splitlines()
    assert code == 0 and lines
    for line in lines:
        rec = json.loads(line)
        assert rec["pass"] is True
        assert list(rec)[:6] == ["identity", "params", "lhs", "rhs", "pi_power", "pass"]
    summary = json.loads(err)
    assert summary["failed"] == 0 and summary["cases"] == len(lines)


def test_verify_determinants_n3(capsys):
    code, out, _ = run(capsys, "verify", "determinants", "--N", "3", "--jobs", "1")
    assert code == 0
    assert all(json.loads(line)["pass"] for line in out.splitlines())


def test_verify_config_errors(capsys):
    code, _, err = run(capsys, "verify", "gf", "--max-degree", "-1")
    assert code == 2 and "max degree" in err
    code, _, _ = run(capsys, "verify", "gf", "--point", "1/2+q")
    assert code == 2
    with pytest.raises(SystemExit) as info:
        main(["verify", "no-such-suite"])
    assert info.value.code == 2


def test_max_degree_precedence(capsys, monkeypatch):
    def count(*extra):
        code, out, _ = run(capsys, "verify", "real-hermite", "--jobs", "1", *extra)
        assert code == 0
        return len(out.splitlines())

    default = count()
    monkeypatch.setenv("HERMITE2D_MAX_DEGREE", "3")
    from_env = count()
    from_flag = count("--max-degree", "5")
    assert (default, from_env, from_flag) == (SUITE_DEFAULTS["real-hermite"] + 1, 4, 6)
    monkeypatch.setenv("HERMITE2D_MAX_DEGREE", "abc")
    code, _, _ = run(capsys, "verify", "real-hermite")
    assert code == 2


def test_verify_output_file(tmp_path, capsys):
    target = tmp_path / "r.jsonl"
    code, out, _ = run(capsys, "verify", "at-zero", "--jobs", "1", "--output", str(target))
    assert code == 0 and out == ""
    assert len(target.read_text().splitlines()) == (SUITE_DEFAULTS["at-zero"] + 1) ** 2


def test_suite_table_complete():
    assert set(SUITES) == set(SUITE_DEFAULTS)
    cfg = RunConfig(max_degree=1)
    for suite in SUITES:
        assert build_cases(suite, cfg)


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--m", "2", "--n", "1", "--repeat", "1")
    obj = json.loads(out)
    assert code == 0
    assert {"sum", "rodrigues", "sandwich", "matrix", "generating-function", "creation-operator"} == set(obj["best_seconds"])
