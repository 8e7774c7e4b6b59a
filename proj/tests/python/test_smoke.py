import math

import pytest

import korovkin_lab as kl


def test_choquet_identity_matches_riemann():
    values = [0.3, -1.2, 0.7, 2.0]
    width = 0.25
    assert kl.choquet_integral(values, width, "id") == pytest.approx(
        sum(values) * width, abs=1e-12
    )


def test_choquet_sqrt_projection():
    grid = kl.Grid(0.0, 1.0, 20000)
    f = kl.sample("pr:1", grid)
    integral = kl.choquet_integral(list(f.values), grid.width(), "sqrt")
    assert integral == pytest.approx(2.0 / 3.0, abs=1e-3)


def test_apply_bk1_preserves_constants():
    grid = kl.Grid(0.0, 1.0, 50)
    out = kl.apply_operator("bk1:n=20", kl.sample("const:1", grid))
    assert max(abs(v - 1.0) for v in out.values) < 1e-12


def test_properties_bkc1_pass():
    reports = kl.check_properties("bkc1:n=10,cap=sqrt", cells=20, trials=20)
    assert [r.property for r in reports] == [
        "sublinearity",
        "translatability",
        "monotonicity",
        "comonotone_additivity",
        "order_lipschitz",
    ]
    assert all(r.passed for r in reports)


def test_properties_perturb_fails_with_alpha2_witness():
    reports = kl.check_properties("perturb:n=1", cells=20, trials=10, seed=7)
    sub = next(r for r in reports if r.property == "sublinearity")
    assert not sub.passed
    assert "alpha=2" in sub.witness


def test_korovkin_bk1_confirmed():
    result = kl.korovkin_verdict("bk1", ns=[10, 50, 200])
    assert result.verdict == "confirmed"
    assert len(result.stage1) == 4  # cube(1) test set
    assert len(result.stage2) == 2


def test_parse_roundtrip():
    spec = kl.OperatorSpec.parse("bkc1:n=50,cap=sqrt")
    assert str(spec) == "bkc1:n=50,cap=sqrt"
    with pytest.raises(ValueError):
        kl.OperatorSpec.parse("nope:n=1")


def test_function_eval():
    f = kl.FunctionSpec.parse("mono:3")
    assert f.eval(0.5) == pytest.approx(0.125)
    step = kl.FunctionSpec.parse("step:0.5@0,1")
    assert step.eval(0.25) == 0.0
    assert step.eval(0.75) == 1.0


def test_cli_roundtrip(tmp_path):
    out = tmp_path / "scan.csv"
    code = kl.run_cli(
        ["korovkin", "--op", "bk1", "--ns", "10,50", "--out", str(out)]
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "family,function,mode,n,error"
    assert lines[1].startswith("verdict,")
