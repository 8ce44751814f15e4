import json
import subprocess
import sys

import pytest

from ccmagma import fixtures
from ccmagma.cli import main
from ccmagma.core import format_magma

from conftest import A2, F5A, Z9A

NON_MEDIAL_4_TEXT = "4\n0 1 3 2\n1 2 0 3\n3 0 2 1\n2 3 1 0\n"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out.strip() else None
    return code, report, captured.err


@pytest.fixture
def a2_file(tmp_path):
    path = tmp_path / "a2.tbl"
    path.write_text(format_magma(A2))
    return str(path)


@pytest.fixture
def f5_file(tmp_path):
    path = tmp_path / "f5.tbl"
    path.write_text(format_magma(F5A))
    return str(path)


@pytest.fixture
def z9_file(tmp_path):
    path = tmp_path / "z9.tbl"
    path.write_text(format_magma(Z9A))
    return str(path)


class TestCheck:
    def test_three_idem_table(self, capsys, a2_file):
        code, report, _ = run(capsys, "check", a2_file)
        assert code == 0
        res = report["results"]
        assert res["is_ccm"] and not res["associative"]
        assert res["associative_counterexample"] == [0, 0, 1]
        assert res["idempotents"] == [0, 1, 2]
        assert res["idempotent_parity_ok"]

    def test_no_idem_table(self, capsys, tmp_path):
        path = tmp_path / "a3.tbl"
        path.write_text(format_magma(fixtures.DOUBLE_MOD3_SHIFTED))
        code, report, _ = run(capsys, "check", str(path))
        assert code == 0
        assert report["results"]["idempotents"] == []

    def test_non_medial_table_fails(self, capsys, tmp_path):
        path = tmp_path / "bad.tbl"
        path.write_text(NON_MEDIAL_4_TEXT)
        code, report, _ = run(capsys, "check", str(path))
        assert code == 1
        assert report["results"]["medial_counterexample"] == [0, 0, 1, 1]

    def test_parse_error_exit_2(self, capsys, tmp_path):
        path = tmp_path / "bad.tbl"
        path.write_text("2\n0 2\n2 1\n")
        code, report, err = run(capsys, "check", str(path))
        assert code == 2
        assert "entry 2 >= order 2" in err

    def test_missing_file_exit_2(self, capsys, tmp_path):
        code, _, _ = run(capsys, "check", str(tmp_path / "nope.tbl"))
        assert code == 2

    def test_schema_fields(self, capsys, a2_file):
        _, report, _ = run(capsys, "check", a2_file)
        assert report["schema"] == "ccmagma.report/1"
        assert set(report) == {"schema", "command", "input", "order",
                               "results", "elapsed_ms"}
        assert len(report["input"]["sha256"]) == 64


class TestClassify:
    def test_three_idem_label(self, capsys, a2_file):
        code, report, _ = run(capsys, "classify", a2_file, "--unit", "0")
        assert code == 0
        assert report["results"]["label"] == "I"
        assert report["results"]["group_invariant_factors"] == [3]

    def test_non_idempotent_unit(self, capsys, f5_file):
        code, report, _ = run(capsys, "classify", f5_file, "--unit", "1")
        assert code == 1
        assert report["error"]["kind"] == "unit-not-idempotent"

    def test_unit_out_of_range(self, capsys, f5_file):
        code, _, err = run(capsys, "classify", f5_file, "--unit", "9")
        assert code == 2
        assert "out of range" in err

    def test_invalid_table(self, capsys, tmp_path):
        path = tmp_path / "bad.tbl"
        path.write_text(NON_MEDIAL_4_TEXT)
        code, report, _ = run(capsys, "classify", str(path), "--unit", "0")
        assert code == 1
        assert report["error"]["kind"] == "not-a-ccm-magma"


class TestGenerate:
    def test_deterministic_bytes(self, capsys, tmp_path):
        out1 = tmp_path / "m1.tbl"
        out2 = tmp_path / "m2.tbl"
        assert run(capsys, "generate", "--order", "5", "--seed", "7",
                   "--out", str(out1))[0] == 0
        assert run(capsys, "generate", "--order", "5", "--seed", "7",
                   "--out", str(out2))[0] == 0
        assert out1.read_bytes() == out2.read_bytes()
        s1 = (tmp_path / "m1.tbl.toyoda.json").read_text()
        s2 = (tmp_path / "m2.tbl.toyoda.json").read_text()
        assert json.loads(s1)["relabeling"] == json.loads(s2)["relabeling"]

    def test_round_trips_through_check(self, capsys, tmp_path):
        out = tmp_path / "g9.tbl"
        code, report, _ = run(capsys, "generate", "--order", "9", "--seed", "1",
                              "--out", str(out))
        assert code == 0
        code, report, _ = run(capsys, "check", str(out))
        assert code == 0
        assert report["results"]["is_ccm"]

    def test_order_zero_usage_error(self, capsys, tmp_path):
        code, _, err = run(capsys, "generate", "--order", "0",
                           "--out", str(tmp_path / "x.tbl"))
        assert code == 2
        assert "--order" in err

    def test_sidecar_rebuilds_table(self, capsys, tmp_path):
        from ccmagma.generation import ToyodaParams, toyoda_table
        from ccmagma.core import parse_magma
        out = tmp_path / "g12.tbl"
        run(capsys, "generate", "--order", "12", "--seed", "3", "--out", str(out))
        sidecar = json.loads((tmp_path / "g12.tbl.toyoda.json").read_text())
        params = ToyodaParams.from_json_dict(sidecar)
        assert toyoda_table(params) == parse_magma(out.read_text())


class TestExtractGroup:
    def test_mod5(self, capsys, f5_file):
        code, report, _ = run(capsys, "extract-group", f5_file, "--unit", "0")
        assert code == 0
        res = report["results"]
        assert res["invariant_factors"] == [5]
        assert res["group_table"] == format_magma(fixtures.cyclic_add(5))
        assert res["warning"] is None

    def test_three_idem_at_unit_one(self, capsys, a2_file):
        code, report, _ = run(capsys, "extract-group", a2_file, "--unit", "1")
        assert code == 0
        assert report["results"]["invariant_factors"] == [3]

    def test_mod9(self, capsys, z9_file):
        code, report, _ = run(capsys, "extract-group", z9_file, "--unit", "0")
        assert code == 0
        assert report["results"]["invariant_factors"] == [9]
        assert report["results"]["group_table"] == format_magma(fixtures.cyclic_add(9))

    def test_warns_on_non_idempotent_unit(self, capsys, f5_file):
        code, report, err = run(capsys, "extract-group", f5_file, "--unit", "2")
        assert code == 0
        assert report["results"]["warning"] is not None
        assert "not idempotent" in err

    def test_writes_output_file(self, capsys, f5_file, tmp_path):
        out = tmp_path / "group.tbl"
        run(capsys, "extract-group", f5_file, "--unit", "0", "--out", str(out))
        assert out.read_text() == format_magma(fixtures.cyclic_add(5))


class TestRelation:
    def test_mod3_congruence(self, capsys, z9_file):
        code, report, _ = run(capsys, "relation", z9_file,
                              "--subalgebra", "0,3,6", "--unit", "0")
        assert code == 0
        res = report["results"]
        assert res["congruence"] and res["classes"] == 3
        assert res["internal"] and res["reflexive"]
        assert res["transitivity_criterion"]
        assert res["relation"].splitlines()[0] == "9 9"

    def test_trivial_subalgebra(self, capsys, f5_file):
        code, report, _ = run(capsys, "relation", f5_file,
                              "--subalgebra", "0", "--unit", "0")
        assert code == 0
        assert report["results"]["congruence"]
        assert report["results"]["classes"] == 5

    def test_unclosed_seed_reports_hint(self, capsys, z9_file):
        code, report, _ = run(capsys, "relation", z9_file,
                              "--subalgebra", "0,3", "--unit", "0")
        assert code == 1
        assert report["error"]["kind"] == "not-closed"
        assert report["error"]["closure_hint"] == [0, 3, 6]

    def test_bad_seed_string(self, capsys, z9_file):
        code, _, err = run(capsys, "relation", z9_file,
                           "--subalgebra", "0,x", "--unit", "0")
        assert code == 2


class TestCatalog:
    def test_listing(self, capsys):
        code, report, _ = run(capsys, "catalog")
        assert code == 0
        families = report["results"]["families"]
        ids = {f["id"] for f in families}
        assert {"harmonic-(0,1]", "midpoint-[0,1]", "affine-Z:2,0",
                "doubling-N0"} <= ids
        by_id = {f["id"]: f for f in families}
        assert by_id["midpoint-[0,1]"]["expected_label"] == "III"

    def test_unknown_family(self, capsys):
        code, _, err = run(capsys, "catalog", "--family", "nope")
        assert code == 2
        assert "harmonic-(0,1]" in err

    def test_midpoint_unit_interval(self, capsys):
        code, report, _ = run(capsys, "catalog", "--family", "midpoint-[0,1]",
                              "--samples", "8")
        assert code == 0
        res = report["results"]
        assert res["classification"] == "III"
        assert res["matches_expected"]

    def test_harmonic_formula_checks(self, capsys):
        code, report, _ = run(capsys, "catalog", "--family", "harmonic-(0,1]",
                              "--samples", "8")
        assert code == 0
        res = report["results"]
        assert res["star_formula_ok"] and res["half_has_no_inverse"]
        assert res["classification"] == "II"

    def test_doubling_naturals(self, capsys):
        code, report, _ = run(capsys, "catalog", "--family", "doubling-N0",
                              "--samples", "8")
        assert code == 0
        assert report["results"]["classification"] == "V"


class TestDeterminism:
    def test_reports_identical_modulo_timing(self, capsys, z9_file):
        _, r1, _ = run(capsys, "relation", z9_file,
                       "--subalgebra", "0,3,6", "--unit", "0")
        _, r2, _ = run(capsys, "relation", z9_file,
                       "--subalgebra", "0,3,6", "--unit", "0")
        r1.pop("elapsed_ms")
        r2.pop("elapsed_ms")
        assert r1 == r2

    def test_quiet_suppresses_summary(self, capsys, a2_file):
        _, _, err = run(capsys, "--quiet", "check", a2_file)
        assert err == ""


class TestEntryPoint:
    def test_module_invocation(self, tmp_path):
        path = tmp_path / "a2.tbl"
        path.write_text(format_magma(A2))
        proc = subprocess.run(
            [sys.executable, "-m", "ccmagma", "--quiet", "check", str(path)],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["results"]["is_ccm"]

    def test_help_exits_zero(self):
        proc = subprocess.run([sys.executable, "-m", "ccmagma", "--help"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        for sub in ("check", "classify", "generate", "extract-group",
                    "relation", "catalog"):
            assert sub in proc.stdout
