import json

import pytest

from einshom.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestList:
    def test_plain(self, capsys):
        code, out, _ = run(capsys, "list")
        assert code == 0 and "SL2H_Sp1Sp1" in out and "AFF1" not in out

    def test_json_with_fixtures(self, capsys):
        code, out, _ = run(capsys, "list", "--fixtures", "--json")
        names = [r["name"] for r in json.loads(out)]
        assert code == 0 and "AFF1" in names

    def test_class_filter(self, capsys):
        _, out, _ = run(capsys, "list", "--class", "UNRESOLVED", "--json")
        assert [r["display"] for r in json.loads(out)] == ["Sp11_Dpq(1,1)"]


class TestAnalyze:
    def test_obstructed(self, capsys):
        code, out, _ = run(capsys, "analyze", "SU41_SU4")
        assert code == 0 and "CARTAN_ORTHOGONAL_OBSTRUCTED" in out

    def test_json_parametric(self, capsys):
        code, out, _ = run(capsys, "analyze", "Sp2R_Dpq", "--p", "2", "--q", "3", "--json")
        rep = json.loads(out)
        assert code == 0 and rep["command"] == "analyze"
        assert all(r["passed"] for r in rep["results"])

    @pytest.mark.parametrize("argv", [("analyze", "NOPE"), ("analyze", "Sp11_Dpq", "--p", "1"),
                                      ("analyze", "Sp11_Dpq", "--p", "2", "--q", "4")])
    def test_usage_errors(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 2 and "error" in err


class TestRicci:
    def test_flat(self, capsys):
        code, out, _ = run(capsys, "ricci", "FLAT_R3", "--json")
        res = json.loads(out)["results"][0]
        assert code == 0 and res["verdict"] == "EINSTEIN" and res["lambda_star"] == 0

    def test_exact_values(self, capsys):
        code, out, _ = run(capsys, "ricci", "SL2H_Sp1Sp1", "--values", "a=1,b=5,c=1,d=1/2", "--matrix")
        assert code == 0 and "NOT_EINSTEIN" in out

    def test_compare_closed_form(self, capsys):
        _, out, _ = run(capsys, "ricci", "SL2H_Sp1Sp1", "--values", "a=1,b=1,c=1,d=0",
                        "--compare-closed-form", "--json")
        res = json.loads(out)["results"][0]
        assert res["closed_form_max_diff"] == pytest.approx(2.0)

    def test_out_of_domain(self, capsys):
        code, _, err = run(capsys, "ricci", "SL2H_Sp1Sp1", "--values", "a=1,b=1,c=1,d=1")
        assert code == 2 and "domain" in err

    def test_unknown_slot(self, capsys):
        code, _, _ = run(capsys, "ricci", "SL2H_Sp1Sp1", "--values", "z=1")
        assert code == 2

    def test_no_closed_form(self, capsys):
        code, _, _ = run(capsys, "ricci", "AFF1", "--compare-closed-form")
        assert code == 2


class TestSearch:
    def test_restarts_must_be_positive(self, capsys):
        code, _, _ = run(capsys, "search", "AFF1", "--restarts", "0")
        assert code == 2

    def test_aff1(self, capsys, tmp_path):
        csv_path = tmp_path / "trace.csv"
        code, out, err = run(capsys, "search", "AFF1", "--restarts", "1", "--json",
                             "--trace-csv", str(csv_path))
        res = json.loads(out)["results"][0]
        assert code == 0 and res["verdict"] == "CONVERGED" and res["kind"] == "corroboration"
        assert csv_path.read_text().startswith("restart,iter")
        assert "searching" in err


class TestVerify:
    def test_single_case(self, capsys):
        code, out, _ = run(capsys, "verify-paper", "--case", "borel", "--json")
        rep = json.loads(out)
        assert code == 0 and [r["id"] for r in rep["results"]] == ["C7.borel"]

    def test_failing_case_exit_code(self, capsys):
        code, out, _ = run(capsys, "verify-paper", "--case", "sl2h")
        assert code == 1 and "FAIL" in out


class TestConfig:
    def test_config_defaults(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"json": True}))
        code, out, _ = run(capsys, "--config", str(cfg), "list")
        assert code == 0 and isinstance(json.loads(out), list)

    def test_bad_config(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("[1, 2]")
        assert run(capsys, "--config", str(cfg), "list")[0] == 2

    def test_missing_config(self, capsys, tmp_path):
        assert run(capsys, "--config", str(tmp_path / "none.json"), "list")[0] == 2
