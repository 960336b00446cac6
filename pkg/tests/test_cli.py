import io
import json
import math

import pytest

from coronaqec import GraphSpecError, complete, cycle, disjoint_union, empty, path
from coronaqec.cli import parse_graph_spec, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


class TestParseSpec:
    @pytest.mark.parametrize("spec,expected", [("P4", path(4)), ("K3", complete(3)), ("E2", empty(2)),
                                               ("C5", cycle(5))])
    def test_families(self, spec, expected):
        assert parse_graph_spec(spec) == expected

    def test_copies(self):
        g = parse_graph_spec("2K3")
        assert g == disjoint_union(complete(3), complete(3))
        assert g.label == "2K3"

    def test_union(self):
        assert parse_graph_spec("union:K2,E3") == disjoint_union(complete(2), empty(3))

    def test_file(self, tmp_path):
        f = tmp_path / "tri.txt"
        f.write_text("# triangle\nn 3\n0 1\n1 2\n0 2\n")
        g = parse_graph_spec(str(f))
        assert g == complete(3) and g.label == "tri.txt"

    @pytest.mark.parametrize("spec", ["X4", "K", "union:", "0K3", "C2", "nope.txt"])
    def test_bad(self, spec):
        with pytest.raises(GraphSpecError):
            parse_graph_spec(spec)


class TestCommands:
    def test_qec_json(self):
        code, out, _ = call("qec", "P4")
        assert code == 0
        d = json.loads(out)
        assert d["qec"] == pytest.approx(-2 + math.sqrt(2), abs=1e-11)
        assert d["method"] == "oracle" and d["n"] == 4
        assert d["tolerances"]["group_tol"] == 1e-7

    def test_tolerance_flags_echoed(self):
        _, out, _ = call("qec", "P4", "--group-tol", "1e-6", "--eigen-excl-tol", "1e-5")
        t = json.loads(out)["tolerances"]
        assert t["group_tol"] == 1e-6 and t["eigen_excl_tol"] == 1e-5

    def test_qec_table(self):
        code, out, _ = call("qec", "K3", "--table")
        assert code == 0 and "oracle" in out and "-1" in out

    def test_dist_csv(self):
        code, out, _ = call("dist", "P3", "--format", "csv")
        assert code == 0
        assert out.splitlines() == ["0,1,2", "1,0,1", "2,1,0"]

    def test_predict(self):
        code, out, _ = call("predict", "K2", "E2")
        assert code == 0
        d = json.loads(out)
        assert d["predicted"] == pytest.approx(-0.438447187191, abs=1e-11)
        assert d["status"] == "pass" and "T4.13" in d["applicable"]

    def test_psi_inv(self):
        code, out, _ = call("psi-inv", "E3", "0")
        assert code == 0 and json.loads(out)["psi_inv"] == pytest.approx(0.0, abs=1e-12)

    def test_omega_json(self):
        code, out, _ = call("omega", "2K2")
        d = json.loads(out)
        assert code == 0
        assert d["zeros"] == pytest.approx([-3 / 5])

    def test_sample_csv(self):
        code, out, _ = call("sample", "E1", "-1", "1", "5")
        lines = out.splitlines()
        assert code == 0 and lines[0] == "lambda,omega,psi" and len(lines) == 6
        lam, om, ps = map(float, lines[-1].split(","))
        assert (lam, om, ps) == pytest.approx((1.0, 4 / 3, 0.75))

    def test_omega_sample_marks_poles(self):
        # omega blows up at -2 while psi extends continuously to 0 there
        _, out, _ = call("omega", "E1", "--sample", "-3", "-1", "3")
        assert out.splitlines()[2] == "-2,nan,0"

    def test_corona_round_trip(self, tmp_path):
        code, text, _ = call("corona", "C4", "K2")
        assert code == 0
        f = tmp_path / "c.txt"
        f.write_text(text)
        _, out, _ = call("qec", str(f))
        _, rep, _ = call("predict", "C4", "K2")
        assert json.loads(out)["qec"] == pytest.approx(json.loads(rep)["oracle"], abs=1e-9)

    def test_verify_corpus(self):
        code, out, _ = call("verify", "--corpus")
        d = json.loads(out)
        assert code == 0 and d["ok"] and d["total"] == d["applicable_pairs"]

    def test_verify_seeded_table(self):
        code, out, _ = call("verify", "--seed", "5", "--count", "20", "--table")
        assert code == 0 and "worst deviation" in out


class TestExitCodes:
    def test_bad_spec(self):
        code, _, err = call("qec", "Z9")
        assert code == 2 and "unrecognized" in err

    def test_disconnected(self):
        code, _, err = call("qec", "2K2")
        assert code == 3 and "error" in err

    def test_verify_needs_seed(self):
        assert call("verify")[0] == 2

    def test_cap(self):
        assert call("predict", "K10", "K5", "--cap", "20")[0] == 3

    def test_usage_error(self):
        assert call("frobnicate")[0] == 2

    def test_file_errors_report_line(self, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("n 3\n0 1\n1 7\n")
        code, _, err = call("qec", str(f))
        assert code == 2 and "line 3" in err
