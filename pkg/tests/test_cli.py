import json

import pytest

from hyperlag import Hypergraph, colex_first_m, format_hypergraph, parse_hypergraph
from hyperlag.cli import main


@pytest.fixture
def k5_file(tmp_path):
    p = tmp_path / "k5.hg"
    from hyperlag import complete

    p.write_text(format_hypergraph(complete((2,), 5)))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestLagrangian:
    def test_text_output(self, capsys, k5_file):
        code, out, _ = run(capsys, "lagrangian", k5_file)
        assert code == 0
        lines = dict(
            line.split(maxsplit=1) for line in out.strip().splitlines()
        )
        assert float(lines["value"]) == pytest.approx(0.4, abs=1e-9)
        assert lines["converged"] == "true"
        assert lines["support"] == "1 2 3 4 5"

    def test_json_output(self, capsys, k5_file):
        code, out, _ = run(capsys, "lagrangian", k5_file, "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["value"] == pytest.approx(0.4, abs=1e-9)
        assert doc["converged"] is True
        assert len(doc["weighting"]) == 5

    def test_deterministic_bytes(self, capsys, k5_file):
        _, out1, _ = run(capsys, "lagrangian", k5_file, "--format", "json")
        _, out2, _ = run(capsys, "lagrangian", k5_file, "--format", "json")
        assert out1 == out2

    def test_alpha_flag(self, capsys, tmp_path):
        p = tmp_path / "mixed.hg"
        p.write_text("vertices 3\n1\n2\n3\n1 2\n1 3\n2 3\n")
        code, out, _ = run(
            capsys, "lagrangian", str(p), "--alpha", "2=1"
        )
        assert code == 0
        value = float(out.splitlines()[0].split()[1])
        assert value == pytest.approx(4.0 / 3, abs=1e-9)

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "lagrangian", str(tmp_path / "nope.hg"))
        assert code == 1
        assert err.strip()

    def test_malformed_file_reports_line(self, capsys, tmp_path):
        p = tmp_path / "bad.hg"
        p.write_text("vertices 3\n3 1\n")
        code, _, err = run(capsys, "lagrangian", str(p))
        assert code == 1
        assert "line 2" in err

    def test_unreachable_tolerance_exits_2(self, capsys, k5_file):
        code, out, _ = run(capsys, "lagrangian", k5_file, "--tol", "1e-30")
        assert code == 2
        assert "converged false" in out

    def test_bad_alpha_syntax(self, capsys, k5_file):
        code, _, err = run(capsys, "lagrangian", k5_file, "--alpha", "2*1")
        assert code == 1
        code, _, err = run(
            capsys, "lagrangian", k5_file, "--alpha", "2=1", "--alpha", "2=2"
        )
        assert code == 1


class TestColex:
    def test_round_trip(self, capsys):
        code, out, _ = run(capsys, "colex", "--type", "1,3", "--m", "4")
        assert code == 0
        assert parse_hypergraph(out) == colex_first_m((1, 3), 4)

    def test_json(self, capsys):
        code, out, _ = run(
            capsys, "colex", "--type", "3", "--m", "2", "--format", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["vertices"] == 4
        assert doc["edges"] == [[1, 2, 3], [1, 2, 4]]

    def test_bad_type(self, capsys):
        code, _, err = run(capsys, "colex", "--type", "zero", "--m", "2")
        assert code == 1


class TestCompress:
    def test_fixpoint_and_counts(self, capsys, tmp_path):
        p = tmp_path / "g.hg"
        p.write_text("vertices 3\n1 3\n2 3\n")
        code, out, _ = run(capsys, "compress", str(p))
        assert code == 0
        assert out.startswith("# level-counts 2=2\n")
        G = parse_hypergraph(out)
        assert G == Hypergraph(3, [(1, 2), (1, 3)])

    def test_json(self, capsys, tmp_path):
        p = tmp_path / "g.hg"
        p.write_text("vertices 4\n2 4\n")
        code, out, _ = run(capsys, "compress", str(p), "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["level_counts"] == {"2": 1}
        assert doc["edges"] == [[1, 2]]


class TestVerify:
    def test_ms_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--theorem", "ms", "--t", "5")
        assert code == 0
        assert "status pass" in out

    def test_th2_with_alpha(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--theorem", "th2", "--alpha", "2=1", "--t", "4"
        )
        assert code == 0

    def test_lemma34(self, capsys):
        code, out, _ = run(
            capsys,
            "verify", "--theorem", "lemma34",
            "--type", "3", "--t", "4", "--m", "5",
        )
        assert code == 0

    def test_failing_check_exits_2(self, capsys):
        code, out, _ = run(
            capsys,
            "verify", "--theorem", "lemma34",
            "--type", "3", "--t", "4", "--m", "20",
        )
        assert code == 2
        assert "status fail" in out

    def test_unknown_theorem(self, capsys):
        code, _, err = run(capsys, "verify", "--theorem", "bogus", "--t", "3")
        assert code == 1

    def test_file_based_t12(self, capsys, tmp_path):
        p = tmp_path / "red.hg"
        p.write_text(
            "vertices 6\n1\n2\n3\n4\n5\n1 2\n1 3\n1 2 3\n3 5 6\n"
        )
        code, out, _ = run(
            capsys,
            "verify", "--theorem", "t12", str(p),
            "--alpha", "2=0.5", "--alpha", "3=0.5",
        )
        assert code == 0
        assert "status pass" in out

    def test_connection_with_scan(self, capsys):
        code, out, _ = run(
            capsys,
            "verify", "--theorem", "connection",
            "--type", "1,2", "--alpha", "2=1", "--m", "6", "--n", "6",
        )
        assert code == 0
        assert "status pass" in out

    def test_json(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--theorem", "ms", "--t", "4", "--format", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["theorem_id"] == "ms"
        assert doc["abs_error"] <= 1e-7


class TestScan:
    def test_holds(self, capsys):
        code, out, _ = run(capsys, "scan", "--type", "2", "--m", "3", "--n", "6")
        assert code == 0
        assert "conjecture_holds true" in out
        assert "complete true" in out

    def test_limit_exits_3(self, capsys):
        code, out, _ = run(
            capsys,
            "scan", "--type", "2", "--m", "3", "--n", "6", "--limit", "1",
        )
        assert code == 3
        assert "complete false" in out

    def test_json(self, capsys):
        code, out, _ = run(
            capsys,
            "scan", "--type", "2,3", "--m", "3", "--n", "4",
            "--alpha", "3=1", "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["conjecture_holds"] is True
        assert doc["enumerated_count"] >= 1

    def test_missing_required(self, capsys):
        code, _, err = run(capsys, "scan", "--type", "2", "--m", "3")
        assert code == 1


def test_no_command_shows_usage(capsys):
    code, _, err = run(capsys)
    assert code == 1
