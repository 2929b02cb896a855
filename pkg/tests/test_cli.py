import io
import json

import pytest

from stirling_forests.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPoly:
    def test_exc_cyc_route(self, capsys):
        code, out, _ = run_cli(capsys, "poly", "--n", "3", "--k", "2",
                               "--which", "A", "--route", "exc-cyc")
        assert code == 0
        assert out.strip() == "[1,10,4]"

    def test_routes_agree(self, capsys):
        outputs = set()
        for route in ("ap", "exc-cyc", "egf"):
            code, out, _ = run_cli(capsys, "poly", "--n", "4", "--k", "3",
                                   "--which", "A", "--route", route)
            assert code == 0
            outputs.add(out.strip())
        assert outputs == {"[1,81,171,27]"}

    def test_parts(self, capsys):
        _, out_a, _ = run_cli(capsys, "poly", "--n", "3", "--k", "2", "--which", "a")
        assert out_a.strip() == "[1,7,1]"
        _, out_b, _ = run_cli(capsys, "poly", "--n", "3", "--k", "2", "--which", "b")
        assert out_b.strip() == "[3,3]"
        _, out_b2, _ = run_cli(capsys, "poly", "--n", "3", "--k", "2",
                               "--which", "b", "--route", "ap")
        assert out_b2.strip() == "[3,3]"

    def test_c(self, capsys):
        _, out, _ = run_cli(capsys, "poly", "--n", "3", "--k", "3", "--which", "c")
        assert out.strip() == "[0,9,9]"


class TestGamma:
    def test_census_a(self, capsys):
        _, out, _ = run_cli(capsys, "gamma", "--n", "3", "--k", "2", "--which", "a")
        assert json.loads(out) == {"center": 2, "gamma": [1, 5]}

    def test_all_routes_match(self, capsys):
        for which, center in (("a", 2), ("b", 3), ("c", 3)):
            seen = []
            for by in ("census", "decomposition"):
                code, out, _ = run_cli(capsys, "gamma", "--n", "3", "--k", "2",
                                       "--which", which, "--by", by)
                assert code == 0
                record = json.loads(out)
                assert record["center"] == center
                seen.append(tuple(record["gamma"]))
            assert seen[0] == seen[1]


class TestMap:
    def test_psi_golden(self, capsys):
        code, out, _ = run_cli(capsys, "map", "--name", "psi", "--k", "3",
                               "--x", "2", "--input", "1[3;;7] 2 4[;;6] 5 8")
        assert code == 0
        assert out.strip() == "1[3;;7] 2[;;4[;;6],5] 8"

    def test_xi_and_inverse_compose_to_identity(self, capsys):
        word = "133377711446664225552888"
        _, forest, _ = run_cli(capsys, "map", "--name", "xi", "--k", "3",
                               "--input", word)
        _, back, _ = run_cli(capsys, "map", "--name", "xi-inv", "--k", "3",
                             "--input", forest.strip())
        assert back.strip() == word

    def test_zeta_chi_phi(self, capsys):
        _, out, _ = run_cli(capsys, "map", "--name", "zeta", "--k", "3",
                            "--input", "888244666422555113337771")
        assert out.strip() == "1[;3,7;] 2[4[;;6];;5] 8"
        _, out, _ = run_cli(capsys, "map", "--name", "chi", "--k", "3",
                            "--input", "244666422555")
        assert out.strip() == "2[4[;;6];;5]"
        _, out, _ = run_cli(capsys, "map", "--name", "phi", "--k", "3", "--x", "4",
                            "--input", "1[3,4[5,10;6[;9;],8;7];;2]")
        assert out.strip() == "1[3,4,5,10;6[;9;],8;2,7]"

    def test_marked_maps(self, capsys):
        _, out, _ = run_cli(capsys, "map", "--name", "theta", "--k", "2",
                            "--set", "2", "--input", "1[2[3;];]")
        assert out.strip() == "1[2,3;] | {}"
        _, out, _ = run_cli(capsys, "map", "--name", "theta-prime", "--k", "2",
                            "--input", "1[2,3;] | {}")
        assert out.strip() == "1[2[3;];] | {2}"
        _, out, _ = run_cli(capsys, "map", "--name", "gamma", "--k", "3",
                            "--set", "1,3",
                            "--input", "1 2[;5;] 3 4[;;7] 6 8[;9,10;]")
        assert out.strip() == "1[;9,10;2[;5;],3[;;4[;;7],6],8]"
        _, out, _ = run_cli(capsys, "map", "--name", "gamma-prime", "--k", "2",
                            "--input", "1[;2] 3")
        assert out.strip() == "1 2 3 | {1}"
        _, out, _ = run_cli(capsys, "map", "--name", "alpha", "--k", "2",
                            "--input", "1 2 3 | {1}")
        assert out.strip() == "1[;2] 3 | {}"
        _, out, _ = run_cli(capsys, "map", "--name", "beta", "--k", "2",
                            "--input", "1[;2] 3 | {}")
        assert out.strip() == "1 2 3 | {1}"

    def test_stdin_input(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("1122\n"))
        code, out, _ = run_cli(capsys, "map", "--name", "zeta", "--k", "2",
                               "--input", "-")
        assert code == 0
        assert out.strip() == "1[;2]"

    def test_bad_input_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "map", "--name", "zeta", "--k", "2",
                               "--input", "1212")
        assert code == 2
        assert "error" in err

    def test_missing_x_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run_cli(capsys, "map", "--name", "phi", "--k", "2", "--input", "1")
        assert exc.value.code == 2


class TestEnumerateStats:
    def test_enumerate_perms(self, capsys):
        code, out, _ = run_cli(capsys, "enumerate", "--n", "2", "--k", "2",
                               "--kind", "perms")
        assert code == 0
        assert out.split() == ["2211", "1221", "1122"]

    def test_enumerate_forest_filters(self, capsys):
        _, out, _ = run_cli(capsys, "enumerate", "--n", "3", "--k", "2",
                            "--kind", "forests")
        assert len(out.strip().splitlines()) == 15
        _, out, _ = run_cli(capsys, "enumerate", "--n", "3", "--k", "2",
                            "--kind", "forests", "--filter", "bar")
        assert len(out.strip().splitlines()) == 9
        _, out, _ = run_cli(capsys, "enumerate", "--n", "3", "--k", "2",
                            "--kind", "forests", "--filter", "hat")
        assert len(out.strip().splitlines()) == 6
        _, out, _ = run_cli(capsys, "enumerate", "--n", "3", "--k", "2",
                            "--kind", "forests", "--filter", "star")
        assert len(out.strip().splitlines()) == 9  # 6 bar-starred + 3 hat-starred

    def test_enumerate_limit_and_json(self, capsys):
        code, out, _ = run_cli(capsys, "enumerate", "--n", "3", "--k", "2",
                               "--kind", "perms", "--limit", "4",
                               "--format", "json")
        lines = out.strip().splitlines()
        assert code == 0 and len(lines) == 4
        assert all("word" in json.loads(line) for line in lines)

    def test_stats_word(self, capsys):
        code, out, _ = run_cli(capsys, "stats", "--k", "3",
                               "--input", "133377711446664225552888")
        record = json.loads(out)
        assert record["kind"] == "word"
        assert record["ap"] == 5 and record["lap"] == 5
        assert record["in_tilde"] is True

    def test_stats_forest(self, capsys):
        code, out, _ = run_cli(capsys, "stats", "--k", "3",
                               "--input", "1[;3,7;] 2[4[;;6];;5] 8")
        record = json.loads(out)
        assert record["kind"] == "forest"
        assert record["lleaf"] == 5 and record["si"] == 1
        assert record["in_bar"] is True

    def test_stats_type_override(self, capsys):
        code, out, _ = run_cli(capsys, "stats", "--k", "2", "--input", "5",
                               "--type", "forest")
        assert json.loads(out)["si"] == 1


class TestVerify:
    def test_text_pass(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--n-max", "2", "--k-max", "2",
                               "--suite", "polynomials", "--suite", "bijections")
        assert code == 0
        assert "identities passed" in out
        assert "FAIL" not in out

    def test_json_reports(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--n-max", "2", "--k-max", "1",
                               "--suite", "theorems", "--format", "json")
        assert code == 0
        lines = [json.loads(line) for line in out.strip().splitlines()]
        assert lines and all(rec["pass"] for rec in lines)
        assert {"identity", "n", "k", "pass", "left", "right"} <= set(lines[0])

    def test_usage_error_exit_code(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--n-max", "2"])
        assert exc.value.code == 2
