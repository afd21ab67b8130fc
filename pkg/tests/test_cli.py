import json
from fractions import Fraction

import pytest

from floppymetrics import dump_metric, metric_from_doc, pair, patchwork_to_doc, Patchwork, PartialMetric
from floppymetrics.cli import main


@pytest.fixture
def h_file(h_graph, tmp_path):
    path = tmp_path / "h.json"
    dump_metric(h_graph, path)
    return str(path)


@pytest.fixture
def pw_file(tmp_path):
    base = PartialMetric(["a", "b"], {pair("a", "b"): 2})
    pieces = (
        PartialMetric(["a", "x"], {pair("a", "x"): 1}),
        PartialMetric(["b", "y"], {pair("b", "y"): 1}),
    )
    path = tmp_path / "pw.json"
    path.write_text(json.dumps(patchwork_to_doc(Patchwork(base, pieces))))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.lstrip().startswith(("{", "[")) else out)


class TestValidate:
    def test_report(self, capsys, h_file):
        code, doc = run(capsys, "validate", h_file)
        assert code == 0
        assert doc["graph_metric"] and doc["connected"] and not doc["full"]

    def test_dot(self, capsys, h_file):
        code = main(["validate", "--dot", h_file])
        out = capsys.readouterr().out
        assert code == 0
        assert out.startswith("graph metric {")

    def test_missing_file(self, capsys, tmp_path):
        code, doc = run(capsys, "validate", str(tmp_path / "nope.json"))
        assert code == 2

    def test_garbage_json(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        code, doc = run(capsys, "validate", str(path))
        assert code == 2
        assert doc["error"] == "REJECT_MALFORMED"


class TestQuery:
    def test_hat(self, capsys, h_file):
        code, doc = run(capsys, "query", "--hat", "x", "y", h_file)
        assert (code, doc["value"]) == (0, "12")

    def test_check(self, capsys, h_file):
        code, doc = run(capsys, "query", "--check", "x", "y", h_file)
        assert (code, doc["value"]) == (0, "8")

    def test_ddot(self, capsys, h_file):
        code, doc = run(capsys, "query", "--ddot", "a,b", "x,y", h_file)
        assert (code, doc["value"]) == (0, "2")

    def test_unknown_vertex_is_domain_error(self, capsys, h_file):
        code, doc = run(capsys, "query", "--hat", "x", "zzz", h_file)
        assert code == 1
        assert doc["error"] == "UNKNOWN_VERTEX"


class TestFloppy:
    def test_report(self, capsys, h_file):
        code, doc = run(capsys, "floppy", h_file)
        assert code == 0
        assert doc["floppy"] is True


class TestStep:
    def test_theorem_step(self, capsys, h_file):
        code, doc = run(capsys, "step", "--pair", "x,y", "--r", "34/3", h_file)
        assert code == 0
        m = metric_from_doc(doc)
        assert m.weight(pair("x", "y")) == Fraction(34, 3)

    def test_out_of_range(self, capsys, h_file):
        code, doc = run(capsys, "step", "--pair", "x,y", "--r", "1", h_file)
        assert code == 1
        assert doc["error"] == "R_OUT_OF_RANGE"

    def test_proposition_mode_accepts_envelope(self, capsys, h_file):
        code, doc = run(capsys, "step", "--pair", "x,y", "--r", "8", "--mode", "proposition", h_file)
        assert code == 0

    def test_bad_pair_syntax(self, capsys, h_file):
        code, doc = run(capsys, "step", "--pair", "xy", "--r", "11", h_file)
        assert code == 2
        assert doc["error"] == "REJECT_MALFORMED"


class TestPstep:
    def test_report(self, capsys, h_file):
        code, doc = run(capsys, "pstep", "--pair", "x,y", "--r", "34/3", h_file)
        assert code == 0
        assert doc["ok"] is True
        assert set(doc["statements"]) == {"1", "2", "3", "4", "5"}


class TestExtend:
    def test_lex(self, capsys, h_file):
        code, doc = run(capsys, "extend", h_file)
        assert code == 0
        assert len(doc["steps"]) == 3
        result = metric_from_doc(doc["result"])
        assert len(result.edges) == 6

    def test_choice_sets_from_file(self, capsys, h_file, tmp_path):
        sets = {
            "x,y": {"intervals": [["0", None]]},
            "a,y": {"intervals": [["0", None]]},
            "b,x": {"intervals": [["0", None]]},
        }
        cpath = tmp_path / "sets.json"
        cpath.write_text(json.dumps(sets))
        code, doc = run(capsys, "extend", "--choice", f"set-file:{cpath}", h_file)
        assert code == 0
        values = [s["value"] for s in doc["steps"]]
        assert len(set(values)) == 3

    def test_bad_choice_spec(self, capsys, h_file):
        code, doc = run(capsys, "extend", "--choice", "oracle", h_file)
        assert code == 2


class TestGame:
    def test_winning_vs_random(self, capsys, h_file):
        code, doc = run(capsys, "game", "play", "--p2", "random:3", h_file)
        assert code == 0
        assert doc["verdict"] == "PLAYER_I_WINS"
        assert len(doc["moves"]) == 3

    def test_short_game_with_lambda(self, capsys, h_file):
        code, doc = run(capsys, "game", "play", "--p2", "adversary", "--lambda", "1", h_file)
        assert code == 0
        assert doc["verdict"] == "PLAYER_II_WINS"
        assert doc["reason"]["kind"] == "MISSING_PAIR"

    def test_unknown_strategy(self, capsys, h_file):
        code, doc = run(capsys, "game", "play", "--p2", "psychic", h_file)
        assert code == 2


class TestGlue:
    def test_glued_metric(self, capsys, pw_file):
        code, doc = run(capsys, "glue", pw_file)
        assert code == 0
        assert sorted(doc["vertices"]) == ["a", "b", "x", "y"]

    def test_check_only(self, capsys, pw_file):
        code, doc = run(capsys, "glue", "--check-only", pw_file)
        assert (code, doc["ok"]) == (0, True)

    def test_hat(self, capsys, pw_file):
        code, doc = run(capsys, "glue", "--hat", "x", "y", pw_file)
        assert (code, doc["value"]) == (0, "4")

    def test_cert(self, capsys, pw_file):
        code, doc = run(capsys, "glue", "--cert", pw_file)
        assert code == 0
        assert doc["certified"] is True
        assert doc["glued_floppy"] is True


class TestGen:
    def test_cantor(self, capsys):
        code, doc = run(capsys, "gen", "cantor", "--depth", "2")
        assert code == 0
        assert len(doc["vertices"]) == 7

    def test_random_is_seeded(self, capsys):
        _, a = run(capsys, "gen", "random", "--n", "5", "--seed", "4")
        _, b = run(capsys, "gen", "random", "--n", "5", "--seed", "4")
        assert a == b

    def test_gen_pipes_into_validate(self, capsys, tmp_path):
        code, doc = run(capsys, "gen", "path", "--n", "3", "--scale", "1/2")
        path = tmp_path / "p.json"
        path.write_text(json.dumps(doc))
        code, rep = run(capsys, "validate", str(path))
        assert (code, rep["graph_metric"]) == (0, True)

    def test_bad_scale(self, capsys):
        code, doc = run(capsys, "gen", "path", "--n", "3", "--scale", "huge")
        assert code == 2


class TestUsage:
    def test_no_command(self, capsys):
        assert main([]) == 2

    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == 2
