import io
import json

import pytest

from gks import FloodStrategy
from gks.cli import main
from gks.errors import DescriptorError, TableError
from gks.simulate import interactive_play, parse_descriptor, simulate_batch


def test_descriptors(table_path):
    assert parse_descriptor("flood:4").n == 4
    assert parse_descriptor(f"block:{table_path}").k == 9
    t2 = parse_descriptor(f"theorem2:{table_path}")
    assert (t2.n, t2.k) == (108, 81)
    nested = parse_descriptor("compose(flood:2,compose(flood:3,flood:2))")
    assert nested.n == 12
    assert parse_descriptor("theorem2").n == 108


@pytest.mark.parametrize("desc", ["flood:x", "flood:0", "block:", "nope:3", "compose(flood:2)"])
def test_bad_descriptors(desc):
    with pytest.raises(DescriptorError):
        parse_descriptor(desc)


def test_missing_table():
    with pytest.raises(TableError):
        parse_descriptor("block:/nonexistent/other.ucode")


def test_batch_flood():
    report = simulate_batch("flood:9", "random", 100, 0)
    assert report.games == report.wins == 100
    assert set(report.histogram) <= {1, 9}
    assert sum(report.histogram.values()) == report.games


def test_batch_theorem2_both_adversaries():
    for adv in ("random", "sweep"):
        report = simulate_batch("theorem2", adv, 300, 11)
        assert report.wins == report.games == 300
        assert report.histogram == {9: 300}


def test_batch_deterministic():
    a = simulate_batch("compose(flood:3,flood:4)", "random", 50, 2)
    b = simulate_batch("compose(flood:3,flood:4)", "random", 50, 2)
    assert a == b
    assert json.loads(a.to_json())["games"] == 50


def play(desc, script, **kw):
    out = io.StringIO()
    return interactive_play(desc, io.StringIO(script), out, **kw), out.getvalue()


def test_scripted_flood():
    result, text = play("flood:4", "2,4,1,bit=1\n")
    t = result.transcript
    assert t.written_bits == [0, 0, 1, 0]
    assert t.merlin_pos == 3 and t.bob_set == {3} and result.win
    assert "S=[3]" in text


def test_auto_delegation():
    result, _ = play("flood:6", "2 5 auto\n")
    assert result.win and result.transcript.arrival_order[:2] == [2, 5]
    assert sorted(result.transcript.arrival_order) == list(range(1, 7))


def test_reprompts(table_path):
    result, text = play(f"block:{table_path}", "13\n1 1 x 2 3 4 5 6 7 8 9 10 11\nbit=2 0\n")
    assert "index 13 out of range 1..12" in text
    assert "index 1 already filled" in text
    assert "not an index" in text and "enter 0 or 1" in text
    assert result.win and result.transcript.merlin_pos == 12


def test_eof_aborts():
    result, text = play("flood:4", "1 2\n")
    assert result is None and "aborted" in text


def test_replayable(tmp_path):
    script = "5 3 auto\n"
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        play("theorem2", script, record=p)
    assert paths[0].read_text() == paths[1].read_text()
    assert json.loads(paths[0].read_text())["arrival_order"][:2] == [5, 3]


def test_cli_verify(table_path, capsys):
    assert main(["verify", "--table", str(table_path), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] is True


def test_cli_verify_broken(tmp_path, table_path):
    lines = table_path.read_text().splitlines(keepends=True)
    bad = tmp_path / "bad.ucode"
    bad.write_text("".join(lines[:-1]))
    assert main(["verify", "--table", str(bad)]) == 1
    bad.write_text("garbage\n")
    assert main(["verify", "--table", str(bad)]) == 1


def test_cli_exponent(capsys):
    assert main(["exponent", "--k", "9", "--n", "108"]) == 0
    assert capsys.readouterr().out.strip() == "0.4692787260"
    assert main(["exponent", "--k", "9", "--n", "1"]) == 2


def test_cli_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--strategy", "flood:3"])
    assert exc.value.code == 2
    assert main(["simulate", "--strategy", "bogus", "--trials", "1", "--seed", "0"]) == 2


def test_cli_simulate(capsys):
    assert main(["simulate", "--strategy", "theorem2", "--trials", "20", "--seed", "4", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["histogram"] == {"9": 20}


def test_cli_search(tmp_path, capsys):
    assert main(["search", "--m", "4", "--u", "1", "--seed", "0", "--budget-ms", "1000"]) == 0
    assert json.loads(capsys.readouterr().out)["proof"] == "exhausted"
    out = tmp_path / "t.ucode"
    assert main(["search", "--m", "3", "--u", "3", "--seed", "0", "--budget-ms", "1000",
                 "--out", str(out)]) == 0
    assert out.read_text() == "m=3 u=3\n111 ^^^\n"
    assert main(["search", "--m", "12", "--u", "3", "--seed", "0", "--budget-ms", "100"]) == 3


def test_cli_selftest():
    assert main(["selftest", "--level", "quick"]) == 0


def test_cli_play(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO("3 1 2 bit=0\n"))
    assert main(["play", "--strategy", "flood:4"]) == 0
    monkeypatch.setattr("sys.stdin", io.StringIO(""))
    assert main(["play", "--strategy", "flood:4"]) == 2


def test_interactive_loss_logged(caplog):
    class Liar(FloodStrategy):
        def decode(self, word):
            return frozenset({1}), 0

    result, _ = play(Liar(3), "1 2 bit=1\n")
    assert not result.win
    assert any("interactive loss" in r.message for r in caplog.records)
