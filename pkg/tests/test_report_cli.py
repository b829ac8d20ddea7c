import json

import pytest

from chevpres.cli import main
from chevpres.ffield import make_field
from chevpres.formats import loads
from chevpres.presentations import present_sl3_sylow, present_sp4_sylow
from chevpres.verify import verification_report

REPORT_KEYS = {"family", "q", "relators_checked", "failures", "order_closure", "order_tc", "d_frattini"}


def run(argv, capsys):
    rc = main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_report_sl3_q4():
    r = verification_report(present_sl3_sylow(make_field(2, 2)))
    assert REPORT_KEYS <= set(r)
    assert (r["order_closure"], r["order_tc"], r["d_frattini"], r["failures"]) == (64, 64, 4, [])
    assert r["ok"]


def test_report_small_q_not_asserted():
    r = verification_report(present_sl3_sylow(make_field(2, 1)))
    assert r["ok"] and r["d_asserted"] is False and r["order_tc"] == 8


def test_report_overflow_is_failure():
    r = verification_report(present_sp4_sylow(make_field(3, 1)), max_cosets=20)
    assert r["order_tc"] == "overflow" and not r["ok"]


def test_present_examples(tmp_path, capsys):
    out = tmp_path / "s.json"
    rc, stdout, _ = run(["present", "--family", "sl3-sylow", "--p", "3", "--a", "2", "-o", str(out)], capsys)
    assert rc == 0
    P = loads(out.read_text())
    assert (P.d_count, P.r_count) == (4, 12)
    assert json.loads(stdout)["r_count"] == 12

    out = tmp_path / "a.txt"
    rc, stdout, _ = run(["present", "--family", "affine-uplus", "--type", "A", "--rank", "3",
                         "--p", "2", "--a", "4", "--format", "text", "-o", str(out)], capsys)
    assert rc == 0
    P = loads(out.read_text())
    assert (P.d_count, P.r_count) == (16, 152)
    assert json.loads(stdout)["count_bounds"]["upper"] == 152


@pytest.mark.parametrize("argv", [
    ["present", "--family", "sp4-sylow", "--p", "2", "--a", "1"],
    ["present", "--family", "sl3-sylow", "--q", "6"],
    ["present", "--family", "sl3-sylow", "--q", "9", "--p", "3"],
    ["present", "--family", "affine-uplus", "--type", "A", "--rank", "3", "--q", "3"],
    ["present", "--family", "sp4-sylow-even", "--q", "4"],
    ["table1", "--type", "A", "--rank", "2", "--a", "1", "--parity", "odd"],
    ["cover", "--type", "F", "--rank", "4"],
])
def test_rejections(argv, capsys):
    rc, _, err = run(argv, capsys)
    assert rc != 0 and "error" in err


def test_present_to_stdout_is_deterministic(capsys):
    argv = ["present", "--family", "sp4-sylow", "--q", "9", "--format", "text"]
    rc1, out1, _ = run(argv, capsys)
    rc2, out2, _ = run(argv, capsys)
    assert rc1 == rc2 == 0 and out1 == out2 and out1.startswith("# chevpres")


def test_verify_pipeline(tmp_path, capsys):
    f = tmp_path / "s4.json"
    run(["present", "--family", "sl3-sylow", "--q", "4", "-o", str(f)], capsys)
    rc, out, _ = run(["verify", str(f)], capsys)
    r = json.loads(out)
    assert rc == 0
    assert (r["order_closure"], r["order_tc"], r["d_frattini"], r["failures"]) == (64, 64, 4, [])

    g = tmp_path / "p3.txt"
    run(["present", "--family", "sp4-sylow", "--q", "3", "--format", "text", "-o", str(g)], capsys)
    rep = tmp_path / "rep.json"
    rc, _, _ = run(["verify", str(g), "--identities", "--samples", "50", "--seed", "1", "-o", str(rep)], capsys)
    r = json.loads(rep.read_text())
    assert rc == 0 and r["order_tc"] == 81 and r["d_frattini"] == 2 and r["relators_checked"] == 10
    assert r["identities"]["ok"]

    text = g.read_text().splitlines()
    text[5] = text[5].replace("^3", "^2")        # first relator x1_1^3 -> x1_1^2
    g.write_text("\n".join(text) + "\n")
    rc, out, _ = run(["verify", str(g)], capsys)
    assert rc != 0 and json.loads(out)["failures"] == [0]


def test_verify_affine_file(tmp_path, capsys):
    f = tmp_path / "f4.txt"
    run(["present", "--family", "affine-uplus", "--type", "F", "--rank", "4", "--q", "17",
         "--format", "text", "-o", str(f)], capsys)
    rc, out, _ = run(["verify", str(f)], capsys)
    r = json.loads(out)
    assert rc == 0 and r["failures"] == [] and r["d_lower"] == 5


def test_verify_missing_and_garbage(tmp_path, capsys):
    assert run(["verify", str(tmp_path / "nope.json")], capsys)[0] != 0
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["verify", str(bad)], capsys)[0] != 0


def test_table1_row(capsys):
    rc, out, _ = run(["table1", "--type", "C", "--rank", "6", "--a", "2", "--parity", "odd"], capsys)
    (row,) = json.loads(out)
    assert rc == 0 and row["upper"] == 147 and row["builder"] == 147 and row["agree"]
    assert row["pairs"] == {"A1xA1": 15, "A2": 4, "C2": 2}


def test_table1_grid(capsys):
    rc, out, _ = run(["table1"], capsys)
    rows = json.loads(out)
    assert rc == 0 and all(r["agree"] and r["gs_ok"] for r in rows)
    assert {r["type"] for r in rows} == set("ABCDEF")


def test_table1_f4_even_disagrees(capsys):
    rc, out, _ = run(["table1", "--type", "F", "--rank", "4", "--a", "4", "--parity", "even"], capsys)
    (row,) = json.loads(out)
    assert rc == 1 and (row["upper"], row["builder"]) == (256, 334)


@pytest.mark.parametrize("t,l", [("E", 7), ("D", 9), ("B", 6)])
def test_cover_command(t, l, capsys):
    rc, out, _ = run(["cover", "--type", t, "--rank", str(l)], capsys)
    r = json.loads(out)
    assert rc == 0 and r["check"] == {"P1": True, "P2": True, "P3": True}
    assert (r["type"], r["rank"]) == (t, l) and len(r["parts"]) == 3
