"""Campaign runner and CLI: records, resume, ordering, determinism, exit codes."""

import json

import pytest

from quaddisc.campaigns import (
    EXIT_CEILING,
    EXIT_INVALID,
    EXIT_IO,
    EXIT_MISMATCH,
    EXIT_OK,
    CampaignConfig,
    expected_match,
    parse_record,
    record_key,
    resume_scan,
    run,
    serialize_record,
)
from quaddisc.cli import main


def read_records(path):
    return [parse_record(line) for line in path.read_text().splitlines()]


def test_record_round_trip():
    samples = [
        {"cmd": "verify-theorem11", "d": 4, "c": -3, "n": 9, "least_m": 29,
         "predicted": 29, "match": True, "ms": 12},
        {"cmd": "window-check", "d": 4, "n": 79, "least_m": None, "predicted": None,
         "match": True, "ms": 0},
        {"cmd": "conjecture", "id": "1.2", "n": 5, "least_m": 11, "predicted": None,
         "match": True, "ms": 0, "flags": [True, True]},
        {"cmd": "conjecture", "id": "1.3", "form": "x^2+x+1", "variant": "squares",
         "n": 4, "least_m": 13, "predicted": 7, "match": False, "ms": 1,
         "certificate": {"kind": "predicted_modulus_collides", "modulus": 7, "k": 3,
                         "l": 4, "term_k": 9, "term_l": 16}},
        {"cmd": "discriminator", "A": 32, "B": -8, "n": 6, "least_m": 17,
         "predicted": None, "match": None, "ms": 3},
    ]
    for rec in samples:
        assert parse_record(serialize_record(rec)) == rec


def test_record_key_uses_identity_fields_only():
    a = {"cmd": "verify-theorem11", "d": 4, "c": -3, "n": 9, "least_m": 29,
         "predicted": 29, "match": True, "ms": 12}
    b = dict(a, least_m=1, predicted=2, match=False, ms=999)
    assert record_key(a) == record_key(b)
    assert record_key(a) != record_key(dict(a, n=10))


def test_resume_scan_empty_and_valid(tmp_path, capsys):
    path = tmp_path / "records.jsonl"
    path.write_text("")
    assert resume_scan(path) == set()
    assert resume_scan(tmp_path / "absent.jsonl") == set()

    recs = [
        {"cmd": "verify-theorem11", "d": 4, "c": 1, "n": n, "least_m": 1,
         "predicted": 1, "match": True, "ms": 0}
        for n in (6, 7, 8)
    ]
    path.write_text("".join(serialize_record(r) + "\n" for r in recs))
    assert len(resume_scan(path)) == 3
    assert capsys.readouterr().err == ""


def test_resume_scan_skips_corrupt_line(tmp_path, capsys):
    path = tmp_path / "records.jsonl"
    good = serialize_record({"cmd": "window-check", "d": 4, "n": 79, "least_m": None,
                             "predicted": None, "match": True, "ms": 0})
    lines = [good, good.replace('"n":79', '"n":80'), good[: len(good) // 2]]
    path.write_text("\n".join(lines) + "\n")
    keys = resume_scan(path)
    assert len(keys) == 2
    assert "corrupt record" in capsys.readouterr().err


def run_to_file(tmp_path, name, argv):
    path = tmp_path / name
    rc = main(argv + ["--out", str(path)])
    return rc, path


def test_campaign_orders_records_by_n(tmp_path):
    rc, path = run_to_file(
        tmp_path, "t11.jsonl",
        ["verify-theorem11", "--d", "4", "--c", "-3", "--n-from", "9", "--n-to", "40",
         "--parallelism", "2", "--no-timing"],
    )
    assert rc == EXIT_OK
    ns = [r["n"] for r in read_records(path)]
    assert ns == list(range(9, 41))


def test_campaign_expected_example_counts(tmp_path, capsys):
    rc, path = run_to_file(
        tmp_path, "t11.jsonl",
        ["verify-theorem11", "--d", "4", "--c", "-3", "--n-from", "9", "--n-to", "28",
         "--no-timing"],
    )
    assert rc == EXIT_OK
    recs = read_records(path)
    assert len(recs) == 20 and all(r["match"] for r in recs)
    assert "match=20 mismatch=0 unexpected=0" in capsys.readouterr().err


def test_remark11_expected_mismatch_exit_zero(tmp_path, capsys):
    rc, path = run_to_file(tmp_path, "r11.jsonl",
                           ["verify-remark11", "--d", "5", "--no-timing"])
    assert rc == EXIT_OK
    (rec,) = read_records(path)
    assert rec["match"] is False and rec["n"] == 14 and rec["c"] == -1
    assert "mismatch=1 unexpected=0" in capsys.readouterr().err


def test_resume_zero_recompute_and_identical_summary(tmp_path, capsys):
    argv = ["verify-theorem11", "--d", "4", "--c", "-3", "--n-from", "9", "--n-to", "24",
            "--no-timing"]
    rc, path = run_to_file(tmp_path, "t11.jsonl", argv)
    assert rc == EXIT_OK
    first_bytes = path.read_bytes()
    first_summary = capsys.readouterr().err

    rc = main(argv + ["--out", str(path), "--resume"])
    assert rc == EXIT_OK
    second_summary = capsys.readouterr().err
    assert path.read_bytes() == first_bytes  # nothing re-emitted
    assert second_summary == first_summary


def test_resume_completes_partial_file(tmp_path):
    argv = ["verify-theorem11", "--d", "4", "--c", "-3", "--no-timing"]
    rc, path = run_to_file(tmp_path, "part.jsonl", argv + ["--n-from", "9", "--n-to", "12"])
    assert rc == EXIT_OK
    rc = main(argv + ["--n-from", "9", "--n-to", "16", "--out", str(path), "--resume"])
    assert rc == EXIT_OK
    ns = [r["n"] for r in read_records(path)]
    assert ns == list(range(9, 17))  # 9..12 kept, 13..16 appended


def test_determinism_across_parallelism(tmp_path):
    base = ["verify-theorem11", "--d", "5", "--c", "-1", "--n-from", "15", "--n-to", "60",
            "--no-timing"]
    _, p1 = run_to_file(tmp_path, "par1.jsonl", base + ["--parallelism", "1"])
    _, p2 = run_to_file(tmp_path, "par2.jsonl", base + ["--parallelism", "2"])
    assert p1.read_bytes() == p2.read_bytes()


def test_exit_invalid_configs(tmp_path, capsys):
    assert main(["verify-theorem11", "--d", "4", "--c", "2",
                 "--n-from", "5", "--n-to", "6"]) == EXIT_INVALID  # gcd(2,4) > 1
    assert main(["verify-theorem11", "--d", "4", "--c", "1",
                 "--n-from", "6", "--n-to", "5"]) == EXIT_INVALID  # empty range
    assert main(["verify-theorem11", "--d", "4", "--c", "1",
                 "--n-from", "5", "--n-to", "6", "--resume"]) == EXIT_INVALID  # no --out
    assert main(["discriminator", "--A", "1", "--B", "2", "--n", "3"]) == EXIT_INVALID
    assert main(["discriminator", "--A", "2", "--B", "2"]) == EXIT_INVALID  # no n given
    assert main(["conjecture", "--id", "1.3", "--n-from", "2", "--n-to", "3"]) == EXIT_INVALID
    assert main(["no-such-command"]) == EXIT_INVALID
    capsys.readouterr()


def test_exit_mismatch_on_violated_expectation(tmp_path, monkeypatch, capsys):
    # claim the d=5, c=-1 corollary threshold is lower than it really is; the
    # known failing record at n = 14 must then flip the exit status
    import quaddisc.campaigns as campaigns

    monkeypatch.setitem(campaigns.COROLLARY11_THRESHOLD, (5, -1), 14)
    rc = main(["corollary11", "--d", "5", "--r", "-1", "--n-from", "14", "--n-to", "15",
               "--out", str(tmp_path / "c.jsonl"), "--no-timing"])
    assert rc == EXIT_MISMATCH
    assert "unexpected=1" in capsys.readouterr().err


def test_exit_ceiling(tmp_path, capsys):
    rc = main(["conjecture", "--id", "1.1", "--d", "1", "--n-from", "60", "--n-to", "60",
               "--scan-ceiling", "100", "--out", str(tmp_path / "c.jsonl")])
    assert rc == EXIT_CEILING
    (rec,) = read_records(tmp_path / "c.jsonl")
    assert rec["error"] == "scan_ceiling"
    assert rec["id"] == "1.1" and rec["d"] == 1 and rec["n"] == 60  # identity survives
    assert "ceiling=1" in capsys.readouterr().err


def test_exit_io_failure(tmp_path, capsys):
    rc = main(["verify-theorem11", "--d", "4", "--c", "1", "--n-from", "6", "--n-to", "6",
               "--out", str(tmp_path / "missing" / "out.jsonl")])
    assert rc == EXIT_IO
    capsys.readouterr()


def test_below_threshold_records_are_informational(tmp_path, capsys):
    # n = threshold - 1 for the d=5, c=-1 corollary: outcome recorded, exit 0
    rc, path = run_to_file(tmp_path, "c.jsonl",
                           ["corollary11", "--d", "5", "--r", "-1",
                            "--n-from", "14", "--n-to", "15", "--no-timing"])
    assert rc == EXIT_OK
    recs = read_records(path)
    assert recs[0]["match"] is False and recs[1]["match"] is True
    assert "unexpected=0" in capsys.readouterr().err


def test_expected_match_windows():
    params = {"d": 4}
    assert expected_match("window-check", params, {"n": 79}) is True
    assert expected_match("window-check", params, {"n": 78}) is None
    assert expected_match("verify-theorem11", params, {"n": 8}) is None
    assert expected_match("verify-theorem11", params, {"n": 9}) is True
    assert expected_match("verify-remark11", params, {"n": 8}) is False
    c13 = {"id": "1.3", "form": "x^2+x+1", "variant": "squares"}
    assert expected_match("conjecture", c13, {"n": 4}) is False  # 7 = 2n-1 is a form prime
    assert expected_match("conjecture", c13, {"n": 3}) is True
    assert expected_match("conjecture", dict(c13, variant="choose2"), {"n": 4}) is True
    assert expected_match("conjecture", c13, {"n": 1}) is False


def test_cli_tables_output(capsys):
    assert main(["tables"]) == 0
    rows = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert len(rows) == 33
    assert rows[0]["d"] == 4 and rows[-1]["d"] == 36
    assert rows[27]["d"] == 31 and rows[27]["prediction_threshold"] == 24310


def test_cli_window_check_with_eps(tmp_path):
    rc, path = run_to_file(tmp_path, "w.jsonl",
                           ["window-check", "--d", "4", "--eps", "2/9",
                            "--n-from", "79", "--n-to", "80", "--no-timing"])
    assert rc == EXIT_OK
    recs = read_records(path)
    assert all(r["match"] for r in recs) and recs[0]["eps"] == "2/9"


def test_cli_discriminator_single_n(capsys):
    assert main(["discriminator", "--A", "32", "--B", "-8", "--n", "6", "--no-timing"]) == 0
    out = capsys.readouterr().out
    assert json.loads(out)["least_m"] == 17


def test_run_config_direct_stdout(capsys):
    rc = run(CampaignConfig("verify-remark12", {"sign": "minus"}, 5, 7, timing=False))
    assert rc == EXIT_OK
    recs = [parse_record(line) for line in capsys.readouterr().out.splitlines()]
    assert [r["n"] for r in recs] == [5, 6, 7] and all(r["match"] for r in recs)


def test_remark12_minus_n4_counterexample(capsys):
    # the one value in [3, 1000] where the stated rule fails: 8, 48, 120, 224
    # are pairwise distinct modulo 15, undercutting the first prime >= 15
    rc = run(CampaignConfig("verify-remark12", {"sign": "minus"}, 4, 4, timing=False))
    assert rc == EXIT_MISMATCH
    rec = parse_record(capsys.readouterr().out.splitlines()[0])
    assert rec["least_m"] == 15 and rec["predicted"] == 17 and rec["match"] is False
