"""Command-line interface: parsing, exit codes, and artifact output."""

import os

import pytest

from bikakeya.cli import main, parse_config_file
from bikakeya.experiments import REGISTRY, read_csv


def test_list_exits_zero(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    for name in REGISTRY:
        assert name in out


def test_describe_known(capsys):
    assert main(["describe", "subordination"]) == 0
    out = capsys.readouterr().out
    assert "subordination" in out
    assert "defaults" in out


def test_describe_unknown_exits_two(capsys):
    assert main(["describe", "nosuch"]) == 2


def test_run_unknown_name_exits_two(capsys):
    assert main(["run", "nosuch"]) == 2


def test_run_unknown_key_exits_two(capsys):
    assert main(["run", "subordination", "--set", "bogus=1"]) == 2


def test_bad_set_syntax_exits_two(capsys):
    assert main(["run", "subordination", "--set", "novalue"]) == 2


def test_config_file_parsing(tmp_path):
    p = tmp_path / "conf.txt"
    p.write_text("# comment\n a = 1 \nb= two # trailing\n\nc == x\n")
    conf = parse_config_file(str(p))
    assert conf == {"a": "1", "b": "two", "c": "= x"}


def test_config_file_errors(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("just words\n")
    with pytest.raises(ValueError, match="bad.txt:1"):
        parse_config_file(str(p))
    p.write_text("= value\n")
    with pytest.raises(ValueError, match="empty key"):
        parse_config_file(str(p))


def test_missing_config_file_exits_two(capsys, tmp_path):
    assert main(["run", "subordination",
                 "--config", str(tmp_path / "nope.txt")]) == 2


def test_run_subordination_writes_artifacts(tmp_path, capsys):
    out = tmp_path / "art"
    assert main(["run", "subordination", "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "PASS: subordination" in stdout
    csv_path = out / "subordination.csv"
    assert csv_path.is_file()
    header, rows = read_csv(str(csv_path))
    assert len(header) > 0 and len(rows) > 0


def test_run_kappa_writes_plot(tmp_path, capsys):
    out = tmp_path / "art"
    assert main(["run", "kappa", "--out", str(out)]) == 0
    assert (out / "kappa.csv").is_file()
    svg = out / "kappa.svg"
    assert svg.is_file()
    assert b"<svg" in svg.read_bytes()


def test_run_is_deterministic(tmp_path, capsys):
    a = tmp_path / "a"
    b = tmp_path / "b"
    assert main(["run", "kappa", "--out", str(a)]) == 0
    assert main(["run", "kappa", "--out", str(b)]) == 0
    with open(a / "kappa.csv", "rb") as fa, open(b / "kappa.csv", "rb") as fb:
        assert fa.read() == fb.read()


def test_set_override_applies(tmp_path, capsys):
    assert main(["run", "kappa", "--set", "domain=ngon:k=8,r=1"]) == 0
    out = capsys.readouterr().out
    assert "PASS: kappa" in out


def test_config_file_overrides(tmp_path, capsys):
    conf = tmp_path / "c.txt"
    conf.write_text("domain = disc:r=2\n")
    assert main(["run", "kappa", "--config", str(conf)]) == 0


def test_threads_validation(capsys):
    assert main(["run", "subordination", "--threads", "0"]) == 2
    assert main(["run", "subordination", "--threads", "1"]) == 0
