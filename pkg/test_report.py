"""Tests for the report formatter and progress display"""

import io
import json

import pytest
from rich.console import Console

from conftest import load
from src.abelian import h1
from src.config import RunConfig
from src.enumeration import ball_stats, build_ball
from src.obstruction import circle_obstruction
from src.orderability import test_left_orderability as run_search
from src.report_generator import ProgressDisplay, ReportFormatter, ball_frame, save_growth_plot
from src.rewriting import knuth_bendix

FAST = RunConfig(radii=(3,), timeout=60)


def _formatter():
    buffer = io.StringIO()
    return ReportFormatter(Console(file=buffer, width=120)), buffer


def test_report_formatter_json():
    formatter, _ = _formatter()
    payload = {"file": "weeks.grp", "h1": {"torsion": [5, 5]}}
    assert json.loads(formatter.to_json(payload)) == payload


def test_print_verdict(z3):
    formatter, buffer = _formatter()
    formatter.print_verdict(run_search(z3, FAST), "z_mod3", "z_mod3.cert.json")
    text = buffer.getvalue()
    assert "NOT_LEFT_ORDERABLE" in text
    assert "z_mod3.cert.json" in text


def test_printed_verdict_matches_json_token(z3):
    for group in (z3, load("z")):
        formatter, buffer = _formatter()
        verdict = run_search(group, FAST)
        formatter.print_verdict(verdict, "group")
        assert verdict.to_dict()["verdict"].upper() in buffer.getvalue()


def test_print_homology_and_system(z3, z3_system):
    formatter, buffer = _formatter()
    formatter.print_homology(h1(z3), "z_mod3")
    formatter.print_system(z3_system, "z_mod3", show_rules=4)
    text = buffer.getvalue()
    assert "Z/3" in text
    assert "confluent" in text


def test_save_report_formats(tmp_path, z3):
    formatter, buffer = _formatter()
    report = circle_obstruction(z3, FAST)
    json_path = tmp_path / "report.json"
    formatter.save_report(report, str(json_path), "json")
    assert json.loads(json_path.read_text())["conclusion"]["kind"] == "inconclusive"

    md_path = tmp_path / "report.md"
    formatter.save_report(report, str(md_path), "markdown", "z_mod3")
    text = md_path.read_text()
    assert "**H1:** Z/3" in text
    assert "| 3 | yes | 0 |" in text
    assert "Report saved to:" in buffer.getvalue()

    with pytest.raises(ValueError):
        formatter.save_report(report, str(tmp_path / "report.pdf"), "pdf")
    with pytest.raises(ValueError):
        formatter.save_report({"rows": []}, str(tmp_path / "rows.md"), "md")


def test_print_batch():
    formatter, buffer = _formatter()
    formatter.print_batch([
        {"name": "weeks", "h1": "Z/5 + Z/5", "ord": "N", "verdict": "not_left_orderable",
         "radius": 5, "seconds": 1.5, "certificate": "weeks.cert.json", "error": ""},
        {"name": "broken", "h1": "", "ord": "", "verdict": "", "radius": None,
         "seconds": 0.0, "certificate": "", "error": "parse_error: line 1, column 9: duplicate generator"},
    ], "census")
    text = buffer.getvalue()
    assert "weeks" in text and "broken" in text


def test_ball_frame_and_plot(tmp_path, free2):
    stats = ball_stats(build_ball(knuth_bendix(free2), 3))
    frame = ball_frame(stats)
    assert list(frame["size"]) == [1, 5, 17, 53]
    target = tmp_path / "growth.png"
    save_growth_plot(stats, str(target), "F2")
    assert target.read_bytes()[:4] == b"\x89PNG"


def test_progress_display_quiet_mode():
    buffer = io.StringIO()
    progress = ProgressDisplay(Console(file=buffer), quiet=True)
    with progress.spinner("working"):
        pass
    progress.print_success("done")
    progress.print_warning("careful")
    assert buffer.getvalue() == ""
    progress.print_error("broken")
    assert "broken" in buffer.getvalue()
