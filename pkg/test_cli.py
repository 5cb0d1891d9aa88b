"""End-to-end tests for the command-line interface"""

import json
import shutil

import pandas as pd
import pytest

from src import cli
from src.errors import EXIT_INVALID_CERTIFICATE, EXIT_NON_CONFLUENT, EXIT_OK, EXIT_PARSE_ERROR
from src.orderability import CertificateCheck

FAST = ["--radius", "3", "--timeout", "60"]


def _run_json(capsys, *argv):
    code = cli.main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture
def workdir(tmp_path, presentations_dir):
    for name in ("z_mod3", "z_mod2", "z", "weeks"):
        shutil.copy(presentations_dir / f"{name}.grp", tmp_path / f"{name}.grp")
    return tmp_path


def test_homology_json(capsys, workdir):
    code, data = _run_json(capsys, "homology", str(workdir / "weeks.grp"))
    assert code == EXIT_OK
    assert data["rendered"] == "Z/5 + Z/5"
    assert data["h1"]["torsion"] == [5, 5]


def test_homology_rich_output(capsys, workdir):
    assert cli.main(["homology", str(workdir / "z.grp")]) == EXIT_OK
    assert "FIRST HOMOLOGY" in capsys.readouterr().out


def test_check_writes_a_certificate_that_verifies(capsys, workdir):
    group = str(workdir / "z_mod3.grp")
    code, data = _run_json(capsys, "check", group, *FAST)
    assert code == EXIT_OK
    assert data["verdict"] == "not_left_orderable"
    assert data["certificate_valid"] is True
    cert_path = workdir / "z_mod3.cert.json"
    assert data["certificate_path"] == str(cert_path)
    assert cert_path.exists()

    code, data = _run_json(capsys, "verify-cert", group, str(cert_path))
    assert code == EXIT_OK
    assert data["valid"] is True


def test_check_refuses_a_certificate_that_fails_its_own_recheck(capsys, workdir, monkeypatch):
    monkeypatch.setattr(cli, "check_certificate",
                        lambda *args, **kwargs: CertificateCheck(valid=False, failure="root, step 1: broken"))
    code, data = _run_json(capsys, "check", str(workdir / "z_mod3.grp"), *FAST)
    assert code == EXIT_INVALID_CERTIFICATE
    assert data["certificate_valid"] is False


def test_tampered_certificate_exits_five(capsys, workdir):
    group = str(workdir / "z_mod3.grp")
    cert_path = workdir / "custom.json"
    assert cli.main(["check", group, "--cert-out", str(cert_path), *FAST, "--json"]) == EXIT_OK
    capsys.readouterr()
    data = json.loads(cert_path.read_text())
    step = data["tree"]["contradiction"][0]
    step[2] = "a" if step[2] != "a" else "A"
    cert_path.write_text(json.dumps(data))

    code, result = _run_json(capsys, "verify-cert", group, str(cert_path))
    assert code == EXIT_INVALID_CERTIFICATE
    assert result["valid"] is False and result["failure"]


def test_consistent_group_writes_no_certificate(capsys, workdir):
    code, data = _run_json(capsys, "check", str(workdir / "z.grp"), *FAST)
    assert code == EXIT_OK
    assert data["verdict"] == "consistent_at_radius"
    assert data["certificate_path"] is None
    assert not (workdir / "z.cert.json").exists()


def test_parse_error_exits_two(capsys, tmp_path):
    bad = tmp_path / "bad.grp"
    bad.write_text("gens: a\nrel: ab\n")
    code, data = _run_json(capsys, "homology", str(bad))
    assert code == EXIT_PARSE_ERROR
    assert data["error"] == "parse_error"
    assert data["message"].startswith("line 2, column 7:")


def test_missing_file_exits_one(capsys, tmp_path):
    assert cli.main(["homology", str(tmp_path / "missing.grp")]) == 1


def test_bad_arguments_exit_two(capsys):
    assert cli.main(["ball"]) == 2
    assert cli.main(["check", "x.grp", "--radius", "4,3"]) != EXIT_OK


def test_kb_json_and_save(capsys, workdir):
    saved = workdir / "z3.rws"
    code, data = _run_json(capsys, "kb", str(workdir / "z_mod3.grp"), "--save", str(saved), "--rules", "10")
    assert code == EXIT_OK
    assert data["status"] == "confluent"
    assert sorted(lhs for lhs, _ in data["rules"]) == ["AA", "Aa", "aA", "aa"]
    assert saved.read_text().startswith("# rewriting system")


def test_kb_budget_exits_three(capsys, workdir):
    code, data = _run_json(capsys, "kb", str(workdir / "weeks.grp"), "--max-rules", "5")
    assert code == EXIT_NON_CONFLUENT
    assert data["status"] == "budget_exceeded"


def test_ball_csv_and_plot(capsys, workdir):
    csv, plot = workdir / "growth.csv", workdir / "growth.png"
    code = cli.main(["ball", str(workdir / "weeks.grp"), "3", "--table", "--csv", str(csv), "--plot", str(plot)])
    assert code == EXIT_OK
    frame = pd.read_csv(csv)
    assert list(frame.columns) == ["radius", "size"]
    assert frame["size"].iloc[0] == 1
    assert list(frame["radius"]) == [0, 1, 2, 3]
    assert plot.stat().st_size > 0


def test_low_index_json(capsys, workdir):
    code, data = _run_json(capsys, "low-index", str(workdir / "z.grp"), "--n", "3")
    assert code == EXIT_OK
    assert [s["index"] for s in data["subgroups"]] == [1, 2, 3]


def test_kernels_out_dir_and_orbits(capsys, workdir):
    out = workdir / "kernels"
    code, data = _run_json(capsys, "kernels", str(workdir / "weeks.grp"), "--n", "5", "--out-dir", str(out),
                           "--map", "a=b,b=a", "--map", "a=aB,b=a")
    assert code == EXIT_OK
    assert len(data["kernels"]) == 6
    assert sorted(len(o) for o in data["orbits"]) == [3, 3]
    assert len(data["written"]) == 6
    assert (out / "weeks_n5_k1.grp").exists()


def test_kernels_need_a_modulus(capsys, workdir):
    code, data = _run_json(capsys, "kernels", str(workdir / "weeks.grp"))
    assert code != EXIT_OK
    assert data["error"] == "config_error"


def test_circle_obstruction_not_applicable(capsys, workdir):
    code, data = _run_json(capsys, "circle-obstruction", str(workdir / "z_mod2.grp"), *FAST)
    assert code == EXIT_OK
    assert data["conclusion"]["kind"] == "not_applicable"


def test_circle_obstruction_markdown(capsys, workdir):
    target = workdir / "report.md"
    code = cli.main(["circle-obstruction", str(workdir / "z_mod3.grp"), *FAST, "--save", str(target)])
    assert code == EXIT_OK
    text = target.read_text()
    assert text.startswith("# Circle-Action Obstruction Report")
    assert "inconclusive" in text


def test_identities_json(capsys):
    code, data = _run_json(capsys, "identities")
    assert code == EXIT_OK
    assert data["all_hold"] is True
    assert set(data["case_analyses"]) == {"weeks", "n1", "n2"}


def test_identities_refuse_other_groups(capsys, workdir):
    code, data = _run_json(capsys, "identities", str(workdir / "z.grp"))
    assert data["error"] == "config_error"


def test_quotients_with_explicit_words(capsys):
    code, data = _run_json(capsys, "quotients", "--words", "a", "aB")
    assert code == EXIT_OK
    assert data["all_cyclic"] is True
    assert [q["order"] for q in data["quotients"]] == [5, 5]


def test_batch_on_an_empty_directory(capsys, tmp_path):
    code, data = _run_json(capsys, "batch", str(tmp_path))
    assert code == EXIT_OK
    assert data == []


def test_batch_records_errors_and_caches(capsys, tmp_path, presentations_dir):
    shutil.copy(presentations_dir / "z_mod2.grp", tmp_path / "z_mod2.grp")
    (tmp_path / "broken.grp").write_text("gens: a a\n")
    csv = tmp_path / "census.csv"
    code, rows = _run_json(capsys, "batch", str(tmp_path), *FAST, "--csv", str(csv))
    assert code == EXIT_OK
    by_name = {row["name"]: row for row in rows}
    assert by_name["broken"]["error"].startswith("parse_error")
    assert by_name["z_mod2"]["ord"] == "N"
    assert by_name["z_mod2"]["h1"] == "Z/2"
    assert (tmp_path / "z_mod2.cert.json").exists()

    cache = json.loads((tmp_path / ".orderability_cache.json").read_text())
    assert len(cache) == 1
    assert len(pd.read_csv(csv)) == 2

    code, again = _run_json(capsys, "batch", str(tmp_path), *FAST)
    assert {row["name"]: row["ord"] for row in again} == {"broken": "", "z_mod2": "N"}


def test_check_at_a_degenerate_radius(capsys, workdir):
    code, data = _run_json(capsys, "check", str(workdir / "weeks.grp"), "--radius", "1", "--timeout", "60")
    assert code == EXIT_OK
    assert data["verdict"] in ("inconclusive", "consistent_at_radius")


@pytest.mark.slow
def test_batch_on_the_fixture_corpus(capsys, tmp_path, presentations_dir):
    for source in presentations_dir.glob("*.grp"):
        shutil.copy(source, tmp_path / source.name)
    assert cli.main(["kernels", str(tmp_path / "weeks.grp"), "--n", "5", "--out-dir", str(tmp_path)]) == EXIT_OK
    (tmp_path / "weeks_n5_k1.grp").rename(tmp_path / "n1.grp")
    (tmp_path / "weeks_n5_k6.grp").rename(tmp_path / "n2.grp")
    for extra in tmp_path.glob("weeks_n5_k*.grp"):
        extra.unlink()
    capsys.readouterr()

    code, rows = _run_json(capsys, "batch", str(tmp_path), "--no-cache")
    assert code == EXIT_OK
    ord_column = {row["name"]: row["ord"] for row in rows}
    assert len(rows) == 10
    for name in ("weeks", "n1", "n2", "z_mod2", "z_mod3"):
        assert ord_column[name] == "N", name
    errors = {row["name"]: row["error"] for row in rows}
    for name in ("z", "z2", "f2", "klein"):
        assert errors[name] == "", name
        assert ord_column[name] != "N", name
    assert errors["trefoil"].startswith("non_confluent")
    assert ord_column["trefoil"] == ""
