# tests/test_cli.py
import json

import pytest

from core.config import Config
from msym import main

EXAMPLE_N3 = "x1(1)*x1(2)*x2(3) + x1(1)*x2(2)*x1(3) + x2(1)*x1(2)*x1(3)"
EXAMPLE_REWRITE = "e[2;y1]*e[1;y2] - e[1;y1]*e[1;y1*y2] + e[1;y1^2*y2]"


@pytest.fixture
def run(tmp_path, isolated_tables, capsys, quiet):
    """run("expand", "--m", "2", ...) -> (exit code, stdout, stderr), cache trong tmp_path."""
    def invoke(*argv):
        code = main([*argv, "--cache-dir", str(tmp_path)])
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return invoke


def test_expand_example(run):
    code, out, _ = run("expand", "--m", "2", "--n", "3", "E{y1:2, y2:1}")
    assert code == 0
    assert out.strip() == EXAMPLE_N3


def test_expand_degenerate_cases(run):
    assert run("expand", "--m", "1", "--n", "2", "E{y1:3}")[1].strip() == "0"
    assert run("expand", "--m", "1", "--n", "1", "E{}")[1].strip() == "1"


def test_expand_twelve_terms_at_four_slots(run):
    code, out, _ = run("expand", "--m", "2", "--n", "4", "E{y1:2, y2:1}")
    assert code == 0
    assert len(out.strip().split(" + ")) == 12


def test_rewrite_with_check(run):
    code, out, _ = run("rewrite", "--m", "2", "E{y1:2, y2:1}", "--check-n", "3")
    assert code == 0
    assert out.splitlines() == [EXAMPLE_REWRITE, "check n=3: pass"]


def test_rewrite_power_uses_plethysm(run):
    assert run("rewrite", "--m", "1", "E{y1^2:1}")[1].strip() == "e[1;y1]^2 - 2*e[2;y1]"


def test_rational_rewrite(run):
    code, out, _ = run("rewrite", "--m", "1", "E{y1:2}", "--q", "--check-n", "2")
    assert code == 0
    assert out.splitlines() == ["(1/2)*e1[y1]^2 - (1/2)*e1[y1^2]", "check n=2: pass"]


def test_rational_rewrite_rejects_integers(run):
    code, out, err = run("rewrite", "--m", "1", "E{y1:2}", "--q", "--coeff", "z")
    assert code == 1
    assert out == ""
    assert err.startswith("error:")
    assert "requires rational coefficients" in err


def test_errors_follow_progress_messages(run, monkeypatch):
    monkeypatch.setattr(Config, "VERBOSE", True)
    code, _, err = run("rewrite", "--m", "1", "E{y1:2}", "--q", "--coeff", "z")
    assert code == 1
    assert err.splitlines()[-1] == "error: requires rational coefficients"
    assert err.startswith("[Cache]")


def test_plethysm_and_truncation(run):
    assert run("plethysm", "--h", "2", "--k", "2")[1].strip() == "e2^2 - 2*e1*e3 + 2*e4"
    assert run("plethysm", "--h", "2", "--k", "2", "--n", "3")[1].strip() == "e2^2 - 2*e1*e3"
    assert run("plethysm", "--h", "1", "--k", "2")[1].strip() == "e1^2 - 2*e2"


def test_plethysm_warm_start_reads_cache(run, isolated_tables, tmp_path, monkeypatch):
    monkeypatch.setattr(Config, "VERBOSE", True)
    code, cold, _ = run("plethysm", "--h", "2", "--k", "3")
    assert code == 0
    assert (tmp_path / "msym-cache.txt").exists()

    isolated_tables()
    code, warm, err = run("plethysm", "--h", "2", "--k", "3")
    assert code == 0
    assert warm == cold
    assert "Cache hit: P_{2,3}" in err


def test_mul_example_projected(run):
    code, out, _ = run("mul", "--m", "3", "--n", "2", "E{y1:1, y2:1}", "E{y3:2}")
    assert code == 0
    assert out.strip() == "E{y1*y3:1, y2*y3:1}"


def test_eval_back_to_orbit_basis(run):
    code, out, _ = run("eval", "--m", "2", "--n", "3", EXAMPLE_REWRITE, "--basis")
    assert code == 0
    assert out.strip() == "E{y1:2, y2:1}"
    assert run("eval", "--m", "2", "--n", "3", EXAMPLE_REWRITE)[1].strip() == EXAMPLE_N3


def test_json_output_is_canonical(run):
    code, out, _ = run("expand", "--m", "2", "--n", "3", "E{y1:2, y2:1}", "--json")
    assert code == 0
    record = json.loads(out)
    assert record["kind"] == "poly"
    assert record["text"] == EXAMPLE_N3
    assert all(t["coefficient"] == "1" for t in record["terms"])
    assert json.dumps(record, indent=2, ensure_ascii=False) + "\n" == out


def test_verify_small_basis_suite(run):
    code, out, _ = run("verify", "basis", "--n", "2", "--m", "1", "--maxdeg", "3")
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("PASS basis n=2 m=1") for line in lines[:-1])
    assert lines[-1].startswith("SUMMARY basis coeff=z:")
    assert lines[-1].endswith("0 fail, 0 skip")


def test_verify_json_ends_with_summary(run):
    code, out, _ = run("verify", "rewrite", "--n", "2", "--m", "2", "--maxdeg", "2", "--json")
    assert code == 0
    records = json.loads(out)
    assert records[-1]["kind"] == "summary"
    assert records[-1]["fail"] == "0"
    assert all(r["kind"] == "certificate" for r in records[:-1])


def test_parse_error_exit_code(run):
    code, out, err = run("expand", "--m", "2", "--n", "3", "E{y1:}")
    assert code == 1
    assert out == ""
    assert err.startswith("error:")
    assert "at position" in err


def test_missing_n_is_reported(run):
    code, _, err = run("expand", "--m", "1", "E{y1:1}")
    assert code == 1
    assert "requires --n" in err


def test_unknown_flag_exits_with_usage_code(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["expand", "--bogus", "--cache-dir", str(tmp_path)])
    assert exc.value.code == 1
    assert "error:" in capsys.readouterr().err


def test_verify_help_states_budget_is_checked_after_each_case(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--help"])
    assert exc.value.code == 0
    text = " ".join(capsys.readouterr().out.split())
    assert "Chỉ được kiểm tra sau khi trường hợp chạy xong" in text
    assert "không bị ngắt" in text
