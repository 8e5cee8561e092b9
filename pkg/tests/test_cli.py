from __future__ import annotations

import json

import pytest

from sikku.cli import main
from sikku.enumeration import Kolam
from sikku.fileio import dumps_kolam, loads_kolam
from sikku.template import build


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_output_format(capsys):
    code, out, _ = run(capsys, "count", "--template", "1r", "-k", "5", "-l", "5", "--group", "4mmd")
    assert code == 0
    assert out.strip() == "E_s=6 count=64"


def test_count_no_kolam_exit_code(capsys):
    code, out, _ = run(capsys, "count", "--template", "1r", "-k", "2", "-l", "3", "--group", "md")
    assert code == 1
    assert "no kolam" in out


def test_usage_error_exit_code_2():
    with pytest.raises(SystemExit) as err:
        main(["count", "--template", "1r", "-k", "5"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["count", "--template", "1r", "-k", "5", "-l", "5", "--group", "9mm"])
    assert err.value.code == 2


def test_invalid_size_is_an_error(capsys):
    code, _, err = run(capsys, "count", "--template", "1r", "-k", "0", "-l", "2", "--group", "1")
    assert code == 2
    assert "error" in err


def test_table_shape(capsys):
    code, out, _ = run(capsys, "table", "--max", "3")
    assert code == 0
    lines = [ln for ln in out.splitlines() if "x" in ln and not ln.startswith(("1R", "2R", "  k"))]
    assert len(lines) == 10  # five sizes per variant up to 3
    assert any(ln.split()[0] == "3x3" for ln in lines)


def test_enumerate_jsonl(capsys):
    code, out, _ = run(
        capsys, "enumerate", "--template", "1r", "-k", "2", "-l", "2",
        "--group", "4mmd", "--format", "jsonl",
    )
    assert code == 0
    records = [json.loads(line) for line in out.strip().splitlines()]
    assert [r["crossings"] for r in records] == ["0000", "1111"]
    assert all(r["stabilizer"] == "4mmd" for r in records)


def test_enumerate_svg_dir(capsys, tmp_path):
    out_dir = tmp_path / "sheets"
    code, out, _ = run(
        capsys, "enumerate", "--template", "1r", "-k", "2", "-l", "2",
        "--group", "4mmd", "--format", "svg-dir", "--out", str(out_dir),
    )
    assert code == 0
    files = sorted(p.name for p in out_dir.iterdir())
    assert files == ["kolam-000000.svg", "kolam-000001.svg"]


def test_enumerate_cap_exit_3(capsys):
    code, _, err = run(
        capsys, "enumerate", "--template", "1r", "-k", "6", "-l", "6", "--group", "1",
    )
    assert code == 3
    assert "cap" in err


def test_classify_trace_render_round_trip(capsys, tmp_path):
    kolam = Kolam(build("1r", 2, 2), (True,) * 4)
    src = tmp_path / "kolam.json"
    src.write_text(dumps_kolam(kolam))

    code, out, _ = run(capsys, "classify", "-i", str(src))
    assert code == 0 and out.strip() == "4mmd"

    code, out, _ = run(capsys, "trace", "-i", str(src))
    assert code == 0
    payload = json.loads(out)
    assert payload["loop_count"] == 2
    assert payload["multiset"]["door"] == 4

    dst = tmp_path / "kolam.svg"
    code, _, _ = run(capsys, "render", "-i", str(src), "-o", str(dst))
    assert code == 0
    svg = dst.read_text()
    assert svg.count("<path") == 2


def test_check_exit_codes(capsys):
    code, out, _ = run(
        capsys, "check", "--circle", "1", "--drop", "3", "--eye", "2",
        "--door", "4", "--fan", "2", "--diamond", "1",
    )
    assert code == 1
    assert json.loads(out)["failures"][0]["id"] == "eq2-parity"

    code, out, _ = run(capsys, "check", "--door", "4", "--template", "1r", "-k", "2", "-l", "2")
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"

    code, out, _ = run(capsys, "check", "--diamond", "4", "--template", "1r", "-k", "2", "-l", "2")
    assert code == 1
    assert json.loads(out)["failures"][0]["id"] == "eq4-budget"


def test_compose_round_trip(capsys):
    code, out, _ = run(
        capsys, "compose", "--template", "1r", "-k", "2", "-l", "2",
        "--multiset", '{"door": 4}',
    )
    assert code == 0
    kolam = loads_kolam(out)
    assert kolam.bitstring == "1111"

    code, out, _ = run(
        capsys, "compose", "--template", "1r", "-k", "1", "-l", "2",
        "--multiset", '{"eye": 1, "circle": 1}',
    )
    assert code == 1
    assert json.loads(out)["infeasible"]["reason"] == "search-exhausted"


def test_compose_bad_json_is_usage_error(capsys):
    code, _, err = run(
        capsys, "compose", "--template", "1r", "-k", "1", "-l", "1", "--multiset", "{nope",
    )
    assert code == 2
    assert "JSON" in err or "error" in err


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--max-edges", "8")
    assert code == 0
    assert "checks passed" in out
    assert "FAIL" not in out


def test_missing_file_is_error(capsys, tmp_path):
    code, _, err = run(capsys, "classify", "-i", str(tmp_path / "nope.json"))
    assert code == 2
    assert "error" in err
