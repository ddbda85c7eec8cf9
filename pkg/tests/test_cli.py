import csv
import io
import json
from pathlib import Path

import pytest

from nimgen import __version__
from nimgen.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def normalize_json(text):
    records = json.loads(text)
    for r in records:
        r["millis"] = 0
    return json.dumps(records, indent=2, sort_keys=True) + "\n"


def normalize_csv(text):
    lines = text.splitlines()
    cols = lines[0].split(",")
    mi = cols.index("millis")
    out = [lines[0]]
    for line in lines[1:]:
        parts = line.split(",")
        parts[mi] = "0"
        out.append(",".join(parts))
    return "\n".join(out) + "\n"


def test_solve_text(capsys):
    code, out, _ = run(capsys, "solve", "--game", "gen", "Dih(Z5)", "Z2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("Dih(Z5)  GEN  *3  order=10")
    assert lines[1].startswith("Z2  GEN  *2  order=2")


def test_solve_json_golden(capsys):
    code, out, _ = run(capsys, "solve", "--game", "gen", "Dih(Z5)",
                       "--format", "json")
    assert code == 0
    assert normalize_json(out) == (GOLDEN / "solve_dihz5.json").read_text()


def test_solve_csv_layout(capsys):
    code, out, _ = run(capsys, "solve", "Z4", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["spec", "order", "variant", "nim", "mode",
                       "intersections", "d(G)", "millis", "tool_version",
                       "note"]
    assert rows[1][:5] == ["Z4", "4", "GEN", "1", "brute"]
    assert rows[1][8] == __version__


def test_solve_dng(capsys):
    code, out, _ = run(capsys, "solve", "--game", "dng", "Dih(Z6)")
    assert code == 0
    assert "DNG  *0" in out


def test_solve_parse_error_exit_code(capsys):
    code, out, _ = run(capsys, "solve", "Zx")
    assert code == 2
    assert "ERROR" in out


def test_solve_error_keeps_other_records(capsys):
    code, out, _ = run(capsys, "solve", "Z4", "Zx", "--format", "json")
    assert code == 2
    records = json.loads(out)
    assert records[0]["nim"] == 1
    assert "error" in records[1]


def test_solve_structure_rejects_dng(capsys):
    code, out, _ = run(capsys, "solve", "--game", "dng", "--mode", "structure",
                       "Z4")
    assert code == 2
    assert "achievement" in out


def test_solve_determinism(capsys):
    a = run(capsys, "solve", "Dih(Z4)", "Z6", "--format", "json")
    b = run(capsys, "solve", "Dih(Z4)", "Z6", "--format", "json")
    assert normalize_json(a[1]) == normalize_json(b[1])


def test_table_golden(capsys):
    code, out, _ = run(capsys, "table", "Dih(Zn)", "--n", "2..12",
                       "--game", "gen")
    assert code == 0
    assert normalize_csv(out) == (GOLDEN / "table_dih_2_12.csv").read_text()


def test_table_nim_column_pattern(capsys):
    code, out, _ = run(capsys, "table", "Dih(Zn)", "--n", "2..12")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))[1:]
    assert [int(r[3]) for r in rows] == [1, 3, 0, 3, 1, 3, 0, 3, 1, 3, 0]


def test_table_brute_mode(capsys):
    code, out, _ = run(capsys, "table", "Zn", "--n", "2..8", "--mode", "brute")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))[1:]
    assert len(rows) == 7
    assert all(r[3] != "" and r[7] == "" for r in rows)


def test_table_empty_range(capsys):
    code, out, _ = run(capsys, "table", "Dih(Zn)", "--n", "5..4")
    assert code == 0
    assert out == "spec,order,variant,nim,mode,d(G),millis,note\n"


def test_table_requires_placeholder(capsys):
    code, _, err = run(capsys, "table", "Dih(Z4)", "--n", "2..4")
    assert code == 2
    assert "Zn" in err


def test_table_bad_range(capsys):
    code, _, err = run(capsys, "table", "Dih(Zn)", "--n", "two..4")
    assert code == 2
    assert "range" in err


def test_table_capacity_note(capsys):
    code, out, _ = run(capsys, "table", "Dih(Zn)", "--n", "2..3",
                       "--order-cap", "5")
    assert code == 2
    rows = list(csv.reader(io.StringIO(out)))[1:]
    assert rows[0][3] == "1"        # Dih(Z2) fits under the cap
    assert rows[1][3] == ""         # Dih(Z3) does not
    assert rows[1][7] != ""


def test_diagram_full_golden(capsys):
    code, out, _ = run(capsys, "diagram", "Dih(Z4)")
    assert code == 0
    assert out == (GOLDEN / "diagram_dihz4.dot").read_text()


def test_diagram_simplified_golden(capsys):
    code, out, _ = run(capsys, "diagram", "Dih(Z4)", "--simplified")
    assert code == 0
    assert out == (GOLDEN / "diagram_dihz4_simplified.dot").read_text()


def test_diagram_two_node(capsys):
    code, out, _ = run(capsys, "diagram", "Z7")
    assert code == 0
    assert out.count("label=") == 2


def test_diagram_json(capsys):
    code, out, _ = run(capsys, "diagram", "Dih(Z4)", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["vertices"]) == 5
    code, out, _ = run(capsys, "diagram", "Dih(Z4)", "--format", "json",
                       "--simplified")
    payload = json.loads(out)
    assert len(payload["vertices"]) == 3


def test_diagram_rejects_dng(capsys):
    code, _, err = run(capsys, "diagram", "--game", "dng", "Dih(Z4)")
    assert code == 2
    assert "achievement" in err


def test_diagram_bad_spec(capsys):
    code, _, err = run(capsys, "diagram", "Zx")
    assert code == 2
    assert "error" in err


def test_verify_explicit_specs(capsys):
    code, out, _ = run(capsys, "verify", "Z5", "Z4", "--game", "dng")
    assert code == 0
    assert "2 ok, 0 failed, 0 skipped" in out


def test_verify_out_of_scope(capsys):
    code, out, _ = run(capsys, "verify", "Z1")
    assert code == 2
    assert "skip" in out


def test_verify_rejects_specs_plus_suite(capsys):
    code, _, err = run(capsys, "verify", "Z5", "--suite", "dng")
    assert code == 2
    assert "not both" in err


def test_verify_dng_suite_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "dng", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["exitCode"] == 0
    assert len(payload["records"]) == 6
    assert all(r["agree"] for r in payload["records"])


def test_verify_capacity_exit(capsys):
    code, out, _ = run(capsys, "verify", "Z5xZ5", "--order-cap", "10")
    assert code == 2
    assert "skip" in out


def test_cache_round_trip(tmp_path, capsys):
    cache = tmp_path / "cache.json"
    first = run(capsys, "solve", "Dih(Z5)", "--cache", str(cache),
                "--format", "json")
    assert cache.exists()
    second = run(capsys, "solve", "Dih(Z5)", "--cache", str(cache),
                 "--format", "json")
    fresh = run(capsys, "solve", "Dih(Z5)", "--format", "json")
    a, b, c = (json.loads(r[1])[0] for r in (first, second, fresh))
    for key in ("nim", "order", "intersections", "d_g", "mode"):
        assert a[key] == b[key] == c[key]
    stored = json.loads(cache.read_text())
    assert f"Dih(Z5)|GEN|{__version__}" in stored


def test_cache_hits_across_spellings(tmp_path, capsys):
    cache = tmp_path / "cache.json"
    run(capsys, "solve", "Z9xZ3", "--cache", str(cache))
    stored = json.loads(cache.read_text())
    assert list(stored) == [f"Z3xZ9|GEN|{__version__}"]
    # canonically equal spelling reuses the entry rather than adding one
    run(capsys, "solve", "Z3xZ9", "--cache", str(cache))
    stored = json.loads(cache.read_text())
    assert list(stored) == [f"Z3xZ9|GEN|{__version__}"]


def test_cache_env_overrides_flag(tmp_path, capsys, monkeypatch):
    env_cache = tmp_path / "env.json"
    flag_cache = tmp_path / "flag.json"
    monkeypatch.setenv("NIMGEN_CACHE", str(env_cache))
    code, _, _ = run(capsys, "solve", "Z4", "--cache", str(flag_cache))
    assert code == 0
    assert env_cache.exists()
    assert not flag_cache.exists()


def test_cache_corrupt_file_is_ignored(tmp_path, capsys):
    cache = tmp_path / "cache.json"
    cache.write_text("not json", encoding="utf-8")
    code, out, _ = run(capsys, "solve", "Z4", "--cache", str(cache))
    assert code == 0
    assert "*1" in out
    assert json.loads(cache.read_text())


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out
