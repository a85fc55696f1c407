import io
import json
import subprocess
import sys

import pytest

from cosys import catalog, matroid
from cosys.cli import dumps_report, loads_report, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_catalog_list():
    code, text = run("catalog", "list")
    assert code == 0
    names = [line.split()[0] for line in text.splitlines()]
    assert len(names) >= 18 and "M_K7" in names and "R16" in names


def test_catalog_export(tmp_path):
    code, text = run("catalog", "export", "R10")
    assert code == 0
    m = matroid.loads(text)
    assert (m.rank, m.size) == (5, 10)
    assert sum(line.startswith("row ") for line in text.splitlines()) == 5
    target = tmp_path / "r10.txt"
    assert run("catalog", "export", "R10", "-o", str(target))[0] == 0
    assert target.read_text() == text


def test_catalog_export_unknown():
    assert run("catalog", "export", "bogus")[0] == 2


@pytest.mark.parametrize("name,value", [("M_K7", "6/7"), ("Mstar_G53", "12/11"), ("R10", "6/5")])
def test_invariant_sys3(name, value):
    code, text = run("invariant", "sys3", "--name", name)
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == f"value {value}" and "weights" in lines and "dual" in lines
    assert any(line.strip().startswith("triple {") for line in lines)


def test_invariant_sys():
    code, text = run("invariant", "sys", "--name", "Mstar_G1")
    assert code == 0 and text.startswith("value 1/3\n")


def test_invariant_undefined():
    assert run("invariant", "sys3", "--name", "Mstar_K3")[0] == 3


def test_invariant_with_weights(tmp_path):
    w = tmp_path / "w.txt"
    w.write_text("".join(f"{lab} 1\n" for lab in catalog.get("M_K7").matroid.labels))
    code, text = run("invariant", "sys3", "--name", "M_K7", "--weights", str(w))
    assert code == 0 and text == "value 6/7\n"
    w.write_text("0-1 0\n")
    assert run("invariant", "sys3", "--name", "M_K7", "--weights", str(w))[0] == 4
    w.write_text("0-1 -1\n")
    assert run("invariant", "sys3", "--name", "M_K7", "--weights", str(w))[0] == 4
    w.write_text("nope 1\n")
    assert run("invariant", "sys3", "--name", "M_K7", "--weights", str(w))[0] == 4
    w.write_text("0-1 one\n")
    assert run("invariant", "sys3", "--name", "M_K7", "--weights", str(w))[0] == 2


def test_invariant_from_file(tmp_path):
    f = tmp_path / "m.txt"
    f.write_text(matroid.dumps(catalog.get("Mstar_K33").matroid))
    code, text = run("invariant", "sys3", "--file", str(f))
    assert code == 0 and text.startswith("value 4/3\n")
    f.write_text("rank x\n")
    assert run("invariant", "sys3", "--file", str(f))[0] == 2
    assert run("invariant", "sys3", "--file", str(tmp_path / "missing.txt"))[0] == 2
    assert run("invariant", "sys3")[0] == 2


def test_invariant_json_round_trip():
    code, text = run("invariant", "sys3", "--name", "Mstar_G53", "--json")
    assert code == 0
    report = loads_report(text)
    assert list(report) == ["matroid", "invariant", "value", "weights", "dual", "elapsed_ms"]
    assert report["invariant"] == "sys3_star" and report["value"] == "12/11"
    assert isinstance(report["elapsed_ms"], int)
    assert all(len(d["cocircuits"]) == 3 for d in report["dual"])
    assert dumps_report(report) == text
    assert dumps_report(json.loads(dumps_report(report))) == text


def test_minor_on_invariant():
    code, text = run("invariant", "sys3", "--name", "R16", "--delete", "7")
    g7 = run("invariant", "sys3", "--name", "Mstar_G7")[1]
    assert code == 0 and text.splitlines()[0] == g7.splitlines()[0]


def test_cocircuits():
    code, text = run("cocircuits", "--name", "R16")
    assert code == 0 and "{1,2,5,6}" in text.splitlines()


def test_minor_command():
    code, text = run("minor", "--name", "R16", "--delete", "7", "--contract", "1")
    m = matroid.loads(text)
    assert code == 0 and (m.rank, m.size) == (5, 14)
    assert run("minor", "--name", "R16", "--delete", "99")[0] == 2


def test_iso():
    code, text = run("iso", "--a", "R16", "--delete", "7", "--b", "Mstar_G7")
    assert code == 0 and len(text.splitlines()) == 15
    code, text = run("iso", "--a", "Mstar_G53", "--b", "Mstar_G54")
    assert code == 0 and text == "not isomorphic\n"


def test_census():
    code, text = run("census", "--vertices", "10")
    assert code == 0 and text.count("vertices 10") == 9
    code, text = run("census", "--vertices", "8")
    assert code == 0 and text.count("vertices 8") == 2
    assert run("census", "--vertices", "7")[0] == 2


def test_verify_subset():
    code, text = run("verify", "lemmaG7")
    assert code == 0
    assert text.splitlines()[-1].startswith("overall: PASS")


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["invariant", "sys4", "--name", "R10"])
    assert exc.value.code == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cosys.cli", "invariant", "sys3", "--name", "M_K5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("value 6/5\n")
