import json
import subprocess
import sys


from bicritical.classify import liouville_expansion
from bicritical.cli import main

GOLDEN = "(-1+1sqrt5)/2"


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_golden_json(capsys):
    code, out, _ = run(["expand", "--alpha", GOLDEN, "--beta", "1/4", "--depth", "5"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["header"]["library"] == "bicritical"
    assert doc["header"]["config"]["command"] == "expand"


def test_unknown_flag_exits_2_without_files(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, _, err = run(["expand", "--alpha", GOLDEN, "--bogus", "-o", str(target)], capsys)
    assert code == 2 and "bogus" in err
    assert not target.exists()


def test_computation_error_exits_1(capsys):
    code, _, err = run(["expand", "--alpha", "1/3"], capsys)
    assert code == 1 and "RationalAlpha" in err


def test_output_is_deterministic_across_threads(tmp_path):
    outs = []
    for t in ("1", "4"):
        p = tmp_path / f"set{t}.csv"
        assert main(["set", "--alpha", GOLDEN, "--beta", "1/4", "--depth", "6", "--angles", "256",
                     "--base-density", "1024", "--threads", t, "-o", str(p)]) == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    assert outs[0].startswith(b"# {")


def test_pgm_header(tmp_path):
    p = tmp_path / "m.pgm"
    assert main(["set", "--alpha", GOLDEN, "--depth", "6", "--angles", "256", "--base-density", "1024",
                 "--pixels", "32", "--out", "pgm", "-o", str(p)]) == 0
    data = p.read_bytes()
    assert data.startswith(b"P5\n")
    assert b"\n32 32\n65535\n" in data
    header_end = data.index(b"65535\n") + len(b"65535\n")
    assert len(data) - header_end == 32 * 32 * 2


def test_curve_csv(capsys):
    code, out, _ = run(["curve", "--r", "0.3", "--s", "0.1", "--x-samples", "5", "--y-samples", "2"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("# ")
    assert len(lines) == 2 + 5 * 2


def test_orbit_csv(capsys):
    code, out, _ = run(["orbit", "--alpha", GOLDEN, "--beta", "1/4", "--depth", "6", "--k", "3"], capsys)
    assert code == 0
    assert len(out.strip().splitlines()) == 2 + 4


def test_decimal_depth_is_capped(capsys):
    code, out, err = run(["classify", "--alpha", "0.123456", "--depth", "6"], capsys)
    assert code == 0 and "truncated" in err
    assert json.loads(out)["header"]["config"]["depth_used"] == 2


def test_witness_records_the_expansion(tmp_path, capsys):
    src = tmp_path / "alpha.json"
    src.write_text(json.dumps(liouville_expansion()))
    code, out, _ = run(["witness", "--alpha-expansion", str(src), "--depth", "12"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["header"]["config"]["inputs"]["alpha_expansion"]["eps"][0] == 1
    assert doc["result"]["witness_bounded"]


def test_brjuno_alpha_has_no_witness(tmp_path, capsys):
    src = tmp_path / "alpha.json"
    src.write_text(json.dumps({"a": [0] + [3] * 8, "eps": [1] + [-1] * 8}))
    code, _, err = run(["witness", "--alpha-expansion", str(src), "--depth", "8"], capsys)
    assert code == 1 and "AlphaLooksBrjuno" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "bicritical", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and "bicritical" in res.stdout
