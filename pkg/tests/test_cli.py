import json
import os
import subprocess
import sys

import pytest

from toricorb.charpair import parse_analysis
from toricorb.cli import main, parse_range
from toricorb.properiso import ClassificationReport


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def model(c, g=2, a=0, n=1):
    return {"n": n, "g": g, "A": [[a]], "b": [0], "c": c}


def test_analyze(tmp_path, capsys):
    p = write(tmp_path, "tri.json", {"facets": [[1, 0], [1, 4], [-1, -2]]})
    code, out, _ = run(capsys, "analyze", p)
    data = json.loads(out)
    assert code == 0 and (data["n"], data["g"], data["special_vertex"]) == (1, 2, 2)
    inv, sv = parse_analysis(data)
    assert inv.vertex_dets == (2, 4, 2) and sv == 2
    p = write(tmp_path, "cp2.json", {"facets": [[1, 0], [0, 1], [-1, -1]]})
    code, out, _ = run(capsys, "analyze", p)
    assert code == 0 and json.loads(out)["g"] == 1 and json.loads(out)["special_vertex"] is None


def test_analyze_errors(tmp_path, capsys):
    assert run(capsys, "analyze", write(tmp_path, "bad.json", "{oops"))[0] == 2
    assert run(capsys, "analyze", str(tmp_path / "missing.json"))[0] == 2
    code, _, err = run(capsys, "analyze",
                       write(tmp_path, "np.json", {"facets": [[2, 4], [0, 1], [1, 1]]}))
    assert code == 2 and "facet 1" in err and "primitive" in err


def test_decide(tmp_path, capsys):
    a = write(tmp_path, "a.json", model(1))
    code, out, _ = run(capsys, "decide", a, a)
    assert code == 0 and json.loads(out)["homotopy_equivalent"]
    # reversing the top cell identifies c = 1 with c = 3
    code, out, _ = run(capsys, "decide", a, write(tmp_path, "b.json", model(3)))
    v = json.loads(out)
    assert code == 0 and v["properly_isomorphic"] and v["homotopy_equivalent"]
    assert v["witness"]["eps"] == -1
    code, out, _ = run(capsys, "decide", write(tmp_path, "c0.json", model(0)),
                       write(tmp_path, "c2.json", model(2)))
    v = json.loads(out)
    assert v["properly_isomorphic"] and not v["homotopy_equivalent"]
    code, out, _ = run(capsys, "decide", write(tmp_path, "y0.json", model(0, g=3)),
                       write(tmp_path, "y1.json", model(1, g=3)))
    assert code == 0 and not json.loads(out)["properly_isomorphic"]


def test_decide_mismatch(tmp_path, capsys):
    code, _, _ = run(capsys, "decide", write(tmp_path, "a.json", model(1)),
                     write(tmp_path, "b.json", model(1, g=4)))
    assert code == 2


def test_classify(tmp_path, capsys):
    code, out, _ = run(capsys, "classify", "--n", "1", "--g", "3", "--a-range", "-2..2")
    rep = json.loads(out)
    assert code == 0 and set(rep["h_values"]) == {1}
    assert ClassificationReport.from_dict(rep).models[0].g == 3
    code, out, _ = run(capsys, "classify", "--n", "1", "--g", "2", "--a-range", "-2..2")
    assert json.loads(out)["max_h"] == 2
    code, out, _ = run(capsys, "classify", "--n", "1", "--g", "6", "--a-range", "-4..4",
                       "--toric-only")
    rep = json.loads(out)
    assert code == 0 and set(rep["h_values"]) == {1}
    assert all(m["A"][0][0] % 2 == 0 for m in rep["models"])


def test_classify_out_csv_and_cache(tmp_path, capsys):
    out = str(tmp_path / "rep.json")
    csv_path = str(tmp_path / "rep.csv")
    args = ["classify", "--n", "1", "--g", "4", "--a-range", "0..2", "--out", out,
            "--csv", csv_path]
    code, stdout, _ = run(capsys, *args)
    assert code == 0 and stdout == ""
    first = open(out).read()
    rows = open(csv_path).read().splitlines()
    assert rows[0].startswith("model,n,g,A,b,c") and len(rows) == 1 + len(json.loads(first)["models"])
    mtime = os.path.getmtime(out)
    assert run(capsys, *args)[0] == 0
    assert os.path.getmtime(out) == mtime and open(out).read() == first


def test_classify_errors(capsys):
    assert run(capsys, "classify", "--n", "1", "--g", "2", "--a-range", "1..1",
               "--toric-only")[0] == 2
    assert run(capsys, "classify", "--n", "1", "--g", "2", "--a-range", "3..1")[0] == 2
    assert run(capsys, "classify", "--n", "1", "--g", "2", "--a-range", "x")[0] == 2
    assert run(capsys, "classify", "--n", "1", "--g", "3", "--a-range", "0..0",
               "--toric-only")[0] == 2


def test_parse_range():
    assert list(parse_range("-2..2")) == [-2, -1, 0, 1, 2]
    assert list(parse_range(" 3 .. 3 ")) == [3]


def test_lens_verify(capsys):
    code, out, _ = run(capsys, "lens-verify", "--b", "2", "--a", "1", "--s-max", "3")
    assert code == 0 and json.loads(out)["pass"]
    code, out, _ = run(capsys, "lens-verify", "--b", "4", "--a", "1", "--s-max", "3")
    rep = json.loads(out)
    assert code == 0 and [r["s"] for r in rep["results"] if r["value"] == "order2"] == [2]
    assert run(capsys, "lens-verify", "--b", "4", "--a", "2")[0] == 2
    assert run(capsys, "lens-verify", "--b", "5", "--a", "1")[0] == 2


def test_selftest_quick_is_deterministic(capsys):
    code, out1, _ = run(capsys, "selftest", "--quick", "--seed", "7")
    code2, out2, _ = run(capsys, "selftest", "--quick", "--seed", "7")
    assert code == code2 == 0 and out1 == out2
    rep = json.loads(out1)
    assert rep["pass"]
    for suite in rep["suites"].values():
        assert all(c["instances"] > 0 for c in suite["checks"].values())


def test_usage_errors(capsys):
    assert run_exit(capsys) == 1
    assert run_exit(capsys, "classify", "--n", "1") == 1
    assert run_exit(capsys, "frobnicate") == 1
    assert main(["decide", "a", "b", "--bound", "0"]) == 1


def run_exit(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    capsys.readouterr()
    return exc.value.code


def test_module_entry_point(tmp_path):
    p = write(tmp_path, "tri.json", {"facets": [[1, 0], [1, 4], [-1, -2]]})
    res = subprocess.run([sys.executable, "-m", "toricorb", "analyze", p],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["special_vertex"] == 2
