import io
import json
import subprocess
import sys

import pytest

from coxkit.cli import run

A3 = "nodes a b c; edge a b 3; edge b c 3"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_classify():
    assert call("classify", "--inline", A3) == (0, "A3, finite, order 24\n", "")
    code, out, _ = call("classify", "--inline", "nodes a b c; edge a b 4; edge b c 4")
    assert out.strip() == "infinite"
    assert call("classify", "--inline", "nodes a b c; edge a b oo")[1] == "infinite x A1, infinite\n"


def test_classify_family():
    code, out, _ = call("classify", "--family", "dinf", "--ranks", "2..8")
    assert code == 0 and out.strip() == "locally finite, type D_oo"


def test_pi():
    assert call("pi", "--inline", "nodes a b; edge a b 3", "--roots", "a; a+b")[1] == "a, b\n"


def test_verify_json():
    code, out, _ = call("verify", "--scenario", "g2", "--json")
    report = json.loads(out)
    assert code == 0
    assert list(report) == ["verb", "input", "params", "result", "certificates", "timings"]
    assert report["result"]["passed"] and len(report["result"]["assertions"]) == 5


@pytest.mark.parametrize(
    "argv",
    [
        ("is-parabolic", "--inline", "nodes s t; edge s t 6", "--roots", "s; s + r3 t"),
        ("closure", "--inline", A3, "--elements", "a b; c"),
        ("intersect", "--inline", A3, "--left", "| a b", "--right", "c | b c"),
        ("coset-min", "--inline", A3, "--word", "a b c a", "--subset", "a c"),
        ("odd-components", "--family", "binf", "--rank", "4"),
        ("roots", "--inline", "nodes a b; edge a b 5"),
        ("families", "--family", "ex45", "--param", "m=6", "--ranks", "2..5"),
    ],
)
def test_json_is_stable(argv):
    code, out, _ = call(*argv, "--json")
    assert code == 0
    again = call(*argv, "--json")[1]
    assert out == again
    assert json.dumps(json.loads(out), indent=2, ensure_ascii=False) + "\n" == out


def test_text_outputs():
    assert call("coset-min", "--inline", A3, "--word", "a b c a", "--subset", "a c")[1] == "a b a c = (a b) . (a c)\n"
    assert call("odd-components", "--inline", "nodes a b c; edge a b 4; edge b c 3")[1] == "{a}\n{b, c}\n"
    out = call("is-parabolic", "--inline", "nodes s t; edge s t 6", "--roots", "s; s + r3 t")[1]
    assert out.startswith("no:")
    assert call("intersect", "--inline", A3, "--left", "| a b", "--right", "c | b c")[1] == "w = e, I = {b}\n"


def test_exit_codes():
    assert call("classify", "--inline", "nodes a b; edge a a 3")[0] == 2
    code, _, err = call("classify", "--inline", "nodes a b;\nedge a c 3")
    assert code == 2 and "line 2, column 8" in err
    assert call("pi", "--inline", A3, "--roots", "a + zz")[0] == 2
    assert call("intersect", "--inline", "nodes a b; edge a b oo", "--left", "| a", "--right", "| b")[0] == 2
    assert call("verify", "--scenario", "ex45", "--param", "m=5")[0] == 2
    assert call("bogus")[0] == 2
    assert call("classify")[0] == 2


def test_timings_only_on_request():
    report = json.loads(call("classify", "--inline", A3, "--json", "--timings")[1])
    assert "seconds" in report["timings"]


@pytest.mark.parametrize(
    "argv",
    [
        ("classify", "--inline", A3),
        ("classify", "--family", "binf", "--ranks", "2..6"),
        ("roots", "--inline", "nodes a b; edge a b 6"),
        ("verify", "--scenario", "g2"),
        ("families", "--family", "a2inf", "--ranks", "2..6"),
    ],
)
def test_figures(tmp_path, argv):
    path = tmp_path / "fig.png"
    assert call(*argv, "--figure", str(path))[0] == 0
    assert path.read_bytes()[:4] == b"\x89PNG"


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "coxkit.cli", "classify", "--inline", A3], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout == "A3, finite, order 24\n"
