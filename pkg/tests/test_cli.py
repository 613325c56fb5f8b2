import json

import pytest

from detour.bundled import BUNDLED
from detour.cli import main


@pytest.fixture
def files(tmp_path):
    assert main(["examples", "--dir", str(tmp_path)]) == 0
    return tmp_path


def test_examples_written(files):
    assert sorted(p.name for p in files.iterdir()) == sorted(BUNDLED)
    for name, text in BUNDLED.items():
        assert (files / name).read_text() == text


def test_trace_svg(files, tmp_path):
    out = tmp_path / "watt.svg"
    assert main(["trace", str(files / "watt.cons"), "--variant", "A", "--out", f"svg:{out}"]) == 0
    assert out.read_text().startswith("<?xml")


def test_trace_multiple_outputs(files, tmp_path, capsys):
    code = main(
        ["trace", str(files / "projline.cons"), "--variant", "B", "--eps", "0.05", "--orientation", "cw",
         "--out", f"json:{tmp_path / 'p.json'}", "--out", "csv:-"]
    )
    assert code == 0
    assert capsys.readouterr().out.startswith("x,y,re_t,im_t\n")
    meta = json.loads((tmp_path / "p.json").read_text())["metadata"]
    assert meta["variant"] == "B" and meta["orientation"] == "clockwise" and meta["closed"] is True


def test_validate_pass(files, capsys):
    assert main(["validate", str(files / "projline.cons"), "--curve", "projline", "--max-residual", "1e-6"]) == 0
    assert capsys.readouterr().out.startswith("PASS")


@pytest.mark.parametrize(
    "name, curve",
    [("conchoid.cons", "conchoid:2,2"), ("watt.cons", "watt:2,2.5,1.5"), ("pascal.cons", "conic5")],
)
def test_validate_curves(files, name, curve):
    assert main(["validate", str(files / name), "--curve", curve]) == 0


def test_validate_fail(files, capsys):
    assert main(["validate", str(files / "watt.cons"), "--curve", "watt:2,2.5,1.4"]) == 1
    assert capsys.readouterr().out.startswith("FAIL")


def test_validate_bad_curve(files):
    assert main(["validate", str(files / "watt.cons"), "--curve", "watt:2"]) == 1


def test_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.cons"
    bad.write_text("point A = (1, 2\ntrace mover=A tracer=A\n")
    assert main(["trace", str(bad)]) == 2
    err = capsys.readouterr().err
    assert err.startswith(f"{bad}:1:") and "Syntax" in err


def test_missing_file(tmp_path):
    assert main(["trace", str(tmp_path / "nope.cons")]) == 2


def test_nonterminating(files, tmp_path):
    out = tmp_path / "partial.json"
    assert main(["trace", str(files / "watt.cons"), "--max-detours", "4", "--out", f"json:{out}"]) == 3
    assert json.loads(out.read_text())["metadata"]["closed"] is False


def test_bad_out_spec(files):
    with pytest.raises(SystemExit):
        main(["trace", str(files / "watt.cons"), "--out", "png:x.png"])
