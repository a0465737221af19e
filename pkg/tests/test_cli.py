import json
import subprocess
import sys

import pytest

from weighted_ehrhart.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hstar_text_and_json(capsys, data_dir):
    code, out, _ = run(capsys, "hstar", "--polytope", data_dir / "segment.json", "--weight", "x1^2 + 1")
    assert code == 0 and out.splitlines() == ["2*t^2 - t + 1", "/ (1 - t)^4"]
    code, out, _ = run(
        capsys, "--format", "json", "hstar", "--polytope", data_dir / "standard_triangle.json",
        "--weight", "(2*x1 - x2)^2 * (2*x2 - x1)^2",
    )
    assert json.loads(out) == {"numerator": ["0", "8", "81", "-6", "1"], "period": 1, "exponent": 7}


def test_format_after_subcommand(capsys, data_dir):
    code, out, _ = run(capsys, "hstar", "--format", "json", "--polytope", data_dir / "delta6.json", "--weight", "1")
    assert code == 0 and json.loads(out)["period"] == 6


def test_series(capsys, data_dir):
    code, out, _ = run(capsys, "series", "--polytope", data_dir / "segment.json", "--weight", "x1^2", "--dilations", 4)
    assert code == 0 and out.split() == ["0:", "0", "1:", "1", "2:", "5", "3:", "14", "4:", "30"]


def test_decompose_dump(capsys, data_dir):
    code, out, _ = run(capsys, "--format", "json", "decompose", "--polytope", data_dir / "unit_square.json", "--dump-points")
    data = json.loads(out)
    assert code == 0 and [c["strict"] for c in data["cells"]] == [[0], []]
    assert data["cells"][0]["points"] == [{"point": [0, 0, 1], "lambdas": ["1", "0", "0"], "height": 1}]


def test_eulerian(capsys):
    code, out, _ = run(capsys, "eulerian", 3, "1")
    assert code == 0 and out.strip() == "t^2 + 4*t + 1"
    code, _, err = run(capsys, "eulerian", 3, "3/2")
    assert code == 2 and "lambda" in err


def test_check_exit_codes(capsys, data_dir):
    d6 = data_dir / "delta6.json"
    w = "(-60*x1 + 66*x2)^2"
    assert run(capsys, "check", "ray", "--polytope", d6, "--weight", w)[0] == 0
    code, out, _ = run(capsys, "check", "nonneg", "--polytope", d6, "--weight", w)
    assert code == 1 and "witness 11" in out
    code, out, _ = run(
        capsys, "check", "monotone", "--polytope", data_dir / "monotone_outer.json",
        "--inside", data_dir / "monotone_inner.json", "--weight", "(2*x1 + 3*x2)^2",
    )
    assert code == 1 and "inner: 4*t^2 + 4*t" in out
    code, _, err = run(capsys, "check", "monotone", "--polytope", d6, "--weight", w)
    assert code == 2 and "--inside" in err


def test_tensor(capsys, data_dir):
    code, out, _ = run(capsys, "--format", "json", "tensor", "h2", "--polytope", data_dir / "segment.json", "--psd")
    data = json.loads(out)
    assert code == 0 and data["psd"] and data["coefficients"] == [[["0"]], [["1"]], [["1"]], [["0"]]]


def test_verify(capsys, data_dir):
    code, out, _ = run(capsys, "verify", "--polytope", data_dir / "delta6.json", "--weight", "x1*x2 - n^2 + 3", "--dilations", 12)
    assert code == 0 and out.startswith("PASS")
    code, out, _ = run(capsys, "--seed", 7, "verify", "--random", 3, "--dilations", 5)
    assert code == 0 and "3/3" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["hstar", "--polytope", "missing.json", "--weight", "x1"],
        ["hstar", "--weight", "x1"],
        ["frobnicate"],
    ],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == 2


def test_parse_error_position(capsys, data_dir):
    code, _, err = run(capsys, "hstar", "--polytope", data_dir / "segment.json", "--weight", "x1 * x2")
    assert code == 2 and "position 5" in err


def test_module_entry_point(data_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "weighted_ehrhart", "eulerian", "2", "1/2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "1/4*t^2 + 3/2*t + 1/4"
