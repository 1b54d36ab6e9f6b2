import io
import re
import subprocess
import sys
from fractions import Fraction

import pytest

from conftest import SQUARE, SQUARE_PLUS_INTERIOR, gadget5, gadget6, pts
from markovhull.cli import (
    EXIT_FUEL,
    EXIT_INPUT,
    EXIT_OK,
    EXIT_VERIFY,
    RunConfig,
    format_points,
    load_certificate,
    main,
    parse_points,
    render_svg,
    run,
)
from markovhull.errors import ParseError
from markovhull.hull import ConvexityMode, Polygon, verify_certificate


def write_points(tmp_path, points, name="points.txt"):
    path = tmp_path / name
    path.write_text(format_points(points))
    return path


def run_capture(**kw):
    out, err = io.StringIO(), io.StringIO()
    status = run(RunConfig(**kw), out=out, err=err)
    return status, out.getvalue(), err.getvalue()


def path_segments(svg):
    (d,) = re.findall(r'<path d="([^"]*)"', svg)
    assert d.startswith("M ") and d.endswith(" Z")
    return d.count(" L ") + 1


def test_parse_examples():
    assert parse_points("0 0\n1 0\n0 1\n") == pts((0, 0), (1, 0), (0, 1))
    text = "1/2 −1/3\n# comment\n\n2.5 0\n"
    assert parse_points(text) == pts((Fraction(1, 2), Fraction(-1, 3)), (Fraction(5, 2), 0))
    with pytest.raises(ParseError) as exc:
        parse_points("1 two\n")
    assert exc.value.lineno == 1


@pytest.mark.parametrize(
    "text, line",
    [("0 0\n1\n", 2), ("0 0\n1 2 3\n", 2), ("# c\n1/0 2\n", 2), ("0x10 1\n", 1), ("1e 2\n", 1)],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_points(text)
    assert exc.value.lineno == line


def test_decimals_are_exact():
    (p,) = parse_points("0.1 -1.25e-3\n")
    assert p.x == Fraction(1, 10) and p.y == Fraction(-1, 800)


def test_run_constructive(tmp_path):
    status, out, _ = run_capture(input_path=write_points(tmp_path, SQUARE_PLUS_INTERIOR))
    assert status == EXIT_OK
    assert parse_points(out) == SQUARE


def test_run_gadgets(tmp_path):
    five = write_points(tmp_path, gadget5(Fraction(-1, 2)))
    status, out, _ = run_capture(input_path=five, mode="mpvee", fuel=1000)
    assert status == EXIT_OK and len(parse_points(out)) == 4

    zero = write_points(tmp_path, gadget6(0), "zero.txt")
    status, out, err = run_capture(input_path=zero, mode="mp", fuel=100)
    assert status == EXIT_FUEL and out == "" and "fuel" in err


def test_run_creal_scalars(tmp_path):
    path = write_points(tmp_path, gadget5(Fraction(1, 2)))
    for mode in ("constructive", "mp", "mpvee"):
        status, out, _ = run_capture(input_path=path, mode=mode, scalar_kind="creal")
        assert status == EXIT_OK and len(parse_points(out)) == 5


def test_run_oracle_check(tmp_path):
    status, out, _ = run_capture(input_path=write_points(tmp_path, gadget5(Fraction(1, 2))), mode="oracle-check")
    assert status == EXIT_OK and len(parse_points(out)) == 5


def test_run_input_errors(tmp_path):
    collinear = write_points(tmp_path, pts((0, 0), (1, 1), (2, 2)))
    assert run_capture(input_path=collinear)[0] == EXIT_INPUT
    dup = write_points(tmp_path, pts((0, 0), (1, 0), (0, 0)), "dup.txt")
    assert run_capture(input_path=dup)[0] == EXIT_INPUT
    two = write_points(tmp_path, pts((0, 0), (1, 0)), "two.txt")
    assert run_capture(input_path=two)[0] == EXIT_INPUT
    bad = tmp_path / "bad.txt"
    bad.write_text("1 two\n")
    status, _, err = run_capture(input_path=bad)
    assert status == EXIT_INPUT and "line 1" in err
    assert run_capture(input_path=tmp_path / "missing.txt")[0] == EXIT_INPUT


def test_run_config_validation(tmp_path):
    with pytest.raises(ValueError):
        RunConfig(input_path=tmp_path, fuel=0)
    with pytest.raises(ValueError):
        RunConfig(input_path=tmp_path, mode="oracle-check", scalar_kind="creal")
    with pytest.raises(ValueError):
        RunConfig(input_path=tmp_path, mode="fast")


def test_svg_structure():
    square = render_svg(Polygon(tuple(SQUARE)), SQUARE_PLUS_INTERIOR)
    assert square.startswith("<svg") and square.count("<path") == 1
    assert path_segments(square) == 4
    assert square.count("<circle") == 5
    S = gadget5(Fraction(1, 2))
    assert path_segments(render_svg(Polygon(tuple(S)), S)) == 5


def test_svg_viewbox_padding():
    svg = render_svg(Polygon(tuple(SQUARE)), SQUARE)
    (box,) = re.findall(r'viewBox="([^"]*)"', svg)
    # 4 x 4 bounding box, 5% padding on each side, y flipped
    assert [Fraction(v) for v in box.split()] == [Fraction(-1, 5), Fraction(-21, 5), Fraction(22, 5), Fraction(22, 5)]


def test_outputs_are_byte_deterministic(tmp_path):
    path = write_points(tmp_path, SQUARE_PLUS_INTERIOR)
    docs = []
    for k in range(2):
        cert, svg = tmp_path / f"c{k}.yaml", tmp_path / f"s{k}.svg"
        status, out, _ = run_capture(input_path=path, emit_certificate=cert, emit_svg=svg)
        assert status == EXIT_OK
        docs.append((out, cert.read_bytes(), svg.read_bytes()))
    assert docs[0] == docs[1]


def test_round_trip(tmp_path, small_corpus):
    for i, S in enumerate(small_corpus[:20]):
        status, out, _ = run_capture(input_path=write_points(tmp_path, S, f"in{i}.txt"))
        assert status == EXIT_OK
        hull_file = tmp_path / f"hull{i}.txt"
        hull_file.write_text(out)
        status, again, _ = run_capture(input_path=hull_file)
        assert status == EXIT_OK and again == out


@pytest.mark.parametrize("mode", ["constructive", "mp", "mpvee"])
def test_certificate_loads_and_verifies(tmp_path, mode):
    S = SQUARE_PLUS_INTERIOR
    cert_path = tmp_path / "cert.yaml"
    status, _, _ = run_capture(input_path=write_points(tmp_path, S), mode=mode, emit_certificate=cert_path)
    assert status == EXIT_OK
    points, polygon, cert = load_certificate(cert_path.read_text())
    assert points == S
    convexity = ConvexityMode.ALMOST_STRICT if mode == "mpvee" else ConvexityMode.STRICT
    assert cert.convexity is convexity
    assert verify_certificate(points, polygon, cert, convexity)


def test_certificate_key_order(tmp_path):
    cert_path = tmp_path / "cert.yaml"
    run_capture(input_path=write_points(tmp_path, SQUARE), emit_certificate=cert_path)
    keys = [line.split(":")[0] for line in cert_path.read_text().splitlines() if line and line[0] != " " and line[0] != "-"]
    assert keys == [
        "format", "mode", "convexity", "scalar", "points", "eps_sq", "params",
        "fuel_limit", "fuel_used", "vertex_cycle", "edge_margins", "angle_margins", "containment",
    ]


def test_oracle_check_reports_verification_failure(tmp_path, monkeypatch):
    import markovhull.cli as cli

    path = write_points(tmp_path, SQUARE_PLUS_INTERIOR)
    monkeypatch.setattr(cli, "brute_force_hull", lambda points: Polygon(tuple(points[:3])))
    status, _, err = run_capture(input_path=path, mode="oracle-check")
    assert status == EXIT_VERIFY and "brute-force" in err


def test_main_exit_codes(tmp_path, capsys):
    path = write_points(tmp_path, SQUARE)
    assert main([str(path)]) == EXIT_OK
    assert main([str(path), "--mode", "mpvee", "--fuel", "1"]) == EXIT_FUEL
    with pytest.raises(SystemExit) as exc:
        main([str(path), "--bogus"])
    assert exc.value.code == EXIT_INPUT
    assert main([str(path), "--fuel", "0"]) == EXIT_INPUT


def test_module_entry_point(tmp_path):
    path = write_points(tmp_path, SQUARE_PLUS_INTERIOR)
    proc = subprocess.run(
        [sys.executable, "-m", "markovhull", str(path), "--mode", "oracle-check"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == EXIT_OK
    assert parse_points(proc.stdout) == SQUARE
