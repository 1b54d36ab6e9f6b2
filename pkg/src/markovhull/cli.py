"""Command-line front end.

    markovhull POINTS [--mode constructive|mpvee|mp|oracle-check]
                      [--fuel N] [--certificate PATH] [--svg PATH]
                      [--scalar rational|creal]

Exit statuses: 0 success, 2 fuel exhausted, 3 unusable input (parse error,
duplicate or collinear points, bad options), 4 certificate verification
failed. Vertices go to stdout, one ``x y`` line each; diagnostics go to
stderr.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import yaml

from markovhull.errors import (
    FuelExhausted,
    InputDegenerate,
    MarkovHullError,
    ParseError,
    PreconditionViolated,
    WitnessTooWeak,
)
from markovhull.geometry import Point2, noncollinearity_witness
from markovhull.hull import (
    ConvexityMode,
    HullCertificate,
    HullParams,
    Polygon,
    brute_force_hull,
    convex_hull_constructive,
    convex_hull_oracle,
    verify_certificate,
)
from markovhull.real_kernel import Fuel

EXIT_OK = 0
EXIT_FUEL = 2
EXIT_INPUT = 3
EXIT_VERIFY = 4

MODES = ("constructive", "mpvee", "mp", "oracle-check")
SCALARS = ("rational", "creal")
CERTIFICATE_FORMAT = "markovhull-certificate/1"

_SCALAR = re.compile(
    r"""[+-]?(?:
        \d+/\d+                        # p/q
      | (?:\d+(?:\.\d*)?|\.\d+)        # decimal
        (?:[eE][+-]?\d+)?
    )""",
    re.VERBOSE,
)


def parse_scalar(token: str) -> Fraction:
    token = token.replace("−", "-")
    if not _SCALAR.fullmatch(token):
        raise ValueError(f"not a rational or decimal literal: {token!r}")
    return Fraction(token)


def parse_points(text: str) -> list[Point2]:
    points = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(lineno, f"expected two scalars, got {len(fields)} fields")
        try:
            x, y = (parse_scalar(f) for f in fields)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(lineno, str(exc)) from None
        points.append(Point2(x, y))
    return points


def format_rat(q: Fraction) -> str:
    return str(q)


def format_points(points: Sequence[Point2]) -> str:
    return "".join(f"{format_rat(p.x)} {format_rat(p.y)}\n" for p in points)


def _fmt_svg(q: Fraction) -> str:
    s = f"{float(q):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(polygon: Polygon, points: Sequence[Point2]) -> str:
    """Points as circles, hull as one closed path, y axis pointing up."""
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    w, h = max(xs) - min(xs), max(ys) - min(ys)
    pad = max(w, h) * Fraction(5, 100)
    if pad == 0:
        pad = Fraction(1)
    # flip y so the picture matches the usual orientation
    vx, vy = min(xs) - pad, -max(ys) - pad
    vw, vh = w + 2 * pad, h + 2 * pad
    r = max(vw, vh) / 150
    stroke = max(vw, vh) / 400
    head = (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt_svg(vx)} {_fmt_svg(vy)} {_fmt_svg(vw)} {_fmt_svg(vh)}">\n'
    )
    vs = polygon.vertices
    d = " ".join(
        f"{'M' if i == 0 else 'L'} {_fmt_svg(v.x)} {_fmt_svg(-v.y)}" for i, v in enumerate(vs)
    )
    body = [
        f'<path d="{d} Z" fill="none" stroke="black" stroke-width="{_fmt_svg(stroke)}"/>\n'
    ]
    for p in points:
        body.append(
            f'<circle cx="{_fmt_svg(p.x)}" cy="{_fmt_svg(-p.y)}" r="{_fmt_svg(r)}"/>\n'
        )
    return head + "".join(body) + "</svg>\n"


def certificate_document(
    cert: HullCertificate, points: Sequence[Point2], scalar_kind: str, fuel: int
) -> str:
    """Serialize a certificate. Key order is fixed, so equal runs give equal bytes."""
    k = len(cert.vertex_indices)
    doc = {
        "format": CERTIFICATE_FORMAT,
        "mode": cert.mode,
        "convexity": cert.convexity.value,
        "scalar": scalar_kind,
        "points": [[format_rat(p.x), format_rat(p.y)] for p in points],
        "eps_sq": None if cert.eps_sq_used is None else format_rat(cert.eps_sq_used),
        "params": None
        if cert.params is None
        else {
            "N": format_rat(cert.params.N),
            "eps_sq": format_rat(cert.params.eps_sq),
            "delta": format_rat(cert.params.delta),
        },
        "fuel_limit": fuel,
        "fuel_used": cert.fuel_used,
        "vertex_cycle": list(cert.vertex_indices),
        "edge_margins": None
        if cert.edge_margins is None
        else [
            {
                "edge": [cert.vertex_indices[i], cert.vertex_indices[(i + 1) % k]],
                "margins": [[s, format_rat(m)] for s, m in sorted(cert.edge_margins[i].items())],
            }
            for i in range(k)
        ],
        "angle_margins": None
        if cert.angle_margins is None
        else [format_rat(m) for m in cert.angle_margins],
        "containment": cert.containment,
    }
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None, width=100)


def load_certificate(text: str) -> tuple[list[Point2], Polygon, HullCertificate]:
    doc = yaml.safe_load(text)
    if doc.get("format") != CERTIFICATE_FORMAT:
        raise ValueError("not a markovhull certificate")
    points = [Point2(Fraction(x), Fraction(y)) for x, y in doc["points"]]
    cycle = tuple(doc["vertex_cycle"])
    params = doc["params"]
    cert = HullCertificate(
        mode=doc["mode"],
        convexity=ConvexityMode(doc["convexity"]),
        vertex_indices=cycle,
        edge_margins=None
        if doc["edge_margins"] is None
        else tuple({s: Fraction(m) for s, m in e["margins"]} for e in doc["edge_margins"]),
        angle_margins=None
        if doc["angle_margins"] is None
        else tuple(Fraction(m) for m in doc["angle_margins"]),
        containment=bool(doc["containment"]),
        eps_sq_used=None if doc["eps_sq"] is None else Fraction(doc["eps_sq"]),
        params=None
        if params is None
        else HullParams(Fraction(params["N"]), Fraction(params["eps_sq"]), Fraction(params["delta"])),
        fuel_used=doc["fuel_used"],
    )
    return points, Polygon(tuple(points[i] for i in cycle)), cert


@dataclass(frozen=True)
class RunConfig:
    input_path: Path
    mode: str = "constructive"
    fuel: int = 10_000
    emit_certificate: Path | None = None
    emit_svg: Path | None = None
    scalar_kind: str = "rational"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.scalar_kind not in SCALARS:
            raise ValueError(f"unknown scalar kind {self.scalar_kind!r}")
        if self.fuel < 1:
            raise ValueError("fuel must be at least 1")
        if self.mode == "oracle-check" and self.scalar_kind != "rational":
            raise ValueError("oracle-check needs rational scalars")


def _compute(config: RunConfig, points: list[Point2]) -> tuple[Polygon, HullCertificate]:
    work = points if config.scalar_kind == "rational" else [p.to_creal() for p in points]
    if config.mode in ("constructive", "oracle-check"):
        witness = noncollinearity_witness(points)
        _, cert = convex_hull_constructive(work, witness)
    else:
        convexity = ConvexityMode.STRICT if config.mode == "mp" else ConvexityMode.ALMOST_STRICT
        _, cert = convex_hull_oracle(work, convexity, Fuel(config.fuel))
    # report the exact input coordinates whatever scalar kind did the work
    return Polygon(tuple(points[i] for i in cert.vertex_indices)), cert


def run(config: RunConfig, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        points = parse_points(Path(config.input_path).read_text())
        if len(points) < 3:
            raise PreconditionViolated(f"need at least three points, got {len(points)}")
        polygon, cert = _compute(config, points)
    except FuelExhausted as exc:
        print(f"markovhull: {exc}", file=err)
        return EXIT_FUEL
    except (ParseError, InputDegenerate, PreconditionViolated, WitnessTooWeak, OSError) as exc:
        print(f"markovhull: {exc}", file=err)
        return EXIT_INPUT

    if config.mode == "oracle-check":
        verdict = verify_certificate(points, polygon, cert, ConvexityMode.STRICT)
        if not verdict:
            print(f"markovhull: certificate rejected ({verdict.reason})", file=err)
            return EXIT_VERIFY
        if brute_force_hull(points) != polygon.canonical():
            print("markovhull: hull differs from the brute-force oracle", file=err)
            return EXIT_VERIFY

    try:
        if config.emit_certificate is not None:
            Path(config.emit_certificate).write_text(
                certificate_document(cert, points, config.scalar_kind, config.fuel)
            )
        if config.emit_svg is not None:
            Path(config.emit_svg).write_text(render_svg(polygon.canonical(), points))
    except OSError as exc:
        print(f"markovhull: {exc}", file=err)
        return EXIT_INPUT
    out.write(format_points(polygon.canonical().vertices))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="markovhull", description="Certified strictly convex hulls.")
    p.add_argument("input", type=Path, help="point file, one 'x y' pair per line")
    p.add_argument("--mode", choices=MODES, default="constructive")
    p.add_argument("--fuel", type=int, default=10_000, help="refinement budget for oracle modes")
    p.add_argument("--certificate", type=Path, help="write the hull certificate here")
    p.add_argument("--svg", type=Path, help="write an SVG drawing here")
    p.add_argument("--scalar", choices=SCALARS, default="rational")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            input_path=args.input,
            mode=args.mode,
            fuel=args.fuel,
            emit_certificate=args.certificate,
            emit_svg=args.svg,
            scalar_kind=args.scalar,
        )
    except ValueError as exc:
        print(f"markovhull: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return run(config)
    except MarkovHullError as exc:
        print(f"markovhull: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
