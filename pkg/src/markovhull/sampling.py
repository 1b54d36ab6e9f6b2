"""Seeded generators for test corpora and experiment scripts."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from markovhull.geometry import Point2, cross

DENOMINATORS = (1, 1, 1, 2, 3, 4, 5, 8)


def random_rational(rng: random.Random, lo: int = -100, hi: int = 100) -> Fraction:
    d = rng.choice(DENOMINATORS)
    return Fraction(rng.randint(lo * d, hi * d), d)


def random_point_set(rng: random.Random, n: int, lo: int = -100, hi: int = 100) -> list[Point2]:
    """``n`` distinct rational points in ``[lo, hi]**2``, no three collinear.

    Candidates are drawn one at a time and rejected if they coincide with,
    or are collinear with, any two points already accepted.
    """
    pts: list[Point2] = []
    while len(pts) < n:
        p = Point2(random_rational(rng, lo, hi), random_rational(rng, lo, hi))
        if p in pts:
            continue
        if any(cross(a, b, p) == 0 for a, b in itertools.combinations(pts, 2)):
            continue
        pts.append(p)
    return pts


def corpus(seed: int, count: int, min_size: int = 3, max_size: int = 12) -> list[list[Point2]]:
    rng = random.Random(seed)
    return [random_point_set(rng, rng.randint(min_size, max_size)) for _ in range(count)]


_BINARY_OPS = ("add", "sub", "mul")
_UNARY_OPS = ("neg", "abs")


def random_expression(rng: random.Random, depth: int = 8, leaf_prob: float = 0.35):
    """A random arithmetic tree over rational leaves.

    Returns ``(creal, exact)``: the tree built with :func:`arith` and the same
    tree evaluated with :class:`~fractions.Fraction`.
    """
    from markovhull.real_kernel import arith, embed

    if depth == 0 or rng.random() < leaf_prob:
        q = Fraction(rng.randint(-50, 50), rng.randint(1, 12))
        return embed(q), q
    if rng.random() < 0.25:
        op = rng.choice(_UNARY_OPS)
        x, qx = random_expression(rng, depth - 1, leaf_prob)
        return arith(op, x), (-qx if op == "neg" else abs(qx))
    op = rng.choice(_BINARY_OPS)
    x, qx = random_expression(rng, depth - 1, leaf_prob)
    y, qy = random_expression(rng, depth - 1, leaf_prob)
    exact = {"add": qx + qy, "sub": qx - qy, "mul": qx * qy}[op]
    return arith(op, x, y), exact


TAMPER_KINDS = ("inflate-edge", "inflate-angle", "drop-vertex", "reverse")


def tamper(points, polygon, cert, kind: str, rng: random.Random):
    """A corrupted copy of ``(polygon, cert)`` that stays structurally well formed.

    Margins of the corrupted cycle are recomputed as exact cross products
    where they are positive, so the verifier has to find the geometric fault
    rather than a bookkeeping mismatch.
    """
    from dataclasses import replace

    from markovhull.hull import Polygon

    k = len(cert.vertex_indices)
    if kind == "inflate-edge":
        i = rng.randrange(k)
        margins = [dict(m) for m in cert.edge_margins]
        if not margins[i]:
            kind, i = "inflate-angle", rng.randrange(k)
        else:
            s = rng.choice(sorted(margins[i]))
            margins[i][s] *= 10
            return polygon, replace(cert, edge_margins=tuple(margins))
    if kind == "inflate-angle":
        i = rng.randrange(k)
        angles = list(cert.angle_margins)
        angles[i] *= 10
        return polygon, replace(cert, angle_margins=tuple(angles))
    if kind == "drop-vertex" and k > 3:
        i = rng.randrange(k)
        cycle = cert.vertex_indices[:i] + cert.vertex_indices[i + 1 :]
    elif kind in ("reverse", "drop-vertex"):
        # a triangle has no vertex to spare, so it is reversed instead
        cycle = cert.vertex_indices[::-1]
    else:
        raise ValueError(f"unknown tamper kind {kind!r}")

    m = len(cycle)
    vs = [points[j] for j in cycle]

    def positive_or_one(c):
        return c if c > 0 else Fraction(1)

    edge_margins = tuple(
        {
            s: positive_or_one(cross(vs[e], vs[(e + 1) % m], p))
            for s, p in enumerate(points)
            if s not in (cycle[e], cycle[(e + 1) % m])
        }
        for e in range(m)
    )
    angles = tuple(positive_or_one(cross(vs[e - 1], vs[e], vs[(e + 1) % m])) for e in range(m))
    return Polygon(tuple(vs)), replace(
        cert, vertex_indices=cycle, edge_margins=edge_margins, angle_margins=angles
    )
