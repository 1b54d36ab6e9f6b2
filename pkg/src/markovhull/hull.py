"""Strictly convex enclosing polygons, three ways.

``convex_hull_constructive`` needs a positive separation witness and then
decides every orientation at a known resolution. ``convex_hull_oracle`` has
only the negative promise that no three points are collinear, and settles
each orientation with a Markov-style search (MP for strict convexity, the
disjunctive form for almost strict convexity). The two reduction gadgets
run the oracle on the five- and six-point sets that turn a hull back into
a sign decision about a real number.

Both hull routines share the same gift wrap over point indices; they only
differ in how the orientation of a triple is decided.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Sequence

from markovhull.errors import (
    CollinearTriple,
    DuplicatePoint,
    PreconditionViolated,
    WitnessTooWeak,
)
from markovhull.geometry import Point2, SeparationWitness, cross, norm_sq
from markovhull.principles import (
    Apartness,
    Sign,
    SignDisjunct,
    sign_mp,
    sign_mpvee,
)
from markovhull.real_kernel import (
    CReal,
    Fuel,
    FuelMeter,
    Ordering,
    as_meter,
    cmp_resolve,
    div_apart,
    embed,
    sign_resolve,
    to_creal,
)


class ConvexityMode(enum.Enum):
    STRICT = "strict"
    ALMOST_STRICT = "almost-strict"


@dataclass(frozen=True)
class Polygon:
    """Counter-clockwise vertex cycle; the closing vertex is implicit."""

    vertices: tuple[Point2, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(self.vertices) < 3:
            raise ValueError("a polygon needs at least three vertices")

    def __len__(self):
        return len(self.vertices)

    def edges(self) -> list[tuple[Point2, Point2]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def canonical(self) -> Polygon:
        """Rotate so the lexicographically smallest vertex comes first."""
        vs = self.vertices
        i = min(range(len(vs)), key=lambda k: (vs[k].x, vs[k].y))
        return Polygon(vs[i:] + vs[:i])

    def is_simple(self) -> bool:
        if len(set(self.vertices)) != len(self.vertices):
            return False
        edges = self.edges()
        for (a, b), (c, d) in itertools.combinations(edges, 2):
            if _open_segments_meet(a, b, c, d):
                return False
        return True


def _dot(a: Point2, b: Point2):
    return a.x * b.x + a.y * b.y


def _on_open_segment(p: Point2, a: Point2, b: Point2) -> bool:
    return cross(a, b, p) == 0 and _dot(p - a, b - a) > 0 and _dot(p - b, a - b) > 0


def _open_segments_meet(a: Point2, b: Point2, c: Point2, d: Point2) -> bool:
    d1, d2 = cross(c, d, a), cross(c, d, b)
    d3, d4 = cross(a, b, c), cross(a, b, d)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    if any(_on_open_segment(p, c, d) for p in (a, b)):
        return True
    if any(_on_open_segment(p, a, b) for p in (c, d)):
        return True
    return {a, b} == {c, d}


@dataclass(frozen=True)
class HullParams:
    """Radius bound, separation and start-vertex slack for one run.

    ``delta`` is a rational lower bound on ``N - sqrt(N**2 - eps_sq)``.
    """

    N: Fraction
    eps_sq: Fraction
    delta: Fraction

    def __post_init__(self):
        if not (self.N > 0 and self.eps_sq > 0 and self.delta > 0):
            raise ValueError("hull parameters must be positive")

    @classmethod
    def for_points(cls, points: Sequence[Point2], eps_sq: Fraction) -> HullParams:
        bound = 0
        for p in points:
            q = norm_sq(p)
            if isinstance(q, CReal):
                bound = max(bound, q.magnitude_bound())
            else:
                bound = max(bound, -(-q.numerator // q.denominator))
        # N**2 > bound >= every squared norm
        N = Fraction(isqrt(bound) + 1)
        # N - sqrt(N^2 - e) = e / (N + sqrt(N^2 - e)) >= e / (2N)
        return cls(N, eps_sq, eps_sq / (2 * N))


@dataclass(frozen=True)
class HullCertificate:
    """Everything needed to re-check a hull with exact arithmetic.

    ``edge_margins[i]`` maps the index of every point of S other than the
    endpoints of edge ``i`` to a rational ``m`` with
    ``cross(v_i, v_{i+1}, s) >= m > 0``; ``angle_margins[i]`` bounds
    ``cross(v_{i-1}, v_i, v_{i+1})`` the same way. Almost-strict runs carry
    neither, only the verdict that every side test came out positive.
    """

    mode: str
    convexity: ConvexityMode
    vertex_indices: tuple[int, ...]
    edge_margins: tuple[dict[int, Fraction], ...] | None
    angle_margins: tuple[Fraction, ...] | None
    containment: bool
    eps_sq_used: Fraction | None = None
    params: HullParams | None = None
    fuel_used: int = 0


# side(i, j, k) -> (+1 or -1, margin or None): orientation of cross(p_i, p_j, p_k)
SideFn = Callable[[int, int, int], "tuple[int, Fraction | None]"]


def _gift_wrap(n: int, start: int, side: SideFn) -> list[int]:
    """Wrap counter-clockwise from a hull vertex.

    The next vertex is the point with every other point strictly to the
    left of ``current -> next``; without collinear triples it is unique.
    The proof's pigeonhole bound says the wrap closes within ``n`` edges.
    """
    cycle = [start]
    cur = start
    for _ in range(n):
        cand = 0 if cur != 0 else 1
        for s in range(n):
            if s == cur or s == cand:
                continue
            if side(cur, cand, s)[0] < 0:
                cand = s
        if cand == start:
            return cycle
        if cand in cycle:
            raise RuntimeError(f"wrap revisited vertex {cand} before closing")
        cycle.append(cand)
        cur = cand
    raise RuntimeError("wrap did not close within |S| edges")


def _certify(n: int, cycle: list[int], side: SideFn, with_margins: bool):
    k = len(cycle)
    edge_margins = []
    for i in range(k):
        a, b = cycle[i], cycle[(i + 1) % k]
        margins = {}
        for s in range(n):
            if s == a or s == b:
                continue
            sign, m = side(a, b, s)
            if sign < 0:
                raise RuntimeError(f"point {s} lies outside edge ({a}, {b})")
            margins[s] = m
        edge_margins.append(margins)
    if not with_margins:
        return None, None
    # cross(v_{i-1}, v_i, v_{i+1}) == cross(v_i, v_{i+1}, v_{i-1})
    angle_margins = tuple(edge_margins[i][cycle[i - 1]] for i in range(k))
    return tuple(edge_margins), angle_margins


def _compare_exact_or_resolve(u, v, eps: Fraction) -> Ordering:
    if isinstance(u, CReal) or isinstance(v, CReal):
        return cmp_resolve(u, v, eps)
    if u < v:
        return Ordering.LESS
    if u > v:
        return Ordering.GREATER
    return Ordering.WITHIN


def _start_vertex(points: Sequence[Point2], eps_sq: Fraction) -> int:
    # Any point whose squared norm is within eps_sq of the maximum is a
    # vertex: a non-vertex keeps a disc of radius eps around itself inside
    # the hull, so its norm is below max - eps.
    best = 0
    best_norm = norm_sq(points[0])
    for i in range(1, len(points)):
        q = norm_sq(points[i])
        if _compare_exact_or_resolve(q, best_norm, eps_sq) is Ordering.GREATER:
            best, best_norm = i, q
    return best


def _centroid3(points: Sequence[Point2]) -> Point2:
    a, b, c = points[:3]
    third = Fraction(1, 3)
    return Point2((a.x + b.x + c.x) * third, (a.y + b.y + c.y) * third)


def convex_hull_constructive(
    points: Sequence[Point2], witness: SeparationWitness
) -> tuple[Polygon, HullCertificate]:
    """Strictly convex hull from a positive separation witness.

    Every orientation ``cross(p, q, s)`` with distinct points is at least
    ``eps_sq`` in absolute value (one factor ``|q - p|`` and one
    point-to-line distance, each at least ``sqrt(eps_sq)``), so each test
    is resolved at half that. A test that will not resolve means the
    witness lied, and raises :class:`WitnessTooWeak`.
    """
    n = len(points)
    if n < 3:
        raise PreconditionViolated("need at least three points")
    eps = witness.eps_sq
    g = _centroid3(points)
    pts = [p - g for p in points]
    exact = all(p.is_rational for p in pts)

    cache: dict[tuple[int, int, int], tuple[int, Fraction]] = {}

    def side(i: int, j: int, k: int) -> tuple[int, Fraction]:
        key = (i, j, k)
        if key in cache:
            return cache[key]
        c = cross(pts[i], pts[j], pts[k])
        if exact:
            if abs(c) < eps:
                raise WitnessTooWeak(f"|cross{key}| = {abs(c)} is below eps_sq = {eps}")
            out = (1 if c > 0 else -1, abs(c))
        else:
            verdict, w = sign_resolve(c, eps / 2)
            if verdict is Ordering.WITHIN:
                raise WitnessTooWeak(f"cross{key} did not resolve at {eps / 2}")
            out = (1, w.lo) if verdict is Ordering.GREATER else (-1, -w.hi)
        cache[key] = out
        return out

    start = _start_vertex(pts, eps)
    cycle = _gift_wrap(n, start, side)
    edge_margins, angle_margins = _certify(n, cycle, side, with_margins=True)
    polygon = Polygon(tuple(points[i] for i in cycle))
    cert = HullCertificate(
        mode="constructive",
        convexity=ConvexityMode.STRICT,
        vertex_indices=tuple(cycle),
        edge_margins=edge_margins,
        angle_margins=angle_margins,
        containment=True,
        eps_sq_used=eps,
        params=HullParams.for_points(pts, eps),
    )
    return polygon, cert


def _permutation_sign(i: int, j: int, k: int) -> int:
    inversions = (i > j) + (i > k) + (j > k)
    return -1 if inversions % 2 else 1


def orientation_census(
    points: Sequence[Point2], mode: ConvexityMode, meter: FuelMeter
) -> dict[tuple[int, int, int], tuple[int, Fraction | None]]:
    """Settle the orientation of every unordered triple by an oracle search.

    STRICT uses MP and keeps the apartness bound, ALMOST_STRICT uses the
    disjunctive principle and keeps only the sign. A collinear triple makes
    its search run until ``meter`` is empty.
    """
    census = {}
    for i, j, k in itertools.combinations(range(len(points)), 3):
        c = cross(points[i], points[j], points[k])
        if mode is ConvexityMode.STRICT:
            ap: Apartness = sign_mp(c, meter)
            census[i, j, k] = (ap.sign.value, ap.bound)
        else:
            d = sign_mpvee(c, meter)
            census[i, j, k] = (1 if d is SignDisjunct.NON_NEGATIVE else -1, None)
    return census


def convex_hull_oracle(
    points: Sequence[Point2], mode: ConvexityMode, fuel: Fuel | FuelMeter | int
) -> tuple[Polygon, HullCertificate]:
    """Hull under the bare promise that no three points are collinear.

    The search is exhaustive over triples: every orientation is settled by
    the oracle before the wrap starts, so a false promise anywhere in the
    set shows up as :class:`~markovhull.errors.FuelExhausted`. The wrap
    starts from the first point (in input order) that opens a hull edge.
    """
    n = len(points)
    if n < 3:
        raise PreconditionViolated("need at least three points")
    meter = as_meter(fuel)
    census = orientation_census(points, mode, meter)

    def side(i: int, j: int, k: int) -> tuple[int, Fraction | None]:
        key = tuple(sorted((i, j, k)))
        sign, bound = census[key]
        return sign * _permutation_sign(i, j, k), bound

    start = next(
        i
        for i in range(n)
        if any(
            all(side(i, j, s)[0] > 0 for s in range(n) if s not in (i, j))
            for j in range(n)
            if j != i
        )
    )
    cycle = _gift_wrap(n, start, side)
    strict = mode is ConvexityMode.STRICT
    edge_margins, angle_margins = _certify(n, cycle, side, with_margins=strict)
    polygon = Polygon(tuple(points[i] for i in cycle))
    cert = HullCertificate(
        mode="mp" if strict else "mpvee",
        convexity=mode,
        vertex_indices=tuple(cycle),
        edge_margins=edge_margins,
        angle_margins=angle_margins,
        containment=True,
        fuel_used=meter.spent,
    )
    return polygon, cert


_SQUARE = ((-1, -1), (-1, 1), (1, 1), (1, -1))


def _squash(a: CReal) -> CReal:
    # a / (1 + |a|): same sign, no larger, strictly inside (-1, 1), which is
    # the range where the gadgets' vertex sets mean what they should
    return div_apart(a, 1 + abs(a), 1)


def mpvee_gadget(a) -> list[Point2]:
    """The square plus ``(1 + a, 0)``."""
    a = to_creal(a)
    pts = [Point2(embed(x), embed(y)) for x, y in _SQUARE]
    pts.append(Point2(1 + a, embed(0)))
    return pts


def mp_gadget(a) -> list[Point2]:
    """The square plus ``(1 + a, 0)`` and ``(-1 + a, 0)``."""
    a = to_creal(a)
    pts = mpvee_gadget(a)
    pts.append(Point2(a - 1, embed(0)))
    return pts


def reduction_gadget_mpvee(a, fuel: Fuel | FuelMeter | int) -> SignDisjunct:
    """Decide ``a >= 0`` or ``a <= 0`` by counting hull vertices.

    With ``0 < |a| < 1`` the extra point is a hull vertex exactly when
    ``a > 0``; larger ``|a|`` are first squashed into that range.
    """
    polygon, _ = convex_hull_oracle(mpvee_gadget(_squash(to_creal(a))), ConvexityMode.ALMOST_STRICT, fuel)
    return SignDisjunct.NON_NEGATIVE if len(polygon) == 5 else SignDisjunct.NON_POSITIVE


def reduction_gadget_mp(a, fuel: Fuel | FuelMeter | int) -> Apartness:
    """Bound ``a`` away from 0 from a strictly convex hull of the six-point set.

    Exactly one of ``(1 + a, 0)`` and ``(-1 + a, 0)`` is a hull vertex, with
    the corners ``(1, +-1)`` or ``(-1, +-1)`` as neighbours, so its internal
    angle certificate bounds ``cross = 2|a|`` from below.
    """
    t = _squash(to_creal(a))
    _, cert = convex_hull_oracle(mp_gadget(t), ConvexityMode.STRICT, fuel)
    cycle = cert.vertex_indices
    k = len(cycle)
    expected = {4: ({3, 2}, Sign.POSITIVE), 5: ({0, 1}, Sign.NEGATIVE)}
    for pos, idx in enumerate(cycle):
        if idx in expected:
            neighbours, sign = expected[idx]
            if {cycle[pos - 1], cycle[(pos + 1) % k]} != neighbours:
                raise RuntimeError(f"unexpected gadget hull {cycle}")
            return Apartness(cert.angle_margins[pos] / 2, sign)
    raise RuntimeError(f"unexpected gadget hull {cycle}")


def brute_force_hull(points: Sequence[Point2]) -> Polygon:
    """Reference hull: ``(p, q)`` is an edge iff all other points are strictly
    left of ``p -> q``. Cubic, exact, and independent of the wrap above."""
    n = len(points)
    if n < 3:
        raise PreconditionViolated("need at least three points")
    if not all(p.is_rational for p in points):
        raise TypeError("brute_force_hull needs rational coordinates")
    for i, j in itertools.combinations(range(n), 2):
        if points[i] == points[j]:
            raise DuplicatePoint(i, j)
    for i, j, k in itertools.combinations(range(n), 3):
        if cross(points[i], points[j], points[k]) == 0:
            raise CollinearTriple((i, j, k))
    succ = {}
    for p, q in itertools.permutations(range(n), 2):
        if all(cross(points[p], points[q], points[s]) > 0 for s in range(n) if s != p and s != q):
            succ[p] = q
    first = min(succ, key=lambda i: (points[i].x, points[i].y))
    order = [first]
    while succ[order[-1]] != first:
        order.append(succ[order[-1]])
    return Polygon(tuple(points[i] for i in order))


@dataclass(frozen=True)
class Verdict:
    valid: bool
    reason: str = ""

    def __bool__(self):
        return self.valid


VALID = Verdict(True)


def _invalid(kind: str, detail: str) -> Verdict:
    return Verdict(False, f"{kind}: {detail}")


def verify_certificate(
    points: Sequence[Point2], polygon: Polygon, cert: HullCertificate, mode: ConvexityMode
) -> Verdict:
    """Recheck a hull and its certificate from scratch with exact arithmetic."""
    if not all(p.is_rational for p in points) or not all(v.is_rational for v in polygon.vertices):
        return _invalid("structure", "exact verification needs rational coordinates")
    vs = polygon.vertices
    k = len(vs)
    index = {p: i for i, p in enumerate(points)}
    if len(index) != len(points):
        return _invalid("structure", "duplicate points in S")
    if any(v not in index for v in vs):
        return _invalid("structure", "polygon vertex not in S")
    cycle = [index[v] for v in vs]
    if len(set(cycle)) != k:
        return _invalid("structure", "repeated vertex")
    if tuple(cycle) != tuple(cert.vertex_indices):
        return _invalid("structure", "certificate vertex cycle does not match polygon")
    if not cert.containment:
        return _invalid("containment", "certificate does not claim containment")
    if cert.eps_sq_used is not None and cert.eps_sq_used <= 0:
        return _invalid("margin", "non-positive eps_sq")

    margins = cert.edge_margins
    if mode is ConvexityMode.STRICT and (margins is None or cert.angle_margins is None):
        return _invalid("margin", "strict mode needs edge and angle margins")
    if margins is not None and len(margins) != k:
        return _invalid("margin", "wrong number of edge margin lists")
    for i in range(k):
        a, b = cycle[i], cycle[(i + 1) % k]
        for s, p in enumerate(points):
            if s == a or s == b:
                continue
            c = cross(vs[i], vs[(i + 1) % k], p)
            if c <= 0:
                return _invalid("containment", f"point {s} not strictly inside edge {i}")
            if margins is not None:
                m = margins[i].get(s)
                if m is None or not 0 < m <= c:
                    return _invalid("margin", f"edge {i}, point {s}: {m} vs cross {c}")

    angles = cert.angle_margins
    if angles is not None and len(angles) != k:
        return _invalid("margin", "wrong number of angle margins")
    for i in range(k):
        c = cross(vs[i - 1], vs[i], vs[(i + 1) % k])
        # strict: certified positive; almost strict: not >= pi, i.e. c > 0 exactly
        if c <= 0:
            return _invalid("convexity", f"angle at vertex {i} is not below pi")
        if angles is not None and not 0 < angles[i] <= c:
            return _invalid("margin", f"angle {i}: {angles[i]} vs cross {c}")

    if not polygon.is_simple():
        return _invalid("simplicity", "edges intersect")
    return VALID
