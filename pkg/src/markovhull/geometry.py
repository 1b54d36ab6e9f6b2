"""Planar primitives over exact rationals or computable reals.

All side and angle questions reduce to the sign of one cross product, and
all distances are kept squared, so nothing here ever needs a square root
or a trigonometric function.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from markovhull.errors import (
    CollinearTriple,
    DuplicatePoint,
    FuelExhausted,
    PreconditionViolated,
)
from markovhull.principles import Apartness, Sign, SignDisjunct, sign_mp, sign_mpvee
from markovhull.real_kernel import (
    CReal,
    Fuel,
    FuelMeter,
    Ordering,
    Scalar,
    as_meter,
    as_rat,
    cmp_resolve,
    div_apart,
    embed,
)


@dataclass(frozen=True)
class Point2:
    x: Scalar
    y: Scalar

    def __post_init__(self):
        if isinstance(self.x, CReal) != isinstance(self.y, CReal):
            raise TypeError("both coordinates must have the same scalar kind")

    @classmethod
    def of(cls, x, y) -> Point2:
        return cls(as_rat(x), as_rat(y))

    @property
    def is_rational(self) -> bool:
        return not isinstance(self.x, CReal)

    def __add__(self, other: Point2) -> Point2:
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point2) -> Point2:
        return Point2(self.x - other.x, self.y - other.y)

    def to_creal(self) -> Point2:
        if not self.is_rational:
            return self
        return Point2(embed(self.x), embed(self.y))

    def __repr__(self):
        if self.is_rational:
            return f"({self.x}, {self.y})"
        return f"({self.x!r}, {self.y!r})"


ORIGIN = Point2(Fraction(0), Fraction(0))


def cross(a: Point2, b: Point2, c: Point2) -> Scalar:
    """``(b - a) x (c - a)``: positive iff ``c`` is strictly left of ``a -> b``."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def norm_sq(p: Point2) -> Scalar:
    return p.x * p.x + p.y * p.y


def dist_sq(p: Point2, q: Point2) -> Scalar:
    return norm_sq(p - q)


@dataclass(frozen=True)
class LocatedLine:
    """The line through ``a`` and ``b``, directed from ``a`` to ``b``.

    ``apart_sq`` is a positive rational lower bound on ``|b - a|**2``.
    ``origin_gap``, when present, certifies which side of the line the
    origin is on and how far (as a bound on ``cross(a, b, origin)``).
    """

    a: Point2
    b: Point2
    apart_sq: Fraction
    origin_gap: Apartness | None = None

    def __post_init__(self):
        if self.apart_sq <= 0:
            raise PreconditionViolated("line endpoints must be certified apart")

    @classmethod
    def through(cls, a: Point2, b: Point2, fuel: Fuel | FuelMeter | int = 10_000) -> LocatedLine:
        """Build ``L_{a,b}``, computing both certificates.

        Rational endpoints are handled exactly. For real endpoints the
        certificates come from Markov searches charged to ``fuel``; a line
        through the origin simply gets no ``origin_gap``.
        """
        if a.is_rational and b.is_rational:
            d = dist_sq(a, b)
            if d == 0:
                raise PreconditionViolated("line endpoints coincide")
            c = cross(a, b, ORIGIN)
            gap = None
            if c != 0:
                gap = Apartness(abs(c) / 2, Sign.POSITIVE if c > 0 else Sign.NEGATIVE)
            return cls(a, b, d, gap)
        a, b = a.to_creal(), b.to_creal()
        fuel = as_meter(fuel)
        apart = sign_mp(dist_sq(a, b), fuel)
        try:
            gap = sign_mp(cross(a, b, ORIGIN.to_creal()), fuel)
        except FuelExhausted:
            gap = None
        return cls(a, b, apart.bound, gap)

    @property
    def is_rational(self) -> bool:
        return self.a.is_rational and self.b.is_rational

    def length_sq(self) -> Scalar:
        return dist_sq(self.a, self.b)


def line_distance_sq(line: LocatedLine, p: Point2) -> Scalar:
    """Squared distance from ``p`` to ``line``."""
    c = cross(line.a, line.b, p)
    if line.is_rational and p.is_rational:
        return c * c / line.length_sq()
    c = c if isinstance(c, CReal) else embed(c)
    return div_apart(c * c, line.length_sq(), line.apart_sq)


class HalfSpaceSide(enum.Enum):
    PLUS = "plus"  # open side containing the origin
    MINUS = "minus"
    NEAR = "near"  # within sqrt(eps_sq) of the line


class ClosedSide(enum.Enum):
    CLOSED_PLUS = "closed_plus"
    CLOSED_MINUS = "closed_minus"


def _origin_sign(line: LocatedLine) -> Sign:
    if line.origin_gap is None:
        raise PreconditionViolated("the origin is not certified apart from the line")
    return line.origin_gap.sign


def _rat_sqrt_floor(q: Fraction) -> Fraction:
    # sqrt(n/d) = sqrt(n*d)/d, floored; positive whenever q > 0
    return Fraction(isqrt(q.numerator * q.denominator), q.denominator)


def halfspace_classify(line: LocatedLine, p: Point2, eps_sq) -> HalfSpaceSide:
    """Place ``p`` in the open half-plane on the origin's side, the other
    one, or the band of squared width ``eps_sq`` around the line.

    A point farther than ``sqrt(eps_sq)`` from the line is never NEAR.
    """
    eps_sq = as_rat(eps_sq)
    if eps_sq <= 0:
        raise ValueError("eps_sq must be positive")
    origin = _origin_sign(line)
    c = cross(line.a, line.b, p)
    if not isinstance(c, CReal):
        if c * c <= eps_sq * line.length_sq():
            return HalfSpaceSide.NEAR
        side = Sign.POSITIVE if c > 0 else Sign.NEGATIVE
    else:
        # |c| <= tol forces c**2 <= eps_sq * apart_sq <= eps_sq * |b - a|**2
        tol = _rat_sqrt_floor(eps_sq * line.apart_sq)
        verdict = cmp_resolve(c, 0, tol)
        if verdict is Ordering.WITHIN:
            return HalfSpaceSide.NEAR
        side = Sign.POSITIVE if verdict is Ordering.GREATER else Sign.NEGATIVE
    return HalfSpaceSide.PLUS if side is origin else HalfSpaceSide.MINUS


def closed_side_oracle(line: LocatedLine, p: Point2, fuel: Fuel | FuelMeter | int) -> ClosedSide:
    """Put ``p`` in the closure of one of the two half-planes.

    Write ``p = q + r * u`` with ``q`` on the line and ``u`` the unit normal
    pointing left of ``a -> b``; then ``r`` has the sign of
    ``cross(a, b, p)``, and deciding that sign for a point merely known not
    to lie on the line is exactly the disjunctive Markov search. On the line
    itself the search never ends and ``fuel`` runs out.
    """
    origin = _origin_sign(line)
    r_sign = sign_mpvee(cross(line.a, line.b, p), fuel)
    left = r_sign is SignDisjunct.NON_NEGATIVE
    if left == (origin is Sign.POSITIVE):
        return ClosedSide.CLOSED_PLUS
    return ClosedSide.CLOSED_MINUS


@dataclass(frozen=True)
class SeparationWitness:
    """Lower bound on squared point-to-line and point-to-point distances in a set."""

    eps_sq: Fraction

    def __post_init__(self):
        if self.eps_sq <= 0:
            raise ValueError("eps_sq must be positive")


def noncollinearity_witness(points: Sequence[Point2]) -> SeparationWitness:
    """Tightest ``eps_sq`` for a rational point set.

    Takes the minimum of every squared pairwise distance and every squared
    distance from a point to the line through two others. For a triple the
    three point-to-line distances share the numerator ``cross**2``, so the
    smallest one divides by the longest side.
    """
    if len(points) < 3:
        raise PreconditionViolated("need at least three points")
    if not all(p.is_rational for p in points):
        raise TypeError("witness computation needs rational coordinates")
    n = len(points)
    pair = {}
    for i, j in itertools.combinations(range(n), 2):
        d = dist_sq(points[i], points[j])
        if d == 0:
            raise DuplicatePoint(i, j)
        pair[i, j] = d
    best = min(pair.values())
    for i, j, k in itertools.combinations(range(n), 3):
        c = cross(points[i], points[j], points[k])
        if c == 0:
            raise CollinearTriple((i, j, k))
        d = c * c / max(pair[i, j], pair[i, k], pair[j, k])
        if d < best:
            best = d
    return SeparationWitness(best)
