"""Exact rationals and computable reals.

A :class:`CReal` is a function from a precision index ``n`` to a rational
window of width at most ``2**-n``. Window ``n + 1`` always sits inside
window ``n``: user-supplied approximants are normalized by intersecting
each window with its predecessor, and the built-in operations produce
nested windows by construction. Every operation picks its own operand
precision so the width bound survives composition.

Internally a window at index ``n`` is a pair of integers ``(lo, hi)`` read
as ``[lo / 2**(n+2), hi / 2**(n+2)]``. Working on a dyadic grid keeps the
numbers small; :meth:`CReal.window` converts to a :class:`Interval` of
:class:`fractions.Fraction` for callers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Literal, Union

from markovhull.errors import FuelExhausted

Rat = Fraction
Scalar = Union[Fraction, "CReal"]

# window n is stored on the grid 2**-(n + GRID)
GRID = 2
# memo size: the lowest and highest _KEEP windows survive pruning
_KEEP = 64


def as_rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, q) -> bool:
        return self.lo <= q <= self.hi

    def subset_of(self, other: Interval) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi


@dataclass(frozen=True)
class Fuel:
    """Refinement budget for promise-based searches."""

    max_refinements: int

    def __post_init__(self):
        if self.max_refinements < 1:
            raise ValueError("fuel must be at least 1")

    def meter(self) -> FuelMeter:
        return FuelMeter(self.max_refinements)


class FuelMeter:
    """Mutable tally against a :class:`Fuel` budget, shared across one run."""

    def __init__(self, limit: int):
        if limit < 1:
            raise ValueError("fuel must be at least 1")
        self.limit = limit
        self.spent = 0

    def spend(self, what: str = "search") -> None:
        if self.spent >= self.limit:
            raise FuelExhausted(self.spent, self.limit, what)
        self.spent += 1

    @property
    def remaining(self) -> int:
        return self.limit - self.spent

    def __repr__(self):
        return f"FuelMeter(spent={self.spent}, limit={self.limit})"


def as_meter(fuel: Fuel | FuelMeter | int) -> FuelMeter:
    if isinstance(fuel, FuelMeter):
        return fuel
    if isinstance(fuel, Fuel):
        return fuel.meter()
    return FuelMeter(int(fuel))


def _floor_shift(v: int, s: int) -> int:
    return v >> s


def _ceil_shift(v: int, s: int) -> int:
    return -((-v) >> s)


class CReal:
    """A computable real given by nested rational windows.

    ``CReal(f)`` accepts any ``f(n) -> Interval`` whose windows contain the
    value and have width at most ``2**-n``; the windows need not be nested,
    normalization takes care of that.
    """

    __slots__ = ("_raw", "_nested", "_cache", "_top", "_mag")

    def __init__(self, approximant: Callable[[int], Interval]):
        def raw(n: int) -> tuple[int, int]:
            iv = approximant(n + 1)
            e = n + GRID
            lo = (iv.lo.numerator << e) // iv.lo.denominator
            hi = -((-iv.hi.numerator << e) // iv.hi.denominator)
            return lo, hi

        self._init(raw, nested=False)

    def _init(self, raw: Callable[[int], tuple[int, int]], nested: bool) -> None:
        self._raw = raw
        self._nested = nested
        self._cache: dict[int, tuple[int, int]] = {}
        self._top = -1
        self._mag: int | None = None

    @classmethod
    def _from_grid(cls, raw: Callable[[int], tuple[int, int]]) -> CReal:
        # Built-in operations are inclusion-monotone interval maps followed by
        # outward rounding onto a grid that refines with n, so their windows
        # are nested without intersecting.
        obj = cls.__new__(cls)
        obj._init(raw, nested=True)
        return obj

    def _win(self, n: int) -> tuple[int, int]:
        if n < 0:
            raise ValueError("precision index must be non-negative")
        cache = self._cache
        hit = cache.get(n)
        if hit is not None:
            return hit
        if self._nested:
            lo, hi = self._raw(n)
            cache[n] = (lo, hi)
        else:
            lo, hi = self._normalized(n)
        if n > self._top:
            self._top = n
        if len(cache) > 2 * _KEEP:
            for key in sorted(cache)[_KEEP:-_KEEP]:
                del cache[key]
        return lo, hi

    def _normalized(self, n: int) -> tuple[int, int]:
        # window k = raw(k) intersected with window k-1, computed in order
        cache = self._cache
        if 0 <= self._top < n:
            k = self._top
        else:
            k = max((j for j in cache if j < n), default=-1)
        lo, hi = cache[k] if k >= 0 else (0, 0)
        while k < n:
            k += 1
            rlo, rhi = self._raw(k)
            if k > 0:
                rlo = max(rlo, lo << 1)
                rhi = min(rhi, hi << 1)
                if rlo > rhi:
                    raise ArithmeticError("approximant windows are inconsistent")
            lo, hi = rlo, rhi
            cache[k] = (lo, hi)
        return lo, hi

    def window(self, n: int) -> Interval:
        lo, hi = self._win(n)
        scale = 1 << (n + GRID)
        return Interval(Fraction(lo, scale), Fraction(hi, scale))

    def magnitude_bound(self) -> int:
        """An integer ``M`` with ``|x| <= M`` for every point of every window."""
        if self._mag is None:
            lo, hi = self._win(0)
            self._mag = _ceil_shift(max(abs(lo), abs(hi)), GRID)
        return self._mag

    def __add__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else add(self, other)

    def __radd__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else add(other, self)

    def __sub__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else sub(self, other)

    def __rsub__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else sub(other, self)

    def __mul__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else mul(self, other)

    def __rmul__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else mul(other, self)

    def __neg__(self):
        return neg(self)

    def __abs__(self):
        return absolute(self)

    def __repr__(self):
        w = self.window(20)
        return f"CReal(~{float((w.lo + w.hi) / 2):.6g})"


def _coerce(value) -> CReal | None:
    if isinstance(value, CReal):
        return value
    if isinstance(value, (int, Fraction)):
        return embed(value)
    return None


def to_creal(value) -> CReal:
    out = _coerce(value)
    if out is None:
        raise TypeError(f"cannot use {type(value).__name__} as a real")
    return out


def embed(q) -> CReal:
    q = as_rat(q)
    num, den = q.numerator, q.denominator

    def raw(n: int) -> tuple[int, int]:
        e = n + GRID
        return (num << e) // den, -((-num << e) // den)

    return CReal._from_grid(raw)


_ZERO = embed(0)


def add(x: CReal, y: CReal) -> CReal:
    def raw(n: int) -> tuple[int, int]:
        xl, xh = x._win(n + 2)
        yl, yh = y._win(n + 2)
        return _floor_shift(xl + yl, 2), _ceil_shift(xh + yh, 2)

    return CReal._from_grid(raw)


def sub(x: CReal, y: CReal) -> CReal:
    def raw(n: int) -> tuple[int, int]:
        xl, xh = x._win(n + 2)
        yl, yh = y._win(n + 2)
        return _floor_shift(xl - yh, 2), _ceil_shift(xh - yl, 2)

    return CReal._from_grid(raw)


def neg(x: CReal) -> CReal:
    def raw(n: int) -> tuple[int, int]:
        lo, hi = x._win(n)
        return -hi, -lo

    return CReal._from_grid(raw)


def absolute(x: CReal) -> CReal:
    def raw(n: int) -> tuple[int, int]:
        lo, hi = x._win(n)
        if lo >= 0:
            return lo, hi
        if hi <= 0:
            return -hi, -lo
        return 0, max(-lo, hi)

    return CReal._from_grid(raw)


def mul(x: CReal, y: CReal) -> CReal:
    # width(XY) <= |X| w(Y) + |Y| w(X); operands are fetched finely enough
    # that this is below 2**-(n+1), rounding costs the other half
    def raw(n: int) -> tuple[int, int]:
        bound = x.magnitude_bound() + y.magnitude_bound()
        p = n + 1 + bound.bit_length()
        xl, xh = x._win(p)
        yl, yh = y._win(p)
        prods = (xl * yl, xl * yh, xh * yl, xh * yh)
        s = 2 * (p + GRID) - (n + GRID)
        return _floor_shift(min(prods), s), _ceil_shift(max(prods), s)

    return CReal._from_grid(raw)


ArithOp = Literal["add", "sub", "mul", "neg", "abs"]

_BINARY = {"add": add, "sub": sub, "mul": mul}
_UNARY = {"neg": neg, "abs": absolute}


def arith(op: ArithOp, x, y=None) -> CReal:
    x = to_creal(x)
    if op in _UNARY:
        if y is not None:
            raise TypeError(f"{op} takes one operand")
        return _UNARY[op](x)
    if op in _BINARY:
        if y is None:
            raise TypeError(f"{op} takes two operands")
        return _BINARY[op](x, to_creal(y))
    raise ValueError(f"unknown operation {op!r}")


class Ordering(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    WITHIN = "within"


def _resolve(x: CReal, y: CReal, eps: Fraction, meter: FuelMeter | None):
    n = 0
    while True:
        if meter is not None:
            meter.spend("cmp_resolve")
        xl, xh = x._win(n)
        yl, yh = y._win(n)
        if xh < yl:
            return Ordering.LESS, n
        if xl > yh:
            return Ordering.GREATER, n
        spread = max(xh, yh) - min(xl, yl)
        if spread * eps.denominator <= eps.numerator << (n + GRID):
            return Ordering.WITHIN, n
        n += 1


def cmp_resolve(x, y, eps, meter: FuelMeter | None = None) -> Ordering:
    """Decide ``x < y``, ``x > y`` or ``|x - y| <= eps``.

    LESS and GREATER are exact claims. WITHIN only promises the two values
    are no more than ``eps`` apart (the full band, not half of it). Takes at
    most ``ceil(log2(4/eps)) + 1`` refinements; each one is charged to
    ``meter`` if given.
    """
    eps = as_rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    return _resolve(to_creal(x), to_creal(y), eps, meter)[0]


def sign_resolve(x, eps, meter: FuelMeter | None = None) -> tuple[Ordering, Interval]:
    """``cmp_resolve(x, 0, eps)`` together with the window of ``x`` that settled it."""
    eps = as_rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    x = to_creal(x)
    verdict, n = _resolve(x, _ZERO, eps, meter)
    return verdict, x.window(n)


def _ceil_int(q: Fraction) -> int:
    return -(-q.numerator // q.denominator)


def div_apart(x, y, bound) -> CReal:
    """``x / y`` for a ``y`` certified to satisfy ``|y| > bound > 0``."""
    x, y = to_creal(x), to_creal(y)
    bound = as_rat(bound)
    if bound <= 0:
        raise ValueError("bound must be positive")
    half = bound / 2

    def raw(n: int) -> tuple[int, int]:
        # at precision p every y-window avoids (-half, half), and
        # w(X/Y) <= 2**-p * (half + |X|) / half**2 <= 2**-(n+1)
        factor = (half + x.magnitude_bound()) / (half * half)
        p = max(n + 1 + _ceil_int(factor).bit_length(), _ceil_int(1 / half).bit_length())
        xl, xh = x._win(p)
        yl, yh = y._win(p)
        # both operands share the grid 2**-(p+GRID), so the scale cancels
        e = n + GRID
        lo = min((a << e) // b for a in (xl, xh) for b in (yl, yh))
        hi = max(-((-a << e) // b) for a in (xl, xh) for b in (yl, yh))
        return lo, hi

    return CReal._from_grid(raw)
