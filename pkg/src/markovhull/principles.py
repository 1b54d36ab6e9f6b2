"""Markov-style principles as fuel-bounded searches.

Each principle turns a promise (``not all zero``, ``x != 0`` read
negatively) into a search that is guaranteed to terminate only if the
promise is true. The budget makes every call total: when it runs out the
search raises :class:`~markovhull.errors.FuelExhausted`, which is the
honest answer, since a false promise and a short budget look the same
from inside.

``sign_mp`` and ``sign_mpvee`` run the same refinement loop. They differ
only in what they hand back: MP yields a positive rational bound on
``|x|``, the disjunctive form only which closed half-line ``x`` lies in.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from markovhull.errors import PreconditionViolated, PromiseViolation
from markovhull.real_kernel import GRID, CReal, Fuel, FuelMeter, as_meter, to_creal


@dataclass(frozen=True)
class BinarySeq:
    term: Callable[[int], int]
    promise_at_most_one: bool = False
    promise_not_all_zero: bool = False

    @classmethod
    def indicator(cls, k: int) -> BinarySeq:
        return cls(lambda n: int(n == k), True, True)

    @classmethod
    def zeros(cls) -> BinarySeq:
        """All zeros, but flagged as if it had a 1 somewhere (a false promise)."""
        return cls(lambda n: 0, True, True)


class Parity(enum.Enum):
    # EVEN: all odd terms are zero; ODD: all even terms are zero
    EVEN = "even"
    ODD = "odd"


class SignDisjunct(enum.Enum):
    NON_NEGATIVE = "nonnegative"
    NON_POSITIVE = "nonpositive"


class Sign(enum.Enum):
    POSITIVE = 1
    NEGATIVE = -1


@dataclass(frozen=True)
class Apartness:
    """Witness that ``sign * x > bound`` for a rational ``bound > 0``."""

    bound: Fraction
    sign: Sign

    def __post_init__(self):
        if self.bound <= 0:
            raise ValueError("apartness bound must be positive")


def _inspect(alpha: BinarySeq, n: int) -> int:
    t = alpha.term(n)
    if t not in (0, 1):
        raise PromiseViolation(f"term {n} is {t!r}, not a binary digit")
    return t


def mpvee_binary(alpha: BinarySeq, fuel: Fuel | FuelMeter | int) -> Parity:
    """Decide which parity class of ``alpha`` is identically zero.

    Indices are inspected in natural order 0, 1, 2, ... one fuel unit each.
    On a hit at an even index the odd neighbour is also read (fuel
    permitting) so a second 1 in the same pair is caught, keeping the
    total below ``2k + 2`` inspections.
    """
    if not (alpha.promise_at_most_one and alpha.promise_not_all_zero):
        raise PreconditionViolated("mpvee_binary needs both promises on the sequence")
    meter = as_meter(fuel)
    n = 0
    while True:
        meter.spend("mpvee_binary")
        if _inspect(alpha, n):
            break
        n += 1
    if n % 2:
        return Parity.ODD
    if meter.remaining:
        meter.spend("mpvee_binary")
        if _inspect(alpha, n + 1):
            raise PromiseViolation(f"terms {n} and {n + 1} are both 1")
    return Parity.EVEN


def _refine_until_apart(x: CReal, meter: FuelMeter, what: str) -> tuple[int, int, int]:
    n = 0
    while True:
        n += 1
        meter.spend(what)
        lo, hi = x._win(n)
        if lo > 0 or hi < 0:
            return n, lo, hi


def sign_mp(x, fuel: Fuel | FuelMeter | int) -> Apartness:
    """Markov's principle for reals: from ``not (x = 0)`` find ``|x| > r``.

    Refines ``n = 1, 2, ...`` until a window excludes 0 and returns half of
    the window's distance from 0 as the bound, so the inequality is strict.
    """
    x = to_creal(x)
    n, lo, hi = _refine_until_apart(x, as_meter(fuel), "sign_mp")
    scale = 1 << (n + GRID + 1)
    if lo > 0:
        return Apartness(Fraction(lo, scale), Sign.POSITIVE)
    return Apartness(Fraction(-hi, scale), Sign.NEGATIVE)


def sign_mpvee(x, fuel: Fuel | FuelMeter | int) -> SignDisjunct:
    """Disjunctive Markov's principle for reals: ``x >= 0`` or ``x <= 0``.

    Same search as :func:`sign_mp`; the bound it finds is thrown away on
    purpose, callers may only rely on the disjunct.
    """
    x = to_creal(x)
    _, lo, _ = _refine_until_apart(x, as_meter(fuel), "sign_mpvee")
    return SignDisjunct.NON_NEGATIVE if lo > 0 else SignDisjunct.NON_POSITIVE
