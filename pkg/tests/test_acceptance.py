"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are echoed again in pytest's terminal summary, so they show up
without ``-s``.
"""

import random
import time
from fractions import Fraction

import pytest

from markovhull.errors import FuelExhausted
from markovhull.geometry import LocatedLine, Point2, closed_side_oracle, noncollinearity_witness
from markovhull.hull import (
    ConvexityMode,
    brute_force_hull,
    convex_hull_constructive,
    convex_hull_oracle,
    mpvee_gadget,
    reduction_gadget_mp,
    reduction_gadget_mpvee,
    verify_certificate,
)
from markovhull.principles import BinarySeq, Parity, Sign, SignDisjunct, mpvee_binary, sign_mp, sign_mpvee
from markovhull.real_kernel import embed
from markovhull.sampling import TAMPER_KINDS, corpus, random_expression, tamper

pytestmark = pytest.mark.acceptance

REPORT: list[str] = []


def report(number, title, ok, elapsed, budget, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({elapsed:.2f}s, budget {budget}s)"
    if detail:
        line += f" {detail}"
    print(line)
    REPORT.append(line)
    assert ok, line
    assert elapsed < budget, line


@pytest.fixture(scope="module")
def corpus_hulls():
    sets = corpus(seed=2024, count=1000)
    t0 = time.perf_counter()
    hulls = [convex_hull_constructive(S, noncollinearity_witness(S)) for S in sets]
    return sets, hulls, time.perf_counter() - t0


def test_criterion_1_oracle_equivalence(corpus_hulls):
    sets, hulls, build = corpus_hulls
    t0 = time.perf_counter()
    bad = [i for i, (S, (poly, _)) in enumerate(zip(sets, hulls)) if poly.canonical() != brute_force_hull(S)]
    elapsed = build + time.perf_counter() - t0
    report(1, "constructive hull equals brute force on 1000 sets", not bad, elapsed, 30, f"mismatches={bad[:5]}")


def test_criterion_2_mpvee_gadget():
    t0 = time.perf_counter()
    five, _ = convex_hull_oracle(mpvee_gadget(Fraction(1, 2)), ConvexityMode.ALMOST_STRICT, 1000)
    four, _ = convex_hull_oracle(mpvee_gadget(Fraction(-1, 2)), ConvexityMode.ALMOST_STRICT, 1000)
    pos = reduction_gadget_mpvee(embed(Fraction(1, 2)), 1000)
    neg = reduction_gadget_mpvee(embed(Fraction(-1, 2)), 1000)
    ok = (
        len(five) == 5
        and len(four) == 4
        and pos is SignDisjunct.NON_NEGATIVE
        and neg is SignDisjunct.NON_POSITIVE
    )
    report(2, "five/four vertex dichotomy at a = 1/2, -1/2", ok, time.perf_counter() - t0, 1)


def test_criterion_3_mp_gadget():
    t0 = time.perf_counter()
    failures = []
    for base in (Fraction(1, 2), Fraction(1, 10), Fraction(1, 2**16)):
        for a in (base, -base):
            ap = reduction_gadget_mp(embed(a), 10_000)
            want = Sign.POSITIVE if a > 0 else Sign.NEGATIVE
            if ap.sign is not want or not 0 < ap.bound <= abs(a):
                failures.append((a, ap))
    report(3, "mp gadget sign and 0 < r <= |a|", not failures, time.perf_counter() - t0, 5, f"failures={failures}")


def test_criterion_4_certificate_soundness(corpus_hulls):
    sets, hulls, _ = corpus_hulls
    t0 = time.perf_counter()
    rejected_valid = [
        i for i, (S, (poly, cert)) in enumerate(zip(sets, hulls))
        if not verify_certificate(S, poly, cert, ConvexityMode.STRICT)
    ]
    rng = random.Random(4)
    accepted_tampered = []
    for i in range(100):
        S, (poly, cert) = sets[i], hulls[i]
        kind = TAMPER_KINDS[i % len(TAMPER_KINDS)]
        bad_poly, bad_cert = tamper(S, poly, cert, kind, rng)
        if verify_certificate(S, bad_poly, bad_cert, ConvexityMode.STRICT):
            accepted_tampered.append((i, kind))
    ok = not rejected_valid and not accepted_tampered
    detail = f"valid-rejected={rejected_valid[:5]} tampered-accepted={accepted_tampered[:5]}"
    report(4, "1000 valid certificates accepted, 100 tampered rejected", ok, time.perf_counter() - t0, 30, detail)


def test_criterion_5_divergence_on_zero():
    fuel = 10_000
    zero = embed(0)
    line = LocatedLine.through(Point2(Fraction(0), Fraction(1)), Point2(Fraction(1), Fraction(1)))
    on_line = Point2(Fraction(3), Fraction(1))
    calls = {
        "sign_mp": lambda: sign_mp(zero, fuel),
        "sign_mpvee": lambda: sign_mpvee(zero, fuel),
        "closed_side_oracle": lambda: closed_side_oracle(line, on_line, fuel),
        "reduction_gadget_mpvee": lambda: reduction_gadget_mpvee(zero, fuel),
        "reduction_gadget_mp": lambda: reduction_gadget_mp(zero, fuel),
    }
    t0 = time.perf_counter()
    answered = []
    for name, call in calls.items():
        try:
            answered.append((name, call()))
        except FuelExhausted:
            pass
    report(5, "exact zero exhausts fuel 10^4 everywhere", not answered, time.perf_counter() - t0, 5, f"answered={answered}")


def test_criterion_6_real_kernel_invariants():
    rng = random.Random(6)
    t0 = time.perf_counter()
    failures = []
    for t in range(10_000):
        x, exact = random_expression(rng)
        prev = None
        for n in range(33):
            w = x.window(n)
            if exact not in w or w.width > Fraction(1, 2**n) or (prev is not None and not w.subset_of(prev)):
                failures.append((t, n))
                break
            prev = w
    report(6, "10^4 expression trees: containment, width, nesting for n <= 32", not failures, time.perf_counter() - t0, 30, f"failures={failures[:5]}")


class _Counting:
    def __init__(self, k):
        self.k = k
        self.reads = 0

    def __call__(self, n):
        self.reads += 1
        return int(n == self.k)


def test_criterion_7_mpvee_binary():
    t0 = time.perf_counter()
    failures = []
    for k in range(65):
        term = _Counting(k)
        parity = mpvee_binary(BinarySeq(term, True, True), 10_000)
        if parity is not (Parity.ODD if k % 2 else Parity.EVEN) or term.reads > 2 * k + 2:
            failures.append(k)
    try:
        mpvee_binary(BinarySeq.zeros(), 10_000)
        failures.append("zeros answered")
    except FuelExhausted:
        pass
    report(7, "indicator parity within 2k+2 reads, zeros exhaust fuel", not failures, time.perf_counter() - t0, 1, f"failures={failures}")


def test_criterion_8_mode_coherence(corpus_hulls):
    sets, hulls, _ = corpus_hulls
    t0 = time.perf_counter()
    mismatches = []
    for i, (S, (poly, _)) in enumerate(zip(sets, hulls)):
        want = poly.canonical()
        for mode in (ConvexityMode.STRICT, ConvexityMode.ALMOST_STRICT):
            got, _ = convex_hull_oracle(S, mode, 100_000)
            if got.canonical() != want:
                mismatches.append((i, mode.value))
    report(8, "both oracle modes reproduce the constructive cycle", not mismatches, time.perf_counter() - t0, 60, f"mismatches={mismatches[:5]}")
