"""Compare the constructive hull, both oracle modes and the brute-force hull
on a seeded random corpus, and report timings and fuel use."""

import argparse
import statistics
import time

from markovhull.geometry import noncollinearity_witness
from markovhull.hull import (
    ConvexityMode,
    brute_force_hull,
    convex_hull_constructive,
    convex_hull_oracle,
    verify_certificate,
)
from markovhull.sampling import corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--fuel", type=int, default=100_000)
    args = ap.parse_args()

    sets = corpus(args.seed, args.count)
    timings = {"constructive": 0.0, "brute": 0.0, "strict": 0.0, "almost-strict": 0.0}
    fuel = {"strict": [], "almost-strict": []}
    mismatches = 0
    for S in sets:
        t = time.perf_counter()
        poly, cert = convex_hull_constructive(S, noncollinearity_witness(S))
        timings["constructive"] += time.perf_counter() - t
        assert verify_certificate(S, poly, cert, ConvexityMode.STRICT)

        t = time.perf_counter()
        ref = brute_force_hull(S)
        timings["brute"] += time.perf_counter() - t
        mismatches += poly.canonical() != ref

        for mode in ConvexityMode:
            t = time.perf_counter()
            got, oc = convex_hull_oracle(S, mode, args.fuel)
            timings[mode.value] += time.perf_counter() - t
            fuel[mode.value].append(oc.fuel_used)
            mismatches += got.canonical() != ref

    print(f"sets={len(sets)} seed={args.seed} mismatches={mismatches}")
    for name, secs in timings.items():
        print(f"{name:>14}: {secs:.2f}s")
    for name, used in fuel.items():
        print(f"{name:>14} fuel: mean {statistics.mean(used):.1f}, max {max(used)}")


if __name__ == "__main__":
    main()
