"""Run both reduction gadgets over a sweep of parameters and print the sign
each returns, the certified bound, and the fuel it took."""

import argparse
from fractions import Fraction

from markovhull.errors import FuelExhausted
from markovhull.hull import reduction_gadget_mp, reduction_gadget_mpvee
from markovhull.real_kernel import FuelMeter, embed


def sweep(max_exp):
    for e in range(0, max_exp + 1, 2):
        for s in (1, -1):
            yield Fraction(s, 2**e)
    yield Fraction(0)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-exp", type=int, default=20, help="smallest |a| is 2**-max_exp")
    ap.add_argument("--fuel", type=int, default=10_000)
    args = ap.parse_args()

    print(f"{'a':>12} {'mpvee':>13} {'fuel':>6} {'mp':>9} {'r':>14} {'fuel':>6}")
    for a in sweep(args.max_exp):
        cols = [f"{str(a):>12}"]
        for gadget in (reduction_gadget_mpvee, reduction_gadget_mp):
            meter = FuelMeter(args.fuel)
            try:
                result = gadget(embed(a), meter)
            except FuelExhausted:
                cols.append(f"{'exhausted':>13}" if gadget is reduction_gadget_mpvee else f"{'exhausted':>9} {'-':>14}")
            else:
                if gadget is reduction_gadget_mpvee:
                    cols.append(f"{result.name:>13}")
                else:
                    assert 0 < result.bound <= abs(a)
                    cols.append(f"{result.sign.name:>9} {float(result.bound):>14.6g}")
            cols.append(f"{meter.spent:>6}")
        print(" ".join(cols))


if __name__ == "__main__":
    main()
