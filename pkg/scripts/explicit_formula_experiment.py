"""Direct sum against the zero-sum approximation for several truncation heights.

Example:
    python scripts/explicit_formula_experiment.py --zeros .cache/zeros_10500.txt \
        --x 1e4 --theta 1/3 --T 100,300,1000,3000,10000
"""
import argparse
import sys
import time

from mangoldt_twists.cli import parse_int, parse_real, parse_real_list
from mangoldt_twists.explicit import compare
from mangoldt_twists.phase_sum import SumParams
from mangoldt_twists.zeros import load_zeros


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--zeros", required=True)
    ap.add_argument("--x", type=parse_real, default=1e4)
    ap.add_argument("--k", type=parse_int, default=1)
    ap.add_argument("--alpha", type=parse_real, default=1.0)
    ap.add_argument("--theta", type=parse_real, default=1 / 3)
    ap.add_argument("--T", type=parse_real_list, default=[100, 300, 1000, 3000, 10000])
    args = ap.parse_args(argv)

    zeros = load_zeros(args.zeros)
    params = SumParams(args.x, args.k, args.alpha, args.theta)
    t0 = time.perf_counter()
    report = compare(params, zeros, args.T)
    sys.stdout.write(report.to_csv())
    print(f"# {len(zeros.up_to(max(args.T)))} zeros, {time.perf_counter() - t0:.1f} s", file=sys.stderr)
    for row in report.rows:
        print(f"T={row.T:>8g}  |diff|={row.abs_diff:10.4g}  ratio={row.ratio:.2e}", file=sys.stderr)


if __name__ == "__main__":
    main()
