"""|S| against every bound envelope over a grid of x, k and theta.

Writes one CSV row per grid point.  Out-of-range envelopes are left empty.
"""
import argparse
import csv
import sys

import numpy as np

from mangoldt_twists.bounds import BoundConstants, EnvelopeName, all_envelopes
from mangoldt_twists.cli import parse_int_list, parse_real_list
from mangoldt_twists.phase_sum import SumParams, direct_sum
from mangoldt_twists.sieve import psi_mass


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x-grid", type=parse_real_list, default=list(np.geomspace(1e4, 1e7, 7)))
    ap.add_argument("--k-grid", type=parse_int_list, default=[1, 2, 4])
    ap.add_argument("--thetas", type=parse_real_list, default=[0.1, 0.2, 1 / 3, 0.4, 0.5])
    ap.add_argument("--alpha", type=float, default=1.0)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    consts = BoundConstants()
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["x", "k", "theta", "abs_S", "psi_mass"] + [n.value for n in EnvelopeName])
    for th in args.thetas:
        for x in args.x_grid:
            mass = psi_mass(x, workers=args.threads)
            for k in args.k_grid:
                p = SumParams(float(x), k, args.alpha, th)
                s = abs(direct_sum(p, workers=args.threads))
                envs = all_envelopes(p, consts)
                w.writerow([repr(float(x)), k, repr(th), repr(s), repr(mass)]
                           + ["" if envs[n] is None else repr(envs[n].value) for n in EnvelopeName])


if __name__ == "__main__":
    main()
