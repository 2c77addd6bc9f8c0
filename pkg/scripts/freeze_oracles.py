"""Freeze dense-Simpson reference values for the oscillatory-integral grid.

Writes tests/data/quadrature_oracles.json.  The oracle integrates in the
original variable u with 10^6 Simpson intervals and shares no code with the
package quadrature.
"""
import argparse
import itertools
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from oracles import simpson_oracle  # noqa: E402

GAMMAS = [0.0, 14.134725, 100.0, 10_000.0]
THETAS = [0.25, 0.5]
XS = [100.0, 10_000.0]


def grid():
    """16 zero-term cases (beta 1/2) and 4 main-term cases (beta 1, gamma 0); k = alpha = 1."""
    for g, th, x in itertools.product(GAMMAS, THETAS, XS):
        yield {"kind": "zero", "beta": 0.5, "gamma": g, "theta": th, "x": x, "k": 1, "alpha": 1.0}
    for th, x in itertools.product(THETAS, XS):
        yield {"kind": "main", "beta": 1.0, "gamma": 0.0, "theta": th, "x": x, "k": 1, "alpha": 1.0}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(ROOT / "tests" / "data" / "quadrature_oracles.json"))
    ap.add_argument("--points", type=int, default=10**6)
    args = ap.parse_args(argv)
    cases = []
    for c in grid():
        v = simpson_oracle(c["beta"], c["gamma"], c["x"], c["k"] * c["alpha"], c["theta"], args.points)
        cases.append({**c, "re": v.real, "im": v.imag})
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.out).write_text(json.dumps({"points": args.points, "cases": cases}, indent=1) + "\n")
    print(f"wrote {len(cases)} cases to {args.out}")


if __name__ == "__main__":
    main()
