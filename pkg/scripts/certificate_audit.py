"""Ratio of |zero-term integral| to its derivative-test certificate on random specs.

Prints the worst ratio per regime and lists every spec above the audit constant.
"""
import argparse
from collections import defaultdict

import numpy as np

from mangoldt_twists.oscillatory import (CERTIFICATE_AUDIT, OscIntegralSpec, derivative_test_bound,
                                         zero_term_integral)
from mangoldt_twists.phase_sum import SumParams


def draw(rng, lx_max):
    x = 10 ** rng.uniform(1, lx_max)
    theta = rng.uniform(0.1, 0.9)
    k = int(rng.integers(1, 6))
    alpha = rng.choice([-1.0, 1.0]) * 10 ** rng.uniform(-1, 0.5)
    beta = rng.uniform(0.5, 1.0)
    gamma = rng.choice([-1.0, 1.0]) * 10 ** rng.uniform(-1, 4) if rng.random() < 0.8 else 0.0
    return OscIntegralSpec(beta, float(gamma), SumParams(x, k, float(alpha), theta))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=20240611)
    ap.add_argument("--log-x-max", type=float, default=5.0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    worst = defaultdict(float)
    findings = []
    for _ in range(args.n):
        spec = draw(rng, args.log_x_max)
        cert = derivative_test_bound(spec)
        r = abs(zero_term_integral(spec)) / cert.value
        worst[cert.regime.value] = max(worst[cert.regime.value], r)
        if r > CERTIFICATE_AUDIT:
            findings.append((r, spec))
    for regime, r in sorted(worst.items()):
        print(f"{regime:24s} max ratio {r:.3f}")
    print(f"{len(findings)} findings above {CERTIFICATE_AUDIT}")
    for r, spec in sorted(findings, key=lambda f: -f[0]):
        print(f"  ratio {r:.3f}  {spec}")


if __name__ == "__main__":
    main()
