#!/usr/bin/env python3
"""Contrast the analyticity witness for a blow-up frequency vs the golden mean.

The fast-growth rule makes the weighted solution coefficients diverge
super-exponentially on any strictly smaller strip; the all-ones frequency
sends them to zero under the same parameters.

Usage: python3 scripts/blowup_experiment.py [Delta_prime]
"""

import sys

from smalldivlab.cohom import blowup_witness, counterexample_modes
from smalldivlab.contfrac import FrequencySpec, expand


def show(label, cf, Delta_prime):
    omega = cf.omega_float()
    delta_prime = Delta_prime / (1.0 + omega)
    n_max = min(cf.depth - 1, 10)
    ce = counterexample_modes(cf, 1.0, 1.0, n_max)
    print(f"{label}: omega ~ {omega:.9f}, delta' = {delta_prime:.6f}")
    print(
        f"  weight normalization: 2*sum(alpha) = {ce.alpha.two_sum_alpha:.9f}"
        f" (deficit {ce.alpha.deficit:.2e}), norm upper bound {ce.norm_upper:.6f}"
    )
    for pt in blowup_witness(cf, 1.0, delta_prime, 1.0, n_max):
        q = pt.q if pt.q.bit_length() < 50 else f"~2^{pt.q.bit_length()}"
        print(
            f"  n={pt.n:>2}  q_n={q:>12}  log w_n in "
            f"[{pt.log_w_lo:>14.4f}, {pt.log_w_hi:>14.4f}]"
        )
    print()


def main():
    Delta_prime = float(sys.argv[1]) if len(sys.argv) > 1 else 0.1
    fast = expand(FrequencySpec.make_rule("exp-liouville", c="0.5", a1=1), 12)
    golden = expand(FrequencySpec.golden(), 40)
    show("exp-liouville(c=0.5)", fast, Delta_prime)
    show("golden", golden, Delta_prime)


if __name__ == "__main__":
    main()
