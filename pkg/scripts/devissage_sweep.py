#!/usr/bin/env python3
"""Randomized sweep of the two-layer divisor identity.

For random certified-normal chart equations the divisor of the full
covering must equal the upper layer plus the pulled-back lower layer,
and the module-length oracle must agree with the closed form on every
layer.  Run with --count/--seed to scale the sweep.
"""

import argparse
import random

from muram import devissage_check
from muram.randgen import random_normal_cyclic_kummer


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    shapes = [(2, 2, 1), (3, 2, 1), (2, 3, 1), (2, 3, 2)]
    ok = 0
    for i in range(args.count):
        p, n, m = shapes[i % len(shapes)]
        kd = random_normal_cyclic_kummer(rng, p, n)
        rep = devissage_check(kd, m, include_infinity=True, with_oracle=True)
        status = "ok" if rep.equal and rep.oracle_agrees else "FAIL"
        ok += status == "ok"
        print(
            f"p={p} n={n} m={m}  f={str(kd.factors[0]):<24} "
            f"total {str(rep.total):<28} = upper {str(rep.upper):<22} "
            f"+ {p ** (n - m)} * lower {str(rep.lower):<20} [{status}]"
        )
    print(f"\n{ok}/{args.count} identities verified")


if __name__ == "__main__":
    main()
