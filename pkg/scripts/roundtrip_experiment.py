"""Detector round trip over seeded random conjugators.

Conjugates {diag(2,1,1/2), B} by a random element for each seed, runs the
detector and tabulates verdicts and certificate defects. With --near-miss
the companion is nudged off the group first, and any certified positive
verdict is counted as a false certificate.

    python scripts/roundtrip_experiment.py --seeds 200 --near-miss 1e-3
"""

import argparse
import collections
import time

import numpy as np
from scipy.linalg import expm

from chgeom.detector import detect
from chgeom.fixtures import B_BLOCK, B_REAL, LOX_A, conjugated, random_element, random_lie_algebra
from chgeom.isometries import GroupElement
from chgeom.words import GroupPresentation


def run(base, seeds, near_miss, scale):
    verdicts = collections.Counter()
    defects = []
    for seed in range(seeds):
        rng = np.random.default_rng(seed)
        q = random_element(rng, scale=scale)
        b = base
        if near_miss:
            x = random_lie_algebra(rng)
            b = base @ GroupElement(expm(near_miss * x / np.linalg.norm(x)))
        v = detect(GroupPresentation.trusted(conjugated([LOX_A, b], q)))
        verdicts[v.kind] += 1
        cert = getattr(v, "certification", None)
        if cert is not None:
            defects.append(cert.max_defect)
    return verdicts, defects


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=100)
    ap.add_argument("--scale", type=float, default=1.0, help="size of the random conjugator")
    ap.add_argument("--near-miss", type=float, default=0.0)
    args = ap.parse_args()

    print(f"{'group':8} {'verdicts':42} {'max defect':>12} {'seconds':>8}")
    for name, base in (("real", B_REAL), ("block", B_BLOCK)):
        t0 = time.perf_counter()
        verdicts, defects = run(base, args.seeds, args.near_miss, args.scale)
        worst = f"{max(defects):.2e}" if defects else "-"
        summary = ", ".join(f"{k}={n}" for k, n in sorted(verdicts.items()))
        print(f"{name:8} {summary:42} {worst:>12} {time.perf_counter() - t0:8.2f}")


if __name__ == "__main__":
    main()
