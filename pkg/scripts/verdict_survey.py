#!/usr/bin/env python3
"""Survey which torsion rules fire across random small branches.

Generates random parametrizations (monomial and binomial generators), runs
the full pipeline, and tallies verdict rules.  A quick way to see how often
the binomial bound alone settles the question.

Usage: verdict_survey.py [count] [seed]
"""

import pathlib
import random
import sys
from collections import Counter

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from branchinv.berger import verdict
from branchinv.branch import BranchSpec, analyze
from branchinv.differentials import compute
from branchinv.errors import BranchInvError


def random_spec(rng: random.Random) -> BranchSpec:
    n = rng.randint(2, 4)
    texts = []
    vals = sorted(set(rng.randint(2, 14) for _ in range(n)))
    for a in vals:
        if rng.random() < 0.4:
            b = a + rng.randint(1, 4)
            texts.append(f"t^{a}+{rng.randint(1, 3)}*t^{b}")
        else:
            texts.append(f"t^{a}")
    return BranchSpec.from_strings(texts)


def main(count: int = 60, seed: int = 1) -> int:
    rng = random.Random(seed)
    tally = Counter()
    done = 0
    while done < count:
        spec = random_spec(rng)
        try:
            ring = analyze(spec, verify_stability=False)
        except BranchInvError:
            continue
        diff = compute(ring)
        vd = verdict(diff)
        key = vd.rule if vd.rule else vd.status
        tally[key] += 1
        done += 1
    width = max(len(k) for k in tally)
    for key, cnt in tally.most_common():
        print(f"{key.ljust(width)}  {cnt}")
    return 0


if __name__ == "__main__":
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 60
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 1
    sys.exit(main(count, seed))
