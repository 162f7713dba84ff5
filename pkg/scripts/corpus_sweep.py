#!/usr/bin/env python3
"""Sweep the germ corpus: complements, pipeline certificates, summary stats.

usage: python scripts/corpus_sweep.py [count] [seed]
"""

import sys
from collections import Counter

from frsurf.bstar import PipelineError, gfr_certificate, reverify_certificate
from frsurf.complements import minimal_complement
from frsurf.corpus import random_corpus


def main(argv):
    count = int(argv[0]) if argv else 100
    seed = int(argv[1]) if len(argv) > 1 else 20240817
    corpus = random_corpus(seed=seed, count=count)
    levels = Counter()
    cases = Counter()
    absent = 0
    stage_fail = Counter()
    reverified = 0
    for pair in corpus:
        cert = minimal_complement(pair)
        if cert is None:
            absent += 1
            continue
        levels[(cert.level, "plt" if cert.plt_case else "non-plt")] += 1
        for p in (7, 11):
            try:
                full = gfr_certificate(pair, p, e_max=6)
            except PipelineError as err:
                stage_fail[err.stage] += 1
                continue
            cases[(full.case, full.level)] += 1
            if reverify_certificate(pair, full) == []:
                reverified += 1
    print(f"corpus: {count} germs (seed {seed})")
    print(f"complements absent: {absent}")
    print("complement levels:")
    for key in sorted(levels):
        print(f"  N={key[0]} {key[1]}: {levels[key]}")
    print("pipeline certificates by (case, level):")
    for key in sorted(cases):
        print(f"  {key[0]} N={key[1]}: {cases[key]}")
    print(f"re-verified from scratch: {reverified}")
    if stage_fail:
        print("pipeline failures by stage:")
        for stage in sorted(stage_fail):
            print(f"  {stage}: {stage_fail[stage]}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
