"""
Tally (status, k, m) over presentations of one manifold obtained from
randomized triangulations.  Needs SnapPy (not a package dependency).

    python scripts/presentation_survey.py m015 m017 --trials 150
"""

import argparse
import collections

import snappy

from largecover.cover import Presentation
from largecover.mlift import Config, find_min_m
from largecover.words import CyclicWord, parse

SWAP = str.maketrans("abAB", "xyXY")


def survey(name, trials, max_m):
    M = snappy.Manifold(name)
    seen = {}
    for trial in range(trials):
        if trial:
            M.randomize()
        G = M.fundamental_group()
        if len(G.generators()) != 2 or len(G.relators()) != 1:
            continue
        rel = G.relators()[0].translate(SWAP)
        if rel not in seen:
            r = find_min_m(Presentation(name, CyclicWord(parse(rel))), Config(max_m=max_m))
            seen[rel] = (r.status, r.k, r.m_found)
    return seen


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("names", nargs="+")
    ap.add_argument("--trials", type=int, default=150)
    ap.add_argument("--max-m", type=int, default=6)
    args = ap.parse_args()
    for name in args.names:
        seen = survey(name, args.trials, args.max_m)
        counts = collections.Counter(seen.values())
        print(name, len(seen), "distinct relators")
        for key, n in sorted(counts.items(), key=lambda kv: str(kv[0])):
            print(f"  {key}: {n}")


if __name__ == "__main__":
    main()
