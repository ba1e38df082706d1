#!/usr/bin/env python3
"""Fuzz integral twisted tables for places with no unit anti-diagonal.

Cyclic coverings always have one (the top index works for untwisted
data), so the interesting question is whether twisted product gradings
can lose the property.  Candidates found here are integral valid tables
whose every anti-diagonal contains a non-unit at some place; whether
they come from globally normal coverings is a separate question the
tool does not decide.  Equivalent to `muram gorenstein --search`.
"""

import argparse
import json

from muram.cli import _gorenstein_search


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    report, _ = _gorenstein_search(args)
    print(f"checked {report['checked_places']} (model, place) pairs")
    hits = report["counterexamples"]
    print(f"non-Gorenstein candidates found: {len(hits)}")
    for hit in hits[:5]:
        print(json.dumps(hit, sort_keys=True))


if __name__ == "__main__":
    main()
