#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Compare homomorphism counts from non-planar connected patterns into G_E8 and
G^w, looking for a pattern that separates the pair directly.

Usage:
    python scripts/explore_nonplanar.py --nmax 6
    python scripts/explore_nonplanar.py --nmax 6 --threads 4 --out sweep.txt
"""

import argparse
import logging
import os
import sys

# ---------------------------------------------------------------------------
# Add src/ to path so we can import the application modules
# ---------------------------------------------------------------------------
_SCRIPT_DIR = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(_SCRIPT_DIR, "..", "src"))

from homcount import nonplanar_sweep                              # noqa: E402
from roots import build_Gw, build_orthogonality_graph, default_partition, default_w_choice  # noqa: E402
from workers import resolve_threads                               # noqa: E402

logger = logging.getLogger("explore_nonplanar")


def main():
    parser = argparse.ArgumentParser(description="Non-planar hom-count sweep for the E8 pair")
    parser.add_argument("--nmax", type=int, default=6, help="largest pattern size (5..7)")
    parser.add_argument("--threads", type=int, default=None, help="worker threads")
    parser.add_argument("--out", default=None, help="write the profile text here")
    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    partition = default_partition()
    g1 = build_orthogonality_graph(partition.lines)
    g2 = build_Gw(partition.lines, partition, default_w_choice())

    report = nonplanar_sweep(g1, g2, args.nmax, resolve_threads(args.threads))
    text = report.to_text()
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)

    print(f"\n{len(report.rows)} non-planar patterns, {len(report.differences)} distinguish the pair "
          f"({report.seconds:.1f}s)")
    for row in report.differences:
        print(f"  {row.pattern_id}: {row.count_left} vs {row.count_right}")


if __name__ == "__main__":
    main()
