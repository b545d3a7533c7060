#!/usr/bin/env python3
"""Run the full verification campaign and write JSONL + CSV reports.

The defaults reproduce the reference corpus: 1000 seeded instances,
dimensions 2 to 6, eigenvalue spread up to 10^1.5 per matrix (condition
number at most 10^3), the standard t and p grids, and all properties.
"""

import argparse
import sys
from pathlib import Path

from matmeans.suite import CampaignConfig, run_campaign


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--count", type=int, default=1000)
    parser.add_argument("--cond", type=float, default=1.5)
    parser.add_argument("--out-dir", default="out")
    args = parser.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    config = CampaignConfig(
        master_seed=args.seed, count=args.count, cond_exponent=args.cond
    )
    report = run_campaign(
        config,
        jsonl_path=out / "report.jsonl",
        csv_path=out / "summary.csv",
    )
    for pid in config.properties:
        c = report.counts[pid]
        print(f"{pid}: pass={c['pass']} fail={c['fail']} marginal={c['marginal']}")
    print(
        f"{config.count} instances in {report.duration_seconds:.1f}s, "
        f"{report.total_failures} failures; reports in {out}/"
    )
    return 0 if report.total_failures == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
