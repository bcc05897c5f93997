#!/usr/bin/env python3
"""Run the randomized verification suites and write per-trial reports.

    python3 scripts/run_verification.py --out runs/ --seed 0 --workers 4
"""

import argparse
import json
from pathlib import Path

from drazin_tensor import harness

DEFAULT_TRIALS = {"drazin": 1000, "matrix-tensor": 1000, "elementary": 1000, "symbolic": 20000}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("runs"))
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--suite", choices=sorted(DEFAULT_TRIALS), action="append")
    ap.add_argument("--scale", type=float, default=1.0, help="multiply default trial counts")
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    summary = {}
    for name in args.suite or DEFAULT_TRIALS:
        trials = max(1, int(DEFAULT_TRIALS[name] * args.scale))
        reports, elapsed = harness.timed(harness.run_suite, name, trials, args.seed, workers=args.workers)
        with open(args.out / f"{name}.jsonl", "w") as fh:
            for r in reports:
                fh.write(json.dumps(r.to_json(), sort_keys=True) + "\n")
        summary[name] = harness.summarize(reports, elapsed)
        s = summary[name]
        print(f"{name:14s} {s['passed']:6d}/{s['trials']:<6d} passed  {elapsed:7.1f}s")
    (args.out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return 0 if all(s["failed"] == 0 for s in summary.values()) else 1


if __name__ == "__main__":
    raise SystemExit(main())
