"""Run every verification suite with default bounds and print one line per suite.

Usage: python scripts/run_acceptance.py [--json report.json]
"""

import argparse
import sys
import time

from cuntzcar.suites import SUITES, run_suite


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--json", help="write the combined report here")
    args = parser.parse_args(argv)
    start = time.perf_counter()
    report = run_suite("all")
    for name in SUITES:
        group = [c for c in report.cases if c.id.startswith(name + "/")]
        counts = {s: sum(c.status == s for c in group) for s in ("pass", "fail", "conflict")}
        status = "PASS" if counts["fail"] == 0 else "FAIL"
        print(f"{status} {name:14s} pass={counts['pass']:5d} fail={counts['fail']} conflict={counts['conflict']}")
    for case in report.failures:
        print(f"  failed {case.id}: {case.witness}")
    print(f"total {report.summary()} in {time.perf_counter() - start:.1f} s")
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(report.to_json())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
