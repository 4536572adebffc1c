#!/usr/bin/env python3
"""Run the full verification suite once and keep both renderings.

Writes <outdir>/report.txt and <outdir>/report.json (schema:
docs/report-schema.json) and exits with the verification status, so the
script doubles as a CI gate.
"""

import argparse
import pathlib
import sys

from oscquant.cli import DEFAULT_ORDER, _select_jobs, run_jobs
from oscquant.report import all_ok, render_reports_json, render_reports_text


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="verify_out", help="output directory")
    ap.add_argument("--order", type=int, default=DEFAULT_ORDER)
    ap.add_argument("--jobs", type=int, default=1, help="worker processes")
    ap.add_argument("--target", default="all", help="verification target")
    ap.add_argument("--family", default=None, help="restrict to one family")
    args = ap.parse_args(argv)

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    reports = run_jobs(_select_jobs(args.target, args.family), args.order, args.jobs)
    for name, renderer in (
        ("report.txt", render_reports_text),
        ("report.json", render_reports_json),
    ):
        dest = outdir / name
        dest.write_text(renderer(reports), encoding="utf-8")
        print(f"wrote {dest}")
    ok = all_ok(reports)
    print("verification:", "ok" if ok else "FAILED")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
