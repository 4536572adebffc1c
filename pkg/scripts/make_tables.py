#!/usr/bin/env python3
"""Regenerate the three published tables in every output format.

Each table is recomputed from first principles, diffed against the bundled
fixture transcription, and written to <outdir>/table_<N>.<ext>.  Exits
nonzero if any cell mismatches.
"""

import argparse
import pathlib
import sys

from oscquant.cli import main as cli_main

FORMATS = {"text": "txt", "json": "json", "latex": "tex"}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="tables_out", help="output directory")
    ap.add_argument("--order", type=int, default=None, help="diff order for table III")
    args = ap.parse_args(argv)

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for which in ("I", "II", "III"):
        for fmt, ext in FORMATS.items():
            dest = outdir / f"table_{which}.{ext}"
            cmd = ["tables", "--which", which, "--format", fmt, "--out", str(dest)]
            if args.order is not None:
                cmd += ["--order", str(args.order)]
            code = cli_main(cmd)
            print(f"table {which} ({fmt}) -> {dest}  [exit {code}]")
            worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
