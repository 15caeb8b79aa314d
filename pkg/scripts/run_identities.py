#!/usr/bin/env python3
"""Sweep the identity catalog and print each report.

Convenience runner for interactive work; the packaged `fracsum identity-run`
command does the same job with more output formats. This script adds the
things a notebook session keeps wanting: pick identities by id, tighten or
loosen the engine in one flag, and get a one-line verdict per identity at
the end.

    python3 scripts/run_identities.py
    python3 scripts/run_identities.py --only BD ZPP --levels 9
"""

import argparse
import sys
import time

from fracsum.catalog import identity_ids, run_identity
from fracsum.engine import DEFAULT_CONFIG, EngineConfig


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", nargs="*", metavar="ID",
                    help="identity ids to run (default: all registered)")
    ap.add_argument("--n-start", type=int, default=DEFAULT_CONFIG.n_start)
    ap.add_argument("--levels", type=int, default=DEFAULT_CONFIG.n_levels)
    ap.add_argument("--order", type=int, default=DEFAULT_CONFIG.extrap_order)
    ap.add_argument("--tol", type=float, default=DEFAULT_CONFIG.tol)
    ap.add_argument("--quiet", action="store_true",
                    help="suppress per-record output, keep the verdict table")
    args = ap.parse_args()

    cfg = EngineConfig(n_start=args.n_start, n_levels=args.levels,
                       extrap_order=args.order, tol=args.tol)
    ids = tuple(args.only) if args.only else identity_ids()

    verdicts = []
    for ident in ids:
        t0 = time.perf_counter()
        rep = run_identity(ident, cfg)
        dt = time.perf_counter() - t0
        if not args.quiet:
            print(rep.to_text())
            print()
        verdicts.append((ident, rep.kind, rep.all_pass, rep.max_rel_err, dt))

    width = max(len(i) for i, *_ in verdicts)
    for ident, kind, ok, mre, dt in verdicts:
        flag = "n/a " if ok is None else ("pass" if ok else "FAIL")
        print(f"{ident:<{width}}  {kind:<10}  {flag}  "
              f"max_rel_err={mre:.3e}  {dt * 1e3:7.1f} ms")
    return 0 if all(ok in (True, None) for _, _, ok, _, _ in verdicts) else 1


if __name__ == "__main__":
    sys.exit(main())
