"""Command-line front end: evaluate fractional sums and products from
summand specs, run the identity suite, and emit the figure CSVs.

Exit codes: 0 success, 1 parse/domain errors (one-line diagnostic on
stderr), 2 identity-suite run with failing theorem identities. Output is
deterministic: identical argv gives byte-identical bytes.
"""
from __future__ import annotations

import argparse
import cmath
import json
import os
import sys
from dataclasses import replace

import numpy as np

from .catalog import (
    emit_figure,
    figure_csv,
    format_complex,
    get_identity,
    identity_ids,
    run_identity,
)
from .engine import (
    DEFAULT_CONFIG,
    EngineConfig,
    SumResult,
    frac_product,
    frac_sum_left,
    frac_sum_right,
)
from .errors import FracsumError, SummandSpecError
from .summands import from_spec, log_summand, parse_complex, poly_summand

ENGINE_ENV = "FRACSUM_ENGINE"

_HANDLED = (FracsumError, OSError)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; 2 is reserved for
    # identity-suite failures, so reroute through the exit-1 path.
    def error(self, message: str):
        raise _UsageError(message)


def _engine_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--n-start", type=int, default=None,
                    help="first level size n0 (default 64)")
    sp.add_argument("--levels", type=int, default=None,
                    help="number of doubling levels (default 8)")
    sp.add_argument("--order", type=int, default=None,
                    help="Richardson eliminations (default 4)")
    sp.add_argument("--tol", type=float, default=None,
                    help="convergence tolerance (default 1e-8)")


def _output_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--output", choices=("plain", "json", "csv"),
                    default="plain", help="output format")
    sp.add_argument("--path", default=None,
                    help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fracsum",
                description="fractional sums, products, and identity checks")
    sub = p.add_subparsers(dest="command", required=True)

    for name, what in (("sum", "fractional sum"), ("prod", "fractional product")):
        sp = sub.add_parser(name, help=f"evaluate a {what} over [from, to]")
        sp.add_argument("--f", required=True, metavar="SPEC",
                        help="summand family spec, e.g. recip, pow:a=0.5, "
                             "geom:q=0.5, poly:0,1")
        sp.add_argument("--from", required=True, dest="from_", metavar="C",
                        help="lower bound, complex literal A[+-Bi]")
        sp.add_argument("--to", required=True, metavar="C",
                        help="upper bound, complex literal A[+-Bi]")
        sp.add_argument("--direction", choices=("right", "left"),
                        default="right", help="tail direction (default right)")
        _engine_flags(sp)
        _output_flags(sp)

    sp = sub.add_parser("identity-run", help="run identities against closed forms")
    sp.add_argument("--id", default=None, dest="identity",
                    help="identity id (default: all)")
    _engine_flags(sp)
    _output_flags(sp)

    sp = sub.add_parser("identity-list", help="list registered identities")
    _output_flags(sp)

    sp = sub.add_parser("figure", help="emit a truncation-vs-closed-form CSV")
    sp.add_argument("--which", required=True, choices=("bd", "zeta2"))
    sp.add_argument("--path", default=None,
                    help="CSV destination (default stdout)")
    return p


def _resolve_config(args: argparse.Namespace) -> EngineConfig:
    cfg = DEFAULT_CONFIG
    raw = os.environ.get(ENGINE_ENV)
    if raw:
        parts = [t.strip() for t in raw.split(",")]
        if len(parts) != 4:
            raise _UsageError(
                f"{ENGINE_ENV} must hold 'n_start,levels,order,tol', got {raw!r}"
            )
        try:
            cfg = replace(cfg, n_start=int(parts[0]), n_levels=int(parts[1]),
                          extrap_order=int(parts[2]), tol=float(parts[3]))
        except ValueError as exc:
            raise _UsageError(f"bad {ENGINE_ENV} value {raw!r}: {exc}") from None
    over = {}
    if args.n_start is not None:
        over["n_start"] = args.n_start
    if args.levels is not None:
        over["n_levels"] = args.levels
    if args.order is not None:
        over["extrap_order"] = args.order
    if args.tol is not None:
        over["tol"] = args.tol
    if over:
        cfg = replace(cfg, **over)
    return cfg


def _emit(text: str, path: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _spec_param(spec: str, key: str) -> complex:
    for part in spec.strip().split(":")[1:]:
        if part.startswith(key + "="):
            return parse_complex(part.split("=", 1)[1])
    raise SummandSpecError(f"missing {key}= in {spec!r}")


def _product_factor(spec: str):
    """Resolve a spec to a factor summand (values f, metadata ln f)."""
    f = from_spec(spec)  # validates grammar and family first
    fam = spec.strip().split(":")[0]
    if fam == "id":
        return f
    if fam == "pow":
        # ln(nu^a) = a ln nu: the log summand's metadata, scaled
        a = _spec_param(spec, "a")
        lf = log_summand()
        return replace(lf, eval=f.eval,
                       deriv=lambda k, t, _d=lf.deriv: a * _d(k, t),
                       label=f"factor:{spec}")
    if fam == "geom":
        # ln(q^nu) = nu ln q is an exact polynomial in nu
        q = complex(_spec_param(spec, "q"))
        base = poly_summand((0.0, cmath.log(q)))
        return replace(base, eval=lambda pts: np.power(q, pts),
                       label=f"factor:{spec}")
    raise SummandSpecError(
        f"family {fam!r} carries sum metadata; the product command supports "
        "'id', 'pow:a=...', 'geom:q=...'"
    )


def _format_result(res: SumResult, mode: str) -> str:
    if mode == "plain":
        return "\n".join([
            f"value {format_complex(res.value)}",
            f"err_estimate {res.err_estimate!r}",
            f"n_used {res.n_used}",
            f"converged {'true' if res.converged else 'false'}",
        ])
    if mode == "json":
        return json.dumps({
            "value": [res.value.real, res.value.imag],
            "err_estimate": res.err_estimate,
            "n_used": res.n_used,
            "converged": res.converged,
            "levels": [[n, [v.real, v.imag]] for n, v in res.levels],
        }, indent=2)
    return (
        "value_re,value_im,err_estimate,n_used,converged\n"
        f"{res.value.real!r},{res.value.imag!r},{res.err_estimate!r},"
        f"{res.n_used},{'true' if res.converged else 'false'}"
    )


def _cmd_sum(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    f = from_spec(args.f)
    if f.label == "id":
        # as a summand the identity map is the linear polynomial
        f = poly_summand((0.0, 1.0))
    x, y = parse_complex(args.from_), parse_complex(args.to)
    run = frac_sum_left if args.direction == "left" else frac_sum_right
    _emit(_format_result(run(f, x, y, cfg), args.output), args.path)
    return 0


def _cmd_prod(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    f = _product_factor(args.f)
    x, y = parse_complex(args.from_), parse_complex(args.to)
    res = frac_product(f, x, y, cfg, left=args.direction == "left")
    _emit(_format_result(res, args.output), args.path)
    return 0


def _cmd_identity_run(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args)
    ids = identity_ids() if args.identity is None else (args.identity,)
    reports = [run_identity(i, cfg) for i in ids]
    if args.output == "plain":
        text = "\n\n".join(r.to_text() for r in reports)
    elif args.output == "json":
        text = json.dumps({"reports": [r.to_dict() for r in reports]}, indent=2)
    else:
        lines = ["identity,point,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,pass"]
        for rep in reports:
            for r in rep.records:
                lines.append(
                    f"{r.identity},{r.point},{r.lhs.real!r},{r.lhs.imag!r},"
                    f"{r.rhs.real!r},{r.rhs.imag!r},{r.abs_err!r},{r.rel_err!r},"
                    f"{'true' if r.passed else 'false'}"
                )
        text = "\n".join(lines)
    _emit(text, args.path)
    return 2 if any(rep.all_pass is False for rep in reports) else 0


def _cmd_identity_list(args: argparse.Namespace) -> int:
    idents = [get_identity(i) for i in identity_ids()]
    if args.output == "plain":
        text = "\n".join(
            f"{i.id} kind={i.kind} tol={i.tol!r} points={len(i.points)}"
            for i in idents
        )
    elif args.output == "json":
        text = json.dumps([
            {"id": i.id, "kind": i.kind, "tol": i.tol,
             "points": len(i.points), "formula": i.formula}
            for i in idents
        ], indent=2)
    else:
        text = "id,kind,tol,points\n" + "\n".join(
            f"{i.id},{i.kind},{i.tol!r},{len(i.points)}" for i in idents
        )
    _emit(text, args.path)
    return 0


def _cmd_figure(args: argparse.Namespace) -> int:
    if args.path is None:
        _emit(figure_csv(args.which), None)
    else:
        emit_figure(args.which, args.path)
    return 0


_HANDLERS = {
    "sum": _cmd_sum,
    "prod": _cmd_prod,
    "identity-run": _cmd_identity_run,
    "identity-list": _cmd_identity_list,
    "figure": _cmd_figure,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _HANDLERS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _HANDLED as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help path
        return 0 if exc.code in (None, 0) else int(exc.code)


if __name__ == "__main__":
    sys.exit(main())
