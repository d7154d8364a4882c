"""Command-line entry point.

Every subcommand writes ``{"meta": <run config>, "data": <payload>}`` as
JSON, or a flat CSV table, to ``--out`` (default: stdout). Floats carry 17
significant digits and complex numbers are written as ``{"re": .., "im": ..}``
so identical invocations give byte-identical files.

CSV columns:
  spectrum  re,im
  action    re,im,nodes_used,last_delta,contour_radius
  solve     j,variant,re,im,iterations,final_residual,outside_window,error
  compare   exact_re,exact_im,approx_re,approx_im,distance
  sweep     k,max_error

Exit status: 0 on success, 1 on a configuration error, 2 on a numerical
failure (the error class name is echoed on stderr).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .action import EPS_MAX, action_integral
from .bs import SEED_LIMIT, VARIANTS, bs_solve, bs_spectrum
from .compare import compare_pipeline, convergence_study
from .errors import SpectralError
from .spectra import eigenvalues
from .svg import scatter_svg
from .symbols import operator_matrix


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    k: int | None = None
    eps: float | None = None
    variant: str | None = None
    window: float | None = None
    quad_tol: float = 1e-12
    output_path: str | None = None
    output_format: str = "json"

    def echo(self) -> dict:
        # output location is not part of the result
        return {key: val for key, val in self.__dict__.items()
                if key not in ("output_path", "output_format") and val is not None}


def _num(x) -> str:
    x = float(x)
    if not math.isfinite(x):
        return "null"
    if x == 0:
        x = 0.0
    return format(x, ".17g")


def dumps(obj, indent: int = 0) -> str:
    """JSON with 17-significant-digit floats and complex numbers as {re, im}."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return dumps({"re": obj.real, "im": obj.imag}, indent)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [pad + dumps(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv(header, rows) -> str:
    def cell(v):
        if v is None:
            return ""
        if isinstance(v, bool):
            return str(v).lower()
        if isinstance(v, (float, np.floating)):
            return "" if not math.isfinite(v) else _num(v)
        return str(v).replace(",", ";")
    lines = [",".join(header)] + [",".join(cell(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bstoeplitz", description=__doc__,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(sp, formats=("json", "csv"), default="json"):
        sp.add_argument("--out", default=None, help="output file (default: stdout)")
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--quad-tol", type=float, default=1e-12, help="action quadrature tolerance")

    sp = sub.add_parser("spectrum", help="exact eigenvalues of T, S or the ladder operator")
    sp.add_argument("--family", choices=("T", "S", "ladder"), required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--eps", type=float, default=0.0)
    common(sp, default="csv")

    sp = sub.add_parser("action", help="complex action I(lam, eps)")
    sp.add_argument("--lambda-re", type=float, required=True)
    sp.add_argument("--lambda-im", type=float, default=0.0)
    sp.add_argument("--eps", type=float, default=0.0)
    sp.add_argument("--radius-scale", type=float, default=1.0)
    common(sp)

    sp = sub.add_parser("solve", help="Bohr-Sommerfeld solutions")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--eps", type=float, default=0.0)
    sp.add_argument("--variant", choices=VARIANTS, default="principal")
    sp.add_argument("--j", type=int, default=None, help="single quantum number (default: whole window)")
    sp.add_argument("--window", type=float, default=0.8)
    common(sp)

    sp = sub.add_parser("compare", help="exact spectrum against Bohr-Sommerfeld solutions")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--eps", type=float, default=0.0)
    sp.add_argument("--variant", choices=VARIANTS, default="principal")
    sp.add_argument("--window", type=float, default=0.8)
    common(sp, formats=("json", "csv", "svg"))

    sp = sub.add_parser("sweep", help="error against k and fitted convergence slope")
    sp.add_argument("--ks", default="20,40,80,160")
    sp.add_argument("--eps", type=float, default=0.2)
    sp.add_argument("--variant", choices=VARIANTS, default="principal")
    sp.add_argument("--window", type=float, default=0.8)
    sp.add_argument("--workers", type=int, default=4)
    common(sp)

    sp = sub.add_parser("plot", help="SVG scatter of a compare JSON report")
    sp.add_argument("--input", required=True)
    sp.add_argument("--out", default=None)
    sp.add_argument("--title", default=None)
    return p


def _validate(args) -> RunConfig:
    cfg = RunConfig(args.subcommand, output_path=getattr(args, "out", None),
                    output_format=getattr(args, "format", "svg"))
    if hasattr(args, "quad_tol"):
        if not (args.quad_tol > 0 and math.isfinite(args.quad_tol)):
            raise ConfigError("--quad-tol must be a positive number")
        cfg.quad_tol = args.quad_tol
    if hasattr(args, "eps"):
        if not (math.isfinite(args.eps) and abs(args.eps) <= EPS_MAX):
            raise ConfigError(f"--eps must satisfy |eps| <= {EPS_MAX}")
        cfg.eps = args.eps
    if hasattr(args, "k"):
        min_k = 3 if getattr(args, "family", None) == "S" or getattr(args, "variant", None) == "halfform" else 2
        if args.k < min_k:
            raise ConfigError(f"--k must be >= {min_k}")
        if args.k > 2000:
            raise ConfigError("--k above 2000 is outside the dense-matrix budget")
        cfg.k = args.k
    if hasattr(args, "window"):
        if not 0 < args.window <= SEED_LIMIT:
            raise ConfigError(f"--window must lie in (0, {SEED_LIMIT}]")
        cfg.window = args.window
    if hasattr(args, "variant"):
        cfg.variant = args.variant
    return cfg


def _spectrum(args, cfg):
    mat = operator_matrix(args.family, args.k, args.eps)
    vals = eigenvalues(mat).eigenvalues
    meta = {**cfg.echo(), "family": args.family}
    if cfg.output_format == "csv":
        return _csv(("re", "im"), [(v.real, v.imag) for v in vals])
    return dumps({"meta": meta, "data": {"eigenvalues": list(vals)}}) + "\n"


def _action(args, cfg):
    lam = complex(args.lambda_re, args.lambda_im)
    res = action_integral(lam, args.eps, tol=cfg.quad_tol, radius_scale=args.radius_scale)
    meta = {**cfg.echo(), "lambda": lam, "radius_scale": args.radius_scale}
    if cfg.output_format == "csv":
        return _csv(("re", "im", "nodes_used", "last_delta", "contour_radius"),
                    [(res.value.real, res.value.imag, res.nodes_used, res.last_delta, res.contour_radius)])
    data = {"value": res.value, "nodes_used": res.nodes_used, "last_delta": res.last_delta,
            "contour_radius": res.contour_radius, "homotopy_steps": res.homotopy_steps}
    return dumps({"meta": meta, "data": data}) + "\n"


def _solution_dict(s):
    return {"j": s.j, "variant": s.variant, "lambda": s.lam, "iterations": s.iterations,
            "final_residual": s.final_residual, "continuation_steps": s.continuation_steps,
            "outside_window": s.outside_window, "error": s.error}


def _solve(args, cfg):
    if args.j is not None:
        sols = [bs_solve(args.k, args.eps, args.j, args.variant, cfg.quad_tol)]
    else:
        sols = bs_spectrum(args.k, args.eps, args.variant, args.window, cfg.quad_tol)
    meta = {**cfg.echo(), "j": args.j}
    if cfg.output_format == "csv":
        return _csv(("j", "variant", "re", "im", "iterations", "final_residual", "outside_window", "error"),
                    [(s.j, s.variant, s.lam.real, s.lam.imag, s.iterations, s.final_residual,
                      s.outside_window, s.error) for s in sols])
    return dumps({"meta": meta, "data": {"solutions": [_solution_dict(s) for s in sols]}}) + "\n"


def report_payload(rep) -> dict:
    return {
        "pairs": [{"exact": e, "approx": a, "distance": d} for e, a, d in rep.pairs],
        "max_error": rep.max_error,
        "mean_error": rep.mean_error,
        "exact_count_in_window": rep.exact_count_in_window,
        "bs_count_in_window": rep.bs_count_in_window,
        "exact": list(rep.exact),
        "approx": list(rep.approx),
    }


def _compare(args, cfg):
    rep = compare_pipeline(args.k, args.eps, args.variant, args.window, cfg.quad_tol)
    if cfg.output_format == "csv":
        return _csv(("exact_re", "exact_im", "approx_re", "approx_im", "distance"),
                    [(e.real, e.imag, a.real, a.imag, d) for e, a, d in rep.pairs])
    if cfg.output_format == "svg":
        return scatter_svg(rep.exact, rep.approx, _title(cfg.echo()))
    return dumps({"meta": cfg.echo(), "data": report_payload(rep)}) + "\n"


def _sweep(args, cfg):
    try:
        ks = [int(s) for s in args.ks.split(",") if s.strip()]
    except ValueError:
        raise ConfigError(f"--ks must be a comma-separated list of integers, got {args.ks!r}") from None
    min_k = 3 if args.variant == "halfform" else 2
    if len(ks) < 3 or any(b <= a for a, b in zip(ks, ks[1:])) or ks[0] < min_k:
        raise ConfigError(f"--ks must be strictly increasing, at least 3 values, all >= {min_k}")
    res = convergence_study(ks, args.eps, args.variant, args.window, cfg.quad_tol,
                            workers=max(1, args.workers))
    meta = {**cfg.echo(), "ks": ks}
    if cfg.output_format == "csv":
        return _csv(("k", "max_error"), res["table"])
    data = {"table": [{"k": k, "max_error": e} for k, e in res["table"]], "slope": res["slope"]}
    return dumps({"meta": meta, "data": data}) + "\n"


def _title(meta) -> str:
    keys = ("variant", "k", "eps", "window")
    return ", ".join(f"{key}={meta[key]}" for key in keys if key in meta)


def _complex(d) -> complex:
    return complex(d["re"] if d["re"] is not None else math.nan,
                   d["im"] if d["im"] is not None else math.nan)


def _plot(args, cfg):
    try:
        with open(args.input, encoding="utf-8") as fh:
            doc = json.load(fh)
        data = doc["data"]
        exact = [_complex(v) for v in data["exact"]]
        approx = [_complex(v) for v in data["approx"]]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"cannot read compare report {args.input!r}: {exc}") from None
    title = args.title if args.title is not None else _title(doc.get("meta", {}))
    return scatter_svg(exact, approx, title)


_HANDLERS = {"spectrum": _spectrum, "action": _action, "solve": _solve,
             "compare": _compare, "sweep": _sweep, "plot": _plot}


def run(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
        cfg = _validate(args)
        text = _HANDLERS[args.subcommand](args, cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SpectralError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
