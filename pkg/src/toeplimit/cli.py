"""Command-line interface: ``toeplimit <command> --symbol FILE [options]``."""
from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from .algebraic import MEMBERSHIP_TOL, subset
from .errors import ConvergenceError, FrameError, ToeplimitError
from .hausdorff import error_certificate
from .io import dumps, load_symbol, points_csv, svg_figure, write_text
from .limitset import SweepConfig, compute_basic, compute_sweep
from .spectrum import rho_bounds

log = logging.getLogger("toeplimit")

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2


class _InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toeplimit", description="Limit sets of banded Toeplitz matrices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, pipeline=True):
        sp.add_argument("--symbol", required=True, help="symbol JSON file")
        sp.add_argument("--out", help="output directory (default: print to stdout)")
        sp.add_argument("-v", "--verbose", action="store_true")
        if not pipeline:
            return
        sp.add_argument("--n", type=int, default=100, help="number of sampled rho values")
        sp.add_argument("--m", type=int, default=1000, help="number of sampled v values")
        sp.add_argument("--l", type=int, default=None, help="sweep grid size (default 250)")
        sp.add_argument("--sweeps", type=int, default=None, help="sweep iterations (default 2)")
        sp.add_argument("--algorithm", choices=("basic", "sweep"), default=None,
                        help="default: sweep if --l or --sweeps is given, else basic")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--rho-sampling", choices=("uniform", "inverse"), default="uniform")
        sp.add_argument("--cbound", choices=("rigorous", "sampled"), default="rigorous")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--svg", action="store_true", help="also write an SVG figure")

    common(sub.add_parser("bounds", help="print the rho interval"), pipeline=False)
    s = sub.add_parser("subset", help="certified points (CSV)")
    common(s, pipeline=False)
    s.add_argument("--phi-count", type=int, default=1000)
    s.add_argument("--tol", type=float, default=MEMBERSHIP_TOL)
    s.add_argument("--svg", action="store_true")
    common(sub.add_parser("polygon", help="approximating polygon (region JSON)"))
    common(sub.add_parser("superset", help="approximating superset (region JSON)"))
    c = sub.add_parser("certify", help="Hausdorff error certificate (JSON)")
    common(c)
    c.add_argument("--phi-count", type=int, default=1000)
    c.add_argument("--tol", type=float, default=MEMBERSHIP_TOL)
    c.add_argument("--sides", type=int, default=20)
    c.add_argument("--rel-tol", type=float, default=1e-3)
    return p


def _config(a) -> tuple[SweepConfig, str]:
    algo = a.algorithm or ("sweep" if (a.l is not None or a.sweeps is not None) else "basic")
    cfg = SweepConfig(n=max(a.n, 1), m=a.m, l=a.l if a.l is not None else 250,
                      sweeps=a.sweeps if a.sweeps is not None else min(2, max(a.n, 1)), seed=a.seed,
                      rho_sampling=a.rho_sampling, cbound=a.cbound, threads=a.threads)
    return cfg, algo


def _emit(a, name: str, text: str):
    if a.out:
        out = Path(a.out)
        out.mkdir(parents=True, exist_ok=True)
        write_text(out / name, text)
    else:
        sys.stdout.write(text)


def _svg(a, name: str, text: str):
    out = Path(a.out) if a.out else Path(".")
    out.mkdir(parents=True, exist_ok=True)
    write_text(out / name, text)


def _run(a) -> int:
    b = load_symbol(a.symbol)
    if a.command == "bounds":
        iv = rho_bounds(b)
        _emit(a, "bounds.json", dumps({"rho_l": iv.rho_l, "rho_h": iv.rho_h}))
        return EXIT_OK
    if a.command == "subset":
        sp = subset(b, a.phi_count, a.tol)
        _emit(a, "subset.csv", points_csv(sp.points))
        if a.svg:
            _svg(a, "subset.svg", svg_figure(points=sp.points))
        return EXIT_OK
    if a.n < 0:
        raise _InputError("--n must be >= 0")
    cfg, algo = _config(a)
    if a.command == "certify":
        cert = error_certificate(b, cfg, a.phi_count, algorithm=algo, sides=a.sides,
                                 rel_tol=a.rel_tol, tol=a.tol)
        _emit(a, "certificate.json", dumps(cert))
        return EXIT_OK
    t0 = time.perf_counter()
    if algo == "basic":
        res = compute_basic(b, a.n, a.m, rho_sampling=a.rho_sampling, cbound=a.cbound)
    else:
        res = compute_sweep(b, cfg)
    log.info("%s computed in %.2f s", a.command, time.perf_counter() - t0)
    region = res.polygon if a.command == "polygon" else res.superset
    _emit(a, f"{a.command}.json", dumps(region.to_json()))
    if a.svg:
        if a.command == "polygon":
            fig = svg_figure(superset=None, polygon=res.polygon)
        else:
            fig = svg_figure(superset=res.superset, polygon=res.polygon)
        _svg(a, f"{a.command}.svg", fig)
    if a.out:
        diag = {k: v for k, v in res.diagnostics.items()}
        write_text(Path(a.out) / f"{a.command}.diagnostics.json", dumps(diag))
    return EXIT_OK


def run(argv=None) -> int:
    try:
        a = build_parser().parse_args(argv)
    except _InputError as exc:
        print(f"toeplimit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    logging.basicConfig(level=logging.INFO if getattr(a, "verbose", False) else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return _run(a)
    except (ConvergenceError, FrameError) as exc:
        print(f"toeplimit: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ToeplimitError, _InputError, OSError, ValueError) as exc:
        print(f"toeplimit: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())
