"""Command-line front end.

Exit codes: 0 success, 1 invalid hypergroup / zero function / empty grid,
2 unreadable input or bad arguments, 3 spectral failure, 4 search failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import re
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .constructors import examples_registry
from .core import DEFAULT_TOL, FiniteHypergroup, validate
from .errors import (
    CertificateInconsistency,
    DomainError,
    HypergroupError,
    SearchFailure,
    SpectralError,
    StructuralError,
)
from .extremal import EQ_TOL, SearchConfig, best_constant_search, equality_certificate, structured_scan
from .io import dumps_hypergroup, load_hypergroup, vector_from_json, vector_to_json
from .spectral import dual, dual_to_csv, dual_to_dict
from .transform import hy_norms

log = logging.getLogger("hyg")

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_SPECTRAL, EXIT_SEARCH = 0, 1, 2, 3, 4
GRID_EPS = 1e-12


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    command: str
    path: str | None = None
    f_path: str | None = None
    p: float | None = None
    grid: tuple = ()
    seed: int = 0
    restarts: int = 64
    tol: float | None = None
    out: str | None = None
    fmt: str = "json"

    def __post_init__(self):
        for p in ([self.p] if self.p is not None else []) + list(self.grid):
            if not 1 <= p <= 2:
                raise CliError(f"p must lie in [1, 2], got {p}", EXIT_PARSE)


def parse_exponent(text: str) -> float:
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def parse_grid(text: str) -> tuple:
    """'start:stop:step', endpoints inclusive within 1e-12; stop < start gives an empty grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be start:stop:step, got {text!r}")
    start, stop, step = (parse_exponent(s) for s in parts)
    if step <= 0:
        raise argparse.ArgumentTypeError("grid step must be positive")
    count = math.floor((stop - start) / step + GRID_EPS / step) + 1
    # round away representation noise such as 1.2000000000000002
    return tuple(round(start + k * step, 12) for k in range(max(count, 0)))


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _emit(text: str, out: str | None):
    if not text.endswith("\n"):
        text += "\n"
    if out:
        Path(out).write_text(text)
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def _load(path) -> FiniteHypergroup:
    try:
        return load_hypergroup(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from exc
    except StructuralError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from exc


def _load_valid(path, tol=None) -> FiniteHypergroup:
    H = _load(path)
    if tol is not None:
        H = replace(H, tol=tol)
    report = validate(H)
    if not report.ok:
        raise CliError(f"{path}: invalid hypergroup\n{report}", EXIT_INVALID)
    return H


def _dual(H):
    try:
        return dual(H)
    except SpectralError as exc:
        raise CliError(f"spectral failure: {exc}", EXIT_SPECTRAL) from exc


def _search_cfg(cfg: RunConfig) -> SearchConfig:
    return SearchConfig(restarts=cfg.restarts, seed=cfg.seed, eq_tol=cfg.tol or EQ_TOL)


def cmd_validate(cfg: RunConfig) -> int:
    H = _load(cfg.path)
    if cfg.tol is not None:
        H = replace(H, tol=cfg.tol)
    report = validate(H)
    _emit(str(report), cfg.out)
    if not report.ok:
        bad = report.failures[0]
        log.error("axiom %s failed at %s", bad.axiom, bad.witness)
        return EXIT_INVALID
    return EXIT_OK


def cmd_dual(cfg: RunConfig) -> int:
    H = _load_valid(cfg.path)
    D = _dual(H)
    text = dual_to_csv(H, D) if cfg.fmt == "csv" else _dump_json(dual_to_dict(H, D))
    _emit(text, cfg.out)
    return EXIT_OK


def _certificate_or_note(H, D, f, p, eq_tol):
    if not 1 < p < 2:
        return None, f"certificate suppressed: structure theorems need 1 < p < 2, got p = {p}"
    try:
        return equality_certificate(H, D, f, p, eq_tol=eq_tol).to_dict(H), None
    except CertificateInconsistency as exc:
        raise CliError(f"certificate inconsistency: {exc}", EXIT_SEARCH) from exc


def cmd_hy(cfg: RunConfig) -> int:
    H = _load_valid(cfg.path)
    try:
        doc = json.loads(Path(cfg.f_path).read_text())
        f = vector_from_json(doc, H.n)
    except OSError as exc:
        raise CliError(f"cannot read {cfg.f_path}: {exc.strerror}", EXIT_PARSE) from exc
    except (json.JSONDecodeError, StructuralError) as exc:
        raise CliError(f"{cfg.f_path}: {exc}", EXIT_PARSE) from exc
    if not np.any(f):
        raise CliError("f is identically zero", EXIT_INVALID)
    D = _dual(H)
    norm_f, norm_hat = hy_norms(H, D, f, cfg.p)
    cert, note = _certificate_or_note(H, D, f, cfg.p, cfg.tol or EQ_TOL)
    report = {"p": cfg.p, "normF": norm_f, "normFhat": norm_hat, "ratio": norm_hat / norm_f,
              "certificate": cert}
    if note:
        report["note"] = note
    _emit(_dump_json(report), None)
    return EXIT_OK


def cmd_search(cfg: RunConfig) -> int:
    H = _load_valid(cfg.path)
    if not 1 < cfg.p <= 2:
        raise CliError(f"search needs 1 < p <= 2, got {cfg.p}", EXIT_PARSE)
    D = _dual(H)
    code = EXIT_OK
    try:
        result = best_constant_search(H, D, cfg.p, _search_cfg(cfg))
    except SearchFailure as exc:
        log.error("%s", exc)
        result, code = exc.result, EXIT_SEARCH
    except CertificateInconsistency as exc:
        raise CliError(f"certificate inconsistency: {exc}", EXIT_SEARCH) from exc
    report = {
        "ratio": result.ratio,
        "certificate": result.certificate.to_dict(H) if result.certificate else None,
        "stats": result.summary(),
    }
    if not 1 < cfg.p < 2:
        report["note"] = f"certificate suppressed: structure theorems need 1 < p < 2, got p = {cfg.p}"
    if code != EXIT_OK:
        report["argmax"] = vector_to_json(result.argmax)
    _emit(_dump_json(report), None)
    if cfg.out:
        _emit(_dump_json(vector_to_json(result.argmax)), cfg.out)
    return code


REPORT_HEADER = ["p", "structured_ratio", "search_ratio", "verdict"]


def cmd_report(cfg: RunConfig) -> int:
    if not cfg.grid:
        raise CliError("empty p-grid", EXIT_INVALID)
    if any(p <= 1 for p in cfg.grid):
        raise CliError("report grid must lie in (1, 2]", EXIT_PARSE)
    H = _load_valid(cfg.path)
    D = _dual(H)
    search_cfg = _search_cfg(cfg)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_HEADER)
    code = EXIT_OK
    for p in cfg.grid:
        if p < 2:
            certs = structured_scan(H, D, p, eq_tol=search_cfg.eq_tol)
            best_structured = max((c.ratio for c in certs), default=float("nan"))
        else:
            best_structured = 1.0
        try:
            result = best_constant_search(H, D, p, search_cfg)
            verdict = result.certificate.verdict if result.certificate else "n/a"
        except SearchFailure as exc:
            result, verdict, code = exc.result, "SearchFailure", EXIT_SEARCH
            log.error("%s", exc)
        writer.writerow([repr(float(p)), repr(float(best_structured)),
                         repr(float(result.ratio)), verdict])
    _emit(buf.getvalue(), cfg.out)
    return code


def _slug(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", name).strip("_")


def cmd_examples(cfg: RunConfig) -> int:
    registry = examples_registry()
    if cfg.out:
        target = Path(cfg.out)
        target.mkdir(parents=True, exist_ok=True)
        for H in registry:
            path = target / f"{_slug(H.name)}.json"
            path.write_text(dumps_hypergroup(H) + "\n")
            print(path)
        return EXIT_OK
    if cfg.fmt == "json":
        _emit(_dump_json([{"name": H.name, "order": H.n, "elements": list(H.elements)} for H in registry]), None)
    else:
        for H in registry:
            print(f"{H.name}\t{H.n}\t{' '.join(H.elements)}")
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "dual": cmd_dual,
    "hy": cmd_hy,
    "search": cmd_search,
    "report": cmd_report,
    "examples": cmd_examples,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--restarts", type=int, default=64)
    common.add_argument("--tol", type=float, default=None,
                        help=f"validation tolerance for validate (default {DEFAULT_TOL:g}), "
                             f"equality tolerance elsewhere (default {EQ_TOL:g})")
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default=None)
    common.add_argument("--out", default=None)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="hyg", description="Harmonic analysis on finite commutative hypergroups.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the hypergroup axioms")
    p.add_argument("path")
    p = sub.add_parser("dual", parents=[common], help="characters and Plancherel weights")
    p.add_argument("path")
    p = sub.add_parser("hy", parents=[common], help="Hausdorff-Young ratio of one function")
    p.add_argument("path")
    p.add_argument("f_path", metavar="f")
    p.add_argument("--p", type=parse_exponent, required=True)
    p = sub.add_parser("search", parents=[common], help="numerical best-constant search")
    p.add_argument("path")
    p.add_argument("--p", type=parse_exponent, required=True)
    p = sub.add_parser("report", parents=[common], help="structured scan and search over a p-grid, as CSV")
    p.add_argument("path")
    p.add_argument("--p-grid", dest="grid", type=parse_grid, required=True)
    sub.add_parser("examples", parents=[common], help="list or export the built-in examples")
    return parser


def _configure_logging(verbose):
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.INFO if verbose else logging.WARNING)
    log.propagate = False


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    _configure_logging(args.verbose)
    default_fmt = {"dual": "csv", "report": "csv", "examples": "csv"}.get(args.command, "json")
    try:
        cfg = RunConfig(
            command=args.command,
            path=getattr(args, "path", None),
            f_path=getattr(args, "f_path", None),
            p=getattr(args, "p", None),
            grid=getattr(args, "grid", ()),
            seed=args.seed,
            restarts=args.restarts,
            tol=args.tol,
            out=args.out,
            fmt=args.fmt or default_fmt,
        )
        if cfg.restarts < 1:
            raise CliError("--restarts must be >= 1", EXIT_PARSE)
        return COMMANDS[args.command](cfg)
    except CliError as exc:
        log.error("%s", exc)
        return exc.code
    except DomainError as exc:
        log.error("%s", exc)
        return EXIT_PARSE
    except HypergroupError as exc:
        log.error("%s", exc)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
