"""
Command-line entry point: ``fkalg {dims,nichols,compare,factor,ybe}``.

Exit codes: 0 conclusive, 1 inconclusive or resource-limited, 2 usage error.
Budgets may also come from the environment (``FKALG_MAX_BASIS``,
``FKALG_MAX_REDUCTIONS``, ``FKALG_TIME_LIMIT``, ``FKALG_MAX_TENSOR_DIM``,
``FKALG_WORKERS``); explicit flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .braided import BraidedSpace, TensorBudgetExceeded, check_yang_baxter
from .groebner import (
    Budget, BudgetExceeded, Inconclusive, dimension, hilbert_coefficients,
    truncated_groebner,
)
from .hilbert import factor_t_numbers, numerology_report, prefix_consistency
from .linalg import DEFAULT_PRIMES, is_probable_prime
from .ncpoly import MonomialOrder
from .nichols import DEFAULT_MAX_TENSOR_DIM, nichols_dims, quadratic_kernel_compare
from .presentations import PresentationError, fk_presentation, load_presentation

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    max_degree: int | None = None
    primes: list = field(default_factory=lambda: list(DEFAULT_PRIMES))
    backend: str = "modular"
    order_seed: int | None = None
    max_basis: int | None = None
    max_reductions: int | None = None
    time_limit: float | None = None
    max_tensor_dim: int = DEFAULT_MAX_TENSOR_DIM
    workers: int = 1
    format: str = "table"
    output: str | None = None
    presentation: str | None = None
    coefficients: list | None = None
    mode: str | None = None
    depth: int | None = None
    reproducible: bool = False

    def validate(self):
        for name in ("max_basis", "max_reductions", "time_limit", "max_tensor_dim", "workers"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise UsageError(f"{name.replace('_', '-')} must be positive")
        for p in self.primes:
            if p <= 2 ** 16 or not is_probable_prime(p):
                raise UsageError(f"{p} is not a prime above 2^16")
        if self.n is not None and self.n < 3:
            raise UsageError("n must be at least 3")
        if self.max_degree is not None and self.max_degree < 0:
            raise UsageError("max-degree must be nonnegative")

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.reproducible:
            d.pop("workers")
            d.pop("output")
        return d


def _env(name, cast):
    raw = os.environ.get(name)
    if not raw:
        return None
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"bad value for {name}: {raw!r}") from None


def _primes(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fkalg", description=__doc__.splitlines()[1])
    parser.add_argument("--version", action="version", version=f"fkalg {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--reproducible", action="store_true",
                        help="omit timings and execution-only settings from the report")
    gb = argparse.ArgumentParser(add_help=False)
    gb.add_argument("--order-seed", type=int, default=None,
                    help="shuffle the generator priority with this seed")
    gb.add_argument("--max-basis", type=int, default=None)
    gb.add_argument("--max-reductions", type=int, default=None)
    gb.add_argument("--time-limit", type=float, default=None, help="seconds")
    nb = argparse.ArgumentParser(add_help=False)
    nb.add_argument("--primes", type=_primes, default=list(DEFAULT_PRIMES))
    nb.add_argument("--backend", choices=("modular", "rational", "both"), default="modular")
    nb.add_argument("--max-tensor-dim", type=int, default=None)

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("dims", parents=[common, gb], help="Hilbert series of E_n")
    p.add_argument("--n", type=int)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--presentation", help="JSON presentation file instead of E_n")

    p = sub.add_parser("nichols", parents=[common, nb], help="Nichols algebra dimensions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)

    p = sub.add_parser("compare", parents=[common, gb, nb], help="E_n against B(V_n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)

    p = sub.add_parser("factor", parents=[common], help="t-number factorisation")
    p.add_argument("coefficients", nargs="?", help="comma-separated, e.g. 1,3,4,3,1")
    p.add_argument("--series-file", help="JSON list or a dims report")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--complete", action="store_const", dest="mode", const="complete")
    mode.add_argument("--prefix", action="store_const", dest="mode", const="prefix")
    p.add_argument("--depth", type=int, default=None)

    p = sub.add_parser("ybe", parents=[common], help="check the braid relation")
    p.add_argument("--n", type=int, required=True)
    return parser


def _config(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in ("n", "max_degree", "primes", "backend", "order_seed", "max_basis",
                 "max_reductions", "time_limit", "max_tensor_dim", "workers", "format",
                 "output", "presentation", "mode", "depth", "reproducible"):
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    env = {
        "max_basis": _env("FKALG_MAX_BASIS", int),
        "max_reductions": _env("FKALG_MAX_REDUCTIONS", int),
        "time_limit": _env("FKALG_TIME_LIMIT", float),
        "max_tensor_dim": _env("FKALG_MAX_TENSOR_DIM", int),
        "workers": _env("FKALG_WORKERS", int),
    }
    for name, value in env.items():
        if value is not None and getattr(args, name, None) is None:
            setattr(cfg, name, value)
    if args.command == "factor":
        cfg.coefficients = _read_coefficients(args)
        cfg.mode = cfg.mode or "complete"
    if args.command == "dims" and cfg.presentation is None and cfg.n is None:
        raise UsageError("dims needs --n or --presentation")
    cfg.validate()
    return cfg


def _read_coefficients(args) -> list:
    if args.series_file:
        try:
            doc = json.loads(Path(args.series_file).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read series file: {exc}") from None
        if isinstance(doc, dict):
            doc = doc.get("series", {}).get("coefficients")
        values = doc
    elif args.coefficients:
        values = args.coefficients.split(",")
    else:
        raise UsageError("factor needs coefficients or --series-file")
    try:
        out = [int(str(v).strip()) for v in values]
    except (TypeError, ValueError):
        raise UsageError("coefficients must be integers") from None
    if not out:
        raise UsageError("empty coefficient list")
    return out


def _order(cfg: RunConfig, ngens: int) -> MonomialOrder:
    if cfg.order_seed is None:
        return MonomialOrder()
    priority = list(range(ngens))
    random.Random(cfg.order_seed).shuffle(priority)
    return MonomialOrder(tuple(priority))


def _run_groebner(cfg: RunConfig, report: dict, timings: dict):
    t0 = time.perf_counter()
    if cfg.presentation:
        try:
            pres = load_presentation(cfg.presentation)
        except (OSError, PresentationError) as exc:
            raise UsageError(str(exc)) from None
    else:
        pres = fk_presentation(cfg.n)
    budget = Budget(cfg.max_basis, cfg.max_reductions, cfg.time_limit)
    limited = None
    try:
        gb = truncated_groebner(pres, _order(cfg, pres.ngens), cfg.max_degree, budget, cfg.workers)
    except BudgetExceeded as exc:
        gb = exc.partial
        limited = str(exc)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    series = hilbert_coefficients(gb, gb.complete_to)
    dim = dimension(gb)
    timings["groebner"] = time.perf_counter() - t0
    report["series"] = series.to_dict()
    report["dimension"] = dim if isinstance(dim, int) else str(dim)
    report["basis_size"] = len(gb)
    report["basis_by_degree"] = [row["new_elements"] for row in gb.stats["per_degree"]]
    if limited:
        report["budget_exceeded"] = limited
    if pres.n >= 3 and not cfg.presentation:
        report["numerology"] = numerology_report(pres.n, series).to_dict()
    return series, dim, limited


def _run_nichols(cfg: RunConfig, report: dict, timings: dict):
    t0 = time.perf_counter()
    try:
        result = nichols_dims(cfg.n, cfg.max_degree, cfg.backend, cfg.primes,
                              cfg.max_tensor_dim, cfg.workers)
        limited = None
    except TensorBudgetExceeded as exc:
        result, limited = None, str(exc)
    timings["nichols"] = time.perf_counter() - t0
    if result is not None:
        report["nichols"] = result.to_dict()
        fallbacks = [k for k, d in enumerate(result.details) if d.get("fallback")]
        if fallbacks:
            report["nichols"]["rational_fallback_degrees"] = fallbacks
    else:
        report["nichols"] = None
        report["budget_exceeded"] = limited
    return result, limited


def cmd_dims(cfg: RunConfig, report: dict, timings: dict) -> int:
    _, dim, limited = _run_groebner(cfg, report, timings)
    if limited or isinstance(dim, Inconclusive):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_nichols(cfg: RunConfig, report: dict, timings: dict) -> int:
    _, limited = _run_nichols(cfg, report, timings)
    return EXIT_INCONCLUSIVE if limited else EXIT_OK


def cmd_compare(cfg: RunConfig, report: dict, timings: dict) -> int:
    series, _, limited_gb = _run_groebner(cfg, report, timings)
    nichols, limited_nb = _run_nichols(cfg, report, timings)
    t0 = time.perf_counter()
    kernel = quadratic_kernel_compare(cfg.n)
    timings["kernel"] = time.perf_counter() - t0
    report["kernel"] = kernel.to_dict() | {"summary": str(kernel)}
    table = []
    if nichols is not None:
        for d in range(min(len(nichols.dims), series.exact_to + 1)):
            e, b = series.coefficients[d], nichols.dims[d]
            table.append({"degree": d, "fk": e, "nichols": b, "equal": e == b})
    report["comparison"] = table
    all_equal = bool(table) and all(row["equal"] for row in table)
    report["all_equal"] = all_equal
    if limited_gb or limited_nb or not all_equal or kernel.verdict != "equal":
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_factor(cfg: RunConfig, report: dict, timings: dict) -> int:
    t0 = time.perf_counter()
    coeffs = cfg.coefficients
    if cfg.mode == "complete":
        res = factor_t_numbers(coeffs)
        report["factor"] = {"mode": "complete", "input": coeffs} | res.to_dict()
    else:
        depth = cfg.depth if cfg.depth is not None else len(coeffs) - 1
        if depth > len(coeffs) - 1:
            raise UsageError("depth exceeds the number of coefficients")
        res = prefix_consistency(coeffs, depth)
        report["factor"] = {"mode": "prefix", "input": coeffs} | res.to_dict()
    timings["factor"] = time.perf_counter() - t0
    return EXIT_OK


def cmd_ybe(cfg: RunConfig, report: dict, timings: dict) -> int:
    t0 = time.perf_counter()
    space = BraidedSpace(cfg.n)
    ok = check_yang_baxter(space)
    timings["ybe"] = time.perf_counter() - t0
    report["ybe"] = {"n": cfg.n, "basis_triples": space.dim ** 3, "holds": ok}
    return EXIT_OK if ok else EXIT_INCONCLUSIVE


COMMANDS = {
    "dims": cmd_dims,
    "nichols": cmd_nichols,
    "compare": cmd_compare,
    "factor": cmd_factor,
    "ybe": cmd_ybe,
}


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
    if fmt == "csv":
        return _render_csv(report)
    return _render_table(report)


def _render_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if report.get("comparison"):
        w.writerow(["degree", "fk", "nichols", "equal"])
        for row in report["comparison"]:
            w.writerow([row["degree"], row["fk"], row["nichols"], row["equal"]])
    elif report.get("series"):
        w.writerow(["degree", "coefficient"])
        for d, c in enumerate(report["series"]["coefficients"]):
            w.writerow([d, c])
    elif report.get("nichols"):
        w.writerow(["degree", "dimension"])
        for d, c in enumerate(report["nichols"]["dims"]):
            w.writerow([d, c])
    elif "factor" in report:
        f = report["factor"]
        w.writerow(["mode", "result", "detail"])
        if f["mode"] == "complete":
            ok = f["factors"] is not None
            w.writerow([f["mode"], "factored" if ok else "refuted",
                        " ".join(map(str, f["factors"])) if ok else f["refutation"]])
        else:
            w.writerow([f["mode"], "consistent" if f["consistent"] else "refuted",
                        " ".join(map(str, f["witness"])) if f["consistent"] else f["reason"]])
    elif "ybe" in report:
        w.writerow(["n", "basis_triples", "holds"])
        y = report["ybe"]
        w.writerow([y["n"], y["basis_triples"], y["holds"]])
    return buf.getvalue()


def _render_table(report: dict) -> str:
    lines = [f"fkalg {report['version']}  {report['command']}"]
    series = report.get("series")
    if series and not report.get("comparison"):
        lines.append(f"{'degree':>6}  {'dim':>12}")
        for d, c in enumerate(series["coefficients"]):
            lines.append(f"{d:>6}  {c:>12}")
        lines.append(f"exact through degree {series['exact_to']}")
        lines.append(f"dimension: {report['dimension']}")
        lines.append(f"basis size: {report['basis_size']}")
        if "numerology" in report:
            lines.append(f"numerology: {report['numerology']['status']} - {report['numerology']['message']}")
    if report.get("comparison"):
        lines.append(f"{'degree':>6}  {'E_n':>12}  {'B(V_n)':>12}  equal")
        for row in report["comparison"]:
            lines.append(f"{row['degree']:>6}  {row['fk']:>12}  {row['nichols']:>12}  {row['equal']}")
        lines.append(f"quadratic kernel: {report['kernel']['summary']}")
    elif report.get("nichols"):
        nb = report["nichols"]
        lines.append(f"{'degree':>6}  {'dim':>12}")
        for d, c in enumerate(nb["dims"]):
            lines.append(f"{d:>6}  {c:>12}")
        primes = ",".join(map(str, nb["primes_used"])) or "-"
        lines.append(f"rank backend: {nb['method']} (primes {primes})")
    if "factor" in report:
        f = report["factor"]
        if f["mode"] == "complete":
            if f["factors"] is not None:
                lines.append("product of t-numbers: {" + ",".join(map(str, f["factors"])) + "}")
            else:
                lines.append(f"refuted: {f['refutation']}")
        elif f["consistent"]:
            lines.append(f"consistent through degree {f['depth']}: witness {{{','.join(map(str, f['witness']))}}}")
        else:
            lines.append(f"refuted through degree {f['depth']}: {f['reason']}")
    if "ybe" in report:
        y = report["ybe"]
        lines.append(f"braid relation on {y['basis_triples']} basis triples: {'holds' if y['holds'] else 'FAILS'}")
    if report.get("budget_exceeded"):
        lines.append(f"budget exceeded: {report['budget_exceeded']}")
    if report.get("timings"):
        lines.append("timings: " + ", ".join(f"{k} {v:.3f}s" for k, v in sorted(report["timings"].items())))
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = _config(args)
        report = {
            "schema_version": SCHEMA_VERSION,
            "tool": "fkalg",
            "version": __version__,
            "command": cfg.command,
            "config": cfg.to_dict(),
        }
        timings = {}
        started = time.perf_counter()
        code = COMMANDS[cfg.command](cfg, report, timings)
        timings["total"] = time.perf_counter() - started
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"fkalg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report["timings"] = None if cfg.reproducible else {k: round(v, 6) for k, v in timings.items()}
    report["exit_code"] = code
    text = render(report, cfg.format)
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
