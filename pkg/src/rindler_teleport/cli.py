"""Command-line driver: fidelity and entropy sweeps, state dumps, PDC and unit conversion.

Exit codes: 0 success, 1 usage error, 2 a computed column disagreed with its
closed form beyond tolerance.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from functools import partial
from pathlib import Path

import numpy as np

from . import __version__
from ._validation import check_n_max, check_outcome, check_qubit, check_statistics, r_grid
from .entropy import five_state_model, info_gain, sectors_for_tail
from .fock import Statistics
from .pdc import (
    SqueezeMatrix,
    pdc_vacuum,
    reduced_thermal_pdc,
    unruh_temperature_from_matrix,
    validate_bogoliubov,
)
from .relativity import (
    C_SI,
    AccelerationParams,
    omega_from_squeeze,
    squeeze_bosonic,
    squeeze_fermionic,
    unruh_temperature,
)
from .teleport import (
    fidelity_closed_form,
    rob_state,
    sector_tail,
    sector_weights,
    teleport_fidelity_report,
    conditional_amplitudes,
)

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION = 0, 1, 2
REPORT_SCHEMA = "rindler-teleport/run-report"
REPORT_SCHEMA_VERSION = 1
FIDELITY_TOL = {Statistics.BOSONIC: 1e-9, Statistics.FERMIONIC: 1e-12}
ENTROPY_TOL = 1e-10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunReport:
    command: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    parameters: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)
    timestamp: str = "unset"
    version: str = __version__

    def header_lines(self) -> list[str]:
        params = " ".join(f"{k}={v}" for k, v in self.parameters.items())
        return [
            f"# rindler-teleport {self.version} {self.command}",
            f"# parameters: {params}",
            f"# timestamp: {self.timestamp}",
            f"# columns: {','.join(self.columns)}",
        ] + [f"# {k}: {_fmt(v)}" for k, v in self.summary.items()]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("\n".join(self.header_lines()) + "\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "schema": REPORT_SCHEMA,
            "schema_version": REPORT_SCHEMA_VERSION,
            "package_version": self.version,
            "command": self.command,
            "parameters": self.parameters,
            "timestamp": self.timestamp,
            "columns": self.columns,
            "rows": self.rows,
            "summary": self.summary,
        }
        return json.dumps(doc, indent=1) + "\n"

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_csv()


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _timestamp(args) -> str:
    if getattr(args, "timestamp", None):
        return args.timestamp
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch:
        return datetime.fromtimestamp(int(epoch), tz=timezone.utc).isoformat()
    return "unset"


def _emit(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    path = Path(out)
    try:
        path.write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


def _map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _fidelity_row(r, statistics, psi, n_max, outcome):
    res = teleport_fidelity_report(statistics, r, psi, n_max, outcome, method="bruteforce")
    rho = rob_state(statistics, conditional_amplitudes(psi, outcome), r, n_max, "bruteforce")
    weights = dict(sector_weights(rho))
    w = [weights.get(n, 0.0) for n in range(1, 5)]
    return [float(r), res.corrected, res.closed_form, abs(res.corrected - res.closed_form), *w,
            res.deficit]


def cmd_fidelity(args) -> tuple[RunReport, int]:
    stats = check_statistics(args.statistics)
    psi = check_qubit(args.alpha, args.beta)
    outcome = check_outcome(args.outcome)
    n_max = check_n_max(args.n_max)
    grid = r_grid(args.r_start, args.r_stop, args.r_step, stats)
    rows = _map(partial(_fidelity_row, statistics=stats, psi=psi, n_max=n_max, outcome=outcome),
                list(grid), args.jobs)
    max_diff = max(row[3] for row in rows)
    report = RunReport(
        "fidelity",
        ["r", "fidelity", "fidelity_closed", "abs_diff", "w1", "w2", "w3", "w4", "deficit"],
        rows,
        _params(args, stats, n_max=n_max, outcome=str(outcome)),
        {"max_abs_diff": max_diff, "tolerance": FIDELITY_TOL[stats]},
        _timestamp(args),
    )
    return report, EXIT_VALIDATION if max_diff > FIDELITY_TOL[stats] else EXIT_OK


def _entropy_row(r, statistics, method, tail_tol):
    if statistics is Statistics.FERMIONIC:
        full = info_gain(statistics, r, method=method)
        closed = math.cos(r) ** 2
        return [float(r), full, closed, abs(full - closed), 2, 0.0]
    n = sectors_for_tail(r, tail_tol)
    full = info_gain(statistics, r, n, method=method)
    return [float(r), full, five_state_model(r), abs(full - five_state_model(r)), n, sector_tail(r, n)]


def cmd_entropy(args) -> tuple[RunReport, int]:
    stats = check_statistics(args.statistics)
    grid = r_grid(args.r_start, args.r_stop, args.r_step, stats)
    rows = _map(partial(_entropy_row, statistics=stats, method=args.method, tail_tol=args.tail_tol),
                list(grid), args.jobs)
    if stats is Statistics.FERMIONIC:
        columns = ["r", "dS_full", "dS_closed", "abs_diff", "n_sectors", "tail"]
        max_diff = max(row[3] for row in rows)
        summary = {"max_abs_diff": max_diff, "tolerance": ENTROPY_TOL}
        failed = max_diff > ENTROPY_TOL
    else:
        columns = ["r", "dS_full", "dS_5state", "abs_diff", "n_sectors", "tail"]
        full = np.array([row[1] for row in rows])
        increase = float(np.max(np.diff(full), initial=0.0))
        summary = {"max_increase": increase, "monotone_non_increasing": increase <= 1e-12}
        failed = increase > 1e-12
    report = RunReport("entropy", columns, rows,
                       _params(args, stats, method=args.method, tail_tol=args.tail_tol),
                       summary, _timestamp(args))
    return report, EXIT_VALIDATION if failed else EXIT_OK


def dump_document(statistics, r, outcome, psi, n_max) -> dict:
    """Receiver density operator with sector annotations and the block-tridiagonal mask."""
    stats = check_statistics(statistics)
    amps = conditional_amplitudes(psi, outcome)
    rho = rob_state(stats, amps, r, n_max, "closed")
    doc = rho.to_dict()
    totals = [sum(b) for b in rho.basis]
    sectors = {}
    for idx, n in enumerate(totals):
        sectors.setdefault(n, []).append(idx)
    weights = dict(sector_weights(rho))
    doc["sectors"] = [{"n": n, "indices": idx, "weight": weights[n]} for n, idx in sorted(sectors.items())]
    doc["block_tridiagonal_mask"] = [[int(abs(a - b) <= 1) for b in totals] for a in totals]
    doc["parameters"] = {
        "statistics": stats.value, "r": r, "outcome": str(outcome),
        "alpha": [psi.alpha.real, psi.alpha.imag], "beta": [psi.beta.real, psi.beta.imag],
        "n_max": n_max,
    }
    return doc


def cmd_dump(args) -> tuple[str, int]:
    stats = check_statistics(args.statistics)
    psi = check_qubit(args.alpha, args.beta)
    outcome = check_outcome(args.outcome)
    n_max = check_n_max(args.n_max)
    r = _single_r(args, stats)
    doc = dump_document(stats, r, outcome, psi, n_max)
    return json.dumps(doc) + "\n", EXIT_OK


def _single_r(args, stats) -> float:
    r = args.r if args.r is not None else args.r_start
    r = float(r)
    if r < 0 or (stats is Statistics.FERMIONIC and r > math.pi / 4 + 1e-15):
        raise UsageError(f"r={r} outside the allowed range for {stats.value}")
    return r


def cmd_pdc(args) -> tuple[RunReport, int]:
    s11, s21, phi = args.s11, args.s21, args.phi
    if abs(s21) >= abs(s11):
        raise UsageError("|s21| >= |s11|: non-normalizable input vacuum")
    s = SqueezeMatrix(s11, np.exp(1j * phi) * s21, np.exp(-1j * phi) * s21, s11)
    res = validate_bogoliubov(s)
    rows = [["residual_signal_norm", res.signal_norm, 0.0],
            ["residual_idler_norm", res.idler_norm, 0.0],
            ["residual_cross", res.cross, 0.0]]
    params = {"s11": s11, "s21": s21, "phi": phi, "omega": args.omega, "n_max": args.n_max,
              "natural_units": args.natural}
    if not res.valid:
        report = RunReport("pdc", ["quantity", "re", "im"], rows, params,
                           {"valid": False}, _timestamp(args))
        return report, EXIT_VALIDATION
    n_max = check_n_max(args.n_max, minimum=0)
    vac = pdc_vacuum(s, n_max)
    for n in range(min(6, n_max + 1)):
        a = vac.amplitude((n, n))
        rows.append([f"vacuum_amplitude_{n}", a.real, a.imag])
    red = reduced_thermal_pdc(s, n_max)
    for n, p in enumerate(np.real(np.diag(red.matrix))):
        rows.append([f"idler_population_{n}", float(p), 0.0])
    t_thermal = unruh_temperature_from_matrix(s, args.omega, args.natural, "thermal")
    t_printed = unruh_temperature_from_matrix(s, args.omega, args.natural, "printed")
    rows.append(["temperature_thermal", t_thermal, 0.0])
    rows.append(["temperature_printed", t_printed, 0.0])
    if s21 != 0:
        big_omega = math.log(abs(s11) / abs(s21)) / math.pi
        rows.append(["rindler_Omega", big_omega, 0.0])
        c = 1.0 if args.natural else C_SI
        a_eff = args.omega * c / big_omega
        rows.append(["rindler_acceleration", a_eff, 0.0])
        rows.append(["unruh_temperature_rindler",
                     unruh_temperature(AccelerationParams(a_eff, args.omega, c), args.natural), 0.0])
    report = RunReport("pdc", ["quantity", "re", "im"], rows, params,
                       {"valid": True, "truncation_deficit": vac.deficit}, _timestamp(args))
    return report, EXIT_OK


def cmd_convert(args) -> tuple[str, int]:
    if args.a is None or args.omega is None:
        raise UsageError("convert needs --a and --omega")
    if args.a < 0 or args.omega <= 0:
        raise UsageError("need a >= 0 and omega > 0")
    c = 1.0 if args.natural else C_SI
    params = AccelerationParams(args.a, args.omega, c)
    rb, rf = squeeze_bosonic(params), squeeze_fermionic(params)
    big_omega = params.dimensionless_frequency
    out = {
        "a": args.a,
        "omega": args.omega,
        "a_over_c": args.a / c,
        "Omega": big_omega,
        "r_bosonic": rb.r,
        "r_fermionic": rf.r,
        "log10_r_bosonic": (-math.pi * big_omega / math.log(10) if rb.r == 0 and args.a > 0
                            else (math.log10(rb.r) if rb.r > 0 else -math.inf)),
        "T_U_kelvin": unruh_temperature(AccelerationParams(args.a, args.omega, C_SI)),
        "T_U_natural": unruh_temperature(params, natural_units=True),
    }
    if 0 < rb.r and math.isfinite(big_omega):
        back = omega_from_squeeze(rb.r, Statistics.BOSONIC)
        out["roundtrip_rel_error"] = abs(back - big_omega) / big_omega
    code = EXIT_OK
    if out.get("roundtrip_rel_error", 0.0) > 1e-10:
        code = EXIT_VALIDATION
    if args.format == "json":
        return json.dumps(out, indent=1) + "\n", code
    return "".join(f"{k} = {_fmt(float(v))}\n" for k, v in out.items()), code


def _params(args, stats, **extra) -> dict:
    base = {"statistics": stats.value, "r_start": args.r_start, "r_stop": args.r_stop,
            "r_step": args.r_step}
    if hasattr(args, "alpha"):
        base.update(alpha=str(args.alpha).strip("()"), beta=str(args.beta).strip("()"))
    base.update(extra)
    return base


def _add_common(p: argparse.ArgumentParser, sweep: bool = True):
    p.add_argument("--statistics", choices=["bosonic", "fermionic"], default="bosonic")
    p.add_argument("--r-start", type=float, default=0.0)
    p.add_argument("--r-stop", type=float, default=2.0)
    p.add_argument("--r-step", type=float, default=0.05)
    p.add_argument("--n-max", type=int, default=30)
    p.add_argument("--tail-tol", type=float, default=1e-8)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--timestamp", default=None, help="provenance timestamp (default SOURCE_DATE_EPOCH)")
    if sweep:
        p.add_argument("--jobs", type=int, default=1)


def _add_qubit(p: argparse.ArgumentParser):
    p.add_argument("--outcome", default="00")
    p.add_argument("--alpha", type=complex, default=complex(2 ** -0.5))
    p.add_argument("--beta", type=complex, default=complex(2 ** -0.5))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rindler-teleport", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", default=None, help="key=value file; flags override it")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fidelity", help="fidelity sweep against the closed form")
    _add_common(p)
    _add_qubit(p)

    p = sub.add_parser("entropy", help="information-gain sweep")
    _add_common(p)
    p.add_argument("--method", choices=["numeric", "closed"], default="numeric")

    p = sub.add_parser("dump", help="write one receiver density operator as JSON")
    _add_common(p, sweep=False)
    _add_qubit(p)
    p.add_argument("--r", type=float, default=None)

    p = sub.add_parser("pdc", help="parametric down-conversion analogue")
    p.add_argument("--s11", type=float, default=1.0)
    p.add_argument("--s21", type=float, default=0.0)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--natural", action="store_true", help="hbar = c = k_B = 1")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None)
    p.add_argument("--timestamp", default=None)

    p = sub.add_parser("convert", help="acceleration and frequency to r and T_U")
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--omega", type=float, default=None)
    p.add_argument("--natural", action="store_true", help="hbar = c = k_B = 1")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out", default=None)
    return parser


def read_config(path: str | os.PathLike) -> dict[str, str]:
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.lstrip("-").replace("-", "_")] = value
    return values


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    config = read_config(known.config)
    sub_action = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for subparser in sub_action.choices.values():
        actions = {a.dest: a for a in subparser._actions}
        defaults = {}
        for key, raw in config.items():
            if key == "command":
                continue
            action = actions.get(key)
            if action is None:
                continue
            if action.const is True and action.nargs == 0:
                defaults[key] = raw.lower() in ("1", "true", "yes", "on")
            else:
                conv = action.type or str
                try:
                    defaults[key] = conv(raw)
                except ValueError:
                    raise UsageError(f"config value {key}={raw!r} is invalid") from None
                if action.choices is not None and defaults[key] not in action.choices:
                    raise UsageError(f"config value {key}={raw!r} not in {list(action.choices)}")
        subparser.set_defaults(**defaults)
    known_keys = {a.dest for sp in sub_action.choices.values() for a in sp._actions} | {"command"}
    unknown = sorted(set(config) - known_keys)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    if "command" in config and not any(a in sub_action.choices for a in argv):
        argv.insert(0, config["command"])


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        handler = {
            "fidelity": cmd_fidelity,
            "entropy": cmd_entropy,
            "dump": cmd_dump,
            "pdc": cmd_pdc,
            "convert": cmd_convert,
        }[args.command]
        result, code = handler(args)
        text = result if isinstance(result, str) else result.render(args.format)
        _emit(text, args.out)
    except (UsageError, ValueError) as exc:
        print(f"rindler-teleport: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if code == EXIT_VALIDATION:
        print("rindler-teleport: numerical validation failed", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
