"""Command-line interface.

Every subcommand is a thin wrapper around library calls; results go to
``--out`` when given, otherwise to ``$EURQM_OUTPUT_DIR/<default name>`` if
that variable is set, otherwise to stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from eurqm import __version__
from eurqm.bounds import bound_report, coles_piani_overlap_part, corollary_new, direct_sum_majorization, maassen_uffink
from eurqm.errors import CapacityError, ContractViolation, DomainError, InvariantViolation
from eurqm.harness import (
    DEFAULT_DIMS,
    DEFAULT_P_GRID,
    DEFAULT_THETA_GRID,
    P_COLUMNS,
    THETA_COLUMNS,
    Grid,
    _parse_number,
    monte_carlo_verify,
    scan_p,
    scan_theta,
    to_csv,
)
from eurqm.io import basis_to_doc, dumps, load_basis, load_state, profile_to_doc, report_to_doc, round_sig, state_to_doc
from eurqm.overlap import DEFAULT_ENUMERATION_CAP, overlap_profile
from eurqm.states import paper_bases, paper_state, theta_family, u_theta

OUTPUT_DIR_ENV = "EURQM_OUTPUT_DIR"

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_INVARIANT = 4
EXIT_CAPACITY = 5

EXIT_CODES_HELP = f"""\
exit status:
  {EXIT_OK}  success
  {EXIT_INTERNAL}  unexpected internal error
  {EXIT_USAGE}  bad command line
  {EXIT_INPUT}  unreadable or invalid input (file, matrix, parameter range)
  {EXIT_INVARIANT}  invariant or verification failure
  {EXIT_CAPACITY}  submatrix enumeration over the dimension cap

Errors are reported on stderr as one JSON line:
  {{"error": <kind>, "exit_code": <n>, "message": <text>}}
"""


class CliError(Exception):
    def __init__(self, kind: str, code: int, message: str):
        super().__init__(message)
        self.kind = kind
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", EXIT_USAGE, message)


def _emit_error(kind: str, code: int, message: str) -> int:
    line = json.dumps({"error": kind, "exit_code": code, "message": " ".join(str(message).split())})
    print(line, file=sys.stderr)
    return code


def _resolve_out(path: str | None, default_name: str) -> Path | None:
    if path:
        return Path(path)
    env = os.environ.get(OUTPUT_DIR_ENV)
    if env:
        Path(env).mkdir(parents=True, exist_ok=True)
        return Path(env) / default_name
    return None


def _write(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _bases(args):
    """(R, S, projection_distance) from --basis-r/--basis-s, --paper-bases or --theta."""
    if sum((args.basis_r is not None, args.paper_bases, args.theta is not None)) != 1:
        raise CliError("usage", EXIT_USAGE, "give exactly one of --basis-r/--basis-s, --paper-bases, --theta")
    if args.theta is not None:
        theta = _parse_number(args.theta)
        r, s = u_theta(theta)
        return r, s, theta_family(theta).projection_distance
    if args.paper_bases:
        r, s = paper_bases()
        return r, s, None
    if args.basis_s is None:
        raise CliError("usage", EXIT_USAGE, "--basis-r requires --basis-s")
    return load_basis(args.basis_r), load_basis(args.basis_s), None


def _add_basis_args(p):
    p.add_argument("--basis-r", metavar="F", help="first basis document (unitary, columns are vectors)")
    p.add_argument("--basis-s", metavar="F", help="second basis document")
    p.add_argument("--paper-bases", action="store_true", help="built-in 4-dim rational basis vs standard basis")
    p.add_argument("--theta", metavar="X", help="built-in qutrit pair U(theta), theta in [0, pi/4] (e.g. 0.3 or pi/8)")
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP, help="enumeration dimension cap")
    p.add_argument("--allow-large", action="store_true", help="enumerate submatrices beyond the cap")


def cmd_compute(args) -> int:
    if (args.state is None) == (args.paper_state is None):
        raise CliError("usage", EXIT_USAGE, "give exactly one of --state, --paper-state")
    state = load_state(args.state) if args.state else paper_state(args.paper_state)
    if args.measured:
        state = state.with_measured(args.measured)
    r, s, dist = _bases(args)
    profile = overlap_profile(r, s, cap=args.cap, allow_large=args.allow_large, projection_distance=dist)
    report = bound_report(state, r, s, profile=profile).check()
    _write(dumps(report_to_doc(report)), _resolve_out(args.out, "report.json"))
    return EXIT_OK


def cmd_overlaps(args) -> int:
    r, s, dist = _bases(args)
    profile = overlap_profile(r, s, cap=args.cap, allow_large=args.allow_large, projection_distance=dist)
    profile.check()
    doc = profile_to_doc(profile)
    doc["state_independent"] = {
        "maassen_uffink": round_sig(maassen_uffink(profile)),
        "coles_piani": round_sig(coles_piani_overlap_part(profile)),
        "corollary_new": round_sig(corollary_new(profile)),
        "direct_sum_majorization": round_sig(direct_sum_majorization(profile)),
    }
    _write(dumps(doc), _resolve_out(args.out, "overlaps.json"))
    return EXIT_OK


def _scan(args, records, columns, default_name, plot):
    out = _resolve_out(args.out, default_name)
    _write(to_csv(records, columns), out)
    if out is not None:
        meta = dict(records[0].metadata) if records else {}
        meta["columns"] = list(columns)
        meta["rows"] = len(records)
        Path(str(out) + ".meta.json").write_text(dumps(meta))
    if args.figure:
        fig_path = Path(args.figure) if args.figure != "auto" else None
        if fig_path is None:
            if out is None:
                raise CliError("usage", EXIT_USAGE, "--figure without a path needs --out or $" + OUTPUT_DIR_ENV)
            fig_path = out.with_suffix(".png")
        plot(records, fig_path)
    return EXIT_OK


def cmd_scan_p(args) -> int:
    from eurqm.plotting import plot_scan_p

    grid = Grid.parse(args.grid) if args.grid else DEFAULT_P_GRID
    return _scan(args, scan_p(grid), P_COLUMNS, "scan_p.csv", plot_scan_p)


def cmd_scan_theta(args) -> int:
    from eurqm.plotting import plot_scan_theta

    grid = Grid.parse(args.grid) if args.grid else DEFAULT_THETA_GRID
    return _scan(args, scan_theta(grid), THETA_COLUMNS, "scan_theta.csv", plot_scan_theta)


def parse_dims(text: str):
    """``"2x1,3x2"`` -> ``((2, 1), (3, 2))``."""
    out = []
    for item in text.split(","):
        try:
            a, b = item.lower().split("x")
            out.append((int(a), int(b)))
        except ValueError:
            raise CliError("usage", EXIT_USAGE, f"bad dims entry {item!r}; expected e.g. 3x2") from None
    return tuple(out)


def cmd_verify(args) -> int:
    dims = parse_dims(args.dims) if args.dims else DEFAULT_DIMS
    summary = monte_carlo_verify(args.samples, dims, seed=args.seed, tol=args.tol, identity_tol=args.identity_tol)
    _write(dumps(summary.to_doc()), _resolve_out(args.out, "verify.json"))
    if not summary.passed:
        first = summary.violations[0]
        raise CliError(
            "verification",
            EXIT_INVARIANT,
            f"{len(summary.violations)} violation(s); first: sample={first.sample} seed={first.seed} "
            f"dims={first.dims[0]}x{first.dims[1]} {first.inequality} by {first.amount:.3e}",
        )
    return EXIT_OK


def cmd_export(args) -> int:
    if args.paper_state is not None:
        if not args.out:
            raise CliError("usage", EXIT_USAGE, "export --paper-state needs --out")
        Path(args.out).write_text(dumps(state_to_doc(paper_state(args.paper_state))))
    if args.paper_bases or args.theta is not None:
        if not args.prefix:
            raise CliError("usage", EXIT_USAGE, "exporting bases needs --prefix")
        if args.paper_bases:
            r, s = paper_bases()
        else:
            r, s = u_theta(_parse_number(args.theta))
        Path(args.prefix + "_r.json").write_text(dumps(basis_to_doc(r)))
        Path(args.prefix + "_s.json").write_text(dumps(basis_to_doc(s)))
    if args.paper_state is None and not args.paper_bases and args.theta is None:
        raise CliError("usage", EXIT_USAGE, "nothing to export")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="eurqm",
        description="Entropic uncertainty bounds in the presence of quantum memory.",
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="all bounds for one state and basis pair", epilog=EXIT_CODES_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--state", metavar="F", help="state document")
    p.add_argument("--paper-state", type=float, metavar="P", help="built-in 2x4 state with parameter p")
    p.add_argument("--measured", choices=["first", "second"], help="override the measured factor")
    _add_basis_args(p)
    p.add_argument("--out", metavar="F")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("overlaps", help="overlap profile of a basis pair", epilog=EXIT_CODES_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_basis_args(p)
    p.add_argument("--out", metavar="F")
    p.set_defaults(func=cmd_overlaps)

    for name, func, default in (
        ("scan-p", cmd_scan_p, DEFAULT_P_GRID),
        ("scan-theta", cmd_scan_theta, DEFAULT_THETA_GRID),
    ):
        p = sub.add_parser(name, help=f"sweep ({'2x4 state family' if name == 'scan-p' else 'U(theta) family'})",
                           epilog=EXIT_CODES_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("--grid", metavar="A:B:N", help=f"grid (default {default.spec()})")
        p.add_argument("--out", metavar="F", help="CSV path; a .meta.json sidecar is written next to it")
        p.add_argument("--figure", nargs="?", const="auto", metavar="PNG",
                       help="also render a figure (default: CSV path with .png suffix)")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="Monte-Carlo check of all inequalities", epilog=EXIT_CODES_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--dims", metavar="LIST", help="comma-separated d_measured x d_memory, e.g. 2x1,3x2 "
                                                  "(default: {2..5} x {1..4})")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--identity-tol", type=float, default=1e-8)
    p.add_argument("--out", metavar="F")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="write built-in states/bases as documents")
    p.add_argument("--paper-state", type=float, metavar="P")
    p.add_argument("--paper-bases", action="store_true")
    p.add_argument("--theta", metavar="X")
    p.add_argument("--out", metavar="F", help="state document path")
    p.add_argument("--prefix", metavar="P", help="basis documents go to P_r.json and P_s.json")
    p.set_defaults(func=cmd_export)
    return parser


def run(argv=None) -> int:
    """Run the CLI and return the exit status."""
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CliError as exc:
        return _emit_error(exc.kind, exc.code, str(exc))
    except CapacityError as exc:
        return _emit_error("capacity", EXIT_CAPACITY, str(exc))
    except InvariantViolation as exc:
        return _emit_error("invariant", EXIT_INVARIANT, str(exc))
    except (ContractViolation, DomainError, OSError) as exc:
        return _emit_error("input", EXIT_INPUT, str(exc))
    except Exception as exc:  # pragma: no cover
        return _emit_error("internal", EXIT_INTERNAL, f"{type(exc).__name__}: {exc}")


def main() -> None:
    sys.exit(run())
