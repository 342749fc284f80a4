"""Command-line interface: ``unsharp-chsh <command> [options]``.

Exit status is 0 on success, 1 on bad input or I/O failure and 2 when
``verify`` finds a failing check.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

from . import analysis, lhv, quantum, verify
from .povm import PovmParams

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VERIFY_FAILED = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for verification failures here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    """12 significant digits, used for every number written to CSV."""
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return f"{x:.12g}"


def _add_theta(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--theta", type=float, default=None,
                   help="state angle in radians (default pi/4)")
    g.add_argument("--theta-deg", type=float, default=None, help="state angle in degrees")


def _add_params(p, per_side=False):
    p.add_argument("--alpha", type=float, default=0.0, help="bias parameter (default 0)")
    p.add_argument("--eta", type=float, default=1.0, help="sharpness parameter (default 1)")
    if per_side:
        p.add_argument("--alpha-b", type=float, default=None, help="Bob's bias, if different")
        p.add_argument("--eta-b", type=float, default=None, help="Bob's sharpness, if different")


def _add_state(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--werner", type=float, metavar="P", default=None,
                   help="use the Werner state with mixing weight P instead of the pure state")
    g.add_argument("--state-file", metavar="PATH", default=None,
                   help="read a density matrix: 32 reals, row-major (real, imag) pairs")


def _add_output(p, default_format="text"):
    p.add_argument("--format", choices=("text", "csv"), default=default_format)
    p.add_argument("--output", "-o", metavar="PATH", default=None,
                   help="write the report to PATH instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unsharp-chsh",
                     description="CHSH values and local bounds for unsharp spin-POVMs.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("value", help="quantum CHSH value (closed form and density-matrix path)")
    _add_theta(p)
    _add_params(p, per_side=True)
    _add_state(p)
    _add_output(p)

    p = sub.add_parser("bound", help="local hidden-variable bound by brute force")
    _add_params(p, per_side=True)
    _add_output(p)

    p = sub.add_parser("delta", help="standard and modified violation margins")
    _add_theta(p)
    _add_params(p)
    _add_state(p)
    _add_output(p)

    p = sub.add_parser("scan", help="classify an (alpha, eta) grid; CSV output")
    _add_theta(p)
    p.add_argument("--steps", type=int, default=101, help="grid points per axis (default 101)")
    p.add_argument("--alpha-steps", type=int, default=None)
    p.add_argument("--eta-steps", type=int, default=None)
    _add_output(p, default_format="csv")

    p = sub.add_parser("thresholds", help="critical sharpness and largest violating bias")
    _add_theta(p)
    p.add_argument("--alpha", type=float, default=0.0)
    _add_output(p)

    p = sub.add_parser("verify", help="run the built-in invariant checks")
    _add_output(p)
    return parser


def _theta(args) -> float:
    if getattr(args, "theta_deg", None) is not None:
        return math.radians(args.theta_deg)
    if getattr(args, "theta", None) is not None:
        return args.theta
    return math.pi / 4


def _state(args, theta):
    """Return (density matrix, label, is_pure_canonical_state)."""
    if args.werner is not None:
        return quantum.werner_state(args.werner), f"werner(p={fmt(args.werner)})", False
    if args.state_file is not None:
        try:
            rho = quantum.DensityMatrix.from_file(args.state_file)
        except OSError as exc:
            raise UsageError(f"cannot read state file: {exc}") from exc
        return rho, f"file({args.state_file})", False
    return quantum.pure_state(theta), f"pure(theta={fmt(theta)})", True


def _table(rows, fmt_name):
    """Render (key, value) rows as aligned text or a one-row CSV."""
    if fmt_name == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([k for k, _ in rows])
        w.writerow([fmt(v) if isinstance(v, float) else v for _, v in rows])
        return buf.getvalue()
    width = max(len(k) for k, _ in rows)
    out = []
    for k, v in rows:
        shown = f"{v:.10f}" if isinstance(v, float) and not math.isnan(v) else str(v)
        out.append(f"{k:<{width}}  {shown}")
    return "\n".join(out) + "\n"


def cmd_value(args) -> tuple[str, int]:
    theta = _theta(args)
    pa = PovmParams(args.alpha, args.eta)
    pb = PovmParams(
        args.alpha if args.alpha_b is None else args.alpha_b,
        args.eta if args.eta_b is None else args.eta_b,
    )
    rho, label, pure = _state(args, theta)
    matrix = quantum.chsh_value(rho, quantum.CANONICAL_SETTINGS, pa, pb)
    rows = [("state", label), ("alpha", pa.alpha), ("eta", pa.eta)]
    if pb != pa:
        rows += [("alpha_b", pb.alpha), ("eta_b", pb.eta)]
    rows.append(("quantum_value_matrix", matrix))
    if pure and pb == pa:
        closed = quantum.closed_form_biased(theta, pa.alpha, pa.eta)
        rows += [("quantum_value_closed_form", closed), ("difference", abs(matrix - closed))]
    else:
        rows.append(("quantum_value_closed_form", "n/a (needs pure state, equal parameters)"))
    return _table(rows, args.format), EXIT_OK


def cmd_bound(args) -> tuple[str, int]:
    result = lhv.lhv_bound_bruteforce(args.alpha, args.eta, args.alpha_b, args.eta_b)
    strategies = " ".join(str(s) for s in result.maximizing_strategies)
    rows = [
        ("alpha", float(args.alpha)),
        ("eta", float(args.eta)),
    ]
    if result.closed_form is None:
        rows += [("alpha_b", float(args.alpha if args.alpha_b is None else args.alpha_b)),
                 ("eta_b", float(args.eta if args.eta_b is None else args.eta_b))]
    rows.append(("bound_bruteforce", result.bound))
    rows.append(("bound_closed_form",
                 result.closed_form if result.closed_form is not None else "none (parameters differ per side)"))
    rows.append(("standard_bound", analysis.STANDARD_BOUND))
    rows.append(("maximizing_strategies(s_a1,s_a2,s_b1,s_b2)", strategies))
    return _table(rows, args.format), EXIT_OK


def cmd_delta(args) -> tuple[str, int]:
    theta = _theta(args)
    p = PovmParams(args.alpha, args.eta)
    rho, label, pure = _state(args, theta)
    q = quantum.chsh_value(rho, quantum.CANONICAL_SETTINGS, p)
    bound = lhv.closed_form_bound(p.alpha, p.eta)
    d_std, d_mod = q - analysis.STANDARD_BOUND, q - bound
    rows = [
        ("state", label), ("alpha", p.alpha), ("eta", p.eta),
        ("quantum_value", q),
        ("standard_bound", analysis.STANDARD_BOUND),
        ("modified_bound", bound),
        ("delta_standard", d_std),
        ("delta_modified", d_mod),
    ]
    if pure:
        rows += [
            ("delta_standard_closed_form", analysis.delta_standard_biased(theta, p.alpha, p.eta)),
            ("delta_modified_closed_form", analysis.delta_modified_biased(theta, p.alpha, p.eta)),
        ]
    rows.append(("class", analysis.classify(d_std, d_mod).value))
    return _table(rows, args.format), EXIT_OK


def scan_csv(cells) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(analysis.ScanCell.FIELDS)
    for c in cells:
        w.writerow([
            fmt(c.alpha), fmt(c.eta), fmt(c.theta), fmt(c.quantum_value),
            fmt(c.standard_bound), fmt(c.modified_bound), fmt(c.delta_standard),
            fmt(c.delta_modified), "true" if c.feasible else "false", c.violation.value,
        ])
    return buf.getvalue()


def cmd_scan(args) -> tuple[str, int]:
    theta = _theta(args)
    a_steps = args.alpha_steps or args.steps
    e_steps = args.eta_steps or args.steps
    if a_steps < 2 or e_steps < 2:
        raise UsageError("grid step counts must be at least 2")
    cells = analysis.scan_region(theta, a_steps, e_steps)
    if args.format == "csv":
        return scan_csv(cells), EXIT_OK
    counts = analysis.class_counts(cells)
    rows = [("theta", theta), ("grid", f"{a_steps} x {e_steps}"),
            ("infeasible_cells", sum(not c.feasible for c in cells))]
    rows += [(f"cells_{k.value}", v) for k, v in counts.items()]
    return _table(rows, "text"), EXIT_OK


def cmd_thresholds(args) -> tuple[str, int]:
    theta = _theta(args)
    eta_c = analysis.critical_eta_standard(theta, args.alpha)
    rows = [
        ("theta", theta),
        ("alpha", float(args.alpha)),
        ("critical_eta_standard", eta_c if eta_c is not None else "none"),
        ("max_alpha_modified", analysis.max_alpha_modified(theta)),
    ]
    return _table(rows, args.format), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    results = verify.run_all()
    failed = [r for r in results if not r.passed]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "passed", "detail"])
        for r in results:
            w.writerow([r.name, "true" if r.passed else "false", r.detail])
        text = buf.getvalue()
    else:
        lines = [f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}" for r in results]
        lines.append(f"{len(results) - len(failed)} passed, {len(failed)} failed")
        text = "\n".join(lines) + "\n"
    return text, EXIT_VERIFY_FAILED if failed else EXIT_OK


COMMANDS = {
    "value": cmd_value,
    "bound": cmd_bound,
    "delta": cmd_delta,
    "scan": cmd_scan,
    "thresholds": cmd_thresholds,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, status = COMMANDS[args.command](args)
    except (ValueError, UsageError) as exc:
        print(f"unsharp-chsh {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.output:
        try:
            with open(args.output, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"unsharp-chsh: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_INVALID
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
