"""Batch command-line interface.

One experiment per invocation, flags only, machine-readable JSON or CSV
output; the fully resolved parameter set is echoed to standard error so a
shell history is a complete provenance record.  Exit codes: 0 success,
1 computation error, 2 usage error.
"""

import argparse
import csv
import io
import json
import sys

import numpy as np

from .concentration import DiagonalQuadraticForm, mc_tail_check
from .estimators import (
    PinskerConfig,
    asymptotic_weights,
    minimax_weights,
    pinsker_mu,
    pinsker_weights,
)
from .exceptions import FlaggedConstantError, SeqMinimaxError
from .geometry import Ball, DecaySequence, worst_case_signal
from .model import NoiseProfile, OperatorSpectrum, effective_noise, validate_assumptions
from .risk import (
    asymptotic_minimax_risk,
    default_truncation,
    exact_risk,
    exponential_spectrum_risk_asymptote,
    maxiset_diagnostic,
    mc_risk,
    minimax_linear_risk,
    pinsker_minimax_risk,
    polynomial_spectrum_risk_asymptote,
    rate_exponent,
    sup_risk_over_ball,
)


# ---------------------------------------------------------------------------
# flag grammars


def _parse_kv(body, flag_name, keys):
    out = {}
    for part in body.split(","):
        if "=" not in part:
            raise argparse.ArgumentTypeError(f"{flag_name}: expected key=value, got {part!r}")
        key, _, value = part.partition("=")
        if key not in keys:
            raise argparse.ArgumentTypeError(f"{flag_name}: unknown key {key!r}")
        out[key] = value
    missing = [k for k in keys if k not in out]
    if missing:
        raise argparse.ArgumentTypeError(f"{flag_name}: missing {', '.join(missing)}")
    return out


def _read_column(path):
    try:
        values = []
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    values.append(float(line))
        return values
    except OSError as exc:
        raise argparse.ArgumentTypeError(f"cannot read table {path!r}: {exc}")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number in table {path!r}: {exc}")


def parse_sigma(text):
    """``const:<v> | power:c=<v>,p=<v> | table:@<path>``"""
    kind, _, body = text.partition(":")
    try:
        if kind == "const":
            return NoiseProfile.constant(float(body))
        if kind == "power":
            kv = _parse_kv(body, "--sigma power", ("c", "p"))
            return NoiseProfile.power(float(kv["c"]), float(kv["p"]))
        if kind == "table":
            if not body.startswith("@"):
                raise argparse.ArgumentTypeError("--sigma table expects table:@<path>")
            return NoiseProfile.from_table(_read_column(body[1:]))
    except SeqMinimaxError as exc:
        raise argparse.ArgumentTypeError(f"--sigma: {exc}")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--sigma: {exc}")
    raise argparse.ArgumentTypeError(f"--sigma: unknown kind {kind!r}")


def parse_ball(text):
    """``power:alpha=<v>,p0=<v> | table:@<path>,p0=<v>``"""
    kind, _, body = text.partition(":")
    try:
        if kind == "power":
            kv = _parse_kv(body, "--ball power", ("alpha", "p0"))
            return Ball.power(float(kv["alpha"]), float(kv["p0"]))
        if kind == "table":
            parts = body.split(",")
            if len(parts) != 2 or not parts[0].startswith("@") or not parts[1].startswith("p0="):
                raise argparse.ArgumentTypeError("--ball table expects table:@<path>,p0=<v>")
            seq = DecaySequence.from_table(_read_column(parts[0][1:]))
            return Ball(a=seq, p0=float(parts[1][3:]))
    except SeqMinimaxError as exc:
        raise argparse.ArgumentTypeError(f"--ball: {exc}")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--ball: {exc}")
    raise argparse.ArgumentTypeError(f"--ball: unknown kind {kind!r}")


def parse_spectrum(text):
    """``power:C=<v>,gamma=<v> | exp:C=<v>,kappa=<v>,B=<v>,gamma=<v> | table:@<path>``"""
    kind, _, body = text.partition(":")
    try:
        if kind == "power":
            kv = _parse_kv(body, "--spectrum power", ("C", "gamma"))
            return OperatorSpectrum.power(float(kv["C"]), float(kv["gamma"]))
        if kind == "exp":
            kv = _parse_kv(body, "--spectrum exp", ("C", "kappa", "B", "gamma"))
            return OperatorSpectrum.exponential(
                float(kv["C"]), float(kv["kappa"]), float(kv["B"]), float(kv["gamma"])
            )
        if kind == "table":
            if not body.startswith("@"):
                raise argparse.ArgumentTypeError("--spectrum table expects table:@<path>")
            return OperatorSpectrum.from_table(_read_column(body[1:]))
    except SeqMinimaxError as exc:
        raise argparse.ArgumentTypeError(f"--spectrum: {exc}")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--spectrum: {exc}")
    raise argparse.ArgumentTypeError(f"--spectrum: unknown kind {kind!r}")


def parse_eps_grid(text):
    """Comma-separated, positive, strictly decreasing noise levels."""
    try:
        grid = [float(tok) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--eps-grid: {exc}")
    if len(grid) < 1 or any(e <= 0 for e in grid) or any(
        b >= a for a, b in zip(grid, grid[1:])
    ):
        raise argparse.ArgumentTypeError("--eps-grid must be positive and strictly decreasing")
    return grid


def parse_signal(text):
    """``worst-case | zero | power:s=<v> | table:@<path>``"""
    if text in ("worst-case", "zero"):
        return (text, None)
    kind, _, body = text.partition(":")
    if kind == "power":
        kv = _parse_kv(body, "--signal power", ("s",))
        return ("power", float(kv["s"]))
    if kind == "table":
        if not body.startswith("@"):
            raise argparse.ArgumentTypeError("--signal table expects table:@<path>")
        return ("table", _read_column(body[1:]))
    raise argparse.ArgumentTypeError(f"--signal: unknown kind {text!r}")


# ---------------------------------------------------------------------------
# output plumbing


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _rows_to_csv(rows, header):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_object(args, obj):
    """A dict as single-line JSON, or as a two-row CSV."""
    if args.output == "json":
        _emit(args, json.dumps(obj) + "\n")
    else:
        keys = list(obj.keys())
        _emit(args, _rows_to_csv([[obj[k] for k in keys]], keys))


def _echo_params(args):
    resolved = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    print(json.dumps({"resolved": resolved}, default=str), file=sys.stderr)


def _materialize_signal(signal, ball, n):
    kind, value = signal
    if kind == "worst-case":
        if ball is None:
            raise _UsageError("--signal worst-case requires --ball")
        return worst_case_signal(ball, n)
    if kind == "zero":
        return np.zeros(n)
    if kind == "power":
        return np.arange(1, n + 1, dtype=float) ** (-value)
    return np.asarray(value, dtype=float)[:n]


def _check_family_args(args):
    if args.family == "minimax":
        _require(args, ["ball", "eps", "n"])
    elif args.family == "asymptotic":
        _require(args, ["alpha", "p0", "eps", "n"])
    else:
        _require(args, ["beta", "eps", "n"])
        if args.mu is None and args.radius is None:
            raise _UsageError("family 'pinsker' requires --mu or --radius")


def _build_weights(args, noise):
    if args.family == "minimax":
        w = minimax_weights(args.ball, noise, args.eps, args.n)
        if w.warning:
            print(f"warning: {w.warning}", file=sys.stderr)
        return w
    if args.family == "asymptotic":
        return asymptotic_weights(args.alpha, args.p0, noise, args.eps, args.n)
    if args.family == "pinsker":
        mu = args.mu
        if mu is None:
            mu = pinsker_mu(
                PinskerConfig(beta=args.beta, radius=args.radius, epsilon=args.eps, n=args.n)
            )
        return pinsker_weights(args.beta, mu, args.n)
    raise SeqMinimaxError(f"unknown family {args.family!r}")


def _usage_error(message):
    print(f"error: {message}", file=sys.stderr)
    return 2


def _require(args, names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise _UsageError(f"family {args.family!r} requires {', '.join(missing)}")


class _UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# subcommands


def cmd_weights(args):
    _check_family_args(args)
    w = _build_weights(args, args.sigma)
    if args.output == "json":
        obj = {"family": w.family, "lambda": [float(v) for v in w.values]}
        if w.mu is not None:
            obj["mu"] = w.mu
        if w.warning:
            obj["warning"] = w.warning
        _emit(args, json.dumps(obj) + "\n")
    else:
        rows = [(j + 1, float(v)) for j, v in enumerate(w.values)]
        _emit(args, _rows_to_csv(rows, ["j", "lambda"]))
    return 0


def cmd_risk_exact(args):
    _check_family_args(args)
    noise = args.sigma
    w = _build_weights(args, noise)
    x = _materialize_signal(args.signal, args.ball, args.n)
    report = exact_risk(w, x, noise, args.eps)
    _emit_object(args, report.to_dict())
    return 0


def cmd_risk_mc(args):
    _check_family_args(args)
    noise = args.sigma
    w = _build_weights(args, noise)
    x = _materialize_signal(args.signal, args.ball, args.n)
    report = mc_risk(w, x, noise, args.eps, args.reps, args.seed)
    _emit_object(args, report.to_dict())
    return 0


def cmd_sup_risk(args):
    noise = args.sigma
    if args.ball is None or args.eps is None:
        raise _UsageError("sup-risk requires --ball and --eps")
    if args.weights_csv:
        values = []
        with open(args.weights_csv, "r", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            for row in reader:
                if not row or row[0] == "j":
                    continue
                values.append(float(row[-1]))
        from .estimators import DiagonalWeights

        w = DiagonalWeights(values=np.asarray(values), family="custom")
    elif args.family is None:
        raise _UsageError("sup-risk requires --family or --weights-csv")
    else:
        _check_family_args(args)
        w = _build_weights(args, noise)
    report, maximizer = sup_risk_over_ball(w, args.ball, noise, args.eps, n=args.n)
    if args.maximizer_out:
        rows = [(j + 1, float(v)) for j, v in enumerate(maximizer)]
        with open(args.maximizer_out, "w", encoding="utf-8") as fh:
            fh.write(_rows_to_csv(rows, ["j", "x"]))
    _emit_object(args, report.to_dict())
    return 0


def cmd_pinsker(args):
    ball = Ball.power(args.alpha, args.p0)
    result = pinsker_minimax_risk(args.beta, ball, args.eps, args.n)
    _emit_object(
        args,
        {"value": result.value, "mu": result.mu, "epsilon": result.epsilon, "n": result.n},
    )
    return 0


def _rates_points(args):
    points = []
    for eps in args.eps_grid:
        if args.family == "pinsker":
            smoothness = min(args.alpha, args.beta)
        elif args.spectrum is not None and args.spectrum.kind == "power":
            smoothness = args.alpha + args.spectrum.gamma
        else:
            smoothness = args.alpha
        n = args.n if args.n else default_truncation(eps, smoothness)
        noise = args.sigma
        if args.spectrum is not None:
            noise = effective_noise(args.spectrum, noise, n)
        ball = Ball.power(args.alpha, args.p0)
        if args.family == "minimax":
            value = minimax_linear_risk(ball, noise, eps, n).value
        elif args.family == "asymptotic":
            value = asymptotic_minimax_risk(args.alpha, args.p0, noise, eps, n).value
        else:
            value = pinsker_minimax_risk(args.beta, ball, eps, n).value
        points.append((eps, value))
    return points


def cmd_rates(args):
    if args.family == "pinsker":
        if args.beta is None:
            raise _UsageError("family 'pinsker' requires --beta")
        if args.spectrum is not None:
            raise _UsageError("--spectrum is not supported with family 'pinsker'")
        if args.sigma.kind != "constant" or args.sigma.sigma0 != 1.0:
            raise _UsageError("family 'pinsker' is defined for --sigma const:1")
    points = _rates_points(args)
    fit = rate_exponent(points)
    rows = [(e, r, r * e ** (-fit.slope)) for e, r in points]
    if args.output == "json":
        obj = fit.to_dict()
        obj["points"] = [
            {"epsilon": e, "risk": r, "normalized": nrm} for e, r, nrm in rows
        ]
        _emit(args, json.dumps(obj) + "\n")
    else:
        _emit(args, _rows_to_csv(rows, ["epsilon", "risk", "normalized"]))
    return 0


def cmd_inverse(args):
    flagged = False
    note = None
    if args.example == 1:
        try:
            asym = polynomial_spectrum_risk_asymptote(
                args.alpha, args.gamma, args.p0, args.c_const, args.eps
            )
            value, expo, log_exp = asym.value, asym.eps_exponent, asym.log_exponent
        except FlaggedConstantError as exc:
            value, expo, log_exp = None, exc.eps_exponent, exc.log_exponent
            flagged = True
            note = str(exc)
    else:
        asym = exponential_spectrum_risk_asymptote(
            args.alpha, args.gamma, args.b_const, args.p0, args.eps
        )
        value, expo, log_exp = asym.value, asym.eps_exponent, asym.log_exponent
    obj = {"value": value, "eps_exponent": expo, "log_exponent": log_exp, "flagged": flagged}
    if note:
        obj["note"] = note
    _emit_object(args, obj)
    return 0


def cmd_maxiset(args):
    kind, value = args.signal
    if kind == "power":
        signal = lambda j: j ** (-value)
    elif kind == "zero":
        signal = lambda j: np.zeros(j.size)
    elif kind == "table":
        table = np.asarray(value, dtype=float)

        def signal(j):
            out = np.zeros(j.size)
            m = min(j.size, table.size)
            out[:m] = table[:m]
            return out

    else:
        raise _UsageError("maxiset supports --signal power:s=<v>, zero, or table:@<path>")
    n_rule = (lambda e: args.n) if args.n else None
    points = maxiset_diagnostic(signal, args.beta, args.eps_grid, n_rule=n_rule)
    rows = [(p.epsilon, p.risk, p.normalized) for p in points]
    if args.output == "json":
        _emit(
            args,
            json.dumps(
                [
                    {"epsilon": p.epsilon, "risk": p.risk, "normalized": p.normalized,
                     "mu": p.mu, "n": p.n}
                    for p in points
                ]
            )
            + "\n",
        )
    else:
        _emit(args, _rows_to_csv(rows, ["epsilon", "risk", "normalized"]))
    return 0


def cmd_concentration(args):
    if args.diag:
        form = DiagonalQuadraticForm(diag=np.asarray([float(v) for v in args.diag.split(",")]))
    elif args.dim:
        form = DiagonalQuadraticForm.identity(args.dim)
    else:
        raise _UsageError("concentration requires --dim or --diag")
    result = mc_tail_check(form, args.t, args.reps, args.seed)
    _emit_object(args, result.to_dict())
    return 0


def cmd_validate(args):
    report = validate_assumptions(args.ball.a, args.sigma, args.alpha, args.n, j0=args.j0)
    _emit_object(args, report.to_dict())
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_common(sub):
    sub.add_argument("--output", choices=("json", "csv"), default="json")
    sub.add_argument("--out", default=None, help="write primary output to this path")
    sub.add_argument("--seed", type=int, default=0)


def _add_family(sub, families=("minimax", "asymptotic", "pinsker"), required=True):
    sub.add_argument("--family", choices=families, required=required)
    sub.add_argument("--ball", type=parse_ball, default=None)
    sub.add_argument("--sigma", type=parse_sigma, default=NoiseProfile.constant(1.0))
    sub.add_argument("--alpha", type=float, default=None)
    sub.add_argument("--p0", type=float, default=None)
    sub.add_argument("--beta", type=float, default=None)
    sub.add_argument("--radius", type=float, default=None)
    sub.add_argument("--mu", type=float, default=None)
    sub.add_argument("--eps", type=float, default=None)
    sub.add_argument("--n", type=int, default=None)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="seqminimax",
        description="Minimax diagonal filtering experiments in the Gaussian sequence model.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("weights", help="construct a named weight family, CSV columns j,lambda")
    _add_family(p)
    _add_common(p)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("risk-exact", help="exact risk of a filter at a known signal")
    _add_family(p)
    p.add_argument("--signal", type=parse_signal, default=("worst-case", None))
    _add_common(p)
    p.set_defaults(func=cmd_risk_exact)

    p = sub.add_parser("risk-mc", help="seeded Monte-Carlo risk of a filter at a known signal")
    _add_family(p)
    p.add_argument("--signal", type=parse_signal, default=("worst-case", None))
    p.add_argument("--reps", type=int, default=100_000)
    _add_common(p)
    p.set_defaults(func=cmd_risk_mc)

    p = sub.add_parser("sup-risk", help="exact worst-case risk over the ball (linear program)")
    _add_family(p, required=False)
    p.add_argument("--weights-csv", default=None, help="custom weights, CSV j,lambda")
    p.add_argument("--maximizer-out", default=None, help="write the maximizing signal here")
    _add_common(p)
    p.set_defaults(func=cmd_sup_risk)

    p = sub.add_parser("pinsker", help="tuned worst-case risk of the Pinsker family on a ball")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--p0", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_pinsker)

    p = sub.add_parser("rates", help="risk decay slope over a noise grid (log-log fit)")
    p.add_argument("--family", choices=("minimax", "asymptotic", "pinsker"), required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--p0", type=float, required=True)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--sigma", type=parse_sigma, default=NoiseProfile.constant(1.0))
    p.add_argument("--spectrum", type=parse_spectrum, default=None)
    p.add_argument("--eps-grid", type=parse_eps_grid, required=True)
    p.add_argument("--n", type=int, default=None, help="fixed truncation (default: rule)")
    _add_common(p)
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("inverse", help="printed risk asymptotes for ill-posed spectra")
    p.add_argument("--example", type=int, choices=(1, 2), required=True,
                   help="1: polynomial spectrum decay, 2: exponential spectrum decay")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--p0", type=float, default=1.0)
    p.add_argument("--c-const", type=float, default=1.0, help="spectrum constant C")
    p.add_argument("--b-const", type=float, default=1.0, help="exponential rate B")
    p.add_argument("--eps", type=float, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("maxiset", help="rate-normalized tuned risk along a noise grid")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--signal", type=parse_signal, required=True)
    p.add_argument("--eps-grid", type=parse_eps_grid, required=True)
    p.add_argument("--n", type=int, default=None, help="fixed truncation (default: rule)")
    _add_common(p)
    p.set_defaults(func=cmd_maxiset)

    p = sub.add_parser("concentration", help="quadratic-form tail bound Monte-Carlo verdict")
    p.add_argument("--dim", type=int, default=None, help="identity form of this dimension")
    p.add_argument("--diag", default=None, help="comma-separated diagonal entries")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--reps", type=int, default=100_000)
    _add_common(p)
    p.set_defaults(func=cmd_concentration)

    p = sub.add_parser("validate", help="check the structural assumptions of the weight formulas")
    p.add_argument("--ball", type=parse_ball, required=True)
    p.add_argument("--sigma", type=parse_sigma, default=NoiseProfile.constant(1.0))
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j0", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _echo_params(args)
    try:
        return args.func(args)
    except _UsageError as exc:
        return _usage_error(str(exc))
    except SeqMinimaxError as exc:
        report = {"error": type(exc).__name__, "message": str(exc)}
        grid = getattr(exc, "grid", None)
        if grid is not None:
            report["grid"] = [float(g) for g in grid]
            report["values"] = [float(v) for v in exc.values]
        print(json.dumps(report), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
