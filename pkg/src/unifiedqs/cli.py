"""Command-line front end.

Exit codes: 0 ok, 2 input error, 3 (q, s) outside the proven region,
4 monogamy violation found. Subsystem and qubit indices are 1-based here.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from pathlib import Path

from . import __version__
from .concurrence import concurrence_pure, concurrence_wootters, eof_from_concurrence
from .entropy import MeasureParams, renyi_entropy, tsallis_entropy, unified_entropy, von_neumann
from .io import CSV_SCHEMA_VERSION, StateFileError, dumps_state, format_csv, resolve_state
from .linalg import DensityMatrix, DomainError, PureState
from .monogamy import (
    SLACK_TOL,
    batch_slack,
    domain_sweep,
    haar_qubit_data,
    monogamy_slack,
    violation_search,
)
from .roof import concurrence_measure, roof_minimize, tangle_measure, unified_measure
from .unified import (
    NonCertifiedWarning,
    OutOfDomainError,
    check_formula_domain,
    in_formula_domain,
    unified_ent_pure,
    unified_ent_two_qubit,
)

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_VIOLATION = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _scale(args) -> float:
    return 1.0 / math.log(2.0) if args.log_base == "2" else 1.0


def _indices(text: str, n: int) -> list[int]:
    try:
        idx = [int(t) - 1 for t in text.split(",") if t.strip()]
    except ValueError:
        raise CliError(f"bad index list {text!r}") from None
    if not idx or any(i < 0 or i >= n for i in idx):
        raise CliError(f"indices {text!r} out of range 1..{n}")
    return idx


def _params(args) -> MeasureParams:
    try:
        return MeasureParams(args.q, args.s)
    except DomainError as exc:
        raise CliError(str(exc)) from None


def _emit(args, record: dict | None = None, csv_text: str | None = None) -> None:
    if args.format == "csv":
        text = csv_text if csv_text is not None else format_csv(
            f"unifiedqs {args.command} v{CSV_SCHEMA_VERSION}", list(record), [list(record.values())]
        )
    else:
        text = json.dumps(record, indent=1) + "\n"
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise CliError(f"cannot write {args.out}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


def _maybe(fn, *a):
    try:
        return fn(*a)
    except DomainError:
        return None


def cmd_entropy(args) -> int:
    state = resolve_state(args.state)
    p = _params(args)
    k = _scale(args)

    def sc(v):
        return None if v is None else v * k

    record = {
        "q": p.q,
        "s": p.s,
        "branch": p.branch.value,
        "log_base": args.log_base,
        "unified": sc(unified_entropy(state, p)),
        "renyi": sc(_maybe(renyi_entropy, state, p.q)),
        "tsallis": sc(_maybe(tsallis_entropy, state, p.q)),
        "von_neumann": sc(von_neumann(state)),
    }
    _emit(args, record)
    return EXIT_OK


def cmd_measure(args) -> int:
    state = resolve_state(args.state)
    p = _params(args)
    if isinstance(state, PureState):
        value = unified_ent_pure(state, _indices(args.cut, state.n_subsystems), p)
        method = "pure"
        certified = True
    else:
        if state.dim != 4:
            raise CliError(f"mixed-state measure needs a two-qubit state, got dims {state.dims}")
        value = unified_ent_two_qubit(state, p, force=args.force_out_of_domain)
        method = "two-qubit-formula"
        certified = in_formula_domain(p.q, p.s)
    _emit(args, {"q": p.q, "s": p.s, "method": method, "certified": certified,
                 "log_base": args.log_base, "value": value * _scale(args)})
    return EXIT_OK


def cmd_concurrence(args) -> int:
    state = resolve_state(args.state)
    if isinstance(state, PureState):
        c = concurrence_pure(state, _indices(args.cut, state.n_subsystems))
        lambdas = []
    else:
        if state.dim != 4:
            raise CliError(f"concurrence needs a two-qubit state, got dims {state.dims}")
        res = concurrence_wootters(state)
        c, lambdas = res.value, list(res.lambdas)
    record = {"concurrence": c, "tangle": c * c,
              "eof": float(eof_from_concurrence(c)) * _scale(args), "log_base": args.log_base}
    if args.format == "json":
        record["lambdas"] = lambdas
    _emit(args, record)
    return EXIT_OK


def cmd_roof(args) -> int:
    state = resolve_state(args.state)
    n = state.n_subsystems
    side = _indices(args.cut, n)
    if args.measure == "concurrence":
        meas, entropic = concurrence_measure(side), False
    elif args.measure == "tangle":
        meas, entropic = tangle_measure(side), False
    else:
        meas, entropic = unified_measure(_params(args), side), True
    if not isinstance(state, DensityMatrix):
        state = state.density()
    res = roof_minimize(state, meas, m=args.ensemble, restarts=args.restarts, seed=args.seed)
    k = _scale(args) if entropic else 1.0
    _emit(args, {"measure": meas.name, "value": res.value * k, "converged": res.converged,
                 "restarts_used": res.restarts_used, "ensemble_size": len(res.ensemble)})
    return EXIT_OK


def _witness(args, psi, report) -> None:
    doc = {"report": report.as_dict(), "state": json.loads(dumps_state(psi))}
    text = json.dumps(doc, indent=1) + "\n"
    if args.out:
        Path(str(args.out) + ".witness.json").write_text(text)
    else:
        sys.stderr.write(text)


def cmd_monogamy(args) -> int:
    p = _params(args)
    try:
        check_formula_domain(p, force=True) if args.force_out_of_domain else check_formula_domain(p)
    except OutOfDomainError as exc:
        raise CliError(str(exc), EXIT_DOMAIN) from None
    k = _scale(args)

    if args.state:
        psi = resolve_state(args.state)
        if not isinstance(psi, PureState) or any(d != 2 for d in psi.dims):
            raise CliError("monogamy needs a pure multi-qubit state")
        n = psi.n_subsystems
        focuses = range(n) if args.focus == "all" else [_indices(args.focus, n)[0]]
        reports = [monogamy_slack(psi, f, p, force=True, state_id=0) for f in focuses]
        witness_state = psi
    else:
        n = args.n
        if n not in (3, 4, 5):
            raise CliError("--n must be 3, 4 or 5")
        if args.samples < 1:
            raise CliError("--samples must be >= 1")
        data = haar_qubit_data(n, args.samples, args.seed)
        batch = batch_slack(data, p, force=True)
        focuses = range(n) if args.focus == "all" else [_indices(args.focus, n)[0]]
        reports = [batch.report(i, f) for i in range(args.samples) for f in focuses]
        witness_state = None

    rows = [[r.state_id, r.focus + 1, r.lhs * k, *(t * k for t in r.rhs_terms), r.slack * k] for r in reports]
    columns = ["seed_index", "focus", "lhs"] + [f"rhs_{i}" for i in range(1, n)] + ["slack"]
    worst = min(reports, key=lambda r: r.slack)

    hunted = None
    if args.hunt:
        hunted = violation_search(p, attempts=args.samples, seed=args.seed)
        if hunted is not None and hunted[1].slack < worst.slack:
            worst, witness_state = hunted[1], hunted[0]

    if args.format == "csv":
        header = f"unifiedqs monogamy v{CSV_SCHEMA_VERSION} n={n} q={p.q!r} s={p.s!r} seed={args.seed} log_base={args.log_base}"
        _emit(args, csv_text=format_csv(header, columns, rows))
    else:
        record = {"q": p.q, "s": p.s, "n": n, "seed": args.seed, "log_base": args.log_base,
                  "min_slack": worst.slack * k, "rows": [dict(zip(columns, r)) for r in rows]}
        if hunted is not None:
            record["hunt_witness"] = hunted[1].as_dict()
        _emit(args, record)

    if worst.slack < -SLACK_TOL:
        if witness_state is None and args.state is None:
            witness_state = PureState.from_vector(data.vectors[worst.state_id], (2,) * n)
        _witness(args, witness_state, worst)
        return EXIT_VIOLATION
    return EXIT_OK


def _range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(t) for t in text.split(","))
    except ValueError:
        raise CliError(f"bad range {text!r}, expected lo,hi") from None
    if not hi > lo:
        raise CliError(f"empty range {text!r}")
    return lo, hi


def cmd_sweep(args) -> int:
    if args.res <= 0:
        raise CliError("--res must be positive")
    cells = domain_sweep(_range(args.q_range), _range(args.s_range), args.res,
                         args.grid, args.samples, args.seed)
    k = _scale(args)
    columns = ["q", "s", "in_proved_domain", "min_h", "min_slack"]
    rows = [[c.q, c.s, c.in_proved_domain, c.min_h * k, c.min_slack * k] for c in cells]
    header = (f"unifiedqs sweep v{CSV_SCHEMA_VERSION} res={args.res!r} grid={args.grid} "
              f"samples={args.samples} seed={args.seed} log_base={args.log_base}")
    if args.format == "csv":
        _emit(args, csv_text=format_csv(header, columns, rows))
    else:
        _emit(args, {"cells": [dict(zip(columns, r)) for r in rows]})
    if args.plot:
        from .plot import sweep_svg

        try:
            sweep_svg(cells, args.plot)
        except OSError as exc:
            raise CliError(f"cannot write {args.plot}: {exc.strerror}") from None
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unifiedqs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)

    def output_options(default_format):
        # a fresh parent per subcommand: parent actions are shared objects
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--format", choices=("json", "csv"), default=default_format)
        common.add_argument("--out", help="output file (default: stdout)")
        common.add_argument("--log-base", choices=("e", "2"), default="e")
        return common

    common = output_options("json")
    qs = argparse.ArgumentParser(add_help=False)
    qs.add_argument("--q", type=float, default=2.0)
    qs.add_argument("--s", type=float, default=1.0)
    qs.add_argument("--force-out-of-domain", action="store_true")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("entropy", parents=[common, qs], help="entropies of a state")
    p.add_argument("--state", required=True, help="state file or preset")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("measure", parents=[common, qs], help="unified-(q,s) entanglement")
    p.add_argument("--state", required=True)
    p.add_argument("--cut", default="1", help="subsystems on one side, e.g. 1 or 1,2")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("concurrence", parents=[common], help="concurrence, tangle, EoF")
    p.add_argument("--state", required=True)
    p.add_argument("--cut", default="1")
    p.set_defaults(func=cmd_concurrence)

    p = sub.add_parser("roof", parents=[common, qs], help="numerical convex roof")
    p.add_argument("--state", required=True)
    p.add_argument("--measure", choices=("concurrence", "tangle", "unified"), default="unified")
    p.add_argument("--cut", default="1")
    p.add_argument("--ensemble", type=int, default=None)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_roof)

    p = sub.add_parser("monogamy", parents=[common, qs], help="monogamy slack, sampled or for one state")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--focus", default="1", help="focus qubit (1-based) or 'all'")
    p.add_argument("--state", help="evaluate this preset or state file instead of sampling")
    p.add_argument("--hunt", action="store_true", help="also run the W-class violation search")
    p.set_defaults(func=cmd_monogamy)

    p = sub.add_parser("sweep", parents=[output_options("csv")], help="(q, s) domain sweep")
    p.add_argument("--q-range", default="0,6")
    p.add_argument("--s-range", default="0,2")
    p.add_argument("--res", type=float, default=0.1)
    p.add_argument("--grid", type=int, default=200, help="polar grid resolution for h")
    p.add_argument("--samples", type=int, default=200, help="Haar states per cell")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--plot", help="SVG output path")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        with warnings.catch_warnings():
            # certification is reported in the output records instead
            warnings.simplefilter("ignore", NonCertifiedWarning)
            return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except OutOfDomainError as exc:
        print(f"error: {exc} (use --force-out-of-domain)", file=sys.stderr)
        return EXIT_DOMAIN
    except (StateFileError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
