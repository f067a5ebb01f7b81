"""Command-line interface.

    closedloop stability --config run.toml
    closedloop solve     --config run.toml
    closedloop measures  --config run.toml
    closedloop sweep     --config run.toml [--workers N] [--out DIR] [--format csv|json|both] [--plot]
    closedloop figure 2a [--workers N] [--out DIR] [--format ...] [--plot] [--points N]
    closedloop selftest  [--draws N]

``--param key=value`` (repeatable) adds a configuration line or replaces the one with that key.
Rates are in units of kappa_a by convention. Exit status is 0 on success, 1 when
a contract fails (instability where a steady state is needed, failed selftest,
numerical errors), and 2 for configuration or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .config import FORMATS, parse_config
from .errors import ClosedLoopError, ConfigError
from .figures import FIGURE_IDS, reproduce_figure
from .lyapunov import steady_state, verify_physicality
from .measures import correlation_report
from .model import check_stability
from .output import emit_results
from .selftest import run_selftest
from .sweep import run_sweep


def _read_config(args):
    lines = []
    if args.config:
        lines = Path(args.config).read_text(encoding="utf-8").splitlines()
    overrides = args.param or []
    keys = {a.partition("=")[0].strip() for a in overrides}
    # blank out overridden lines so line numbers in error messages stay valid
    lines = ["" if ln.partition("=")[0].strip() in keys else ln for ln in lines]
    return parse_config("\n".join(lines + overrides))


def _cmd_stability(args) -> int:
    cfg = _read_config(args)
    rep = check_stability(cfg.params)
    print(json.dumps({
        "stable": rep.stable,
        "marginal": rep.marginal,
        "max_real_part": rep.max_real_part,
        "routh_hurwitz_applicable": rep.routh_hurwitz_applicable,
        "routh_hurwitz_stable": rep.routh_hurwitz_stable,
        "routh_hurwitz_disagrees": rep.routh_hurwitz_disagrees,
    }, indent=1))
    return 0


def _cmd_solve(args) -> int:
    cfg = _read_config(args)
    v = steady_state(cfg.params)
    spec = verify_physicality(v)
    print(json.dumps({
        "covariance": v.tolist(),
        "symplectic_eigenvalues": spec.eigenvalues.tolist(),
        "physical": spec.physical,
    }, indent=1))
    return 0 if spec.physical else 1


def _report_dict(rep) -> dict:
    return {
        "pair": rep.pair,
        "E_N": rep.e_n,
        "G_fwd": rep.g_fwd,
        "G_bwd": rep.g_bwd,
        "regime": rep.regime,
        "n_first": rep.moments.n_first,
        "n_second": rep.moments.n_second,
        "corr": [rep.moments.corr.real, rep.moments.corr.imag],
        "hz_entangled": rep.hz_entangled,
        "hz_fwd": rep.hz_fwd,
        "hz_bwd": rep.hz_bwd,
    }


def _cmd_measures(args) -> int:
    cfg = _read_config(args)
    v = steady_state(cfg.params)
    print(json.dumps([_report_dict(correlation_report(v, p)) for p in cfg.pairs], indent=1))
    return 0


def _cmd_sweep(args) -> int:
    cfg = _read_config(args)
    workers = args.workers or cfg.workers
    fmt = args.format or cfg.format
    out = args.out or cfg.out
    result = run_sweep(cfg.sweep_spec(), workers=workers)
    paths = emit_results(result, out, fmt, stem="sweep", plot=args.plot or cfg.plot,
                         plot_columns=cfg.plot_columns)
    for p in paths:
        print(p)
    unstable = int(np.sum(~result.stable))
    print(f"{len(result)} grid points, {unstable} unstable", file=sys.stderr)
    return 0


def series_stem(label: str) -> str:
    return label.replace("=", "_").replace(",", "__")


def _cmd_figure(args) -> int:
    run = reproduce_figure(args.fig_id, workers=args.workers or 1, points=args.points)
    out = Path(args.out or "results") / f"fig{run.definition.fig_id}"
    for label, result in run.series.items():
        for p in emit_results(result, out, args.format or "csv", stem=series_stem(label),
                              plot=args.plot):
            print(p)
    return 0


def _cmd_selftest(args) -> int:
    results = run_selftest(draws=args.draws, seed=args.seed)
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="closedloop", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, sweep_flags=False):
        p.add_argument("--config", help="configuration file")
        p.add_argument("--param", action="append", metavar="KEY=VALUE",
                       help="extra configuration assignment (repeatable)")
        if sweep_flags:
            _output_flags(p)

    for name, fn in (("stability", _cmd_stability), ("solve", _cmd_solve),
                     ("measures", _cmd_measures)):
        p = sub.add_parser(name)
        common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("sweep")
    common(p, sweep_flags=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("figure")
    p.add_argument("fig_id", choices=FIGURE_IDS)
    p.add_argument("--points", type=int, help="override the number of grid points")
    _output_flags(p)
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("selftest")
    p.add_argument("--draws", type=int, default=300)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_selftest)
    return parser


def _output_flags(p):
    p.add_argument("--workers", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--plot", action="store_true")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return 2
    except ClosedLoopError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
