"""Command-line front end.

Subcommands::

    fracwave run <scenario-file|builtin-name> [--out DIR] [--tol X] [--oracle]
    fracwave list
    fracwave eval mwright --nu N --z Z [--tol X]
    fracwave eval green --nu N --x X --t T [--kind cauchy|second|signaling]

Exit codes: 0 success, 1 validation error, 2 numerical non-convergence,
3 I/O failure.  Errors are reported as a single machine-readable
``error: ...`` line on stderr.
"""

import argparse
import os
import sys

from .errors import NonConvergent, ScenarioError
from .green import FracOrder, green_cauchy, green_cauchy_second, green_signaling
from .scenarios import list_scenarios, load_scenario_file, run_by_name, run_scenario
from .specfun import MWrightOrder, m_wright

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NONCONVERGENT = 2
EXIT_IO = 3


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fracwave",
        description="time-fractional diffusion-wave scenarios and evaluators",
    )
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario file or builtin scenario")
    run.add_argument("scenario", help="path to a scenario file or builtin name")
    run.add_argument("--out", metavar="DIR", help="output directory")
    run.add_argument("--tol", type=float, help="override scenario tolerance")
    run.add_argument("--oracle", action="store_true", default=None,
                     help="also run the finite-difference oracle and report "
                          "discrepancies")

    sub.add_parser("list", help="list builtin scenarios")

    ev = sub.add_parser("eval", help="single-value evaluators")
    evsub = ev.add_subparsers(dest="evaluator", required=True)
    mw = evsub.add_parser("mwright", help="evaluate M_nu(z)")
    mw.add_argument("--nu", type=float, required=True)
    mw.add_argument("--z", type=float, required=True)
    mw.add_argument("--tol", type=float, default=1e-10)
    gr = evsub.add_parser("green", help="evaluate a Green function at (x, t)")
    gr.add_argument("--nu", type=float, required=True)
    gr.add_argument("--x", type=float, required=True)
    gr.add_argument("--t", type=float, required=True)
    gr.add_argument("--kind", choices=("cauchy", "second", "signaling"),
                    default="cauchy")
    gr.add_argument("--tol", type=float, default=1e-10)
    return p


def _cmd_run(args) -> int:
    name = args.scenario
    if os.path.exists(name):
        scenario = load_scenario_file(name)
        summary = run_scenario(scenario, out_dir=args.out, tol=args.tol,
                               oracle=args.oracle)
    else:
        summary = run_by_name(name, out_dir=args.out, tol=args.tol,
                              oracle=args.oracle)
    for f in summary["files"]:
        print(f)
    for t, d in summary["discrepancies"].items():
        print(f"t={t:g} Linf={d['linf']:.6e} L2={d['l2']:.6e}")
    return EXIT_OK


def _cmd_eval(args) -> int:
    if args.evaluator == "mwright":
        res = m_wright(MWrightOrder(args.nu), args.z, tol=args.tol,
                       max_terms=2000)
        print(f"{res.value:.17g}")
        return EXIT_OK
    order = FracOrder.from_nu(args.nu)
    if args.kind == "cauchy":
        v = green_cauchy(order, args.x, args.t, tol=args.tol, max_terms=2000)
    elif args.kind == "second":
        v = green_cauchy_second(order, args.x, args.t, tol=args.tol,
                                max_terms=2000)
    else:
        v = green_signaling(order, args.x, args.t, tol=args.tol,
                            max_terms=2000)
    print(f"{v:.17g}")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "list":
            for name, desc in list_scenarios():
                print(f"{name:20s} {desc}")
            return EXIT_OK
        return _cmd_eval(args)
    except NonConvergent as exc:
        print(f"error: non-convergent: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENT
    except (ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: i/o failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
