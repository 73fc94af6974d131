"""Command line entry point: ``gffmod <command> <model.json> [options]``.

Exit codes: 0 success, 1 a numerical identity check failed, 2 model rejected
or bad usage, 3 the verdicts contradict the equivalence they must satisfy.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from gffmod.lorentz import DEFAULT_ORBIT_DEPTH
from gffmod.model import ModelError, load_model
from gffmod.report import (
    check_report,
    conjugate_report,
    emit,
    factor_report,
    flow_report,
    orbit_duality_report,
    verify_report,
)
from gffmod.verdicts import covariance_and_cgma_verdict, cross_check
from gffmod.verify import SuiteConfig

__all__ = ["main", "build_parser", "parse_phat", "EXIT_OK", "EXIT_NUMERIC", "EXIT_MODEL", "EXIT_INCONSISTENT"]

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_MODEL = 2
EXIT_INCONSISTENT = 3

COMMANDS = ("check", "factor", "flow", "conjugate", "verify", "orbit-duality")

# hook for tests that need a corrupted verdict
_verdict_engine = covariance_and_cgma_verdict


def parse_phat(text: str) -> tuple:
    """``"0,1"``, ``"(0, 1/2)"`` or ``"[1,-2]"`` -> tuple of rational strings; ``""`` is the empty vector."""
    body = text.strip()
    if body[:1] in "([" and body[-1:] in ")]":
        body = body[1:-1]
    if not body.strip():
        return ()
    out = []
    for part in body.split(","):
        try:
            out.append(str(Fraction(part.strip())))
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"malformed phat entry {part.strip()!r}") from None
    return tuple(out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gffmod", description="Wedge modular theory of generalized free fields.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("model", help="model JSON file")
    p.add_argument("--phat", type=parse_phat, default=None, help="transverse momentum for 'factor', e.g. 0,1/2")
    p.add_argument("--k", type=int, default=16, help="flow step for 'flow' (t = k h / 2 pi)")
    p.add_argument("--depth", type=int, default=DEFAULT_ORBIT_DEPTH, help="orbit depth of the wedge-frame search")
    p.add_argument("--seed", type=int, default=0, help="seed for random phat samples and test states")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    defaults = SuiteConfig()
    p.add_argument("--tol-cluster", type=float, default=defaults.cluster_tol)
    p.add_argument("--tol-symmetry", type=float, default=defaults.symmetry_tol)
    p.add_argument("--tol-flow", type=float, default=defaults.flow_tol)
    p.add_argument("--tol-s-identity", type=float, default=defaults.s_identity_tol)
    p.add_argument("--tol-borchers", type=float, default=defaults.borchers_tol)
    p.add_argument("--tol-j-equal", type=float, default=defaults.j_equal_tol)
    p.add_argument("--n-plus", type=int, default=defaults.n_plus, help="number of p+ lattice points")
    return p


def _config(args: argparse.Namespace) -> SuiteConfig:
    return SuiteConfig(
        cluster_tol=args.tol_cluster,
        symmetry_tol=args.tol_symmetry,
        flow_tol=args.tol_flow,
        s_identity_tol=args.tol_s_identity,
        borchers_tol=args.tol_borchers,
        j_equal_tol=args.tol_j_equal,
        n_plus=args.n_plus,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.depth < 0:
        parser.error("--depth must be nonnegative")
    if args.n_plus < 8:
        parser.error("--n-plus must be at least 8")
    try:
        model = load_model(args.model)
    except OSError as exc:
        print(f"gffmod: cannot read model: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except ModelError as exc:
        print("gffmod: model rejected:", file=sys.stderr)
        for problem in exc.problems:
            print(f"  - {problem}", file=sys.stderr)
        return EXIT_MODEL
    cfg = _config(args)
    code = EXIT_OK
    if args.command == "check":
        verdicts = _verdict_engine(model, args.depth, args.seed, cfg.cluster_tol)
        verdicts.consistency = cross_check(model, verdicts)
        report = check_report(model, args.seed, args.depth, cfg, verdicts=verdicts)
        if not verdicts.consistency.consistent:
            code = EXIT_INCONSISTENT
        elif not report["numerical_suite"]["passed"]:
            code = EXIT_NUMERIC
    elif args.command == "factor":
        phat = args.phat
        if phat is not None and len(phat) != model.dimension - 2:
            parser.error(f"--phat needs {model.dimension - 2} entries for d={model.dimension}")
        report = factor_report(model, phat, cfg)
    elif args.command == "flow":
        if abs(args.k) >= cfg.n_plus:
            parser.error(f"--k must satisfy |k| < {cfg.n_plus}")
        report = flow_report(model, args.k, args.seed, cfg)
    elif args.command == "conjugate":
        report = conjugate_report(model, args.seed, cfg)
    elif args.command == "verify":
        report = verify_report(model, args.seed, cfg)
        if not report["numerical_suite"]["passed"]:
            code = EXIT_NUMERIC
    else:
        report = orbit_duality_report(model, args.depth, args.seed, cfg)
    emit(report, args.format, args.out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
