"""Command-line front end.

Subcommands:

  analyze  run all homomorphism detectors on a map file, print the report
  gen      generate a random UCP map / homomorphism / perturbed homomorphism
  verify   run the named property suites and summarize pass/fail
  cj       channel-state conversions: Choi state, adjoints, duality check

Exit codes for `analyze` (and `cj --check`): 0 homomorphism, 1 not,
2 indeterminate, 3 precondition failure (reported), 4 parse error,
5 internal inconsistency. `verify` exits 0 iff every suite passes.

Flags only; environment variables are never consulted.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import Algebra
from .choi import adjusted_choi, cj_dual_check, map_from_adjusted_choi
from .errors import (
    CstarhomError,
    InternalSpectralError,
    MultiplicityTooSmall,
    NoUnitalEmbedding,
    NotCompletelyPositive,
    NotSingleBlock,
    NotTracePreserving,
    NotUCP,
    ParseError,
)
from .fileio import (
    defect_string,
    dumps,
    element_to_obj,
    linmap_to_obj,
    load_element,
    load_map,
)
from .linmap import dagger_adjoint, ddagger_adjoint
from .properties import SUITES, Config, run_suites
from .randgen import perturb_toward_scrambling, random_homomorphism, random_ucp
from .report import (
    EXIT_INTERNAL,
    EXIT_PARSE,
    EXIT_PRECONDITION,
    analyze_map,
)

_PRECONDITION_ERRORS = (
    NotUCP,
    NotSingleBlock,
    NotTracePreserving,
    NotCompletelyPositive,
    NoUnitalEmbedding,
    MultiplicityTooSmall,
)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _blocks(text: str) -> Algebra:
    try:
        return Algebra(tuple(int(part) for part in text.split(",")))
    except ValueError as exc:
        raise ParseError(f"malformed block list {text!r}: {exc}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cstarhom",
        description="Detect *-homomorphisms among unital completely positive maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a map file")
    p.add_argument("mapfile")
    p.add_argument("--tol", type=float, default=None,
                   help="structural tolerance (default 1e-9 sqrt(dim of Choi algebra))")
    p.add_argument("--entropy-tol", type=float, default=None,
                   help="entropy-gap tolerance in natural-log units "
                        "(default 1e-8 * codomain dimension)")
    p.add_argument("--log-base", choices=["e", "2", "10"], default="e")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=0,
                   help="monotonicity-refuter trials (0 disables the refuter)")
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("gen", help="generate a map file")
    p.add_argument("--kind", choices=["ucp", "hom", "perturbed"], required=True)
    p.add_argument("--domain", required=True, help="comma-separated block sizes")
    p.add_argument("--codomain", required=True, help="comma-separated block sizes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--multiplicities", default=None,
                   help="comma-separated representation multiplicities (ucp only)")
    p.add_argument("--eps", type=float, default=None,
                   help="scrambling weight in [0,1] (perturbed only)")
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--max-dim", type=int, default=6)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--k-max", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--property", action="append", default=None,
                   help="run only this suite (repeatable)")
    p.add_argument("--poison", action="store_true",
                   help="flip a sign inside the adjusted adjoint used by the "
                        "diagonal_transport suite; that suite must then fail")
    p.add_argument("--list", action="store_true", help="list suite names and exit")

    p = sub.add_parser("cj", help="channel-state conversions")
    p.add_argument("input", nargs="?", default=None, help="map file (or element file with --from-state)")
    p.add_argument("--adjoint", choices=["dagger", "ddagger"], default=None,
                   help="emit the chosen adjoint as a map file")
    p.add_argument("--from-state", action="store_true",
                   help="input is an adjusted Choi element; emit the map")
    p.add_argument("--domain-dim", type=int, default=None,
                   help="matrix size of the recovered map's domain (--from-state)")
    p.add_argument("--codomain-dim", type=int, default=None,
                   help="matrix size of the recovered map's codomain (--from-state)")
    p.add_argument("--check", action="store_true",
                   help="run the duality projection check on a trace-preserving "
                        "CP map and report whether its adjoint is a homomorphism")
    p.add_argument("-o", "--output", default=None)
    return parser


def _cmd_analyze(args: argparse.Namespace) -> int:
    phi = load_map(args.mapfile)
    result = analyze_map(
        phi,
        source=args.mapfile,
        tol=args.tol,
        entropy_tol=args.entropy_tol,
        log_base=args.log_base,
        seed=args.seed,
        trials=args.trials,
        k_max=args.k_max,
    )
    _emit(dumps(result.report), args.output)
    return result.exit_code


def _cmd_gen(args: argparse.Namespace) -> int:
    domain = _blocks(args.domain)
    codomain = _blocks(args.codomain)
    if args.kind == "ucp":
        mult = None
        if args.multiplicities is not None:
            mult = tuple(int(p) for p in args.multiplicities.split(","))
        phi = random_ucp(domain, codomain, multiplicities=mult, seed=args.seed)
    elif args.kind == "hom":
        phi = random_homomorphism(domain, codomain, args.seed)
    else:
        if args.eps is None:
            raise ParseError("--eps is required for --kind perturbed")
        base = random_homomorphism(domain, codomain, args.seed)
        import numpy as np

        phi = perturb_toward_scrambling(base, args.eps, np.random.default_rng([args.seed, 1]))
    _emit(dumps(linmap_to_obj(phi)), args.output)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.list:
        for name in SUITES:
            print(name)
        return 0
    cfg = Config(
        seeds=args.seeds,
        max_dim=args.max_dim,
        trials=args.trials,
        k_max=args.k_max,
        seed=args.seed,
        poison=args.poison,
    )
    results = run_suites(args.property, cfg)
    all_pass = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        all_pass = all_pass and r.passed
        print(
            f"{status} {r.name:<28} checks={r.checks:<6} "
            f"failures={r.failures:<4} worst_residual={r.worst_residual:.3e}"
        )
        for line in r.details:
            print(f"       {line}")
    print(f"SUMMARY: {sum(r.passed for r in results)}/{len(results)} suites passed")
    return 0 if all_pass else 1


def _cmd_cj(args: argparse.Namespace) -> int:
    if args.from_state:
        if args.input is None or args.domain_dim is None or args.codomain_dim is None:
            raise ParseError("--from-state needs an element file, --domain-dim and --codomain-dim")
        element = load_element(args.input)
        phi = map_from_adjusted_choi(
            element, Algebra((args.domain_dim,)), Algebra((args.codomain_dim,))
        )
        _emit(dumps(linmap_to_obj(phi)), args.output)
        return 0
    if args.input is None:
        raise ParseError("a map file is required")
    psi = load_map(args.input)
    if args.check:
        rep = cj_dual_check(psi)
        report = {
            "source": args.input,
            "projection_defect": defect_string(rep.projection_defect),
            "conjugate_identity_residual": defect_string(rep.conjugate_identity_residual),
            "adjoint_is_homomorphism": rep.is_homomorphism,
        }
        _emit(dumps(report), args.output)
        return 0 if rep.is_homomorphism else 1
    if args.adjoint is not None:
        adj = dagger_adjoint(psi) if args.adjoint == "dagger" else ddagger_adjoint(psi)
        _emit(dumps(linmap_to_obj(adj)), args.output)
        return 0
    _emit(dumps(element_to_obj(adjusted_choi(psi))), args.output)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "analyze": _cmd_analyze,
        "gen": _cmd_gen,
        "verify": _cmd_verify,
        "cj": _cmd_cj,
    }
    try:
        return handlers[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _PRECONDITION_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InternalSpectralError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except CstarhomError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entry_point() -> None:  # pragma: no cover - thin wrapper
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    entry_point()
