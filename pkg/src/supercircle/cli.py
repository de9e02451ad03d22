"""Command-line entry point: ``supercircle {verify,decompose,expand,generate-rep}``.

Exit codes: 0 success, 1 mathematical failure, 2 usage or parse failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotARepresentation, ParseError, Undersampled
from .peter_weyl import error_sweep, errors_to_csv, expand, load_superfunction
from .shcp_reps import BRANCHES, assemble, decompose, decomposition_to_doc, load_rep, random_parts, rep_to_doc
from .scalars import ExactScalar
from .suites import SUITES, Settings, run_suite, summarize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    k: object
    backend: str = "exact"
    odd_generators: int = 4
    seed: int = 0
    max_weight: int | None = None
    grid_size: int | None = None
    tolerance: float = 1e-10
    branch: str = "default"
    out: str | None = None
    trials: int = 200

    @property
    def exact(self) -> bool:
        return self.backend == "exact"


def parse_k(text: str, exact: bool):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 1:
        parts.append("0")
    if len(parts) != 2:
        raise UsageError(f"--k expects 're,im', got {text!r}")
    try:
        if exact:
            re_, im = (Fraction(p) for p in parts)
            return ExactScalar(re_, im)
        return complex(float(parts[0]), float(parts[1]))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--k expects two numbers, got {text!r}") from None


def _config(args) -> RunConfig:
    exact = args.backend == "exact"
    cfg = RunConfig(parse_k(args.k, exact), args.backend, args.odd_generators, args.seed,
                    args.max_weight, args.grid_size, args.tolerance, args.branch, args.out,
                    args.trials)
    if cfg.odd_generators < 2:
        raise UsageError("--odd-generators must be at least 2 for randomised suites")
    if cfg.trials < 1:
        raise UsageError("--trials must be positive")
    return cfg


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True) + "\n"


# --- commands ----------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.suite not in SUITES + ("all",):
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES + ('all',))}")
    cfg = _config(args)
    settings = Settings(cfg.k, cfg.exact, cfg.odd_generators, cfg.seed, cfg.trials, cfg.tolerance,
                        cfg.max_weight if cfg.max_weight is not None else 5, cfg.branch)
    records = run_suite(args.suite, settings)
    _emit("".join(_dumps(r.to_dict()) for r in records), cfg.out)
    counts = summarize(records)
    print(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skip']} skipped",
          file=sys.stderr)
    return EXIT_FAIL if counts["fail"] else EXIT_OK


def cmd_decompose(args) -> int:
    cfg = _config(args)
    rep = load_rep(args.file)
    try:
        dec = decompose(rep, cfg.tolerance)
    except NotARepresentation as exc:
        print(f"not a representation: {exc} (block {exc.block}, identity {exc.identity})",
              file=sys.stderr)
        return EXIT_FAIL
    _emit(_dumps(decomposition_to_doc(dec)), cfg.out)
    return EXIT_OK


def _orders(text: str | None, fallback: int) -> list[int]:
    if not text:
        return [fallback]
    try:
        orders = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"--orders expects comma-separated integers, got {text!r}") from None
    if any(o < 0 for o in orders):
        raise UsageError("orders must be non-negative")
    return orders


def cmd_expand(args) -> int:
    cfg = _config(args)
    M = cfg.max_weight if cfg.max_weight is not None else 16
    orders = _orders(args.orders, M)
    top = max(orders)
    f = load_superfunction(args.source, cfg.grid_size, top)
    table = expand(f, top, cfg.branch)
    rows = error_sweep(f, orders, args.n_max, cfg.branch)
    doc = dict(table.to_doc(), source=args.source, grid_size=f.grid_size)
    if cfg.out:
        _emit(_dumps(doc), cfg.out + ".json")
        _emit(errors_to_csv(rows), cfg.out + ".csv")
    else:
        sys.stdout.write(_dumps(doc))
        sys.stdout.write(errors_to_csv(rows))
    return EXIT_OK


def cmd_generate_rep(args) -> int:
    cfg = _config(args)
    rng = random.Random(cfg.seed)
    parts = random_parts(rng, max_weight=cfg.max_weight if cfg.max_weight is not None else 10)
    rep = assemble(parts, exact=cfg.exact, rng=rng)
    doc = dict(rep_to_doc(rep), truth=dict(sorted(parts.items())))
    _emit(_dumps(doc), cfg.out)
    return EXIT_OK


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", default="1,0", help="group parameter as 're,im' (default 1,0)")
    common.add_argument("--backend", choices=("exact", "float"), default="exact")
    common.add_argument("--odd-generators", type=int, default=4, metavar="N",
                        help="number of paired odd generators in random T-points")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-weight", type=int, default=None, metavar="M")
    common.add_argument("--grid-size", type=int, default=None, metavar="G")
    common.add_argument("--tolerance", type=float, default=1e-10)
    common.add_argument("--branch", choices=BRANCHES, default="default",
                        help="odd normalisation: sqrt(-m) (default) or sqrt(m)")
    common.add_argument("--out", default=None, help="output path (expand: prefix)")
    common.add_argument("--trials", type=int, default=200)

    p = argparse.ArgumentParser(prog="supercircle",
                                description="Identity suites, decompositions and expansions for S^{1|1}.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run an identity suite")
    v.add_argument("suite", help=f"one of {', '.join(SUITES)}, all")
    v.set_defaults(func=cmd_verify)
    d = sub.add_parser("decompose", parents=[common], help="decompose a representation document")
    d.add_argument("file")
    d.set_defaults(func=cmd_decompose)
    e = sub.add_parser("expand", parents=[common], help="expand a superfunction")
    e.add_argument("source", help="catalog:<name> or a sampled-values JSON file")
    e.add_argument("--orders", default=None, help="comma-separated truncation orders")
    e.add_argument("--n-max", type=int, default=2, help="highest derivative in the error report")
    e.set_defaults(func=cmd_expand)
    g = sub.add_parser("generate-rep", parents=[common], help="write a random scrambled representation")
    g.set_defaults(func=cmd_generate_rep)
    return p


def _join_negative_k(argv: list[str]) -> list[str]:
    """Let ``--k -1,0`` through: argparse would read ``-1,0`` as an option."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--k" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--k={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _join_negative_k(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Undersampled as exc:
        print(f"undersampled: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
