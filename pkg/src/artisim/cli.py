"""Command-line entry points.

    artisim validate data.json
    artisim matrix data.json --weights-mode expert --weights 0.25,0.75
    artisim graph data.json --rule knn:2 --format dot
    artisim sweep data.json --delta 0.25 --rule maximal
    artisim serve data.json --port 8765

Exit codes: 0 ok, 1 dataset content invalid, 2 I/O or usage problems.
Weight lists follow the dataset's perspective order (perspectives are
kept sorted by id; `artisim validate` prints the order).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .errors import ArtisimError, ConfigError, DataError
from .formats import (Dataset, DatasetValidationError, export_graph,
                      export_matrix, export_sweep_report, load_dataset)
from .graphs import GraphRule, build_graph, sweep
from .metrics import (DEFAULT_FORMULA, SIMILARITY_FORMULAS, WeightVector,
                      as_fraction, similarity_matrix, weights_implied,
                      weights_uniform)
from .model import CLOSURE_ANCESTORS, CLOSURE_NONE, with_closure

DEFAULT_PORT = 8765
PORT_ENV_VAR = "ARTISIM_PORT"

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("path", help="dataset document (JSON)")
    parser.add_argument("--closure", choices=[CLOSURE_NONE, CLOSURE_ANCESTORS],
                        default=CLOSURE_NONE,
                        help="attribute closure applied to artifacts")
    parser.add_argument("--formula", choices=sorted(SIMILARITY_FORMULAS),
                        default=DEFAULT_FORMULA,
                        help="similarity combination formula")


def _add_weight_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--weights-mode",
                        choices=["uniform", "implied", "expert"],
                        default="uniform")
    parser.add_argument("--weights", metavar="W1,W2,...",
                        help="expert weights, one per perspective in id "
                             "order; 0 removes a perspective; normalized "
                             "before use")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="artisim",
        description="Perspective-weighted artifact similarity analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a dataset document")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("matrix", help="print the similarity matrix as CSV")
    _add_common(p)
    _add_weight_options(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("graph", help="derive and print a similarity graph")
    _add_common(p)
    _add_weight_options(p)
    p.add_argument("--rule", default="maximal",
                   help="maximal | knn:N | threshold:T")
    p.add_argument("--format", choices=["dot", "graphml", "json"],
                   default="dot")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("sweep",
                       help="sweep the weight grid and report regions")
    _add_common(p)
    p.add_argument("--delta", default="0.25",
                   help="grid step; must divide 1 evenly")
    p.add_argument("--rule", default="maximal")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("serve", help="serve the HTTP API for the explorer UI")
    _add_common(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int,
                   default=int(os.environ.get(PORT_ENV_VAR, DEFAULT_PORT)))
    p.add_argument("--ui", metavar="DIR", default=None,
                   help="serve a built explorer UI from this directory")
    p.set_defaults(func=cmd_serve)
    return parser


def _load(path: str) -> Dataset:
    return load_dataset(Path(path).read_bytes())


def _prepared(args) -> tuple[Dataset, tuple, WeightVector]:
    """Dataset, closure-adjusted artifacts, and the requested weights."""
    dataset = _load(args.path)
    artifacts = tuple(with_closure(a, dataset.structure, args.closure)
                      for a in dataset.artifacts)
    pset = dataset.perspective_set()
    mode = args.weights_mode
    if mode == "expert":
        if not args.weights:
            raise ConfigError("--weights-mode expert requires --weights")
        try:
            entries = tuple(as_fraction(w.strip())
                            for w in args.weights.split(","))
        except (ValueError, ZeroDivisionError, ConfigError):
            raise ConfigError(f"cannot parse weights {args.weights!r}") from None
        if len(entries) != len(pset):
            raise ConfigError(f"{len(entries)} weights given for "
                              f"{len(pset)} perspectives")
        weights = WeightVector(entries).normalize()
    elif args.weights:
        raise ConfigError("--weights is only valid with --weights-mode expert")
    elif mode == "implied":
        weights = weights_implied(pset, artifacts)
    else:
        weights = weights_uniform(pset)
    return dataset, artifacts, weights


def _emit(data: bytes) -> None:
    sys.stdout.write(data.decode("utf-8"))


def cmd_validate(args) -> int:
    dataset = _load(args.path)
    print(f"valid: {len(dataset.structure.nodes)} nodes, "
          f"{len(dataset.structure.edges)} edges, "
          f"{len(dataset.artifacts)} artifacts, "
          f"{len(dataset.perspectives)} perspectives")
    for p in dataset.perspectives:
        print(f"  perspective {p.id}: {len(p.attributes)} attributes")
    return EXIT_OK


def cmd_matrix(args) -> int:
    dataset, artifacts, weights = _prepared(args)
    matrix = similarity_matrix(dataset.perspective_set(), weights, artifacts,
                               formula=args.formula)
    _emit(export_matrix(matrix))
    return EXIT_OK


def cmd_graph(args) -> int:
    dataset, artifacts, weights = _prepared(args)
    rule = GraphRule.parse(args.rule)
    matrix = similarity_matrix(dataset.perspective_set(), weights, artifacts,
                               formula=args.formula)
    _emit(export_graph(build_graph(matrix, rule), format=args.format))
    return EXIT_OK


def cmd_sweep(args) -> int:
    dataset = _load(args.path)
    artifacts = tuple(with_closure(a, dataset.structure, args.closure)
                      for a in dataset.artifacts)
    report = sweep(dataset.perspective_set(), artifacts,
                   as_fraction(args.delta), GraphRule.parse(args.rule),
                   formula=args.formula)
    _emit(export_sweep_report(report))
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import serve
    dataset = _load(args.path)
    serve(dataset, host=args.host, port=args.port, closure=args.closure,
          formula=args.formula, ui_dir=args.ui)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DatasetValidationError as exc:
        print(exc.report)
        return EXIT_INVALID
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArtisimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # uvicorn signals startup failure (busy port etc.) this way
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
