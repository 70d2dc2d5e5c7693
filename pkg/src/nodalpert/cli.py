"""Command-line front end.

``nodalpert analyze`` reads a graph (and optionally a matrix) and writes a
JSON report. ``nodalpert family`` builds one of the example families, can
export it to the text formats, and reports expected against computed values.

Exit codes: 1 malformed input, 2 matrix fails validation, 3 numerical failure.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from . import families
from .graph import format_graph, parse_graph
from .oracle import random_instance
from .perturb_multi import SplitError
from .perturb_simple import CertificationError
from .report import analyze, dumps, family_comparison
from .spectral import (ConvergenceError, GeneralizedLaplacian, NotGeneralizedLaplacian,
                       ZERO_TOL, classical_laplacian, eig_sym, format_matrix, parse_matrix)

EXIT_INPUT, EXIT_VALIDATION, EXIT_NUMERIC = 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _common(p):
    p.add_argument("--tol", type=float, help="group tolerance for equal eigenvalues")
    p.add_argument("--zero-tol", type=float, help="relative threshold below which entries count as zero")
    p.add_argument("--max-enum", type=int, default=22, help="max zeros for signing enumeration")
    p.add_argument("--certify", action="store_true", help="certify simple-eigenvalue signings")
    p.add_argument("--split-multi", action="store_true", help="split multiple eigenvalues")
    p.add_argument("--seed", type=int, help="seed recorded in the report (and used by `family random`)")
    p.add_argument("--out", help="output path (default stdout)")


def build_parser():
    parser = _Parser(prog="nodalpert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    a = sub.add_parser("analyze", help="analyze a graph and matrix")
    a.add_argument("--graph", required=True)
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix")
    src.add_argument("--classical", action="store_true")
    a.add_argument("--k", type=int, help="restrict to one eigenvalue index (1-based)")
    _common(a)
    f = sub.add_parser("family", help="build and analyze an example family")
    f.add_argument("name", choices=sorted(families.FAMILIES) + ["random"])
    f.add_argument("--n", type=int)
    f.add_argument("--s", type=int)
    f.add_argument("--k", type=int, help="path length for shallow-deep")
    f.add_argument("--ell", type=int)
    f.add_argument("--mu", type=float)
    f.add_argument("--export-dir", help="write graph.txt and matrix.txt here")
    _common(f)
    return parser


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load(args):
    try:
        g = parse_graph(_read(args.graph))
        m = classical_laplacian(g).m if args.classical else parse_matrix(_read(args.matrix))
    except NotGeneralizedLaplacian:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return g, GeneralizedLaplacian(g, m)


def _family(args):
    if args.name == "random":
        seed = 0 if args.seed is None else args.seed
        M = random_instance(args.n or 8, np.random.default_rng(seed))
        return families.FamilyInstance("random", M.g, M, [], "random generalized Laplacian",
                                       {"n": M.n, "seed": seed})
    params = {key: getattr(args, key) for key in ("n", "s", "k", "ell", "mu") if getattr(args, key) is not None}
    try:
        return families.FAMILIES[args.name](**params)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            g, M = _load(args)
            rep = analyze(g, M, args.k, args.tol, args.max_enum, args.certify, args.split_multi,
                          zero_tol=args.zero_tol or ZERO_TOL, seed=args.seed,
                          matrix_source="classical" if args.classical else "file")
        else:
            inst = _family(args)
            if args.export_dir:
                d = Path(args.export_dir)
                d.mkdir(parents=True, exist_ok=True)
                (d / "graph.txt").write_text(format_graph(inst.g))
                (d / "matrix.txt").write_text(format_matrix(inst.M))
            tol = args.tol if args.tol is not None else inst.group_tol
            ztol = args.zero_tol or inst.zero_tol or ZERO_TOL
            rep = analyze(inst.g, inst.M, None, tol, args.max_enum, args.certify, args.split_multi,
                          zero_tol=ztol, seed=args.seed, matrix_source=f"family {inst.name}")
            rep["family"] = {"name": inst.name, "params": inst.params, "notes": inst.notes,
                             "labels": list(inst.labels),
                             "expected": family_comparison(inst, eig_sym(inst.M))}
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotGeneralizedLaplacian as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ConvergenceError, CertificationError, SplitError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(dumps(rep), args.out)
    if rep["summary"]["uncertified"]:
        print(f"numerical failure: could not certify k={rep['summary']['uncertified']}", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


def main():
    sys.exit(run())
