"""``bundlecob`` command line.

Every command prints plain text by default and deterministic JSON with
``--json``.  Exit status is 0 on success, 1 when a requested verification
fails and 2 for bad input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import serialize
from .decompose import decompose, external_product, format_decomposition, question
from .geometry import ClassSpec, chern_vector, phi, phi_list
from .pairing import MatrixCache, build_matrix, dimension_counts, verification_report
from .partitions import enumerate_lists, enumerate_pairs
from .relations import FAMILIES, run_family
from .ring import format_rational


def _read_json(path: str):
    if path == "-":
        return serialize.loads(sys.stdin.read(), "<stdin>")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise serialize.SpecError(path, exc.strerror or str(exc)) from None
    return serialize.loads(text, path)


def _read_class(path: str) -> tuple[ClassSpec, int | None, int | None]:
    obj = _read_json(path)
    c = serialize.class_from_json(obj, where=path)
    n, r = serialize.class_dims(obj, c)
    if n is None or r is None:
        raise serialize.SpecError(path, "an empty class must declare 'n' and 'r'")
    return c, n, r


def _cache(args) -> MatrixCache | None:
    if args.no_cache:
        return None
    return MatrixCache(args.cache_dir)


def _emit(args, payload, text: str):
    if args.json:
        sys.stdout.write(serialize.dumps(payload))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- commands --------------------------------------------------------------

def cmd_basis(args) -> int:
    if args.lists:
        items = enumerate_lists(args.n, args.r)
        gens = [phi_list(pl) for pl in items]
        payload = [{"lambda": list(pl.lam), "m": list(pl.m), "name": g.list_name()}
                   for pl, g in zip(items, gens)]
        text = "\n".join(g.list_name() for g in gens)
    else:
        items = enumerate_pairs(args.n, args.r)
        gens = [phi(p, args.r) for p in items]
        payload = [{"lambda": list(p.lam), "mu": list(p.mu), "name": g.name()}
                   for p, g in zip(items, gens)]
        text = "\n".join(g.name() for g in gens)
    _emit(args, payload, text)
    return 0


def cmd_matrix(args) -> int:
    m = build_matrix(args.n, args.r, cache=_cache(args), workers=args.threads)
    payload = {"n": m.n, "r": m.r, "index": [q.name() for q in m.index],
               "rows": [[format_rational(x) for x in row] for row in m.rows]}
    names = [q.name() for q in m.index]
    width = max([len(format_rational(x)) for row in m.rows for x in row] + [len(f"c{m.size - 1}")])
    label = max([len(s) for s in names] + [1])
    lines = [" " * label + "  " + " ".join(f"c{j}".rjust(width) for j in range(m.size))]
    for name, row in zip(names, m.rows):
        lines.append(name.ljust(label) + "  " + " ".join(format_rational(x).rjust(width) for x in row))
    status = 0
    if args.verify:
        report = verification_report(m)
        payload["verification"] = report
        lines.append("")
        lines.append(f"block lower triangular: {'yes' if report['block_triangular']['ok'] else 'NO'}")
        lines.append(f"diagonal blocks match M_(n-|mu|,0): {'yes' if report['diagonal_blocks']['ok'] else 'NO'}")
        lines.append(f"determinant: {report['determinant']}")
        lines.append(f"dimension identity: {'yes' if report['dimension_identity'] else 'NO'}")
        status = 0 if report["ok"] else 1
    _emit(args, payload, "\n".join(lines))
    return status


def cmd_decompose(args) -> int:
    c, n, r = _read_class(args.file)
    coeffs = decompose(c, n, r, cache=_cache(args))
    _emit(args, {"n": n, "r": r, "coefficients": serialize.coefficients_to_json(coeffs, r)},
          format_decomposition(coeffs, r))
    return 0


def _class_product(a: ClassSpec, b: ClassSpec) -> ClassSpec:
    """Bilinear extension of the external product; ranks multiply."""
    return ClassSpec(tuple((x * y, external_product(g, h)) for x, g in a for y, h in b))


def cmd_product(args) -> int:
    a, na, ra = _read_class(args.file1)
    b, nb, rb = _read_class(args.file2)
    prod = _class_product(a, b)
    n, r = na + nb, ra * rb
    payload = {"product": serialize.class_to_json(prod, n, r)}
    text = " + ".join(f"{format_rational(x)}*{g.name()}" for x, g in prod) or "0"
    if args.decompose:
        coeffs = decompose(prod, n, r, cache=_cache(args))
        payload["coefficients"] = serialize.coefficients_to_json(coeffs, r)
        text += "\n= " + format_decomposition(coeffs, r)
    _emit(args, payload, text)
    return 0


def cmd_question(args) -> int:
    coeffs = question(args.a, args.b, cache=_cache(args))
    n = args.a + args.b
    _emit(args, {"a": args.a, "b": args.b, "n": n, "r": 1,
                 "coefficients": serialize.coefficients_to_json(coeffs, 1)},
          f"[P{args.a}xP{args.b}, O(1,1)] = " + format_decomposition(coeffs, 1))
    return 0


def cmd_verify_relations(args) -> int:
    report = run_family(args.family, args.max_dim, workers=args.threads)
    ok = report["passes"] == report["cases"]
    report["ok"] = ok
    text = f"{args.family} max-dim {args.max_dim}: {report['passes']}/{report['cases']} vanish"
    for f in report["failures"][:20]:
        text += f"\n  FAIL {f['parameters']}: {f['nonzero']}"
    _emit(args, report, text)
    return 0 if ok else 1


def cmd_count(args) -> int:
    counts = dimension_counts(args.n, args.r)
    text = "\n".join(f"{k}: {v}" for k, v in counts.items())
    _emit(args, counts, text)
    return 0


def cmd_chern_vector(args) -> int:
    c, n, r = _read_class(args.file)
    cv = chern_vector(c, n, r)
    text = "\n".join(f"{q.name()}: {format_rational(x)}" for q, x in zip(cv.order, cv.values))
    _emit(args, serialize.chern_vector_to_json(cv), text)
    return 0


# -- parser ----------------------------------------------------------------

def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _global_flags(parser, suppress: bool):
    # Defined on the main parser and again on every subparser so the flags
    # work on either side of the command name.
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=default(False),
                        help="print deterministic JSON instead of text")
    parser.add_argument("--cache-dir", default=default(None),
                        help="pairing matrix cache (default: $BUNDLECOB_CACHE_DIR or ./.bundlecob-cache)")
    parser.add_argument("--no-cache", action="store_true", default=default(False),
                        help="do not read or write the matrix cache")
    parser.add_argument("--threads", type=_positive, default=default(1),
                        help="worker processes for matrix rows and relation sweeps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bundlecob",
                                     description="Chern-number computations for bundles over projective towers.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("basis", parents=[common], help="list the basis generators phi")
    p.add_argument("n", type=_nonneg)
    p.add_argument("r", type=_nonneg)
    p.add_argument("--lists", action="store_true", help="use ordered lists of line bundles")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("matrix", parents=[common], help="print the pairing matrix M_{n,r}")
    p.add_argument("n", type=_nonneg)
    p.add_argument("r", type=_nonneg)
    p.add_argument("--verify", action="store_true",
                   help="check triangularity, diagonal blocks, determinant and counts")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("decompose", parents=[common], help="coordinates of a class in the phi basis")
    p.add_argument("file", help="ClassSpec JSON file, or - for stdin")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("product", parents=[common], help="external product of two classes")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--decompose", action="store_true", help="also decompose the product")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("question", parents=[common], help="decompose [P^a x P^b, O(1,1)]")
    p.add_argument("a", type=_nonneg)
    p.add_argument("b", type=_nonneg)
    p.set_defaults(func=cmd_question)

    p = sub.add_parser("verify-relations", parents=[common], help="check that relations have zero Chern vectors")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--max-dim", type=_nonneg, required=True,
                   help="largest dimension of the relation (|lambda|+1 for pb families, |lambda| for nc)")
    p.set_defaults(func=cmd_verify_relations)

    p = sub.add_parser("count", parents=[common], help="sizes of P_{n,r}, Q_{n,r} and C_{n,r}")
    p.add_argument("n", type=_nonneg)
    p.add_argument("r", type=_nonneg)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("chern-vector", parents=[common], help="all Chern invariants of a class")
    p.add_argument("file")
    p.set_defaults(func=cmd_chern_vector)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
