"""Command line interface.

Exit codes: 0 success, 1 I/O or format error, 2 verification failure or
nonexistent design, 3 parameters outside every known construction.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import __version__
from ._search import SEARCH_SEEDS
from .arrays import (
    ArrayKind,
    SquareVariant,
    kotzig_array,
    magic_rectangle,
    magic_rectangle_set,
    nearly_magic_rectangle,
    odd_magic_square,
    quasi_kotzig_array,
    verify_array,
)
from .builders import Recipe, build_rkmn_family, verify_blanked, verify_family
from .errors import BudgetExceeded, ConstructionError, NonexistentDesign, OutOfScope
from .graphs import (
    EdgeLabeling,
    chi_la_bounds,
    check_local_antimagic,
    label_graph,
    labeling_from_matrix_family,
    make_graph,
    path_graph,
    vertex_weights,
)
from .oracle import DEFAULT_MAX_EDGES, exact_chi_la
from .serialize import (
    BLANKED_KIND,
    FormatError,
    bounds_to_json,
    digest,
    dumps,
    family_from_json,
    family_to_json,
    labeling_to_json,
    labels_from_json,
    matrix_from_json,
    matrix_to_csv,
    matrix_to_json,
    oracle_to_json,
    recipe_to_json,
)

OK, IO_ERROR, FAILED, OUT_OF_SCOPE = 0, 1, 2, 3

KINDS = {
    "magic-square": (1, ArrayKind.MAGIC_SQUARE),
    "magic-rectangle": (2, ArrayKind.MAGIC_RECTANGLE),
    "nmr": (2, ArrayKind.NMR),
    "ka": (2, ArrayKind.KA),
    "qka": (2, ArrayKind.QKA),
    "mrs": (3, ArrayKind.MRS),
}

FAMILIES = {"kmn": ("Kmn", 2), "rkmn": ("rKmn", 3), "k1mn": ("K1mn", 2), "path": ("path", 1)}


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _dims(args, count: int, what: str) -> List[int]:
    """Positional numbers, overridden by --m/--n/--r when given."""
    dims = list(args.dims)
    for k, flag in enumerate(("m", "n", "r")):
        value = getattr(args, flag, None)
        if value is not None:
            while len(dims) <= k:
                dims.append(None)
            dims[k] = value
    dims = [d for d in dims if d is not None]
    if len(dims) != count:
        raise CliError(IO_ERROR, f"{what} takes {count} number(s), got {len(dims)}")
    return dims


class _Outputs:
    """Collects written files so a run manifest can record their digests."""

    def __init__(self):
        self.files: Dict[str, str] = {}

    def write(self, path: Optional[str], text: str) -> None:
        if path is None or path == "-":
            sys.stdout.write(text)
            self.files["<stdout>"] = digest(text)
            return
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise CliError(IO_ERROR, f"cannot write {path}: {exc}") from None
        self.files[path] = digest(text)


def _manifest(args, argv, parameters, recipe, outputs: _Outputs) -> None:
    if not getattr(args, "manifest", None):
        return
    doc = {
        "command": list(argv),
        "version": __version__,
        "parameters": parameters,
        "recipe": recipe,
        "search_seeds": list(SEARCH_SEEDS),
        "outputs": outputs.files,
    }
    try:
        Path(args.manifest).write_text(dumps(doc))
    except OSError as exc:
        raise CliError(IO_ERROR, f"cannot write {args.manifest}: {exc}") from None


def _say(args, text: str) -> None:
    # keep stdout clean when the artifact itself goes there
    stream = sys.stderr if getattr(args, "out", None) in (None, "-") else sys.stdout
    print(text, file=stream)


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(IO_ERROR, f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(IO_ERROR, f"{path} is not valid JSON: {exc}") from None


# ---------------------------------------------------------------- construct

def _construct(kind: str, dims: List[int], variant: str):
    if kind == "magic-square":
        n = dims[0]
        if n < 3 or n % 2 == 0:
            raise OutOfScope(f"the cyclic Latin-square construction needs odd order >= 3, got {n}")
        return [odd_magic_square(n, SquareVariant(variant))]
    if kind == "magic-rectangle":
        return [magic_rectangle(*dims)]
    if kind == "nmr":
        return [nearly_magic_rectangle(*dims)]
    if kind == "ka":
        if dims[0] < 2:
            raise NonexistentDesign("Kotzig arrays need at least two rows")
        return [kotzig_array(*dims)]
    if kind == "qka":
        return [quasi_kotzig_array(*dims)]
    return list(magic_rectangle_set(*dims))


def cmd_construct(args, argv) -> int:
    count, kind = KINDS[args.kind]
    dims = _dims(args, count, args.kind)
    mats = _construct(args.kind, dims, args.variant)
    report = verify_array(mats, kind)
    outputs = _Outputs()
    if args.format == "csv":
        _write_csv(mats, args.out, outputs)
    else:
        outputs.write(args.out, dumps(matrix_to_json(mats, kind.value)))
    _say(args, f"{kind.value}{tuple(dims)}: verification {'passed' if report.passed else 'FAILED'}")
    _say(args, f"  row sums {sorted(set(report.observed.row_sums))}, "
               f"column sums {sorted(set(report.observed.col_sums))}")
    for v in report.violations:
        _say(args, f"  {v}")
    _manifest(args, argv, {"kind": args.kind, "dims": dims, "variant": args.variant}, None, outputs)
    return OK if report.passed else FAILED


def _write_csv(mats, out: Optional[str], outputs: _Outputs) -> None:
    if out is None or out == "-" or len(mats) == 1:
        for m in mats:
            outputs.write(out, matrix_to_csv(m))
        return
    p = Path(out)
    for k, m in enumerate(mats, 1):
        outputs.write(str(p.with_name(f"{p.stem}_{k}{p.suffix or '.csv'}")), matrix_to_csv(m))


# ---------------------------------------------------------------- label

def _family(name: str):
    key = name.lower()
    if key not in FAMILIES:
        raise CliError(IO_ERROR, f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    return FAMILIES[key]


def _odd_square_row_constants(res) -> Dict[str, object]:
    """Row-sum constant of the odd-square blanked matrix, derived two ways.

    The total-sum argument gives (n+1)((n+1)^2+1)/2 before the shift by
    n+1; the alternative closed form ((n+1)/2)((4n^2+8n+11)/2) disagrees
    with it and with the observed sums, so it is reported for reference only.
    """
    n = res.recipe.m
    observed = sorted(set(res.certificate.row_sums()))
    return {
        "observed": observed,
        "total_sum_formula": (n + 1) * ((n + 1) ** 2 + 1) // 2 - (n + 1),
        "alternative_formula": (n + 1) * (4 * n * n + 8 * n + 11) / 4 - (n + 1),
    }


def cmd_label(args, argv) -> int:
    fam_name, count = _family(args.family)
    if fam_name == "path":
        raise CliError(OUT_OF_SCOPE, "paths have no matrix construction; use the oracle")
    dims = _dims(args, count, args.family)
    res = label_graph(fam_name, dims)
    outputs = _Outputs()
    extra = {"recipe": recipe_to_json(res.recipe), "bounds": bounds_to_json(res.bounds)}
    if res.recipe.tag is Recipe.B_ODD_SQUARE:
        extra["row_sum_constants"] = _odd_square_row_constants(res)
    outputs.write(args.out, dumps(labeling_to_json(res.labeling, extra)))
    if args.family_out:
        cert = res.certificate
        doc = family_to_json(cert) if hasattr(cert, "copies") else matrix_to_json([cert], BLANKED_KIND)
        outputs.write(args.family_out, dumps(doc))
    b = res.bounds
    upper = "?" if b.upper is None else b.upper
    _say(args, f"{fam_name}{tuple(dims)} via {res.recipe.tag.value}: "
               f"{res.coloring.color_count} classes {list(res.coloring.classes)}, "
               f"proper={res.coloring.proper}, bounds [{b.lower}, {upper}]")
    _manifest(args, argv, {"family": fam_name, "params": dims}, res.recipe.tag.value, outputs)
    return OK


# ---------------------------------------------------------------- verify / weights

def _verify_labeling(data) -> List[str]:
    g, labels = labels_from_json(data)
    problems = []
    try:
        lab = EdgeLabeling(g, tuple(labels))
    except ValueError as exc:
        return [str(exc)]
    col = vertex_weights(lab)
    bad = check_local_antimagic(lab)
    if bad:
        problems.append(f"{len(bad)} edge(s) join equal weights, e.g. {bad[0]}")
    stated = data.get("weights")
    actual = {v.name: w for v, w in zip(g.vertices, col.weights)}
    if stated is not None and stated != actual:
        problems.append("stated weights differ from weights recomputed from the labels")
    if "classes" in data and list(data["classes"]) != list(col.classes):
        problems.append("stated classes differ from the recomputed ones")
    if "proper" in data and data["proper"] != col.proper:
        problems.append("stated 'proper' flag is wrong")
    return problems


def _verify_family_document(fam) -> List[str]:
    problems = verify_family(fam)
    m, n = fam.shape
    if fam.recipe is not None:
        rec = fam.recipe
        if (rec.m, rec.n, rec.r) != (m, n, len(fam.copies)):
            problems.append("recipe parameters do not match the family shape")
        else:
            # claims are recomputed from the closed forms, never read from the file
            try:
                expected = build_rkmn_family(m, n, rec.r)
            except (OutOfScope, NonexistentDesign, ValueError):
                problems.append(f"recipe {rec.tag.value} does not cover ({m},{n},{rec.r})")
            else:
                if (expected.claimed_row_sums, expected.claimed_col_sums) != (
                        fam.claimed_row_sums, fam.claimed_col_sums):
                    problems.append("claimed sums differ from the closed forms of the recipe")
    if min(m, n) >= 2 and not problems:
        g = make_graph("rKmn", (m, n, len(fam.copies)))
        bad = check_local_antimagic(labeling_from_matrix_family(g, fam))
        if bad:
            problems.append(f"induced labeling is not local antimagic on {len(bad)} edge(s)")
    return problems


def _verify_document(data) -> List[str]:
    if not isinstance(data, dict):
        raise FormatError("top-level JSON must be an object")
    if "copies" in data:
        return _verify_family_document(family_from_json(data))
    if "labels" in data:
        return _verify_labeling(data)
    if "entries" in data:
        mats, kind = matrix_from_json(data)
        if kind == BLANKED_KIND:
            return verify_blanked(mats[0]) if len(mats) == 1 else ["expected one blanked matrix"]
        try:
            kind = ArrayKind(kind)
        except ValueError:
            raise FormatError(f"unknown matrix kind {kind!r}") from None
        return list(verify_array(mats, kind).violations)
    raise FormatError("unrecognised document: expected a matrix, family or labeling")


def cmd_verify(args, argv) -> int:
    data = _load(args.path)
    problems = _verify_document(data)
    if problems:
        print(f"{args.path}: FAILED")
        for p in problems:
            print(f"  {p}")
        return FAILED
    print(f"{args.path}: passed")
    return OK


def cmd_weights(args, argv) -> int:
    data = _load(args.path)
    if not isinstance(data, dict):
        raise FormatError("top-level JSON must be an object")
    g, labels = labels_from_json(data)
    try:
        lab = EdgeLabeling(g, tuple(labels))
    except ValueError as exc:
        print(f"{args.path}: {exc}")
        return FAILED
    col = vertex_weights(lab)
    doc = {
        "weights": {v.name: w for v, w in zip(g.vertices, col.weights)},
        "classes": list(col.classes),
        "color_count": col.color_count,
        "proper": col.proper,
    }
    sys.stdout.write(dumps(doc))
    return OK if col.proper else FAILED


# ---------------------------------------------------------------- bounds / oracle

def cmd_bounds(args, argv) -> int:
    fam_name, count = _family(args.family)
    if fam_name == "path":
        raise CliError(OUT_OF_SCOPE, "bounds are tabulated for kmn, rkmn and k1mn only")
    dims = _dims(args, count, args.family)
    sys.stdout.write(dumps(bounds_to_json(chi_la_bounds(fam_name, dims))))
    return OK


def cmd_oracle(args, argv) -> int:
    fam_name, count = _family(args.family)
    dims = _dims(args, count, args.family)
    g = path_graph(dims[0]) if fam_name == "path" else make_graph(fam_name, dims)
    res = exact_chi_la(g, args.max_edges, workers=args.workers)
    outputs = _Outputs()
    outputs.write(args.out, dumps(oracle_to_json(res)))
    _say(args, f"chi_la = {res.chi_la} ({res.explored} search nodes)")
    _manifest(args, argv, {"family": fam_name, "params": dims, "max_edges": args.max_edges},
              None, outputs)
    return OK


# ---------------------------------------------------------------- export

def cmd_export(args, argv) -> int:
    data = _load(args.path)
    if not isinstance(data, dict):
        raise FormatError("top-level JSON must be an object")
    if "copies" in data:
        mats = list(family_from_json(data).copies)
    elif "entries" in data:
        mats = matrix_from_json(data)[0]
    else:
        raise FormatError("export takes a matrix or family document")
    outputs = _Outputs()
    _write_csv(mats, args.out, outputs)
    for name in outputs.files:
        if name != "<stdout>":
            print(name)
    return OK


# ---------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="antimagic",
        description="Construct and verify magic-type arrays and local antimagic labelings.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def dims_flags(p):
        p.add_argument("dims", nargs="*", type=int, help="dimensions, e.g. m n r")
        p.add_argument("--m", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--r", type=int)

    p = sub.add_parser("construct", help="build a standalone array and verify it")
    p.add_argument("kind", choices=sorted(KINDS))
    dims_flags(p)
    p.add_argument("--variant", choices=[v.value for v in SquareVariant], default="N2")
    p.add_argument("--out")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--manifest")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("label", help="label rK_{m,n} or K_{1,m,n} from a construction")
    p.add_argument("family", help="kmn, rkmn or k1mn")
    dims_flags(p)
    p.add_argument("--out")
    p.add_argument("--family-out", help="also write the matrix family or blanked matrix")
    p.add_argument("--manifest")
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("verify", help="re-check a matrix, family or labeling document")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("weights", help="vertex weights of a labeling document")
    p.add_argument("path")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("bounds", help="known bounds on the local antimagic chromatic number")
    p.add_argument("family")
    dims_flags(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("oracle", help="exact value by exhaustive search (small graphs)")
    p.add_argument("family", help="kmn, rkmn, k1mn or path")
    dims_flags(p)
    p.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--manifest")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("export", help="write the rectangles of a document as CSV")
    p.add_argument("path")
    p.add_argument("--out", required=True, help="CSV path; sets get _1, _2, ... suffixes")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return IO_ERROR if exc.code else OK
    try:
        return args.func(args, argv)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except FormatError as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return IO_ERROR
    except NonexistentDesign as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    except (OutOfScope, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return OUT_OF_SCOPE
    except ConstructionError as exc:
        print(f"error: construction failed its own check: {exc}", file=sys.stderr)
        return FAILED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
