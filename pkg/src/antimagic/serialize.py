"""JSON and CSV forms of matrices, families, labelings and oracle results.

Output is deterministic: keys keep insertion order and integer rows are
printed on one line, so two runs with equal inputs give identical bytes.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import re
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .arrays import ArrayKind, IntMatrix
from .builders import BuildRecipe, MatrixFamily, Recipe
from .graphs import (
    ChiBounds,
    EdgeLabeling,
    Family,
    PartiteGraph,
    custom_graph,
    make_graph,
    vertex_weights,
)

BLANKED_KIND = "BlankedMatrix"
_INT_LIST = re.compile(r"\[\s*(-?\d+(?:,\s*-?\d+)*)\s*\]")


class FormatError(ValueError):
    """Input JSON does not have the expected structure."""


def dumps(obj: Any) -> str:
    text = json.dumps(obj, indent=2, ensure_ascii=True)
    text = _INT_LIST.sub(lambda m: "[" + re.sub(r",\s*", ", ", m.group(1)) + "]", text)
    return text + "\n"


def digest(data: Union[str, bytes]) -> str:
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


# ---------------------------------------------------------------- matrices

def matrix_to_json(matrices: Sequence[IntMatrix], kind: str) -> Dict[str, Any]:
    first = matrices[0]
    blank = None if first.blank is None else [first.blank[0] + 1, first.blank[1] + 1]
    return {
        "kind": kind,
        "rows": first.nrows,
        "cols": first.ncols,
        "count": len(matrices),
        "entries": [m.to_lists() for m in matrices],
        "blank": blank,
    }


def _int_rows(raw, what: str) -> List[List[int]]:
    if not isinstance(raw, list) or not raw:
        raise FormatError(f"{what} must be a non-empty list of rows")
    rows = []
    for row in raw:
        if not isinstance(row, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in row):
            raise FormatError(f"{what} rows must be lists of integers")
        rows.append(row)
    return rows


def matrix_from_json(data: Dict[str, Any]) -> Tuple[List[IntMatrix], str]:
    try:
        kind = data["kind"]
        count, nrows, ncols = data["count"], data["rows"], data["cols"]
        blank = data.get("blank")
        raw = data["entries"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"matrix JSON is missing field {exc}") from None
    if not isinstance(raw, list) or len(raw) != count:
        raise FormatError(f"expected {count} rectangles in 'entries'")
    if blank is not None:
        if not (isinstance(blank, list) and len(blank) == 2):
            raise FormatError("'blank' must be [row, col] or null")
        blank = (blank[0] - 1, blank[1] - 1)
    mats = []
    for k, rect in enumerate(raw, 1):
        rows = _int_rows(rect, f"rectangle {k}")
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise FormatError(f"rectangle {k} is not {nrows}x{ncols}")
        try:
            mats.append(IntMatrix.of(rows, blank))
        except ValueError as exc:
            raise FormatError(str(exc)) from None
    return mats, kind


# ---------------------------------------------------------------- families

def recipe_to_json(recipe: Optional[BuildRecipe]) -> Optional[Dict[str, Any]]:
    if recipe is None:
        return None
    return {"theorem": recipe.tag.value, "m": recipe.m, "n": recipe.n, "r": recipe.r,
            "claimed_colors": list(recipe.claimed_colors)}


def recipe_from_json(data) -> Optional[BuildRecipe]:
    if data is None:
        return None
    try:
        colors = tuple(data.get("claimed_colors", (0, 0)))
        return BuildRecipe(Recipe(data["theorem"]), int(data["m"]), int(data["n"]),
                           int(data["r"]), colors)
    except (KeyError, ValueError, TypeError) as exc:
        raise FormatError(f"bad recipe: {exc}") from None


def family_to_json(fam: MatrixFamily) -> Dict[str, Any]:
    return {
        "copies": [matrix_to_json([c], "Z") for c in fam.copies],
        "claimed_row_sums": list(fam.claimed_row_sums),
        "claimed_col_sums": list(fam.claimed_col_sums),
        "recipe": recipe_to_json(fam.recipe),
    }


def family_from_json(data: Dict[str, Any]) -> MatrixFamily:
    try:
        copies = [matrix_from_json(c)[0][0] for c in data["copies"]]
        rows = tuple(int(v) for v in data["claimed_row_sums"])
        cols = tuple(int(v) for v in data["claimed_col_sums"])
    except (KeyError, TypeError, IndexError) as exc:
        raise FormatError(f"family JSON is malformed: {exc}") from None
    if not copies:
        raise FormatError("family has no copies")
    return MatrixFamily(tuple(copies), rows, cols, recipe_from_json(data.get("recipe")))


# ---------------------------------------------------------------- labelings

def graph_to_json(g: PartiteGraph) -> Dict[str, Any]:
    if g.family is Family.CUSTOM:
        return {"family": g.family.value, "params": [list(p) for p in g.edge_names()]}
    return {"family": g.family.value, "params": list(g.params)}


def graph_from_json(data: Dict[str, Any]) -> PartiteGraph:
    try:
        return make_graph(data["family"], data["params"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad graph description: {exc}") from None


def labeling_to_json(lab: EdgeLabeling, extra: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    col = vertex_weights(lab)
    out = {
        "graph": graph_to_json(lab.graph),
        "labels": [[a, b, x] for a, b, x in lab.triples()],
        "weights": {v.name: w for v, w in zip(lab.graph.vertices, col.weights)},
        "classes": list(col.classes),
        "proper": col.proper,
    }
    if extra:
        out.update(extra)
    return out


def labels_from_json(data: Dict[str, Any]) -> Tuple[PartiteGraph, List[int]]:
    """Graph and the label list aligned with its edges (not yet validated)."""
    if "graph" not in data or "labels" not in data:
        raise FormatError("labeling JSON needs 'graph' and 'labels'")
    g = graph_from_json(data["graph"])
    lookup = {}
    for item in data["labels"]:
        if not (isinstance(item, list) and len(item) == 3 and isinstance(item[2], int)):
            raise FormatError("each label entry must be [vertex, vertex, label]")
        a, b, x = str(item[0]), str(item[1]), item[2]
        key = frozenset((a, b))
        if key in lookup:
            raise FormatError(f"edge {a}-{b} labeled twice")
        lookup[key] = x
    labels = []
    for a, b in g.edge_names():
        key = frozenset((a, b))
        if key not in lookup:
            raise FormatError(f"edge {a}-{b} has no label")
        labels.append(lookup.pop(key))
    if lookup:
        raise FormatError(f"{len(lookup)} labeled pair(s) are not edges of the graph")
    return g, labels


def bounds_to_json(b: ChiBounds) -> Dict[str, Any]:
    return {"lower": b.lower, "upper": b.upper,
            "lower_reason": b.lower_reason, "upper_reason": b.upper_reason}


def oracle_to_json(res) -> Dict[str, Any]:
    return {
        "chi_la": res.chi_la,
        "witness": None if res.witness is None else labeling_to_json(res.witness),
        "explored": res.explored,
        "budget_hit": res.budget_hit,
    }


# ---------------------------------------------------------------- csv

def matrix_to_csv(m: IntMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for i, row in enumerate(m.rows):
        writer.writerow(["" if (i, j) == m.blank else v for j, v in enumerate(row)])
    return buf.getvalue()
