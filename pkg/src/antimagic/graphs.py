"""Graph families, edge labelings, vertex weights and the bound table."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .arrays import IntMatrix
from .builders import (
    BuildRecipe,
    MatrixFamily,
    Recipe,
    b_matrix_recipe,
    build_b_matrix,
    build_rkmn_family,
    rkmn_recipe,
)
from .errors import ConstructionError, OutOfScope, ShapeMismatch

Edge = Tuple[int, int]


class Family(str, Enum):
    KMN = "Kmn"
    RKMN = "rKmn"
    K1MN = "K1mn"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Vertex:
    name: str
    part: str        # "X", "U", "W" or "free"
    copy: int = 0    # 1-based copy for rK_{m,n}, else 0
    index: int = 0   # 1-based position inside its part


@dataclass(frozen=True)
class PartiteGraph:
    family: Family
    params: Tuple[int, ...]
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        nv = len(self.vertices)
        seen = set()
        touched = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            if not (0 <= u < nv and 0 <= v < nv):
                raise ValueError(f"edge ({u},{v}) refers to a missing vertex")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"parallel edge {key}")
            seen.add(key)
            touched.update(key)
        if len(touched) != nv:
            raise ValueError("graph has isolated vertices")
        if len({v.name for v in self.vertices}) != nv:
            raise ValueError("vertex names must be unique")

    def index(self) -> Dict[str, int]:
        return {v.name: k for k, v in enumerate(self.vertices)}

    def edge_names(self) -> List[Tuple[str, str]]:
        return [(self.vertices[u].name, self.vertices[v].name) for u, v in self.edges]


def _family(family) -> Family:
    if isinstance(family, Family):
        return family
    lookup = {f.value.lower(): f for f in Family}
    key = str(family).lower()
    if key not in lookup:
        raise ValueError(f"unknown graph family {family!r}")
    return lookup[key]


def _rkmn_vertex_name(side: str, t: int, i: int, r: int) -> str:
    return f"{side}{i}" if r == 1 else f"{side}{i}.{t}"


def make_graph(family, params: Sequence) -> PartiteGraph:
    """Build a graph in canonical vertex order.

    ``Kmn``/``rKmn``: copies outermost, U-side (v) before W-side (u).
    ``K1mn``: x first, then v_1..v_m, then u_1..u_n.
    ``custom``: ``params`` is an edge list of vertex-name pairs.
    """
    family = _family(family)
    if family is Family.CUSTOM:
        return custom_graph(params)
    params = tuple(int(p) for p in params)
    if any(p < 1 for p in params):
        raise ValueError(f"parameters must be positive, got {params}")
    if family is Family.KMN:
        if len(params) != 2:
            raise ValueError("K_{m,n} takes two parameters")
        family, params = Family.RKMN, params + (1,)
    if family is Family.RKMN:
        if len(params) != 3:
            raise ValueError("rK_{m,n} takes three parameters m, n, r")
        m, n, r = params
        vertices: List[Vertex] = []
        edges: List[Edge] = []
        for t in range(1, r + 1):
            base = len(vertices)
            vertices += [Vertex(_rkmn_vertex_name("v", t, i, r), "U", t, i) for i in range(1, m + 1)]
            vertices += [Vertex(_rkmn_vertex_name("u", t, j, r), "W", t, j) for j in range(1, n + 1)]
            edges += [(base + i, base + m + j) for i in range(m) for j in range(n)]
        return PartiteGraph(Family.RKMN, params, tuple(vertices), tuple(edges))
    if len(params) != 2:
        raise ValueError("K_{1,m,n} takes two parameters")
    m, n = params
    vertices = [Vertex("x", "X")]
    vertices += [Vertex(f"v{i}", "U", 0, i) for i in range(1, m + 1)]
    vertices += [Vertex(f"u{j}", "W", 0, j) for j in range(1, n + 1)]
    edges = [(0, i) for i in range(1, m + 1)]
    edges += [(0, m + j) for j in range(1, n + 1)]
    edges += [(i, m + j) for i in range(1, m + 1) for j in range(1, n + 1)]
    return PartiteGraph(Family.K1MN, params, tuple(vertices), tuple(edges))


def custom_graph(edge_list: Iterable[Sequence]) -> PartiteGraph:
    """Graph from name pairs; vertices are ordered by first appearance."""
    names: Dict[str, int] = {}
    edges: List[Edge] = []
    for a, b in edge_list:
        ends = []
        for name in (str(a), str(b)):
            if name not in names:
                names[name] = len(names)
            ends.append(names[name])
        edges.append((ends[0], ends[1]))
    vertices = tuple(Vertex(name, "free") for name in names)
    return PartiteGraph(Family.CUSTOM, (), vertices, tuple(edges))


def path_graph(k: int) -> PartiteGraph:
    """Path on k >= 2 vertices named 1..k."""
    if k < 2:
        raise ValueError("a path needs at least two vertices")
    return custom_graph([(str(i), str(i + 1)) for i in range(1, k)])


# ---------------------------------------------------------------- labelings

@dataclass(frozen=True)
class EdgeLabeling:
    """Labels aligned with ``graph.edges``; must be a bijection onto 1..|E|."""

    graph: PartiteGraph
    labels: Tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.graph.edges):
            raise ValueError(f"{len(self.labels)} labels for {len(self.graph.edges)} edges")
        if sorted(self.labels) != list(range(1, len(self.labels) + 1)):
            raise ValueError(f"labels are not a bijection onto 1..{len(self.labels)}")

    def triples(self) -> List[Tuple[str, str, int]]:
        return [(a, b, lab) for (a, b), lab in zip(self.graph.edge_names(), self.labels)]


@dataclass(frozen=True)
class WeightColoring:
    weights: Tuple[int, ...]   # aligned with graph.vertices
    classes: Tuple[int, ...]   # distinct weights, ascending
    proper: bool

    @property
    def color_count(self) -> int:
        return len(self.classes)


def vertex_weights(lab: EdgeLabeling) -> WeightColoring:
    g = lab.graph
    weights = [0] * len(g.vertices)
    for (u, v), x in zip(g.edges, lab.labels):
        weights[u] += x
        weights[v] += x
    proper = all(weights[u] != weights[v] for u, v in g.edges)
    return WeightColoring(tuple(weights), tuple(sorted(set(weights))), proper)


def weight_map(lab: EdgeLabeling) -> Dict[str, int]:
    w = vertex_weights(lab).weights
    return {v.name: x for v, x in zip(lab.graph.vertices, w)}


def check_local_antimagic(lab: EdgeLabeling) -> List[Tuple[str, str]]:
    """Edges whose two ends receive equal weight; empty iff the labeling works."""
    w = vertex_weights(lab).weights
    names = lab.graph.vertices
    return [(names[u].name, names[v].name) for u, v in lab.graph.edges if w[u] == w[v]]


def labeling_from_matrix_family(g: PartiteGraph, fam: MatrixFamily) -> EdgeLabeling:
    """Copy t's entry (i, j) labels the edge v_i u_j of the t-th K_{m,n}."""
    if g.family is not Family.RKMN:
        raise ShapeMismatch("matrix families label rK_{m,n} graphs only")
    m, n, r = g.params
    if min(m, n) < 2:
        raise ShapeMismatch("both sides must have at least two vertices")
    if len(fam.copies) != r or any((c.nrows, c.ncols) != (m, n) for c in fam.copies):
        raise ShapeMismatch(f"family does not match {r} copies of {m}x{n}")
    labels = []
    for u, v in g.edges:
        a, b = g.vertices[u], g.vertices[v]
        labels.append(fam.copies[a.copy - 1][a.index - 1, b.index - 1])
    return EdgeLabeling(g, tuple(labels))


def labeling_from_b_matrix(g: PartiteGraph, B: IntMatrix) -> EdgeLabeling:
    """Label K_{1,m,n} from a blanked (m+1) x (n+1) matrix.

    Column 1 labels the edges v_i x, row 1 labels u_j x and the interior
    labels v_i u_j.
    """
    if g.family is not Family.K1MN:
        raise ShapeMismatch("blanked matrices label K_{1,m,n} graphs only")
    m, n = g.params
    if (B.nrows, B.ncols) != (m + 1, n + 1):
        raise ShapeMismatch(f"expected a {(m + 1)}x{(n + 1)} matrix, got {B.nrows}x{B.ncols}")
    if B.blank != (0, 0):
        raise ShapeMismatch("blanked matrix must have its blank in the top-left cell")
    labels = []
    for u, v in g.edges:
        a, b = g.vertices[u], g.vertices[v]
        if a.part == "X":
            cell = (b.index, 0) if b.part == "U" else (0, b.index)
        else:
            cell = (a.index, b.index)
        labels.append(B[cell])
    return EdgeLabeling(g, tuple(labels))


# ---------------------------------------------------------------- bounds

class Basis(str, Enum):
    """Why a bound holds."""

    CHROMATIC = "chromatic number"
    STAR = "star: every leaf weight is distinct"
    BIPARTITE_SAME_PARITY = "complete bipartite, n > m >= 2 of equal parity"
    BIPARTITE_OTHER = "complete bipartite, remaining cases"
    NO_MAGIC_SET = "two classes would require a magic rectangle set, which does not exist"
    EQUAL_SIDES = "equal sides force row and column weights to differ"
    DIVISIBILITY = "total label sum is not divisible by rm or rn"
    UNKNOWN = "no construction known"
    NO_LABELING = "K2 admits no local antimagic labeling"


@dataclass(frozen=True)
class ChiBounds:
    lower: int
    upper: Optional[int]          # None marks an unknown upper bound
    lower_reason: str
    upper_reason: str

    def contains(self, k: int) -> bool:
        return k >= self.lower and (self.upper is None or k <= self.upper)


def _kmn_bounds(m: int, n: int) -> ChiBounds:
    m, n = min(m, n), max(m, n)
    if n == 1:
        return ChiBounds(2, None, Basis.CHROMATIC.value, Basis.NO_LABELING.value)
    if m == 1:
        return ChiBounds(n + 1, n + 1, Basis.STAR.value, Basis.STAR.value)
    if n > m and (n - m) % 2 == 0:
        return ChiBounds(2, 2, Basis.BIPARTITE_SAME_PARITY.value, Basis.BIPARTITE_SAME_PARITY.value)
    return ChiBounds(3, 3, Basis.BIPARTITE_OTHER.value, Basis.BIPARTITE_OTHER.value)


def chi_la_bounds(family, params: Sequence[int]) -> ChiBounds:
    """Known lower and upper bounds on the local antimagic chromatic number."""
    family = _family(family)
    params = tuple(int(p) for p in params)
    if family is Family.KMN:
        return _kmn_bounds(*params)
    if family is Family.RKMN:
        m, n, r = params
        if r == 1:
            return _kmn_bounds(m, n)
        if min(m, n) < 2:
            return ChiBounds(2, None, Basis.CHROMATIC.value, Basis.UNKNOWN.value)
        try:
            tag = rkmn_recipe(m, n, r)
        except OutOfScope:
            reason = Basis.EQUAL_SIDES if m == n else Basis.NO_MAGIC_SET
            return ChiBounds(3, None, reason.value, Basis.UNKNOWN.value)
        if tag is Recipe.MRS_SET:
            return ChiBounds(2, 2, Basis.CHROMATIC.value, tag.value)
        if tag is Recipe.ODD_RECTANGLE_EVEN_COPIES:
            return ChiBounds(4, 4, Basis.DIVISIBILITY.value, tag.value)
        if tag is Recipe.ODD_SQUARE_EVEN_COPIES:
            return ChiBounds(3, 6, Basis.EQUAL_SIDES.value, tag.value)
        return ChiBounds(3, 3, Basis.EQUAL_SIDES.value, tag.value)
    if family is Family.K1MN:
        m, n = params
        if min(m, n) < 2:
            return ChiBounds(3, None, Basis.CHROMATIC.value, Basis.UNKNOWN.value)
        tag = b_matrix_recipe(m, n)
        upper = 3 if tag in (Recipe.B_SAME_PARITY, Recipe.B_ODD_SQUARE) else 4
        return ChiBounds(3, upper, Basis.CHROMATIC.value, tag.value)
    raise ValueError("bounds are tabulated for Kmn, rKmn and K1mn only")


# ---------------------------------------------------------------- dispatch

@dataclass(frozen=True)
class LabelResult:
    labeling: EdgeLabeling
    coloring: WeightColoring
    recipe: BuildRecipe
    certificate: Union[MatrixFamily, IntMatrix]
    bounds: ChiBounds


def label_graph(family, params: Sequence[int]) -> LabelResult:
    """Construct a local antimagic labeling from the covering construction.

    Raises OutOfScope when no construction applies.
    """
    family = _family(family)
    params = tuple(int(p) for p in params)
    if family is Family.KMN:
        family, params = Family.RKMN, params + (1,)
    if family is Family.RKMN:
        m, n, r = params
        fam = build_rkmn_family(m, n, r)
        g = make_graph(family, params)
        lab = labeling_from_matrix_family(g, fam)
        recipe, cert = fam.recipe, fam
    elif family is Family.K1MN:
        m, n = params
        if min(m, n) < 2:
            raise OutOfScope(f"K_{{1,{m},{n}}}: constructions need m, n >= 2")
        B, recipe = build_b_matrix(m, n)
        g = make_graph(family, params)
        lab = labeling_from_b_matrix(g, B)
        cert = B
    else:
        raise OutOfScope(f"no construction for family {family.value}")
    coloring = vertex_weights(lab)
    if not coloring.proper:
        bad = check_local_antimagic(lab)
        raise ConstructionError(f"{recipe.tag.value} labeling has equal weights on edges {bad[:5]}")
    return LabelResult(lab, coloring, recipe, cert, chi_la_bounds(family, params))


def color_histogram(coloring: WeightColoring) -> Dict[int, int]:
    return dict(sorted(Counter(coloring.weights).items()))
