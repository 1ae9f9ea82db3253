import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from antimagic.arrays import IntMatrix
from antimagic.builders import (
    MatrixFamily,
    build_b_odd_square,
    build_b_same_parity,
    build_rkmn_family,
    build_zt_family_bipartite,
)
from antimagic.errors import OutOfScope, ShapeMismatch
from antimagic.graphs import (
    EdgeLabeling,
    Family,
    PartiteGraph,
    chi_la_bounds,
    check_local_antimagic,
    color_histogram,
    custom_graph,
    label_graph,
    labeling_from_b_matrix,
    labeling_from_matrix_family,
    make_graph,
    path_graph,
    vertex_weights,
    weight_map,
)

import reference_data as ref


def _independent_weights(names, labels):
    # reference weight computation straight from (vertex, vertex, label) triples
    w = Counter()
    for (a, b), x in zip(names, labels):
        w[a] += x
        w[b] += x
    return dict(w)


# ---------------------------------------------------------------- graphs

def test_make_graph_sizes():
    g = make_graph("K1mn", (3, 3))
    assert (len(g.vertices), len(g.edges)) == (7, 15)
    assert g.vertices[0].part == "X"
    g = make_graph("rKmn", (7, 11, 4))
    assert (len(g.vertices), len(g.edges)) == (72, 308)


def test_make_graph_four_cycle():
    g = make_graph("rKmn", (2, 2, 1))
    degrees = Counter(v for e in g.edges for v in e)
    assert len(g.edges) == 4 and set(degrees.values()) == {2}


def test_make_graph_kmn_alias():
    assert make_graph("Kmn", (4, 3)) == make_graph("rKmn", (4, 3, 1))


@pytest.mark.parametrize("family,params", [("rKmn", (0, 3, 1)), ("Kmn", (3,)), ("nope", (1, 2))])
def test_make_graph_rejects(family, params):
    with pytest.raises(ValueError):
        make_graph(family, params)


def test_graph_invariants_enforced():
    with pytest.raises(ValueError):
        custom_graph([("a", "a")])
    with pytest.raises(ValueError):
        custom_graph([("a", "b"), ("b", "a")])
    with pytest.raises(ValueError):
        PartiteGraph(Family.CUSTOM, (), (), ((0, 1),))


def test_path_graph():
    g = path_graph(3)
    assert g.edge_names() == [("1", "2"), ("2", "3")]
    with pytest.raises(ValueError):
        path_graph(1)


# ---------------------------------------------------------------- labelings

def test_labeling_must_be_bijection():
    g = path_graph(3)
    with pytest.raises(ValueError):
        EdgeLabeling(g, (1, 1))
    with pytest.raises(ValueError):
        EdgeLabeling(g, (1,))


def test_p3_weights():
    col = vertex_weights(EdgeLabeling(path_graph(3), (1, 2)))
    assert col.weights == (1, 3, 2)
    assert col.proper and col.color_count == 3


def test_k2_violates():
    lab = EdgeLabeling(path_graph(2), (1,))
    assert check_local_antimagic(lab) == [("1", "2")]


def test_reference_nmr_labels_k43():
    g = make_graph("Kmn", (4, 3))
    M = IntMatrix.of(ref.NMR_4_3)
    fam = MatrixFamily((M,), tuple(M.row_sums()), tuple(M.col_sums()))
    lab = labeling_from_matrix_family(g, fam)
    w = weight_map(lab)
    assert [w[f"u{j}"] for j in (1, 2, 3)] == [26, 26, 26]
    assert sorted(w[f"v{i}"] for i in (1, 2, 3, 4)) == [19, 19, 20, 20]
    assert check_local_antimagic(lab) == []
    assert vertex_weights(lab).color_count == 3


def test_bipartite_family_labels_4k_7_11():
    g = make_graph("rKmn", (7, 11, 4))
    lab = labeling_from_matrix_family(g, build_zt_family_bipartite(7, 11, 4))
    col = vertex_weights(lab)
    v = {w for vx, w in zip(g.vertices, col.weights) if vx.part == "U"}
    u = {w for vx, w in zip(g.vertices, col.weights) if vx.part == "W"}
    assert v == {1699, 1700} and u == {1081, 1082}
    assert col.proper and col.color_count == 4


def test_family_shape_mismatch():
    fam = build_rkmn_family(3, 5, 3)
    with pytest.raises(ShapeMismatch):
        labeling_from_matrix_family(make_graph("rKmn", (3, 5, 2)), fam)
    with pytest.raises(ShapeMismatch):
        labeling_from_matrix_family(make_graph("rKmn", (1, 1, 2)), fam)
    with pytest.raises(ShapeMismatch):
        labeling_from_matrix_family(make_graph("K1mn", (3, 5)), fam)


def test_b_odd_square_labels_k133():
    g = make_graph("K1mn", (3, 3))
    lab = labeling_from_b_matrix(g, build_b_odd_square(3))
    w = weight_map(lab)
    assert {w[f"v{i}"] for i in (1, 2, 3)} == {30}
    assert {w[f"u{j}"] for j in (1, 2, 3)} == {38}
    assert w["x"] == 36
    assert vertex_weights(lab).color_count == 3


def test_b_same_parity_labels_k124():
    g = make_graph("K1mn", (2, 4))
    lab = labeling_from_b_matrix(g, build_b_same_parity(2, 4))
    w = weight_map(lab)
    assert {w["v1"], w["v2"]} == {35}
    assert {w[f"u{j}"] for j in range(1, 5)} == {21}
    assert w["x"] == 56
    assert check_local_antimagic(lab) == []


def test_b_matrix_blank_mismatch():
    g = make_graph("K1mn", (3, 3))
    B = build_b_odd_square(3)
    with pytest.raises(ShapeMismatch):
        labeling_from_b_matrix(g, IntMatrix(B.rows, (1, 1)))
    with pytest.raises(ShapeMismatch):
        labeling_from_b_matrix(make_graph("K1mn", (3, 4)), B)


# ---------------------------------------------------------------- weights

@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(2, 6), st.integers(0, 2**32 - 1))
def test_weights_independent_of_edge_order(m, n, seed):
    g = make_graph("K1mn", (m, n))
    rng = random.Random(seed)
    labels = list(range(1, len(g.edges) + 1))
    rng.shuffle(labels)
    base = weight_map(EdgeLabeling(g, tuple(labels)))
    order = list(range(len(g.edges)))
    rng.shuffle(order)
    names = [g.edge_names()[k] for k in order]
    shuffled = custom_graph(names)
    relabeled = weight_map(EdgeLabeling(shuffled, tuple(labels[k] for k in order)))
    assert relabeled == base
    assert base == _independent_weights(g.edge_names(), labels)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(2, 5), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_sum_identity_random_labelings(m, n, r, seed):
    g = make_graph("rKmn", (m, n, r))
    labels = list(range(1, len(g.edges) + 1))
    random.Random(seed).shuffle(labels)
    col = vertex_weights(EdgeLabeling(g, tuple(labels)))
    e = len(g.edges)
    assert sum(col.weights) == e * (e + 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.integers(2, 7), st.integers(1, 4))
def test_rkmn_weights_come_from_claims(m, n, r):
    try:
        fam = build_rkmn_family(m, n, r)
    except OutOfScope:
        return
    g = make_graph("rKmn", (m, n, r))
    col = vertex_weights(labeling_from_matrix_family(g, fam))
    u_side = [w for v, w in zip(g.vertices, col.weights) if v.part == "U"]
    w_side = [w for v, w in zip(g.vertices, col.weights) if v.part == "W"]
    assert u_side == list(fam.claimed_row_sums)
    assert w_side == list(fam.claimed_col_sums)


def test_color_histogram():
    col = vertex_weights(EdgeLabeling(path_graph(4), (1, 3, 2)))
    assert color_histogram(col) == {1: 1, 4: 1, 5: 1, 2: 1}


# ---------------------------------------------------------------- bounds

@pytest.mark.parametrize("family,params,lower,upper", [
    ("Kmn", (2, 3), 3, 3),
    ("Kmn", (2, 4), 2, 2),
    ("Kmn", (1, 5), 6, 6),
    ("Kmn", (3, 3), 3, 3),
    ("rKmn", (3, 5, 2), 4, 4),
    ("rKmn", (3, 5, 3), 2, 2),
    ("rKmn", (4, 4, 2), 3, 3),
    ("rKmn", (5, 5, 3), 3, 3),
    ("rKmn", (7, 7, 4), 3, 6),
    ("rKmn", (2, 3, 2), 3, None),
    ("rKmn", (2, 2, 3), 3, None),
    ("K1mn", (4, 4), 3, 4),
    ("K1mn", (3, 3), 3, 3),
    ("K1mn", (2, 4), 3, 3),
    ("K1mn", (3, 2), 3, 4),
])
def test_bounds_table(family, params, lower, upper):
    b = chi_la_bounds(family, params)
    assert (b.lower, b.upper) == (lower, upper)
    assert b.lower_reason and b.upper_reason


def test_bounds_reject_custom():
    with pytest.raises(ValueError):
        chi_la_bounds("custom", ())


# ---------------------------------------------------------------- dispatch

def _in_scope():
    for m in range(2, 10):
        for n in range(2, 10):
            for r in range(1, 5):
                yield "rKmn", (m, n, r)
            yield "K1mn", (m, n)


def test_every_in_scope_labeling_is_proper_and_within_bounds():
    done = 0
    for family, params in _in_scope():
        try:
            res = label_graph(family, params)
        except OutOfScope:
            continue
        assert check_local_antimagic(res.labeling) == []
        assert res.bounds.contains(res.coloring.color_count), (family, params)
        e = len(res.labeling.graph.edges)
        assert sum(res.coloring.weights) == e * (e + 1)
        done += 1
    assert done > 200


def test_label_graph_out_of_scope():
    with pytest.raises(OutOfScope):
        label_graph("rKmn", (2, 3, 2))
    with pytest.raises(OutOfScope):
        label_graph("K1mn", (1, 3))
