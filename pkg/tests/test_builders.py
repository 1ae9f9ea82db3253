from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from antimagic.arrays import (
    IntMatrix,
    SquareVariant,
    circulant_lift,
    magic_rectangle,
    odd_magic_square,
    siamese_magic_square,
)
from antimagic.builders import (
    MatrixFamily,
    Recipe,
    b_matrix_recipe,
    build_b_even_square,
    build_b_matrix,
    build_b_mixed_parity,
    build_b_odd_square,
    build_b_same_parity,
    build_mrs_family,
    build_nmr_single,
    build_rkmn_family,
    build_zt_family_bipartite,
    build_zt_family_glued,
    build_zt_family_square,
    modify_mstar,
    rkmn_recipe,
    shift_scale,
    verify_blanked,
    verify_family,
)
from antimagic.errors import NonexistentDesign, OutOfScope

import reference_data as ref


def _sums(fam):
    rows = [sorted(set(c.row_sums())) for c in fam.copies]
    cols = [sorted(set(c.col_sums())) for c in fam.copies]
    return rows, cols


def _union_ok(fam):
    m, n = fam.shape
    total = len(fam.copies) * m * n
    return sorted(v for c in fam.copies for v in c.entries()) == list(range(1, total + 1))


# ---------------------------------------------------------------- shift and lift

def test_shift_scale_reproduces_w():
    W = shift_scale(magic_rectangle(7, 11), 4)
    assert W.to_lists() == ref.W_7_11
    assert W.rows[0][:3] == (304, 224, 168)
    # r n (mn - 1) / 2
    assert set(W.row_sums()) == {4 * 11 * 76 // 2}


def test_shift_scale_identity():
    M = magic_rectangle(3, 5)
    assert shift_scale(M, 1) == M.map(lambda v: v - 1)


def test_shift_scale_square_columns():
    W = shift_scale(modify_mstar(siamese_magic_square(7)), 4)
    assert W.to_lists() == ref.W_7
    assert set(W.col_sums()) == {672}


def test_shift_scale_rejects_zero():
    with pytest.raises(ValueError):
        shift_scale(magic_rectangle(3, 3), 0)


def test_lifts_reproduce_all_u():
    cols = [list(c) for c in zip(*ref.QKA_7_4)]
    assert [circulant_lift(c, 11, 4).to_lists() for c in cols] == [
        ref.U1_7_11, ref.U2_7_11, ref.U3_7_11, ref.U4_7_11]
    assert [circulant_lift(c, 7, 4).to_lists() for c in cols] == [
        ref.U1_7, ref.U2_7, ref.U3_7, ref.U4_7]


# ---------------------------------------------------------------- bipartite family

def test_bipartite_7_11_4_matches_reference():
    fam = build_zt_family_bipartite(7, 11, 4)
    assert [c.to_lists() for c in fam.copies] == [ref.Z1_7_11, ref.Z2_7_11, ref.Z3_7_11, ref.Z4_7_11]
    rows, cols = _sums(fam)
    assert rows == [[1699], [1699], [1700], [1700]]
    assert {v for c in cols for v in c} == {1081, 1082}
    assert _union_ok(fam)
    assert fam.recipe.tag is Recipe.ODD_RECTANGLE_EVEN_COPIES


def test_bipartite_3_5_2():
    fam = build_zt_family_bipartite(3, 5, 2)
    assert _union_ok(fam)
    rows, cols = _sums(fam)
    # rho2 = (2*5*15 + 5 + 1)/2, sigma1 = (2*3*15 + 3 - 1)/2; also confirmed by direct summation
    assert {v for r in rows for v in r} == {77, 78}
    assert {v for c in cols for v in c} == {46, 47}
    assert verify_family(fam) == []


@pytest.mark.parametrize("m,n,r", [(2, 5, 2), (5, 3, 2), (3, 5, 3), (3, 3, 2), (3, 5, 0)])
def test_bipartite_rejects(m, n, r):
    with pytest.raises(ValueError):
        build_zt_family_bipartite(m, n, r)


@st.composite
def _bipartite_params(draw):
    m = draw(st.sampled_from([3, 5, 7]))
    n = draw(st.sampled_from([k for k in (5, 7, 9, 11) if k > m]))
    r = draw(st.sampled_from([2, 4, 6]))
    return m, n, r


@settings(max_examples=25, deadline=None)
@given(_bipartite_params())
def test_bipartite_separation(params):
    m, n, r = params
    fam = build_zt_family_bipartite(m, n, r)
    rho = sorted(set(fam.claimed_row_sums))
    sigma = sorted(set(fam.claimed_col_sums))
    assert rho[0] + 1 == rho[1] and sigma[0] + 1 == sigma[1]
    assert not set(rho) & set(sigma)
    assert _union_ok(fam)
    # same cell in different copies never repeats a value
    for i in range(m):
        for j in range(n):
            cell = [c[i, j] for c in fam.copies]
            assert len(set(cell)) == r


# ---------------------------------------------------------------- glued family

def test_glued_4_2():
    fam = build_zt_family_glued(4, 2)
    rows, cols = _sums(fam)
    assert all(r == [66] for r in rows)
    assert all(c == [34, 98] for c in cols)
    assert all(c.col_sums()[:2] == [34, 34] for c in fam.copies)
    assert _union_ok(fam)


def test_glued_4_1():
    fam = build_zt_family_glued(4, 1)
    assert sorted(fam.copies[0].entries()) == list(range(1, 17))
    assert set(fam.copies[0].row_sums()) == {34}


@pytest.mark.parametrize("m", [2, 3, 5])
def test_glued_rejects(m):
    with pytest.raises(ValueError):
        build_zt_family_glued(m, 2)


# ---------------------------------------------------------------- square family

def test_mstar_7_matches_reference():
    M = modify_mstar(siamese_magic_square(7))
    assert M.to_lists() == ref.MSTAR_7
    assert M.row_sums() == [183] * 6 + [127]
    assert set(M.col_sums()) == {175}


def test_mstar_3():
    M = modify_mstar(siamese_magic_square(3))
    # shifted middle column 5, 9, 1 against rows 8_6, 3_7, 4_2
    assert M.row_sums() == [19, 19, 7]
    assert set(M.col_sums()) == {15}


def test_mstar_rejects_other_squares():
    with pytest.raises(ValueError):
        modify_mstar(odd_magic_square(5, SquareVariant.N2))


def test_square_7_4_matches_reference():
    fam = build_zt_family_square(7, 4)
    copies = [c.to_lists() for c in fam.copies]
    assert copies[0][:6] == ref.Z1_7_TOP6
    assert copies[1:] == [ref.Z2_7, ref.Z3_7, ref.Z4_7]
    assert [c.col_sums() for c in fam.copies] == [[689] * 7, [689] * 7, [690] * 7, [690] * 7]
    assert [c.row_sums() for c in fam.copies] == [
        [721] * 6 + [497], [721] * 6 + [497], [722] * 6 + [498], [722] * 6 + [498]]
    assert fam.recipe.tag is Recipe.ODD_SQUARE_EVEN_COPIES


def test_square_3_3():
    fam = build_zt_family_square(3, 3)
    assert _union_ok(fam)
    for c in fam.copies:
        assert set(c.col_sums()) == {42}
        # copy total is 3 * 42 = 126, split as 54 + 54 + 18
        assert c.row_sums() == [54, 54, 18]
    assert fam.recipe.tag is Recipe.ODD_SQUARE_ODD_COPIES


@pytest.mark.parametrize("m", [1, 2, 4])
def test_square_rejects(m):
    with pytest.raises(ValueError):
        build_zt_family_square(m, 3)


# ---------------------------------------------------------------- MRS and NMR families

def test_mrs_family_examples():
    fam = build_mrs_family(3, 5, 3)
    assert set(fam.claimed_row_sums) == {115} and set(fam.claimed_col_sums) == {69}
    fam = build_mrs_family(4, 6, 2)
    assert set(fam.claimed_row_sums) == {147} and set(fam.claimed_col_sums) == {98}
    assert verify_family(fam) == []


def test_mrs_family_2_2_rejected():
    with pytest.raises(ValueError):
        build_mrs_family(2, 2, 3)
    with pytest.raises(NonexistentDesign):
        build_mrs_family(3, 5, 2)


def test_nmr_single_orientation():
    fam = build_nmr_single(4, 3)
    assert fam.shape == (4, 3)
    assert set(fam.claimed_col_sums) == {26}
    fam = build_nmr_single(3, 4)
    assert fam.shape == (3, 4)
    assert set(fam.claimed_row_sums) == {26}
    assert sorted(fam.claimed_col_sums) == [19, 19, 20, 20]


# ---------------------------------------------------------------- verify_family

def test_verify_family_flags_swap_across_rows():
    fam = build_zt_family_bipartite(7, 11, 4)
    rows = [list(r) for r in fam.copies[0].rows]
    rows[0][0], rows[1][0] = rows[1][0], rows[0][0]
    tampered = MatrixFamily((IntMatrix.of(rows),) + fam.copies[1:],
                            fam.claimed_row_sums, fam.claimed_col_sums, fam.recipe)
    problems = verify_family(tampered)
    assert any("row sums" in p for p in problems)


def test_verify_family_flags_duplicates():
    fam = build_mrs_family(3, 5, 1)
    rows = [list(r) for r in fam.copies[0].rows]
    rows[0][0] = rows[0][1]
    bad = MatrixFamily((IntMatrix.of(rows),), fam.claimed_row_sums, fam.claimed_col_sums)
    assert any("1..15" in p for p in verify_family(bad))


def test_transpose_swaps_claims():
    fam = build_zt_family_bipartite(3, 5, 2)
    t = fam.transpose()
    assert t.shape == (5, 3)
    assert t.claimed_row_sums == fam.claimed_col_sums
    assert verify_family(t) == []


# ---------------------------------------------------------------- blanked matrices

def test_b_same_parity_examples():
    B = build_b_same_parity(2, 4)
    assert (B.nrows, B.ncols) == (3, 5)
    assert set(B.row_sums()) == {35} and set(B.col_sums()) == {21}
    B = build_b_same_parity(3, 5)
    assert set(B.row_sums()) == {69} and set(B.col_sums()) == {46}


def test_b_mixed_parity_examples():
    B = build_b_mixed_parity(3, 2)
    assert set(B.col_sums()) == {22}
    assert sorted(set(B.row_sums())) == [16, 17]
    B = build_b_mixed_parity(7, 4)
    lo, hi = sorted(set(B.row_sums()))
    assert hi - lo == 1
    T = build_b_mixed_parity(2, 3)
    assert (T.nrows, T.ncols) == (3, 4)


def _odd_square_start(n):
    s = (n + 1) // 2
    return [[v for t in range(s) for v in (4 * s * t + i, 4 * s * (t + 1) + 1 - i)]
            for i in range(1, n + 2)]


def test_b_odd_square_3():
    assert _odd_square_start(3)[0] == [1, 8, 9, 16]
    B = build_b_odd_square(3)
    assert set(B.row_sums()) == {30}
    assert B.col_sums()[1:] == [38, 38, 38]
    assert B.col_sums()[0] == 6


def test_b_odd_square_5():
    B = build_b_odd_square(5)
    # the middle column pairs with itself and is never swapped
    assert sum(24 - i for i in range(1, 7)) == 123
    assert B.col_sums()[1:] == [123] * 5
    assert set(B.row_sums()) == {6 * 37 // 2 - 6}


def test_b_even_square_examples():
    B = build_b_even_square(2)
    assert set(B.row_sums()) == {12}
    assert B.col_sums() == [12, 10, 14]
    B = build_b_even_square(4)
    assert set(B.row_sums()) == {60}
    cols = B.col_sums()
    assert cols[0] == 60
    assert Counter(cols[1:]) == Counter({56: 2, 64: 2})


@pytest.mark.parametrize("builder,args", [
    (build_b_odd_square, (4,)), (build_b_even_square, (3,)),
    (build_b_same_parity, (3, 3)), (build_b_mixed_parity, (3, 5)),
])
def test_b_builders_reject(builder, args):
    with pytest.raises(ValueError):
        builder(*args)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9), st.integers(2, 9))
def test_b_matrix_invariants(m, n):
    B, recipe = build_b_matrix(m, n)
    assert recipe.tag is b_matrix_recipe(m, n)
    assert B.blank == (0, 0)
    assert (B.nrows, B.ncols) == (m + 1, n + 1)
    assert sorted(B.entries()) == list(range(1, (m + 1) * (n + 1)))
    assert verify_blanked(B) == []


# ---------------------------------------------------------------- dispatch

@pytest.mark.parametrize("m,n,r,tag", [
    (3, 5, 3, Recipe.MRS_SET), (4, 6, 2, Recipe.MRS_SET), (3, 5, 2, Recipe.ODD_RECTANGLE_EVEN_COPIES),
    (4, 3, 1, Recipe.NMR_SINGLE), (4, 4, 3, Recipe.EVEN_SQUARE_GLUED),
    (5, 5, 3, Recipe.ODD_SQUARE_ODD_COPIES), (5, 5, 2, Recipe.ODD_SQUARE_EVEN_COPIES),
])
def test_rkmn_recipe(m, n, r, tag):
    assert rkmn_recipe(m, n, r) is tag


@pytest.mark.parametrize("m,n,r", [(2, 3, 2), (2, 2, 1), (1, 4, 2), (4, 5, 3)])
def test_rkmn_out_of_scope(m, n, r):
    with pytest.raises(OutOfScope):
        rkmn_recipe(m, n, r)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.integers(2, 8), st.integers(1, 4))
def test_every_family_checks_out(m, n, r):
    try:
        rkmn_recipe(m, n, r)
    except OutOfScope:
        return
    fam = build_rkmn_family(m, n, r)
    assert fam.shape == (m, n) and len(fam.copies) == r
    assert _union_ok(fam)
    assert verify_family(fam) == []


@pytest.mark.parametrize("m,n,r", [(7, 11, 4), (5, 5, 2), (6, 6, 3), (4, 3, 1)])
def test_rebuild_is_identical(m, n, r):
    assert build_rkmn_family(m, n, r) == build_rkmn_family(m, n, r)
