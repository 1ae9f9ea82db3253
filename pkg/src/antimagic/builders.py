"""Matrix families and blanked matrices that encode edge labelings.

A :class:`MatrixFamily` holds r same-shape matrices that label the r copies
of K_{m,n}; a blanked matrix (an :class:`IntMatrix` with blank ``(0, 0)``)
labels K_{1,m,n}. Every builder states the row and column sums it expects
from closed-form expressions, and ``verify_family`` compares those claims
against sums recomputed from the entries.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from .arrays import (
    IntMatrix,
    SquareVariant,
    circulant_lift,
    kotzig_array,
    magic_rectangle,
    magic_rectangle_set,
    mr_exists,
    mrs_condition,
    mrs_exists,
    nearly_magic_rectangle,
    odd_magic_square,
    quasi_kotzig_array,
    siamese_magic_square,
)
from .errors import ConstructionError, NonexistentDesign, OutOfScope


class Recipe(str, Enum):
    """Which construction produced a family; values are the serialized tags."""

    MRS_SET = "T21"
    ODD_RECTANGLE_EVEN_COPIES = "T22"
    EVEN_SQUARE_GLUED = "T23"
    ODD_SQUARE_ODD_COPIES = "T24"
    ODD_SQUARE_EVEN_COPIES = "T25"
    B_SAME_PARITY = "P1"
    B_MIXED_PARITY = "P2"
    B_ODD_SQUARE = "P3"
    B_EVEN_SQUARE = "P4"
    NMR_SINGLE = "NMR_single"


@dataclass(frozen=True)
class BuildRecipe:
    tag: Recipe
    m: int
    n: int
    r: int = 1
    # (low, high) number of weight classes the construction is expected to give
    claimed_colors: Tuple[int, int] = (0, 0)


@dataclass(frozen=True)
class MatrixFamily:
    """r matrices of one shape plus their claimed row and column sums.

    Claims are flat and copy-major: the row sums of copy 1 in order, then
    those of copy 2, and so on.
    """

    copies: Tuple[IntMatrix, ...]
    claimed_row_sums: Tuple[int, ...]
    claimed_col_sums: Tuple[int, ...]
    recipe: Optional[BuildRecipe] = None

    @property
    def shape(self) -> Tuple[int, int]:
        return self.copies[0].nrows, self.copies[0].ncols

    def transpose(self) -> "MatrixFamily":
        """Swap the roles of rows and columns in every copy and in the claims."""
        m, n = self.shape
        recipe = self.recipe
        if recipe is not None:
            recipe = BuildRecipe(recipe.tag, recipe.n, recipe.m, recipe.r, recipe.claimed_colors)
        return MatrixFamily(
            tuple(c.transpose() for c in self.copies),
            self.claimed_col_sums,
            self.claimed_row_sums,
            recipe,
        )


def verify_family(fam: MatrixFamily) -> List[str]:
    """Problems found by recomputing everything from the entries; empty if none."""
    out: List[str] = []
    if not fam.copies:
        return ["family has no copies"]
    m, n = fam.shape
    if any((c.nrows, c.ncols) != (m, n) for c in fam.copies):
        out.append("copies differ in shape")
        return out
    values = sorted(v for c in fam.copies for v in c.entries())
    total = len(fam.copies) * m * n
    if values != list(range(1, total + 1)):
        out.append(f"entries across copies are not exactly 1..{total}")
    rows = tuple(s for c in fam.copies for s in c.row_sums())
    cols = tuple(s for c in fam.copies for s in c.col_sums())
    if rows != tuple(fam.claimed_row_sums):
        bad = [k for k, (x, y) in enumerate(zip(rows, fam.claimed_row_sums)) if x != y]
        out.append(f"row sums disagree with the claim at {len(bad) or 'some'} position(s)")
    if cols != tuple(fam.claimed_col_sums):
        bad = [k for k, (x, y) in enumerate(zip(cols, fam.claimed_col_sums)) if x != y]
        out.append(f"column sums disagree with the claim at {len(bad) or 'some'} position(s)")
    return out


def _checked(fam: MatrixFamily) -> MatrixFamily:
    problems = verify_family(fam)
    if problems:
        raise ConstructionError("; ".join(problems))
    return fam


def shift_scale(M: IntMatrix, r: int) -> IntMatrix:
    """Entrywise ``r * (x - 1)``: opens gaps of width r between the values of M."""
    if r < 1:
        raise ValueError("scale factor must be >= 1")
    return M.map(lambda v: r * (v - 1))


def modify_mstar(M: IntMatrix) -> IntMatrix:
    """Shift the middle column of a Siamese square up by one, wrapping around.

    Column sums are unchanged; the first m-1 rows gain m+1 and the last row
    loses m^2-1.
    """
    m = M.nrows
    if m != M.ncols or m < 3 or m % 2 == 0:
        raise ValueError("expected an odd square")
    mid = m // 2
    column = [row[mid] for row in M.rows]
    if column != [1 + k * (m + 1) for k in range(m)]:
        raise ValueError("middle column is not 1, m+2, ..., m^2; not a Siamese square")
    rows = [list(r) for r in M.rows]
    for i in range(m):
        rows[i][mid] = column[(i + 1) % m]
    return IntMatrix.of(rows)


def _lifted_family(W: IntMatrix, columns: Sequence[Sequence[int]], r: int) -> Tuple[IntMatrix, ...]:
    n = W.ncols
    return tuple(W.plus(circulant_lift(col, n, r)) for col in columns)


def _kotzig_columns(K: IntMatrix) -> List[List[int]]:
    return [list(col) for col in zip(*K.rows)]


def build_zt_family_bipartite(m: int, n: int, r: int) -> MatrixFamily:
    """r copies of m x n (m < n odd, r even) with two row sums and two column sums.

    Copies 1..r/2 have every row summing to rho1 and copies r/2+1..r to
    rho2 = rho1 + 1. Every copy mixes columns summing to sigma1 and sigma1 + 1.
    """
    if m % 2 == 0 or n % 2 == 0 or not 1 < m < n:
        raise ValueError(f"need odd 1 < m < n, got m={m}, n={n}")
    if r < 2 or r % 2:
        raise ValueError(f"need even r >= 2, got {r}")
    W = shift_scale(magic_rectangle(m, n), r)
    Q = quasi_kotzig_array(m, r)
    copies = _lifted_family(W, _kotzig_columns(Q), r)

    rho2 = (r * n * m * n + n + 1) // 2
    rho1 = rho2 - 1
    sigma1 = (r * m * m * n + m - 1) // 2
    sigma2 = sigma1 + 1
    rows: List[int] = []
    cols: List[int] = []
    for t in range(r):
        low = t < r // 2
        rows += [rho1 if low else rho2] * m
        # circulant block repeats column 1; extra pairs are (copy, complement)
        first, other = (sigma1, sigma2) if low else (sigma2, sigma1)
        cols += [first] * m + [first if (j - m) % 2 == 0 else other for j in range(m, n)]
    recipe = BuildRecipe(Recipe.ODD_RECTANGLE_EVEN_COPIES, m, n, r, (4, 4))
    return _checked(MatrixFamily(copies, tuple(rows), tuple(cols), recipe))


def build_zt_family_glued(m: int, r: int) -> MatrixFamily:
    """r copies of m x m (m even >= 4): constant rows, two column values.

    Each copy is a member of MRS(m,2;r) beside a member of MRS(m,m-2;r)
    shifted up by 2rm.
    """
    if m < 4 or m % 2:
        raise ValueError(f"need even m >= 4, got {m}")
    if r < 1:
        raise ValueError("need r >= 1")
    left = magic_rectangle_set(m, 2, r)
    right = magic_rectangle_set(m, m - 2, r)
    shift = 2 * r * m
    copies = tuple(a.hstack(b.map(lambda v: v + shift)) for a, b in zip(left, right))
    rho = m * (r * m * m + 1) // 2
    sigma1 = m * (2 * r * m + 1) // 2
    sigma2 = rho + r * m * m
    rows = tuple([rho] * m * r)
    cols = tuple(([sigma1] * 2 + [sigma2] * (m - 2)) * r)
    recipe = BuildRecipe(Recipe.EVEN_SQUARE_GLUED, m, m, r, (3, 3))
    return _checked(MatrixFamily(copies, rows, cols, recipe))


def build_zt_family_square(m: int, r: int) -> MatrixFamily:
    """r copies of m x m (m odd >= 3) from the shifted Siamese square.

    With r odd the lift uses a Kotzig array, giving one column value and two
    row values. With r even it uses a quasi Kotzig array, which splits every
    sum into a low copy half and a high copy half.
    """
    if m < 3 or m % 2 == 0:
        raise ValueError(f"need odd m >= 3, got {m}")
    if r < 1:
        raise ValueError("need r >= 1")
    mstar = modify_mstar(siamese_magic_square(m))
    W = shift_scale(mstar, r)
    if r % 2:
        K = kotzig_array(m, r)
        colors = (3, 3)
    else:
        K = quasi_kotzig_array(m, r)
        colors = (3, 6)
    columns = _kotzig_columns(K)
    copies = _lifted_family(W, columns, r)

    base = r * (m * (m * m + 1) // 2 - m)
    rows: List[int] = []
    cols: List[int] = []
    for col in columns:
        s = sum(col)
        cols += [base + s] * m
        rows += [base + r * (m + 1) + s] * (m - 1) + [base - r * (m * m - 1) + s]
    recipe = BuildRecipe(
        Recipe.ODD_SQUARE_ODD_COPIES if r % 2 else Recipe.ODD_SQUARE_EVEN_COPIES,
        m, m, r, colors)
    return _checked(MatrixFamily(copies, tuple(rows), tuple(cols), recipe))


def build_mrs_family(m: int, n: int, r: int) -> MatrixFamily:
    """The magic rectangle set MRS(m,n;r) viewed as a family (m != n)."""
    if m == n:
        raise ValueError("square shapes cannot separate row and column weights")
    if not mrs_exists(m, n, r):
        raise NonexistentDesign(mrs_condition(m, n, r))
    copies = magic_rectangle_set(m, n, r)
    total = r * m * n + 1
    rows = tuple([n * total // 2] * (m * r))
    cols = tuple([m * total // 2] * (n * r))
    recipe = BuildRecipe(Recipe.MRS_SET, m, n, r, (2, 2))
    return _checked(MatrixFamily(copies, rows, cols, recipe))


def build_nmr_single(m: int, n: int) -> MatrixFamily:
    """A single nearly magic rectangle for K_{m,n} with m, n of different parity.

    The even side indexes the rows of the NMR; the result is transposed when
    m is odd so that rows always correspond to the m-side.
    """
    if (m - n) % 2 == 0 or min(m, n) < 2:
        raise ValueError(f"need m, n >= 2 of different parity, got {m}, {n}")
    if m % 2:
        return build_nmr_single(n, m).transpose()
    M = nearly_magic_rectangle(m, n)
    total = m * n + 1
    rows = tuple(M.row_sums())
    if sorted(rows) != sorted([(n * total - 1) // 2, (n * total + 1) // 2] * (m // 2)):
        raise ConstructionError("nearly magic rectangle has unexpected row sums")
    cols = tuple([m * total // 2] * n)
    recipe = BuildRecipe(Recipe.NMR_SINGLE, m, n, 1, (3, 3))
    return _checked(MatrixFamily((M,), rows, cols, recipe))


# ---------------------------------------------------------------- blanked matrices

def _blank_from(A: IntMatrix) -> IntMatrix:
    """Move the entry 1 to the corner by a row and column swap, subtract 1, blank it."""
    rows = [list(r) for r in A.rows]
    p, q = next((i, j) for i, j, v in A.cells() if v == 1)
    rows[0], rows[p] = rows[p], rows[0]
    for r in rows:
        r[0], r[q] = r[q], r[0]
    return IntMatrix.of([[v - 1 for v in r] for r in rows], blank=(0, 0))


def verify_blanked(B: IntMatrix) -> List[str]:
    out = []
    if B.blank != (0, 0):
        out.append("blank cell must sit at the top-left corner")
    size = B.nrows * B.ncols - 1
    if sorted(B.entries()) != list(range(1, size + 1)):
        out.append(f"entries outside the blank are not exactly 1..{size}")
    return out


def _checked_blank(B: IntMatrix) -> IntMatrix:
    problems = verify_blanked(B)
    if problems:
        raise ConstructionError("; ".join(problems))
    return B


def build_b_same_parity(m: int, n: int) -> IntMatrix:
    """Blanked (m+1) x (n+1) matrix from MR(m+1, n+1); m = n (mod 2), m != n."""
    if min(m, n) < 2 or (m - n) % 2 or m == n:
        raise ValueError(f"need m, n >= 2, same parity, m != n; got {m}, {n}")
    if not mr_exists(m + 1, n + 1):
        raise NonexistentDesign(f"MR({m + 1},{n + 1}) does not exist")
    return _checked_blank(_blank_from(magic_rectangle(m + 1, n + 1)))


def build_b_mixed_parity(m: int, n: int) -> IntMatrix:
    """Blanked matrix from NMR(m+1, n+1) for m odd, n even (or the transpose)."""
    if min(m, n) < 2 or (m - n) % 2 == 0:
        raise ValueError(f"need m, n >= 2 of different parity; got {m}, {n}")
    if m % 2 == 0:
        return build_b_mixed_parity(n, m).transpose()
    return _checked_blank(_blank_from(nearly_magic_rectangle(m + 1, n + 1)))


def build_b_odd_square(n: int) -> IntMatrix:
    """Blanked (n+1) x (n+1) matrix for K_{1,n,n}, n odd >= 3.

    Row i of the starting array interleaves i + 4s t and 4s (t+1) + 1 - i with
    s = (n+1)/2, which makes row sums constant and column sums an arithmetic
    progression. Swapping the top s rows between columns j and n+3-j evens the
    columns 2..n+1 out.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"need odd n >= 3, got {n}")
    s = (n + 1) // 2
    size = n + 1
    rows = []
    for i in range(1, size + 1):
        row = []
        for t in range(s):
            row += [4 * s * t + i, 4 * s * (t + 1) + 1 - i]
        rows.append([v - 1 for v in row])
    for j in range(2, s + 1):
        a, b = j - 1, n + 2 - j   # 0-based columns j and n+3-j
        for i in range(s):
            rows[i][a], rows[i][b] = rows[i][b], rows[i][a]
    return _checked_blank(IntMatrix.of(rows, blank=(0, 0)))


def build_b_even_square(m: int) -> IntMatrix:
    """Blanked (m+1) x (m+1) matrix for K_{1,m,m}, m even >= 2.

    Starts from the N3-variant odd magic square of order p = m+1 and swaps
    first-row entries of columns j, j+1 for even j, which moves p-1 between
    the two columns.
    """
    if m < 2 or m % 2:
        raise ValueError(f"need even m >= 2, got {m}")
    p = m + 1
    rows = odd_magic_square(p, SquareVariant.N3).to_lists()
    top = rows[0]
    for j in range(1, p - 1, 2):   # 0-based index of 1-based even column
        if top[j] - top[j + 1] != p - 1:
            raise ConstructionError(
                f"swap pair in columns {j + 1},{j + 2} differs by {top[j] - top[j + 1]}, expected {p - 1}")
        top[j], top[j + 1] = top[j + 1], top[j]
    return _checked_blank(IntMatrix.of([[v - 1 for v in r] for r in rows], blank=(0, 0)))


def b_matrix_recipe(m: int, n: int) -> Recipe:
    """Blanked-matrix construction that applies to K_{1,m,n}."""
    if min(m, n) < 2:
        raise ValueError("need m, n >= 2")
    if m == n:
        return Recipe.B_ODD_SQUARE if m % 2 else Recipe.B_EVEN_SQUARE
    return Recipe.B_SAME_PARITY if (m - n) % 2 == 0 else Recipe.B_MIXED_PARITY


def build_b_matrix(m: int, n: int) -> Tuple[IntMatrix, BuildRecipe]:
    tag = b_matrix_recipe(m, n)
    if tag is Recipe.B_ODD_SQUARE:
        return build_b_odd_square(m), BuildRecipe(tag, m, n, 1, (3, 3))
    if tag is Recipe.B_EVEN_SQUARE:
        return build_b_even_square(m), BuildRecipe(tag, m, n, 1, (3, 4))
    if tag is Recipe.B_SAME_PARITY:
        return build_b_same_parity(m, n), BuildRecipe(tag, m, n, 1, (3, 3))
    return build_b_mixed_parity(m, n), BuildRecipe(tag, m, n, 1, (3, 4))


def rkmn_recipe(m: int, n: int, r: int) -> Recipe:
    """Construction that labels rK_{m,n}; raises OutOfScope when none applies."""
    if min(m, n) < 2 or r < 1:
        raise OutOfScope(f"rK_{{{m},{n}}} with r={r}: constructions need m, n >= 2 and r >= 1")
    if m != n:
        if mrs_exists(m, n, r):
            return Recipe.MRS_SET
        if m % 2 and n % 2:
            return Recipe.ODD_RECTANGLE_EVEN_COPIES
        if r == 1:
            return Recipe.NMR_SINGLE
        raise OutOfScope(
            f"{r}K_{{{m},{n}}}: sides of different parity with r >= 2 copies is an open case; "
            f"near misses: {Recipe.NMR_SINGLE.value} (needs r = 1), "
            f"{Recipe.MRS_SET.value} (needs m, n of equal parity)")
    if m % 2 == 0:
        if m >= 4:
            return Recipe.EVEN_SQUARE_GLUED
        raise OutOfScope(
            f"{r}K_{{2,2}}: no construction; near miss: {Recipe.EVEN_SQUARE_GLUED.value} (needs m >= 4)")
    return Recipe.ODD_SQUARE_ODD_COPIES if r % 2 else Recipe.ODD_SQUARE_EVEN_COPIES


def build_rkmn_family(m: int, n: int, r: int) -> MatrixFamily:
    """Family for rK_{m,n} from whichever construction covers (m, n, r)."""
    tag = rkmn_recipe(m, n, r)
    if tag is Recipe.MRS_SET:
        return build_mrs_family(m, n, r)
    if tag is Recipe.ODD_RECTANGLE_EVEN_COPIES:
        if m > n:
            return build_zt_family_bipartite(n, m, r).transpose()
        return build_zt_family_bipartite(m, n, r)
    if tag is Recipe.NMR_SINGLE:
        return build_nmr_single(m, n)
    if tag is Recipe.EVEN_SQUARE_GLUED:
        return build_zt_family_glued(m, r)
    return build_zt_family_square(m, r)
