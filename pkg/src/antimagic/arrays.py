"""Magic squares, magic rectangles and related combinatorial arrays.

Every constructor returns immutable :class:`IntMatrix` values and is
deterministic. ``verify_array`` checks the defining sums of each kind
directly from the entries and never raises on bad input.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from . import _search
from .errors import ConstructionError, NonexistentDesign

Rows = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class ArrayShape:
    rows: int
    cols: int
    count: int = 1

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1 or self.count < 1:
            raise ValueError(f"invalid shape {self}")


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix with an optional blank cell (0-based coordinates).

    The blank cell is ignored by ``entries``, ``row_sums`` and ``col_sums``.
    """

    rows: Rows
    blank: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ValueError("matrix must be non-empty")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ValueError("matrix rows must have equal length")
        if self.blank is not None:
            i, j = self.blank
            if not (0 <= i < len(self.rows) and 0 <= j < width):
                raise ValueError(f"blank cell {self.blank} outside matrix")

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]], blank=None):
        return cls(tuple(tuple(int(v) for v in r) for r in rows),
                   None if blank is None else (int(blank[0]), int(blank[1])))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> ArrayShape:
        return ArrayShape(self.nrows, self.ncols)

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        return self.rows[ij[0]][ij[1]]

    def cells(self):
        """Yield (i, j, value) for every non-blank cell in row-major order."""
        for i, row in enumerate(self.rows):
            for j, v in enumerate(row):
                if (i, j) != self.blank:
                    yield i, j, v

    def entries(self) -> List[int]:
        return [v for _, _, v in self.cells()]

    def row_sums(self) -> List[int]:
        sums = [0] * self.nrows
        for i, _, v in self.cells():
            sums[i] += v
        return sums

    def col_sums(self) -> List[int]:
        sums = [0] * self.ncols
        for _, j, v in self.cells():
            sums[j] += v
        return sums

    def transpose(self) -> "IntMatrix":
        blank = None if self.blank is None else (self.blank[1], self.blank[0])
        return IntMatrix(tuple(zip(*self.rows)), blank)

    def map(self, f: Callable[[int], int]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(f(v) for v in r) for r in self.rows), self.blank)

    def plus(self, other: "IntMatrix") -> "IntMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in matrix addition")
        return IntMatrix(tuple(tuple(a + b for a, b in zip(r, s))
                               for r, s in zip(self.rows, other.rows)), self.blank)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch in horizontal stacking")
        return IntMatrix(tuple(r + s for r, s in zip(self.rows, other.rows)))

    def to_lists(self) -> List[List[int]]:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class KotzigMatrix(IntMatrix):
    """Rows are permutations of 1..b; ``quasi`` marks the two-valued column variant."""

    quasi: bool = False


@dataclass(frozen=True)
class MagicConstants:
    row_sums: Tuple[int, ...]
    col_sums: Tuple[int, ...]


class ArrayKind(str, Enum):
    MAGIC_SQUARE = "MagicSquare"
    MAGIC_RECTANGLE = "MagicRectangle"
    NMR = "NMR"
    KA = "KA"
    QKA = "QKA"
    MRS = "MRS"


@dataclass(frozen=True)
class VerificationReport:
    kind: ArrayKind
    passed: bool
    observed: MagicConstants
    violations: Tuple[str, ...]


class SquareVariant(str, Enum):
    N2 = "N2"
    N3 = "N3"


# ---------------------------------------------------------------- existence

def mr_exists(a: int, b: int) -> bool:
    return a > 1 and b > 1 and a * b > 4 and (a - b) % 2 == 0


def nmr_exists(a: int, b: int) -> bool:
    return a >= 2 and a % 2 == 0 and b >= 3 and b % 2 == 1


def ka_exists(a: int, b: int) -> bool:
    if a < 2:
        raise ValueError("Kotzig arrays need at least two rows")
    return b >= 1 and (a % 2 == 0 or b % 2 == 1)


def mrs_exists(a: int, b: int, c: int) -> bool:
    a, b = min(a, b), max(a, b)
    if a <= 1 or c < 1:
        return False
    if a % 2 and b % 2 and c % 2:
        return True
    return a % 2 == 0 and b % 2 == 0 and (a, b) != (2, 2)


def mr_condition(a: int, b: int) -> str:
    return (f"MR({a},{b}) does not exist: magic rectangles need a,b > 1, "
            "ab > 4 and a = b (mod 2)")


def nmr_condition(a: int, b: int) -> str:
    return (f"NMR({a},{b}) does not exist: nearly magic rectangles need "
            "a even >= 2 and b odd >= 3")


def ka_condition(a: int, b: int) -> str:
    return (f"KA({a},{b}) does not exist: with an odd number of rows "
            "the row length b must be odd")


def mrs_condition(a: int, b: int, c: int) -> str:
    return (f"MRS({a},{b};{c}) does not exist: needs a,b,c all odd, "
            "or a,b both even with (a,b) != (2,2)")


# ---------------------------------------------------------------- squares

def _as_matrix(rows) -> IntMatrix:
    return IntMatrix.of(rows)


@lru_cache(maxsize=None)
def odd_magic_square(n: int, variant: SquareVariant = SquareVariant.N2) -> IntMatrix:
    """Magic square of odd order n from two orthogonal cyclic Latin squares.

    The result is ``N1 + n (N - J)`` where ``N1`` is the forward cyclic square
    and ``N`` is the backward cyclic square selected by ``variant``.
    Only row and column sums are magic; diagonals are not guaranteed.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"odd order >= 3 required, got {n}")
    variant = SquareVariant(variant)
    shift = 1 if variant is SquareVariant.N2 else 0
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            first = (i + j) % n + 1
            second = (i - j - shift) % n + 1
            row.append(first + n * (second - 1))
        rows.append(row)
    return _as_matrix(rows)


@lru_cache(maxsize=None)
def siamese_magic_square(m: int) -> IntMatrix:
    """Classic up-and-right odd magic square, starting mid top row."""
    if m < 3 or m % 2 == 0:
        raise ValueError(f"odd order >= 3 required, got {m}")
    grid = [[0] * m for _ in range(m)]
    i, j = 0, m // 2
    for value in range(1, m * m + 1):
        grid[i][j] = value
        ni, nj = (i - 1) % m, (j + 1) % m
        if grid[ni][nj]:
            ni, nj = (i + 1) % m, j
        i, j = ni, nj
    return _as_matrix(grid)


# ---------------------------------------------------------------- Kotzig arrays

def _pair_block(b: int) -> List[List[int]]:
    return [list(range(1, b + 1)), list(range(b, 0, -1))]


def _ka3(b: int) -> List[List[int]]:
    first = list(range(1, b + 1))
    second = list(range(b, 0, -2)) + list(range(b - 1, 0, -2))
    third = [3 * (b + 1) // 2 - x - y for x, y in zip(first, second)]
    if sorted(third) != first:
        raise ConstructionError(f"three-row Kotzig template failed for b={b}")
    return [first, second, third]


@lru_cache(maxsize=None)
def kotzig_array(a: int, b: int) -> KotzigMatrix:
    """a x b array with every row a permutation of 1..b and column sums a(b+1)/2."""
    if not ka_exists(a, b):
        raise NonexistentDesign(ka_condition(a, b))
    if a % 2 == 0:
        rows = _pair_block(b) * (a // 2)
    else:
        rows = _ka3(b) + _pair_block(b) * ((a - 3) // 2)
    return KotzigMatrix(tuple(tuple(r) for r in rows), None, False)


@lru_cache(maxsize=None)
def quasi_kotzig_array(m: int, r: int) -> KotzigMatrix:
    """m x r array (m odd, r even) whose columns sum to (m(r+1) -+ 1)/2.

    Columns 1..r/2 take the lower value. Built from an explicit three-row
    head followed by reversed-pair blocks.
    """
    if m < 3 or m % 2 == 0 or r < 2 or r % 2:
        raise NonexistentDesign(
            f"QKA({m},{r}) needs an odd row count >= 3 and an even length >= 2")
    k = r // 2
    head = [
        list(range(1, r + 1)),
        list(range(r - 1, 0, -2)) + list(range(r, 0, -2)),
        list(range(k + 1, r + 1)) + list(range(1, k + 1)),
    ]
    rows = head + _pair_block(r) * ((m - 3) // 2)
    return KotzigMatrix(tuple(tuple(x) for x in rows), None, True)


def circulant_lift(column: Sequence[int], n: int, r: int) -> IntMatrix:
    """Spread one Kotzig column over an m x n matrix.

    The first m columns form the circulant ``u[i][j] = column[(i + j) % m]``.
    Further columns come in pairs: a copy of column 1, then its complement
    ``r + 1 - previous``.
    """
    m = len(column)
    if m < 1 or n < m:
        raise ValueError(f"need n >= m, got m={m}, n={n}")
    if (n - m) % 2:
        raise ValueError(f"n - m must be even for the copy/complement pairing, got {n - m}")
    if any(not 1 <= v <= r for v in column):
        raise ValueError(f"column entries must lie in 1..{r}")
    rows = []
    for i in range(m):
        row = [column[(i + j) % m] for j in range(m)]
        for j in range(m, n):
            row.append(row[0] if (j - m) % 2 == 0 else r + 1 - row[j - 1])
        rows.append(row)
    return _as_matrix(rows)


# ---------------------------------------------------------------- rectangles

# Fixed instances that take precedence over the generic routes.
# Keys are (rows, cols) with rows <= cols.
KNOWN_RECTANGLES = {
    (7, 11): (
        (77, 57, 43, 56, 15, 1, 64, 50, 36, 22, 8),
        (6, 9, 34, 23, 30, 37, 44, 51, 58, 65, 72),
        (3, 10, 17, 33, 31, 38, 45, 54, 59, 66, 73),
        (39, 46, 53, 60, 67, 74, 4, 11, 18, 25, 32),
        (75, 61, 47, 24, 19, 5, 68, 52, 40, 26, 12),
        (2, 20, 16, 48, 62, 76, 13, 27, 41, 55, 69),
        (71, 70, 63, 29, 49, 42, 35, 28, 21, 14, 7),
    ),
}


@lru_cache(maxsize=None)
def magic_rectangle(a: int, b: int) -> IntMatrix:
    """a x b array of 1..ab with row sums b(ab+1)/2 and column sums a(ab+1)/2."""
    if not mr_exists(a, b):
        raise NonexistentDesign(mr_condition(a, b))
    if a > b:
        return magic_rectangle(b, a).transpose()
    if (a, b) in KNOWN_RECTANGLES:
        result = IntMatrix(KNOWN_RECTANGLES[(a, b)])
    elif a % 2 == 0:
        result = _as_matrix(_search.paired_rows(a, b, 0))
    elif a == b:
        result = odd_magic_square(a, SquareVariant.N2)
    else:
        ka = kotzig_array(a, b)
        rows = None
        if a == 3:
            rows = _search.three_row_rectangle(b, ka.to_lists())
        if rows is None:
            rows = _search.column_first_rectangle(ka.to_lists())
        if rows is None:
            raise ConstructionError(f"no route produced MR({a},{b})")
        result = _as_matrix(rows)
    _require(verify_array([result], ArrayKind.MAGIC_RECTANGLE))
    return result


@lru_cache(maxsize=None)
def nearly_magic_rectangle(a: int, b: int) -> IntMatrix:
    """a x b array of 1..ab (a even, b odd) with constant column sums a(ab+1)/2.

    Row sums take the values (b(ab+1) -+ 1)/2, each on half of the rows.
    """
    if not nmr_exists(a, b):
        raise NonexistentDesign(nmr_condition(a, b))
    result = _as_matrix(_search.paired_rows(a, b, 1))
    _require(verify_array([result], ArrayKind.NMR))
    return result


@lru_cache(maxsize=None)
def magic_rectangle_set(a: int, b: int, c: int) -> Tuple[IntMatrix, ...]:
    """c disjoint a x b magic rectangles that together use 1..abc.

    Each member is ``c (M - 1) + U_t`` where M is an a x b magic rectangle and
    ``U_t`` is the circulant lift of column t of a Kotzig array KA(a, c).
    """
    if not mrs_exists(a, b, c):
        raise NonexistentDesign(mrs_condition(a, b, c))
    if a > b:
        return tuple(z.transpose() for z in magic_rectangle_set(b, a, c))
    base = magic_rectangle(a, b).map(lambda v: c * (v - 1))
    ka = kotzig_array(a, c)
    members = tuple(
        base.plus(circulant_lift([row[t] for row in ka.rows], b, c))
        for t in range(c))
    _require(verify_array(list(members), ArrayKind.MRS))
    return members


def _require(report: VerificationReport) -> None:
    if not report.passed:
        raise ConstructionError("; ".join(report.violations))


# ---------------------------------------------------------------- verification

def _check_range(values: List[int], lo: int, hi: int, label: str, out: List[str]) -> None:
    expected = hi - lo + 1
    seen = set(values)
    if len(values) != expected or len(seen) != len(values) or min(seen) != lo or max(seen) != hi:
        dup = len(values) - len(seen)
        bad = sorted(v for v in seen if not lo <= v <= hi)
        missing = expected - len(seen & set(range(lo, hi + 1)))
        detail = []
        if dup:
            detail.append(f"{dup} duplicate value(s)")
        if bad:
            detail.append(f"out-of-range values {bad[:5]}")
        if missing:
            detail.append(f"{missing} value(s) of {lo}..{hi} missing")
        out.append(f"{label}: entries are not exactly {lo}..{hi} ({', '.join(detail)})")


def _check_constant(sums: List[int], twice_target: int, label: str, out: List[str]) -> None:
    """Every sum must equal ``twice_target / 2``; odd numerators never match."""
    if twice_target % 2:
        out.append(f"{label}: magic constant {twice_target}/2 is not an integer")
        return
    target = twice_target // 2
    bad = [k + 1 for k, s in enumerate(sums) if s != target]
    if bad:
        out.append(f"{label} {bad[:6]} do not sum to {target}")


def _check_rows_are_perms(m: IntMatrix, out: List[str]) -> None:
    b = m.ncols
    for i, row in enumerate(m.rows):
        if sorted(row) != list(range(1, b + 1)):
            out.append(f"row {i + 1} is not a permutation of 1..{b}")


def verify_array(matrices: Sequence[IntMatrix], kind) -> VerificationReport:
    """Check the defining equations of ``kind`` on the given matrices."""
    kind = ArrayKind(kind)
    out: List[str] = []
    mats = list(matrices)
    rows_obs = tuple(s for m in mats for s in m.row_sums())
    cols_obs = tuple(s for m in mats for s in m.col_sums())
    observed = MagicConstants(rows_obs, cols_obs)
    if not mats:
        return VerificationReport(kind, False, observed, ("no matrices given",))
    if kind is not ArrayKind.MRS and len(mats) != 1:
        out.append(f"{kind.value} expects a single matrix, got {len(mats)}")
        return VerificationReport(kind, False, observed, tuple(out))
    m = mats[0]
    a, b = m.nrows, m.ncols
    if any(x.blank is not None for x in mats):
        out.append("blank cells are not allowed in standalone arrays")

    if kind in (ArrayKind.MAGIC_SQUARE, ArrayKind.MAGIC_RECTANGLE):
        if kind is ArrayKind.MAGIC_SQUARE and a != b:
            out.append(f"magic square must be square, got {a}x{b}")
        n = a * b
        _check_range(m.entries(), 1, n, "matrix", out)
        _check_constant(m.row_sums(), b * (n + 1), "rows", out)
        _check_constant(m.col_sums(), a * (n + 1), "columns", out)
    elif kind is ArrayKind.NMR:
        if a % 2 or b % 2 == 0:
            out.append(f"NMR needs an even row count and odd column count, got {a}x{b}")
        else:
            n = a * b
            _check_range(m.entries(), 1, n, "matrix", out)
            _check_constant(m.col_sums(), a * (n + 1), "columns", out)
            lo, hi = (b * (n + 1) - 1) // 2, (b * (n + 1) + 1) // 2
            want = sorted([lo] * (a // 2) + [hi] * (a // 2))
            if sorted(m.row_sums()) != want:
                out.append(f"row sums {sorted(m.row_sums())} are not {a // 2} x {lo} and {a // 2} x {hi}")
    elif kind in (ArrayKind.KA, ArrayKind.QKA):
        if a < 2:
            out.append("Kotzig arrays need at least two rows")
        _check_rows_are_perms(m, out)
        total = a * (b + 1)
        if kind is ArrayKind.KA:
            _check_constant(m.col_sums(), total, "columns", out)
        else:
            if total % 2 == 0 or b % 2:
                out.append(f"quasi Kotzig arrays need a(b+1) odd and b even, got {a}x{b}")
            else:
                lo, hi = (total - 1) // 2, (total + 1) // 2
                want = sorted([lo] * (b // 2) + [hi] * (b // 2))
                if sorted(m.col_sums()) != want:
                    out.append(f"column sums {sorted(m.col_sums())} are not {b // 2} x {lo} and {b // 2} x {hi}")
    elif kind is ArrayKind.MRS:
        c = len(mats)
        if any((x.nrows, x.ncols) != (a, b) for x in mats):
            out.append("rectangles in a set must share one shape")
        else:
            n = a * b * c
            _check_range([v for x in mats for v in x.entries()], 1, n, "set", out)
            for t, x in enumerate(mats, 1):
                _check_constant(x.row_sums(), b * (n + 1),
                                f"rectangle {t} rows", out)
                _check_constant(x.col_sums(), a * (n + 1),
                                f"rectangle {t} columns", out)
    return VerificationReport(kind, not out, observed, tuple(out))
