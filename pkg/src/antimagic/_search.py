"""Construction routes for magic and nearly magic rectangles.

Three routes live here:

* ``paired_rows``: even row count. Rows come in complementary pairs
  (x above N+1-x), so every column pair sums to N+1; the only freedom is
  which member of each pair goes on top, chosen by a subset-sum split.
* ``three_row_rectangle``: backtracking over 3 x b arrays built on top of a
  three-row Kotzig array.
* ``column_first_rectangle``: odd x odd local search that starts with exact
  column sums and repairs row sums by swapping inside columns.

All routes are deterministic. The callers verify every result.
"""
from __future__ import annotations

import itertools
import random
from math import gcd
from typing import List, Optional, Sequence

from .errors import ConstructionError

_PERMS3 = list(itertools.permutations(range(3)))

# Fixed seeds for the local search; tried in order until one converges.
SEARCH_SEEDS = (0, 1, 2, 3, 4, 5, 6, 7)


def _subset_with_sum(values: Sequence[int], target: int) -> Optional[List[int]]:
    """Indices of a subset of ``values`` summing to ``target`` or None."""
    if target < 0:
        return None
    layers = [1]
    mask = (1 << (target + 1)) - 1
    for v in values:
        layers.append((layers[-1] | (layers[-1] << v)) & mask)
    if not (layers[-1] >> target) & 1:
        return None
    chosen = []
    rest = target
    for k in range(len(values) - 1, -1, -1):
        if (layers[k] >> rest) & 1:
            continue
        chosen.append(k)
        rest -= values[k]
    return sorted(chosen)


def _split(group: Sequence[int], excess: int) -> Optional[List[int]]:
    total = sum(group) + excess
    if total % 2:
        return None
    return _subset_with_sum(group, total // 2)


def paired_rows(a: int, b: int, excess: int) -> List[List[int]]:
    """Rows of an a x b array (a even) built from complementary row pairs.

    With ``excess=0`` every row sums to b(ab+1)/2. With ``excess=1`` the top
    row of each pair is one above that value and the bottom row one below.
    """
    if a % 2:
        raise ValueError("paired rows need an even row count")
    n = a * b
    h = a // 2
    # gap between a low value x and its partner n+1-x
    gaps = [n + 1 - 2 * x for x in range(1, n // 2 + 1)]
    if b == 3:
        groups = _triples(sorted(gaps), excess)
        splits = None if groups is None else [_split(g, excess) for g in groups]
    else:
        groups, splits = _deal(gaps, h, excess)
    if groups is None:
        raise ConstructionError(f"no balanced split found for {a}x{b}")

    rows = []
    for g, flip in zip(groups, splits):
        flipped = set(flip)
        top, bottom = [], []
        for k, gap in enumerate(g):
            low = (n + 1 - gap) // 2
            high = n + 1 - low
            if k in flipped:
                top.append(high)
                bottom.append(low)
            else:
                top.append(low)
                bottom.append(high)
        rows.extend([top, bottom])
    return rows


def _deal(gaps: List[int], h: int, excess: int, attempts: int = 400):
    """Deal gaps into h equal groups that all split; snake order first, then reshuffles."""
    for attempt in range(attempts):
        pool = list(gaps)
        if attempt:
            random.Random(attempt).shuffle(pool)
        groups: List[List[int]] = [[] for _ in range(h)]
        order = list(range(h)) + list(range(h - 1, -1, -1))
        for k, g in enumerate(pool):
            groups[order[k % len(order)]].append(g)
        splits = [_split(g, excess) for g in groups]
        if all(sp is not None or _repair(groups, splits, p, excess)
               for p, sp in enumerate(splits)):
            return groups, splits
    return None, None


def _triples(gaps: List[int], excess: int) -> Optional[List[List[int]]]:
    """Partition ascending gaps into triples that each admit a balanced split."""
    if not gaps:
        return []
    top, rest = gaps[-1], gaps[:-1]
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            trio = [rest[i], rest[j], top]
            if _split(trio, excess) is None:
                continue
            tail = _triples([v for k, v in enumerate(rest) if k not in (i, j)], excess)
            if tail is not None:
                return [trio] + tail
    return None


def _repair(groups, splits, p, excess) -> bool:
    """Exchange one element between group p and another group so both split."""
    for q in range(len(groups)):
        if q == p:
            continue
        for i in range(len(groups[p])):
            for j in range(len(groups[q])):
                gp, gq = list(groups[p]), list(groups[q])
                gp[i], gq[j] = gq[j], gp[i]
                sp, sq = _split(gp, excess), _split(gq, excess)
                if sp is not None and sq is not None:
                    groups[p], groups[q] = gp, gq
                    splits[p], splits[q] = sp, sq
                    return True
    return False


def three_row_rectangle(b: int, kotzig: Sequence[Sequence[int]],
                        node_limit: int = 20000) -> Optional[List[List[int]]]:
    """3 x b magic rectangle as ``3 (K - 1) + X + 1`` over column relabelings of K.

    K is a 3 x b Kotzig array. Each column of X is a permutation of {0,1,2};
    X must give each row a total of b and keep the three copies of every
    symbol of K apart.
    """
    base = [[v - 1 for v in row] for row in kotzig]
    for mult in range(1, b):
        if gcd(mult, b) != 1:
            continue
        y = [[row[(mult * j) % b] for j in range(b)] for row in base]
        x = _three_row_offsets(b, y, node_limit)
        if x is not None:
            return [[3 * y[i][j] + x[i][j] + 1 for j in range(b)] for i in range(3)]
    return None


def _three_row_offsets(b, y, node_limit):
    pos = [[0] * b for _ in range(3)]
    for i in range(3):
        for j in range(b):
            pos[i][y[i][j]] = j
    cols_of = {s: {pos[i][s] for i in range(3)} for s in range(b)}

    # visit columns so that symbols get closed off early
    order: List[int] = []
    seen = set()
    remaining = set(range(b))
    while remaining:
        def score(c):
            closes = sum(1 for i in range(3) if not cols_of[y[i][c]] - seen - {c})
            touches = sum(len(cols_of[y[i][c]] & seen) for i in range(3))
            return closes * 10 + touches
        best = max(sorted(remaining), key=score)
        order.append(best)
        seen.add(best)
        remaining.discard(best)

    x = [[None] * b for _ in range(3)]
    totals = [0, 0, 0]
    nodes = 0

    def distinct(s):
        vals = [x[i][pos[i][s]] for i in range(3)]
        known = [v for v in vals if v is not None]
        return len(set(known)) == len(known)

    def place(t):
        nonlocal nodes
        if t == b:
            return totals == [b, b, b]
        if nodes > node_limit:
            return False
        j = order[t]
        left = b - t
        for p in _PERMS3:
            nodes += 1
            if any(totals[i] + p[i] > b or totals[i] + p[i] + 2 * (left - 1) < b for i in range(3)):
                continue
            for i in range(3):
                x[i][j] = p[i]
            if all(distinct(y[i][j]) for i in range(3)):
                for i in range(3):
                    totals[i] += p[i]
                if place(t + 1):
                    return True
                for i in range(3):
                    totals[i] -= p[i]
            for i in range(3):
                x[i][j] = None
        return False

    return x if place(0) else None


def column_first_rectangle(kotzig: Sequence[Sequence[int]],
                           max_steps: int = 200000) -> Optional[List[List[int]]]:
    """Odd x odd magic rectangle by in-column swaps.

    Start from ``b * i + K[i][j]`` (row i uses the block ib+1..ib+b), which
    already has the right column sums. Swapping two cells of one column keeps
    them, so a greedy walk over such swaps only has to fix the row sums.
    """
    for seed in SEARCH_SEEDS:
        rows = _column_first(kotzig, seed, max_steps)
        if rows is not None:
            return rows
    return None


def _column_first(kotzig, seed, max_steps):
    rng = random.Random(seed)
    a, b = len(kotzig), len(kotzig[0])
    n = a * b
    g = [[b * i + kotzig[i][j] for j in range(b)] for i in range(a)]
    target = b * (n + 1) // 2
    dev = [sum(r) - target for r in g]
    for _ in range(max_steps):
        if not any(dev):
            return g
        unhappy = [i for i in range(a) if dev[i]]
        i = unhappy[rng.randrange(len(unhappy))]
        best, best_delta = [], 1
        di = dev[i]
        gi = g[i]
        for k in range(a):
            if k == i:
                continue
            dk = dev[k]
            gk = g[k]
            for j in range(b):
                d = gk[j] - gi[j]
                delta = abs(di + d) - abs(di) + abs(dk - d) - abs(dk)
                if delta < best_delta:
                    best_delta, best = delta, [(k, j)]
                elif delta == best_delta:
                    best.append((k, j))
        if best_delta > 0 or (best_delta == 0 and rng.random() < 0.1):
            k = rng.randrange(a - 1)
            k += k >= i
            j = rng.randrange(b)
        else:
            k, j = best[rng.randrange(len(best))]
        d = g[k][j] - g[i][j]
        g[i][j], g[k][j] = g[k][j], g[i][j]
        dev[i] += d
        dev[k] -= d
    return g if not any(dev) else None
