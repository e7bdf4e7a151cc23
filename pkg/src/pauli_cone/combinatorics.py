"""Zero patterns of 4x4 spectra: partitions, Kostka numbers and (0,1)-matrix counts.

Indices are 0-based throughout; permutations are tuples with ``perm[i]`` the image of ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Sequence

S4 = tuple(permutations(range(4)))

# Partitions of 8 into at most four parts of size at most 4, in table order.
UNIVERSE = (
    (4, 4, 0, 0),
    (4, 3, 1, 0),
    (4, 2, 2, 0),
    (4, 2, 1, 1),
    (3, 3, 2, 0),
    (3, 3, 1, 1),
    (3, 2, 2, 1),
    (2, 2, 2, 2),
)


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts) + (0,) * (4 - len(self.parts))
        if parts not in UNIVERSE:
            raise ValueError(f"{parts} is not a partition of 8 into four parts at most 4")
        object.__setattr__(self, "parts", parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return 4

    def __getitem__(self, i):
        return self.parts[i]


def conjugate(r: Sequence[int]) -> tuple:
    """``r*_j = #{i : r_i >= j}`` for j = 1..4."""
    return tuple(sum(1 for x in r if x >= j) for j in range(1, 5))


def majorizes(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff ``b`` is majorized by ``a`` (prefix sums of sorted ``a`` dominate)."""
    if sum(a) != sum(b):
        raise ValueError("majorization needs equal sums")
    sa, sb = sorted(a, reverse=True), sorted(b, reverse=True)
    n = max(len(sa), len(sb))
    sa += [0] * (n - len(sa))
    sb += [0] * (n - len(sb))
    acc_a = acc_b = 0
    for x, y in zip(sa, sb):
        acc_a += x
        acc_b += y
        if acc_a < acc_b:
            return False
    return True


def kostka(shape: Sequence[int], content: Sequence[int]) -> int:
    """Number of semistandard Young tableaux of ``shape`` with ``content``, by exhaustive filling."""
    shape = [x for x in shape if x]
    if sum(shape) != sum(content):
        return 0
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    remaining = list(content)
    grid: dict = {}

    def fill(k: int) -> int:
        if k == len(cells):
            return 1
        r, c = cells[k]
        low = 1
        if c > 0:
            low = max(low, grid[(r, c - 1)])
        if r > 0:
            low = max(low, grid[(r - 1, c)] + 1)
        total = 0
        for v in range(low, len(remaining) + 1):
            if remaining[v - 1]:
                remaining[v - 1] -= 1
                grid[(r, c)] = v
                total += fill(k + 1)
                remaining[v - 1] += 1
        grid.pop((r, c), None)
        return total

    return fill(0)


def brualdi_count(r: Sequence[int], s: Sequence[int]) -> int:
    """``|A(r, s)| = sum over s <= lam <= r* of K(lam*, r) K(lam, s)``."""
    rstar = conjugate(r)
    total = 0
    for lam in UNIVERSE:
        if majorizes(lam, s) and majorizes(rstar, lam):
            total += kostka(conjugate(lam), r) * kostka(lam, s)
    return total


def enumerate_patterns(r: Sequence[int], s: Sequence[int]) -> list:
    """All 4x4 (0,1)-matrices with row sums ``r`` and column sums ``s`` (backtracking by rows)."""
    out = []
    cols = list(s)

    def go(i: int, rows: list) -> None:
        if i == 4:
            if not any(cols):
                out.append(tuple(rows))
            return
        for chosen in combinations(range(4), r[i]):
            if all(cols[j] > 0 for j in chosen):
                for j in chosen:
                    cols[j] -= 1
                go(i + 1, rows + [tuple(int(j in chosen) for j in range(4))])
                for j in chosen:
                    cols[j] += 1

    go(0, [])
    return out


def _permute(m: Sequence[Sequence[int]], rp: Sequence[int], cp: Sequence[int]) -> tuple:
    return tuple(tuple(m[rp[i]][cp[j]] for j in range(4)) for i in range(4))


def canonical_matrix(m: Sequence[Sequence[int]]) -> tuple:
    """Lexicographically least image under the 576 row/column permutations."""
    return min(_permute(m, rp, cp) for rp in S4 for cp in S4)


def transpose(m: Sequence[Sequence[int]]) -> tuple:
    return tuple(tuple(m[j][i] for j in range(4)) for i in range(4))


def classify_up_to_permutation(patterns: Iterable[Sequence[Sequence[int]]]) -> list:
    """One canonical representative per row/column permutation class, sorted."""
    return sorted({canonical_matrix(m) for m in patterns})


def _sorted_sums(m) -> tuple:
    rows = tuple(sorted((sum(row) for row in m), reverse=True))
    cols = tuple(sorted((sum(m[i][j] for i in range(4)) for j in range(4)), reverse=True))
    return rows, cols


@lru_cache(maxsize=None)
def class_table() -> dict:
    """Class representatives per (row sums, column sums) cell of the universe."""
    return {
        (r, s): tuple(classify_up_to_permutation(enumerate_patterns(r, s)))
        for r in UNIVERSE
        for s in UNIVERSE
    }


def transpose_merged_count() -> int:
    """Number of classes once a matrix and its transpose are identified."""
    seen = set()
    for reps in class_table().values():
        for m in reps:
            seen.add(min(m, canonical_matrix(transpose(m))))
    return len(seen)


def kostka_table() -> list:
    return [[kostka(lam, mu) for mu in UNIVERSE] for lam in UNIVERSE]


def count_table() -> list:
    return [[brualdi_count(r, s) for s in UNIVERSE] for r in UNIVERSE]


def enumeration_table() -> list:
    return [[len(enumerate_patterns(r, s)) for s in UNIVERSE] for r in UNIVERSE]


def classes_table() -> list:
    table = class_table()
    return [[len(table[(r, s)]) for s in UNIVERSE] for r in UNIVERSE]


# Zero-pattern rules for two-qubit cone members given as 4x4 matrices P and Q.

def _perm_matrix(sigma: Sequence[int]) -> tuple:
    """``U_sigma`` with ``U |j> = |sigma(j)>``."""
    return tuple(tuple(int(sigma[j] == i) for j in range(4)) for i in range(4))


def _matmul(a, b) -> tuple:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4)) for i in range(4))


def _trace(a) -> object:
    return sum(a[i][i] for i in range(4))


def _as_matrix(vec: Sequence) -> tuple:
    return tuple(tuple(vec[4 * i:4 * i + 4]) for i in range(4))


def complement_pair(pair: Sequence[int]) -> tuple:
    return tuple(k for k in range(4) if k not in pair)


def rule_box(pair, i: int, j: int, k: int, l: int) -> tuple:
    """(<{i,j}|P|{k,l}> == 0, <{i,j}^c|Q|{k,l}^c> == 0); the two agree on the cone."""
    P, Q = _as_matrix(pair.p), _as_matrix(pair.q)
    rows, cols = (i, j), (k, l)
    crow, ccol = complement_pair(rows), complement_pair(cols)
    lhs = sum(P[a][b] for a in rows for b in cols)
    rhs = sum(Q[a][b] for a in crow for b in ccol)
    return lhs == 0, rhs == 0


def rule_diagonal(pair, sigma: Sequence[int]) -> tuple:
    """(Tr(U_sigma P) == 0, Tr(U_sigma Q) == 0)."""
    U = _perm_matrix(sigma)
    P, Q = _as_matrix(pair.p), _as_matrix(pair.q)
    return _trace(_matmul(U, P)) == 0, _trace(_matmul(U, Q)) == 0


CROSS_P = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 1, 0))


def rule_cross(pair, sigma1: Sequence[int], sigma2: Sequence[int], side: int = 0) -> tuple:
    """(Tr(U1 X U2 A) == 0, Tr(U1 X^T U2 B) == 0) with X the cross pattern.

    ``side`` 0 uses (A, B) = (P, Q); ``side`` 1 uses (Q, P).
    """
    U1, U2 = _perm_matrix(sigma1), _perm_matrix(sigma2)
    P, Q = _as_matrix(pair.p), _as_matrix(pair.q)
    a, b = (P, Q) if side == 0 else (Q, P)
    left = _trace(_matmul(_matmul(_matmul(U1, CROSS_P), U2), a))
    right = _trace(_matmul(_matmul(_matmul(U1, transpose(CROSS_P)), U2), b))
    return left == 0, right == 0
