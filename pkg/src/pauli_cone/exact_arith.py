"""Exact rational and Gaussian-rational linear algebra.

Everything here works over ``fractions.Fraction``; no floating point is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Iterable, Optional, Sequence, Union

Rat = Fraction
Number = Union[int, Fraction]


def as_rat(value: Union[Number, str]) -> Fraction:
    """Coerce an int, Fraction or ``"a/b"`` string to a Fraction (floats rejected)."""
    if isinstance(value, float):
        raise TypeError("floats are not accepted in exact arithmetic")
    return Fraction(value)


@dataclass(frozen=True)
class GaussRat:
    """A Gaussian rational ``re + i*im``."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value: Union["GaussRat", Number]) -> "GaussRat":
        if isinstance(value, GaussRat):
            return value
        return GaussRat(Fraction(value), Fraction(0))

    def __add__(self, other):
        o = GaussRat.of(other)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        o = GaussRat.of(other)
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussRat.of(other) - self

    def __mul__(self, other):
        o = GaussRat.of(other)
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"


ZERO_G = GaussRat()
ONE_G = GaussRat(Fraction(1))
I_G = GaussRat(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class RatMatrix:
    """Dense row-major matrix of Fractions."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]]) -> "RatMatrix":
        data = [[as_rat(x) for x in row] for row in rows]
        ncols = len(data[0]) if data else 0
        if any(len(row) != ncols for row in data):
            raise ValueError("ragged rows")
        return cls(len(data), ncols, tuple(x for row in data for x in row))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(
            self.cols, self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    @property
    def T(self) -> "RatMatrix":
        return self.transpose()

    def scale(self, c: Number) -> "RatMatrix":
        c = as_rat(c)
        return RatMatrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RatMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            cols_o = [other.entries[j::other.cols] for j in range(other.cols)]
            out = []
            for i in range(self.rows):
                r = self.row(i)
                out.extend(sum(a * b for a, b in zip(r, c)) for c in cols_o)
            return RatMatrix(self.rows, other.cols, tuple(out))
        return self.apply(other)

    def apply(self, vec: Sequence[Number]) -> tuple:
        """Matrix-vector product."""
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(self.row(i), vec)) for i in range(self.rows))


def kron(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Kronecker product with the first factor most significant."""
    out = []
    for i in range(a.rows):
        for k in range(b.rows):
            brow = b.row(k)
            for j in range(a.cols):
                x = a[i, j]
                out.extend(x * y for y in brow)
    return RatMatrix(a.rows * b.rows, a.cols * b.cols, tuple(out))


def kron_power(a: RatMatrix, n: int) -> RatMatrix:
    if n < 1:
        raise ValueError("power must be positive")
    out = a
    for _ in range(n - 1):
        out = kron(out, a)
    return out


def kron_vec(a: Sequence, b: Sequence) -> tuple:
    return tuple(x * y for x in a for y in b)


def integer_row(row: Iterable[Number]) -> list:
    """Scale a rational row by the lcm of its denominators."""
    row = [Fraction(x) for x in row]
    m = 1
    for x in row:
        m = lcm(m, x.denominator)
    return [int(x * m) for x in row]


def primitive(vec: Iterable[Number]) -> tuple:
    """Positive rescaling of a rational vector to coprime integers."""
    ints = integer_row(vec)
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def rank(matrix: Union[RatMatrix, Sequence[Sequence[Number]]]) -> int:
    """Rank by Bareiss fraction-free elimination."""
    rows = matrix.to_rows() if isinstance(matrix, RatMatrix) else matrix
    m = [integer_row(r) for r in rows if len(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            mi = m[i]
            f = mi[c]
            mi[:] = [(p * mi[j] - f * m[r][j]) // prev for j in range(ncols)]
        prev = p
        r += 1
        if r == len(m):
            break
    return r


def lp_feasible(
    equalities: Sequence[Sequence[Number]],
    rhs: Sequence[Number],
    nonneg_vars: Optional[Iterable[int]] = None,
) -> Optional[list]:
    """Find x with ``equalities @ x == rhs`` and ``x >= 0``, or return None.

    Phase-one simplex with Bland's rule on an integer tableau (each pivot
    divides exactly by the previous pivot).  ``nonneg_vars`` lists the
    variables constrained to be nonnegative (default: all); free variables
    are split into two nonnegative parts.
    """
    m = len(equalities)
    if len(rhs) != m:
        raise ValueError("rhs length does not match number of equalities")
    n = len(equalities[0]) if m else 0
    if any(len(row) != n for row in equalities):
        raise ValueError("ragged equality matrix")
    signed = set(range(n)) if nonneg_vars is None else set(nonneg_vars)
    if any(not 0 <= j < n for j in signed):
        raise ValueError("nonneg variable index out of range")
    free = [j for j in range(n) if j not in signed]
    if m == 0:
        return [Fraction(0)] * n

    # Columns: originals, negated copies of free variables, artificials, rhs.
    nv = n + len(free)
    ncol = nv + m + 1
    tab = []
    for i in range(m):
        ints = integer_row(list(equalities[i]) + [rhs[i]])
        row = ints[:n] + [-ints[j] for j in free]
        b = ints[n]
        if b < 0:
            row = [-x for x in row]
            b = -b
        art = [0] * m
        art[i] = 1
        tab.append(row + art + [b])
    obj = [-sum(tab[i][j] for i in range(m)) for j in range(nv)] + [0] * m
    obj.append(-sum(tab[i][-1] for i in range(m)))
    basis = [nv + i for i in range(m)]
    det = 1
    bound = comb(nv + m, m)
    iters = 0
    while True:
        enter = next((j for j in range(nv + m) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        for i in range(m):
            a = tab[i][enter]
            if a <= 0:
                continue
            if leave is None:
                leave = i
                continue
            # compare tab[i][-1]/a with tab[leave][-1]/tab[leave][enter]
            lhs = tab[i][-1] * tab[leave][enter]
            rhs_ = tab[leave][-1] * a
            if lhs < rhs_ or (lhs == rhs_ and basis[i] < basis[leave]):
                leave = i
        if leave is None:
            # unbounded phase-one objective cannot happen (it is bounded below by 0)
            raise ArithmeticError("phase-one simplex reported unbounded")
        prow = tab[leave]
        p = prow[enter]
        for i in range(m):
            if i == leave:
                continue
            row = tab[i]
            f = row[enter]
            if f == 0:
                row[:] = [(p * x) // det for x in row]
            else:
                row[:] = [(p * x - f * y) // det for x, y in zip(row, prow)]
        f = obj[enter]
        obj = [(p * x - f * y) // det for x, y in zip(obj, prow)]
        det = p
        basis[leave] = enter
        iters += 1
        if iters > bound:
            raise ArithmeticError("simplex exceeded its iteration bound")
    if obj[-1] != 0:
        return None
    values = [Fraction(0)] * nv
    for i, bv in enumerate(basis):
        if bv < nv:
            values[bv] = Fraction(tab[i][-1], det)
    x = values[:n]
    for k, j in enumerate(free):
        x[j] -= values[n + k]
    for i in range(m):
        if sum(Fraction(a) * b for a, b in zip(equalities[i], x)) != Fraction(rhs[i]):
            raise ArithmeticError("simplex produced an inconsistent point")
    return x
