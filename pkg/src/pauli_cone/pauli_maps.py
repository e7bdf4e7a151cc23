"""Pauli-diagonal maps: multiplier tensors, Choi spectra and Choi matrices.

A map on ``N`` qubits acts diagonally on Pauli strings,
``sigma_{i1} x ... x sigma_{iN} -> mu[i1..iN] sigma_{i1} x ... x sigma_{iN}``.
Multipliers and spectra are stored flat with the first tensor slot most
significant (``numpy.kron`` order).  Pauli order is (I, X, Z, Y).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Optional, Sequence, Union

from .exact_arith import (
    GaussRat,
    I_G,
    ONE_G,
    RatMatrix,
    ZERO_G,
    as_rat,
    kron_power,
    kron_vec,
)

HALF = Fraction(1, 2)

# Rows give the spectrum entries in terms of the multipliers.
D = RatMatrix.from_rows([[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]]).scale(HALF)
D_TILDE = RatMatrix.from_rows([[1, -1, -1, -1], [1, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1]]).scale(HALF)
# Relates the two spectra: q = K p.
K = RatMatrix.from_rows([[-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1]]).scale(HALF)

PAULI = (
    ((ONE_G, ZERO_G), (ZERO_G, ONE_G)),
    ((ZERO_G, ONE_G), (ONE_G, ZERO_G)),
    ((ONE_G, ZERO_G), (ZERO_G, -ONE_G)),
    ((ZERO_G, -I_G), (I_G, ZERO_G)),
)

# Bell-type eigenvectors (columns), unnormalised, for the Choi matrix and its partial transpose.
CHOI_EIGVECS = ((1, 0, 0, 1), (0, 1, 1, 0), (1, 0, 0, -1), (0, 1, -1, 0))
CHOI_T_EIGVECS = ((0, 1, -1, 0), (1, 0, 0, -1), (0, 1, 1, 0), (1, 0, 0, 1))


@lru_cache(maxsize=None)
def d_power(n: int) -> RatMatrix:
    return kron_power(D, n)


@lru_cache(maxsize=None)
def d_tilde_power(n: int) -> RatMatrix:
    return kron_power(D_TILDE, n)


@lru_cache(maxsize=None)
def k_power(n: int) -> RatMatrix:
    return kron_power(K, n)


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError("number of qubits must be a positive integer")


@dataclass(frozen=True)
class MultiplierTensor:
    n: int
    coeffs: tuple

    def __post_init__(self):
        _check_n(self.n)
        coeffs = tuple(as_rat(c) for c in self.coeffs)
        if len(coeffs) != 4 ** self.n:
            raise ValueError(f"expected {4 ** self.n} multipliers, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            flat = 0
            for i in idx:
                flat = 4 * flat + i
            idx = flat
        return self.coeffs[idx]

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "MultiplierTensor":
        return cls(int(data["n"]), tuple(Fraction(c) for c in data["coeffs"]))

    @classmethod
    def load(cls, path: Union[str, Path]) -> "MultiplierTensor":
        return cls.from_json(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class SpectrumPair:
    """Spectra of the Choi matrix (``p``) and of its partial transpose (``q``)."""

    n: int
    p: tuple
    q: tuple

    def __post_init__(self):
        _check_n(self.n)
        p = tuple(as_rat(x) for x in self.p)
        q = tuple(as_rat(x) for x in self.q)
        if len(p) != 4 ** self.n or len(q) != 4 ** self.n:
            raise ValueError("spectrum length does not match number of qubits")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def to_json(self) -> dict:
        return {"p": [str(x) for x in self.p], "q": [str(x) for x in self.q]}


@dataclass(frozen=True)
class NamedQubitMap:
    """A one-qubit Pauli map from a named family."""

    kind: str
    param: Optional[Fraction] = None
    mu: MultiplierTensor = field(init=False)

    def __post_init__(self):
        t = None if self.param is None else as_rat(self.param)
        object.__setattr__(self, "param", t)
        if self.kind == "depolarizing":
            coeffs = (1, t, t, t)
        elif self.kind == "theta":
            coeffs = (1, 1, 1, 1 - 2 * t)
        elif self.kind == "lambda":
            coeffs = (1, t, 0, t)
        else:
            raise ValueError(f"unknown map family {self.kind!r}")
        object.__setattr__(self, "mu", MultiplierTensor(1, coeffs))

    @staticmethod
    def custom(coeffs: Sequence) -> MultiplierTensor:
        return MultiplierTensor(1, tuple(coeffs))


def depolarizing(t) -> MultiplierTensor:
    return NamedQubitMap("depolarizing", t).mu


def theta_map(a) -> MultiplierTensor:
    return NamedQubitMap("theta", a).mu


def lambda_map(b) -> MultiplierTensor:
    return NamedQubitMap("lambda", b).mu


def tensor(*maps: MultiplierTensor) -> MultiplierTensor:
    """Multipliers of the tensor product (first map in the most significant slot)."""
    coeffs = (Fraction(1),)
    for m in maps:
        coeffs = kron_vec(coeffs, m.coeffs)
    return MultiplierTensor(sum(m.n for m in maps), coeffs)


def apply_power(m: Union[RatMatrix, Sequence[Sequence]], vec: Sequence, n: int) -> tuple:
    """Apply the n-fold tensor power of a 4x4 matrix, one slot at a time."""
    if len(vec) != 4 ** n:
        raise ValueError("vector length does not match")
    rows = [m.row(i) for i in range(4)] if isinstance(m, RatMatrix) else [tuple(r) for r in m]
    out = list(vec)
    for slot in range(n):
        stride = 4 ** (n - 1 - slot)
        nxt = [None] * len(out)
        for base in range(len(out)):
            if (base // stride) % 4:
                continue
            xs = [out[base + k * stride] for k in range(4)]
            for i, row in enumerate(rows):
                nxt[base + i * stride] = sum(a * x for a, x in zip(row, xs) if a)
        out = nxt
    return tuple(out)


def mult_to_spectrum(mu: MultiplierTensor) -> SpectrumPair:
    p = apply_power(D, mu.coeffs, mu.n)
    q = apply_power(D_TILDE, mu.coeffs, mu.n)
    return SpectrumPair(mu.n, p, q)


def spectrum_to_mult(p: Sequence, n: Optional[int] = None) -> MultiplierTensor:
    """Invert ``p = D^{(x)n} mu``; D is orthogonal so the inverse is its transpose."""
    if n is None:
        n = _n_from_length(len(p))
    return MultiplierTensor(n, apply_power(D.transpose(), [as_rat(x) for x in p], n))


def q_from_p(p: Sequence) -> tuple:
    n = _n_from_length(len(p))
    return apply_power(K, [as_rat(x) for x in p], n)


def _n_from_length(length: int) -> int:
    n = 0
    while 4 ** n < length:
        n += 1
    if 4 ** n != length or n == 0:
        raise ValueError("length is not a power of 4")
    return n


def is_cp(mu: MultiplierTensor) -> bool:
    return all(x >= 0 for x in mult_to_spectrum(mu).p)


def is_cocp(mu: MultiplierTensor) -> bool:
    return all(x >= 0 for x in mult_to_spectrum(mu).q)


def is_ppt(mu: MultiplierTensor) -> bool:
    return is_cp(mu) and is_cocp(mu)


@dataclass(frozen=True)
class ChoiMatrix:
    """Dense ``4^N x 4^N`` Gaussian-rational matrix; tensor factors ordered A1 B1 A2 B2 ..."""

    dim: int
    entries: tuple

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.dim + j]

    def apply(self, vec: Sequence) -> tuple:
        d = self.dim
        out = []
        for i in range(d):
            acc = ZERO_G
            for j in range(d):
                a = self.entries[i * d + j]
                if not a.is_zero() and vec[j] != 0:
                    acc = acc + a * vec[j]
            out.append(acc)
        return tuple(out)

    def is_hermitian(self) -> bool:
        d = self.dim
        return all(self[i, j] == self[j, i].conj() for i in range(d) for j in range(d))


def _pauli_term(i: int, transposed: bool) -> dict:
    """Nonzero entries of sigma_i (x) sigma_i^T, or of sigma_i (x) sigma_i when ``transposed``."""
    s = PAULI[i]
    second = s if transposed else tuple(tuple(s[c][r] for c in range(2)) for r in range(2))
    out = {}
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    v = s[a][b] * second[c][d]
                    if not v.is_zero():
                        out[(2 * a + c, 2 * b + d)] = v
    return out


def _sparse_kron(x: dict, y: dict, ydim: int) -> dict:
    return {
        (i1 * ydim + i2, j1 * ydim + j2): v1 * v2
        for (i1, j1), v1 in x.items()
        for (i2, j2), v2 in y.items()
    }


def build_choi(mu: MultiplierTensor, transposed: bool = False) -> ChoiMatrix:
    """Choi matrix of the map (or of its composition with the transpose)."""
    n = mu.n
    dim = 4 ** n
    terms = [_pauli_term(i, transposed) for i in range(4)]
    acc: dict = {}
    scale = Fraction(1, 2 ** n)
    for flat, c in enumerate(mu.coeffs):
        if c == 0:
            continue
        digits = [(flat // 4 ** (n - 1 - k)) % 4 for k in range(n)]
        term = {(0, 0): ONE_G}
        size = 1
        for dgt in digits:
            term = _sparse_kron(term, terms[dgt], 4)
            size *= 4
        w = c * scale
        for key, v in term.items():
            acc[key] = acc.get(key, ZERO_G) + v * w
    entries = tuple(acc.get((i, j), ZERO_G) for i in range(dim) for j in range(dim))
    return ChoiMatrix(dim, entries)


def eigenvector(n: int, index: int, transposed: bool = False) -> tuple:
    """Choi eigenvector attached to spectrum entry ``index``."""
    cols = CHOI_T_EIGVECS if transposed else CHOI_EIGVECS
    vec = (1,)
    for k in range(n):
        vec = kron_vec(vec, cols[(index // 4 ** (n - 1 - k)) % 4])
    return vec


def verify_spectrum(mu: MultiplierTensor) -> bool:
    """Check ``C v_k = p_k v_k`` (and the transposed analogue) for every k exactly."""
    if mu.n > 3:
        raise ValueError("verify_spectrum is limited to N <= 3")
    pair = mult_to_spectrum(mu)
    for transposed, spec in ((False, pair.p), (True, pair.q)):
        choi = build_choi(mu, transposed)
        for k in range(4 ** mu.n):
            v = eigenvector(mu.n, k, transposed)
            cv = choi.apply(v)
            if any(a != b * spec[k] for a, b in zip(cv, v)):
                return False
    return True


def realignment_sum(mu: MultiplierTensor) -> Fraction:
    """Sum of |mu|; for unital trace-preserving maps this exceeds 2^N only if not entanglement breaking."""
    if mu.coeffs[0] != 1:
        raise ValueError("realignment bound needs mu[0...0] == 1")
    return sum((abs(c) for c in mu.coeffs), Fraction(0))


def schur_compose(mu1: MultiplierTensor, mu2: MultiplierTensor) -> MultiplierTensor:
    """Multipliers of the composition: the entrywise product."""
    if mu1.n != mu2.n:
        raise ValueError("maps act on different numbers of qubits")
    return MultiplierTensor(mu1.n, tuple(a * b for a, b in zip(mu1.coeffs, mu2.coeffs)))
