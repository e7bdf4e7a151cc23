"""The cone of PPT spectra ``{p >= 0, K^{(x)N} p >= 0}`` and its extremal rays."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .exact_arith import integer_row, kron_vec, primitive, rank
from .pauli_maps import SpectrumPair, k_power, q_from_p


@dataclass(frozen=True)
class ZeroPattern:
    """Zero positions of ``p`` and ``q`` as bitmasks (bit i set iff entry i is zero)."""

    n: int
    p_mask: int
    q_mask: int

    @property
    def p_zeros(self) -> frozenset:
        return frozenset(i for i in range(4 ** self.n) if self.p_mask >> i & 1)

    @property
    def q_zeros(self) -> frozenset:
        return frozenset(i for i in range(4 ** self.n) if self.q_mask >> i & 1)

    def size(self) -> int:
        return bin(self.p_mask).count("1") + bin(self.q_mask).count("1")

    @classmethod
    def from_sets(cls, n: int, p_zeros: Iterable[int], q_zeros: Iterable[int]) -> "ZeroPattern":
        pm = qm = 0
        for i in p_zeros:
            pm |= 1 << i
        for i in q_zeros:
            qm |= 1 << i
        return cls(n, pm, qm)


@dataclass(frozen=True)
class RayGenerator:
    pair: SpectrumPair
    pattern: ZeroPattern
    orbit_label: Optional[str] = None

    def to_json(self) -> dict:
        out = {"p": [int(x) for x in self.pair.p], "q": [int(x) for x in self.pair.q]}
        if self.orbit_label is not None:
            out["orbit"] = self.orbit_label
        return out


def _mask(vec: Sequence) -> int:
    m = 0
    for i, x in enumerate(vec):
        if x == 0:
            m |= 1 << i
    return m


def zero_pattern(pair: SpectrumPair) -> ZeroPattern:
    return ZeroPattern(pair.n, _mask(pair.p), _mask(pair.q))


def leq_z(a: SpectrumPair, b: SpectrumPair) -> bool:
    """True iff every zero of ``b`` is a zero of ``a`` (on both sides)."""
    za, zb = zero_pattern(a), zero_pattern(b)
    return zb.p_mask & ~za.p_mask == 0 and zb.q_mask & ~za.q_mask == 0


def in_cone(pair: SpectrumPair) -> bool:
    return (
        all(x >= 0 for x in pair.p)
        and all(x >= 0 for x in pair.q)
        and tuple(q_from_p(pair.p)) == pair.q
    )


def pair_from_p(p: Sequence) -> SpectrumPair:
    q = q_from_p(p)
    n = 1
    while 4 ** n < len(p):
        n += 1
    return SpectrumPair(n, tuple(p), q)


def _k_rows(n: int) -> list:
    return [integer_row(k_power(n).row(i)) for i in range(4 ** n)]


def solution_dimension(pattern: ZeroPattern) -> int:
    """Dimension of ``{x : x_i = 0 (i in Zp), (K x)_j = 0 (j in Zq)}``."""
    d = 4 ** pattern.n
    rows = [[int(i == j) for j in range(d)] for i in sorted(pattern.p_zeros)]
    krows = _k_rows(pattern.n)
    rows += [krows[j] for j in sorted(pattern.q_zeros)]
    return d - rank(rows) if rows else d


def is_extremal(pair: SpectrumPair) -> bool:
    """Whether a nonzero cone member spans an extremal ray."""
    if not in_cone(pair):
        raise ValueError("pair is not a member of the cone")
    if all(x == 0 for x in pair.p):
        raise ValueError("the zero pair does not span a ray")
    return solution_dimension(zero_pattern(pair)) == 1


def check_rank_bound(pattern: ZeroPattern) -> bool:
    return pattern.size() >= 4 ** pattern.n - 1


def make_ray(p: Sequence, label: Optional[str] = None) -> RayGenerator:
    """Ray through ``p`` normalised to a primitive integer pair."""
    pair = pair_from_p(p)
    d = len(pair.p)
    prim = primitive(pair.p + pair.q)
    pair = SpectrumPair(pair.n, prim[:d], prim[d:])
    return RayGenerator(pair, zero_pattern(pair), label)


def tensor_rays(r1: RayGenerator, r2: RayGenerator) -> RayGenerator:
    """Tensor product of two rays (again a cone member; q factorises because K^{(x)N} does)."""
    p = kron_vec(r1.pair.p, r2.pair.p)
    ray = make_ray(p)
    if ray.pair.q != primitive(ray.pair.p + kron_vec(r1.pair.q, r2.pair.q))[len(p):]:
        raise ArithmeticError("q does not factorise")
    return ray


def double_description(halfspaces: Sequence[Sequence[int]], dim: int) -> list:
    """Extreme rays of ``{x >= 0, h.x >= 0 for h in halfspaces}`` (integer data).

    Starts from the orthant's unit vectors and inserts the halfspaces one at a
    time; a pair of rays on opposite sides is combined only if it is adjacent,
    tested combinatorially (no third ray is tight on all their common constraints).
    """
    full = (1 << dim) - 1
    rays = [(tuple(int(i == j) for j in range(dim)), full & ~(1 << i)) for i in range(dim)]
    for k, h in enumerate(halfspaces):
        bit = 1 << (dim + k)
        pos, neg, zer = [], [], []
        for vec, z in rays:
            v = sum(a * b for a, b in zip(h, vec))
            if v > 0:
                pos.append((vec, z, v))
            elif v < 0:
                neg.append((vec, z, v))
            else:
                zer.append((vec, z | bit))
        masks = [z for _, z in rays]
        new = []
        for vp, zp, ap in pos:
            for vn, zn, an in neg:
                common = zp & zn
                if bin(common).count("1") < dim - 2:
                    continue
                hits = 0
                for z in masks:
                    if z & common == common:
                        hits += 1
                        if hits > 2:
                            break
                if hits > 2:
                    continue
                comb = [ap * b - an * a for a, b in zip(vp, vn)]
                new.append((primitive(comb), common | bit))
        rays = [(v, z) for v, z, _ in pos] + zer + new
    return [v for v, _ in rays]


@lru_cache(maxsize=None)
def _enumerate(n: int, order: Optional[tuple]) -> tuple:
    d = 4 ** n
    krows = _k_rows(n)
    idx = tuple(range(d)) if order is None else order
    if sorted(idx) != list(range(d)):
        raise ValueError("insertion order must be a permutation of the halfspaces")
    found = double_description([krows[i] for i in idx], d)
    rays = sorted((make_ray(p) for p in found), key=lambda r: (r.pair.p, r.pair.q))
    return tuple(rays)


def enumerate_rays(n: int, order: Optional[Sequence[int]] = None) -> list:
    """All extremal rays of the N-qubit cone, sorted by (p, q)."""
    if n not in (1, 2, 3):
        raise ValueError("only N in {1, 2, 3} is supported")
    return list(_enumerate(n, None if order is None else tuple(order)))


def rays_to_json(rays: Sequence[RayGenerator]) -> str:
    return json.dumps([r.to_json() for r in rays], indent=1)


def write_rays(rays: Sequence[RayGenerator], path: Union[str, Path]) -> None:
    Path(path).write_text(rays_to_json(rays) + "\n")


def read_rays(path: Union[str, Path]) -> list:
    out = []
    for item in json.loads(Path(path).read_text()):
        ray = make_ray([Fraction(x) for x in item["p"]], item.get("orbit"))
        if list(ray.pair.q) != [Fraction(x) for x in item["q"]]:
            raise ValueError("stored q does not match K p")
        out.append(ray)
    return out
