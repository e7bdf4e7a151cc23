"""The symmetry group of the cone: slot permutations, local index permutations and K.

An element ``(tau, sigmas, x)`` acts on spectra as ``V_tau (U_sigma1 x ... x U_sigmaN) K^x``
where ``U_sigma |i> = |sigma(i)>`` and ``V_tau`` moves tensor slot ``k`` to slot ``tau(k)``.
Permutations are 0-based tuples with ``perm[i]`` the image of ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from operator import itemgetter
from typing import Optional, Sequence

from .cone_geometry import RayGenerator, in_cone
from .exact_arith import primitive
from .pauli_maps import SpectrumPair, k_power

S4 = tuple(permutations(range(4)))

BOX_P = ((1, 1, 0, 0), (1, 1, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0))
BOX_Q = ((0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 1, 1), (0, 0, 1, 1))
DIAGONAL_P = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
CROSS_P = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 1, 0))
CROSS_Q = ((1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1), (0, 0, 0, 0))


def flatten(matrix: Sequence[Sequence[int]]) -> tuple:
    return tuple(x for row in matrix for x in row)


REPRESENTATIVES = {
    "Box": (flatten(BOX_P), flatten(BOX_Q)),
    "Diagonal": (flatten(DIAGONAL_P), flatten(DIAGONAL_P)),
    "Cross": (flatten(CROSS_P), flatten(CROSS_Q)),
}


@dataclass(frozen=True)
class GroupElement:
    tau: tuple
    sigmas: tuple
    x: int = 0

    def __post_init__(self):
        n = len(self.sigmas)
        if sorted(self.tau) != list(range(n)):
            raise ValueError("tau must permute the tensor slots")
        if any(sorted(s) != [0, 1, 2, 3] for s in self.sigmas):
            raise ValueError("each sigma must permute {0,1,2,3}")
        if self.x not in (0, 1):
            raise ValueError("x must be 0 or 1")

    @property
    def n(self) -> int:
        return len(self.sigmas)

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(tuple(range(n)), tuple(tuple(range(4)) for _ in range(n)), 0)


def group_order(n: int) -> int:
    return 2 * factorial(n) * 24 ** n


def elements(n: int):
    for tau in permutations(range(n)):
        for sigmas in product(S4, repeat=n):
            for x in (0, 1):
                yield GroupElement(tau, sigmas, x)


def index_map(g: GroupElement) -> tuple:
    """Flat index permutation ``pi`` of the permutation part: ``V U e_i = e_{pi(i)}``."""
    n = g.n
    inv_tau = [0] * n
    for k, t in enumerate(g.tau):
        inv_tau[t] = k
    out = []
    for flat in range(4 ** n):
        digits = [(flat // 4 ** (n - 1 - k)) % 4 for k in range(n)]
        moved = [g.sigmas[inv_tau[k]][digits[inv_tau[k]]] for k in range(n)]
        j = 0
        for dgt in moved:
            j = 4 * j + dgt
        out.append(j)
    return tuple(out)


def _permute(vec: Sequence, pi: Sequence[int]) -> tuple:
    out = [None] * len(vec)
    for i, j in enumerate(pi):
        out[j] = vec[i]
    return tuple(out)


def act_vector(g: GroupElement, vec: Sequence) -> tuple:
    if len(vec) != 4 ** g.n:
        raise ValueError("vector length does not match the group")
    if g.x:
        vec = k_power(g.n).apply(vec)
    return _permute(vec, index_map(g))


def act(g: GroupElement, pair: SpectrumPair) -> SpectrumPair:
    if pair.n != g.n:
        raise ValueError("group element and pair act on different numbers of qubits")
    return SpectrumPair(pair.n, act_vector(g, pair.p), act_vector(g, pair.q))


def act_ray(g: GroupElement, ray: RayGenerator) -> RayGenerator:
    from .cone_geometry import make_ray

    return make_ray(act(g, ray.pair).p, ray.orbit_label)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """The element acting as ``g`` after ``h``."""
    if g.n != h.n:
        raise ValueError("elements of different groups")
    n = g.n
    tau = tuple(g.tau[h.tau[m]] for m in range(n))
    sigmas = tuple(
        tuple(g.sigmas[h.tau[m]][h.sigmas[m][i]] for i in range(4)) for m in range(n)
    )
    return GroupElement(tau, sigmas, (g.x + h.x) % 2)


@lru_cache(maxsize=None)
def _gathers(n: int) -> tuple:
    maps = {
        index_map(GroupElement(tau, sigmas, 0))
        for tau in permutations(range(n))
        for sigmas in product(S4, repeat=n)
    }
    out = []
    for pi in sorted(maps):
        inv = [0] * len(pi)
        for i, j in enumerate(pi):
            inv[j] = i
        out.append(itemgetter(*inv))
    return tuple(out)


def _images(p: tuple, q: tuple, n: int):
    # K swaps p and q for cone members, so x = 1 needs no arithmetic.
    for gather in _gathers(n):
        gp, gq = gather(p), gather(q)
        yield gp + gq
        yield gq + gp


def canonical_form(pair: SpectrumPair) -> tuple:
    """Lexicographically least primitive ``p || q`` over the orbit of a cone member."""
    if not in_cone(pair):
        raise ValueError("canonical form is defined for cone members")
    prim = primitive(pair.p + pair.q)
    d = len(pair.p)
    return min(_images(prim[:d], prim[d:], pair.n))


@lru_cache(maxsize=None)
def _label_forms(n: int) -> dict:
    if n != 2:
        return {}
    from .cone_geometry import pair_from_p

    return {canonical_form(pair_from_p(p)): label for label, (p, _) in REPRESENTATIVES.items()}


@dataclass(frozen=True)
class OrbitReport:
    label: str
    size: int
    representative: SpectrumPair
    rays: tuple = ()

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "size": self.size,
            "representative": {
                "p": [int(x) for x in self.representative.p],
                "q": [int(x) for x in self.representative.q],
            },
        }


def orbit_label(pair: SpectrumPair, form: Optional[tuple] = None) -> str:
    if pair.n == 1:
        return "Box"
    if form is None:
        form = canonical_form(pair)
    return _label_forms(pair.n).get(form, "Other")


def orbit_decompose(rays: Sequence[RayGenerator]) -> list:
    """Group rays by orbit; orbits are ordered by size, then representative."""
    groups: dict = {}
    for ray in rays:
        groups.setdefault(canonical_form(ray.pair), []).append(ray)
    reports = []
    for form, members in groups.items():
        d = len(form) // 2
        rep = SpectrumPair(members[0].pair.n, form[:d], form[d:])
        label = orbit_label(rep, form)
        labelled = tuple(RayGenerator(r.pair, r.pattern, label) for r in members)
        reports.append(OrbitReport(label, len(members), rep, labelled))
    reports.sort(key=lambda r: (r.size, r.representative.p, r.representative.q))
    return reports


def label_rays(rays: Sequence[RayGenerator]) -> list:
    """Return the rays (same order) with their orbit labels filled in."""
    labels = {}
    for report in orbit_decompose(rays):
        for r in report.rays:
            labels[(r.pair.p, r.pair.q)] = report.label
    return [RayGenerator(r.pair, r.pattern, labels[(r.pair.p, r.pair.q)]) for r in rays]
