"""Decomposability of Pauli maps, with exact certificates.

A map is decomposable when its multipliers split as ``mu = D^T s1 + D~^T s2``
with ``s1, s2 >= 0`` (tensor powers implied), i.e. a completely positive
plus a completely copositive part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import lcm
from typing import Optional, Sequence, Union

from .cone_geometry import RayGenerator
from .exact_arith import as_rat, kron_vec, lp_feasible
from .pauli_maps import (
    D,
    MultiplierTensor,
    apply_power,
    spectrum_to_mult,
    d_power,
    d_tilde_power,
    depolarizing,
    is_cocp,
    is_cp,
    lambda_map,
    mult_to_spectrum,
    tensor,
    theta_map,
)

S4 = tuple(permutations(range(4)))


@dataclass(frozen=True)
class DecompVerdict:
    decomposable: bool
    s1: Optional[tuple] = None
    s2: Optional[tuple] = None
    violating_ray: Optional[RayGenerator] = None
    violation: Optional[Fraction] = None


def _int_scale(vec: Sequence[Fraction]) -> list:
    m = 1
    for x in vec:
        m = lcm(m, Fraction(x).denominator)
    return [int(x * m) for x in vec]


@lru_cache(maxsize=None)
def _split_matrix(n: int) -> tuple:
    dt = d_power(n).transpose()
    dtt = d_tilde_power(n).transpose()
    return tuple(tuple(dt.row(i) + dtt.row(i)) for i in range(4 ** n))


def decomposition_certificate(mu: MultiplierTensor) -> Optional[tuple]:
    """Exact ``(s1, s2)`` with ``mu = D^T s1 + D~^T s2``, or None if none exists."""
    x = lp_feasible(_split_matrix(mu.n), mu.coeffs)
    if x is None:
        return None
    d = 4 ** mu.n
    return tuple(x[:d]), tuple(x[d:])


def verify_certificate(mu: MultiplierTensor, s1: Sequence, s2: Sequence) -> bool:
    if any(x < 0 for x in s1) or any(x < 0 for x in s2):
        return False
    a = d_power(mu.n).transpose().apply(s1)
    b = d_tilde_power(mu.n).transpose().apply(s2)
    return all(x + y == c for x, y, c in zip(a, b, mu.coeffs))


def is_decomposable(mu: MultiplierTensor, rays: Sequence[RayGenerator]) -> DecompVerdict:
    """Test ``<s, p> >= 0`` over the extremal rays; certify positives by an exact LP."""
    if rays and rays[0].pair.n != mu.n:
        raise ValueError("rays belong to a different number of qubits")
    s = mult_to_spectrum(mu).p
    scaled = _int_scale(s)
    for ray in rays:
        if sum(a * int(b) for a, b in zip(scaled, ray.pair.p)) < 0:
            value = sum((a * b for a, b in zip(s, ray.pair.p)), Fraction(0))
            return DecompVerdict(False, violating_ray=ray, violation=value)
    cert = decomposition_certificate(mu)
    if cert is None:
        raise ArithmeticError("ray test passed but no decomposition exists: ray list is incomplete")
    return DecompVerdict(True, cert[0], cert[1])


def is_decomposable_n1_closed_form(mu: MultiplierTensor) -> bool:
    """One qubit: decomposable iff the two smallest spectrum entries sum to >= 0."""
    if mu.n != 1:
        raise ValueError("closed form applies to one qubit")
    s = sorted(mult_to_spectrum(mu).p, reverse=True)
    return s[2] >= 0 and s[2] + s[3] >= 0


def _family_cells(family: int, a: Sequence[int], b: Sequence[int]) -> tuple:
    if family == 1:
        return ((a[0], b[0]), (a[0], b[1]), (a[1], b[0]), (a[1], b[1]))
    if family == 2:
        return tuple((a[k], b[k]) for k in range(4))
    if family == 3:
        return ((a[0], b[0]), (a[1], b[1]), (a[2], b[2]), (a[3], b[0]), (a[3], b[1]), (a[3], b[2]))
    if family == 4:
        return ((a[0], b[0]), (a[1], b[1]), (a[2], b[2]), (a[0], b[3]), (a[1], b[3]), (a[2], b[3]))
    raise ValueError("family must be 1, 2, 3 or 4")


@lru_cache(maxsize=None)
def _n2_cell_sets() -> tuple:
    sets = set()
    for family in (1, 2, 3, 4):
        for a in S4:
            for b in S4:
                sets.add(tuple(sorted(r * 4 + c for r, c in _family_cells(family, a, b))))
    return tuple(sorted(sets))


def family_value(S: Sequence[Sequence], family: int, sigma1: Sequence[int], sigma2: Sequence[int]) -> Fraction:
    """Left-hand side of one two-qubit inequality (0-based permutations)."""
    return sum((Fraction(S[r][c]) for r, c in _family_cells(family, sigma1, sigma2)), Fraction(0))


def spectrum_matrix(mu: MultiplierTensor) -> list:
    """``S = D M D^T`` with ``M[i1][i2] = mu[i1 i2]`` (equals the spectrum reshaped)."""
    if mu.n != 2:
        raise ValueError("two-qubit maps only")
    p = mult_to_spectrum(mu).p
    return [list(p[4 * i:4 * i + 4]) for i in range(4)]


def _n2_check(flat: Sequence) -> bool:
    s = _int_scale(flat)
    return all(sum(s[i] for i in cells) >= 0 for cells in _n2_cell_sets())


def is_decomposable_n2_closed_form(mu: MultiplierTensor) -> bool:
    """Two qubits: four families of linear inequalities over all pairs of permutations."""
    S = spectrum_matrix(mu)
    return _n2_check([x for row in S for x in row])


def tensor_square_positive(x, y, z) -> bool:
    x, y, z = (as_rat(v) for v in (x, y, z))
    return 1 + x * x >= y * y + z * z and 1 + y * y >= x * x + z * z and 1 + z * z >= x * x + y * y


def _mu_xyz(x, y, z) -> MultiplierTensor:
    return MultiplierTensor(1, (1, as_rat(x), as_rat(y), as_rat(z)))


def tensor_square_decomposable(x, y, z) -> bool:
    """Decomposability of the tensor square of a positive one-qubit map."""
    if not tensor_square_positive(x, y, z):
        raise ValueError("tensor square is not positive")
    s = mult_to_spectrum(_mu_xyz(x, y, z)).p
    for a in S4:
        for b in S4:
            value = (
                (s[a[0]] + s[a[3]]) * s[b[0]]
                + (s[a[1]] + s[a[3]]) * s[b[1]]
                + (s[a[2]] + s[a[3]]) * s[b[2]]
            )
            if value < 0:
                return False
    return True


def tensor_square_mu(x, y, z) -> MultiplierTensor:
    m = _mu_xyz(x, y, z)
    return tensor(m, m)


@lru_cache(maxsize=None)
def box_diagonal_generators() -> tuple:
    """The 36 box matrices ``|{i,j}><{k,l}|`` and 24 permutation matrices, flattened."""
    pairs = list(combinations(range(4), 2))
    gens = []
    for rows in pairs:
        for cols in pairs:
            gens.append(tuple(int(r in rows and c in cols) for r in range(4) for c in range(4)))
    for perm in S4:
        gens.append(tuple(int(perm[r] == c) for r in range(4) for c in range(4)))
    return tuple(gens)


def box_diagonal_certificate(S: Sequence) -> Optional[list]:
    """Nonnegative weights expressing S (4x4 or flat) over the box and diagonal matrices."""
    flat = [as_rat(x) for x in (S if len(S) == 16 else [x for row in S for x in row])]
    gens = box_diagonal_generators()
    rows = [[g[k] for g in gens] for k in range(16)]
    return lp_feasible(rows, flat)


def in_box_diagonal_cone(S: Sequence) -> bool:
    return box_diagonal_certificate(S) is not None


def cross_rays(rays: Sequence[RayGenerator]) -> list:
    from .symmetry import label_rays

    if any(r.orbit_label is None for r in rays):
        rays = label_rays(rays)
    return [r for r in rays if r.orbit_label == "Cross"]


@dataclass(frozen=True)
class PptSquaredReport:
    pairs: int
    distinct: int
    failures: tuple = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures


# 2D has entries +-1 and is symmetric, so (2D)^{(x)2} inverts D^{(x)2} up to the factor 4.
_TWICE_D = ((1, 1, 1, 1), (1, 1, -1, -1), (1, -1, 1, -1), (1, -1, -1, 1))


def _scaled_mult(p: Sequence[int]) -> tuple:
    """``4 mu`` for an integer two-qubit spectrum ``p``."""
    return apply_power(_TWICE_D, p, 2)


def _composed_spectrum(m1: Sequence[int], m2: Sequence[int]) -> tuple:
    """``64 S`` for the composition of maps with scaled multipliers ``4 mu1``, ``4 mu2``."""
    return apply_power(_TWICE_D, [a * b for a, b in zip(m1, m2)], 2)


def verify_ppt_squared(rays: Sequence[RayGenerator], reduced: bool = False) -> PptSquaredReport:
    """Check that composing two cross maps lands in the box-diagonal cone.

    The full sweep takes all ordered pairs of crosses.  The reduced sweep fixes
    the first factor to one cross: the group acts on multipliers by signed
    permutations, so ``g.mu1 o g.mu2`` is a permutation of ``mu1 o mu2`` and
    the box-diagonal cone is invariant.
    """
    crosses = cross_rays(rays)
    if len(crosses) != 192:
        raise ValueError("expected the 192 cross rays")
    ps = [_scaled_mult([int(x) for x in r.pair.p]) for r in crosses]
    firsts = ps[:1] if reduced else ps
    seen: dict = {}
    failures = []
    pairs = 0
    for i, p1 in enumerate(firsts):
        for j, p2 in enumerate(ps):
            pairs += 1
            S = _composed_spectrum(p1, p2)
            if S not in seen:
                seen[S] = in_box_diagonal_cone([Fraction(x, 64) for x in S])
            if not seen[S]:
                failures.append((i, j))
    return PptSquaredReport(pairs, len(seen), tuple(failures))


@dataclass(frozen=True)
class RegionPoint:
    params: tuple
    positive: Union[bool, str]
    decomposable: bool
    cp: bool
    cocp: bool
    ppt: bool
    residual: Optional[Fraction] = None
    mu: Optional[MultiplierTensor] = None

    def csv_row(self) -> str:
        flags = (self.positive, self.decomposable, self.cp, self.cocp, self.ppt)
        cells = [str(x) for x in self.params] + [
            f if isinstance(f, str) else str(int(f)) for f in flags
        ]
        return ",".join(cells)


def _check_unit(name: str, value) -> Fraction:
    v = as_rat(value)
    if not 0 <= v <= 1:
        raise ValueError(f"{name} must lie in [0, 1]")
    return v


def _outer(u: Sequence, v: Sequence) -> list:
    return [[a * b for b in v] for a in u]


THETA_WITNESS = ((0, 1, 2, 3), (3, 1, 2, 0))
LAMBDA_WITNESS = ((0, 1, 2, 3), (2, 1, 3, 0))


def _region_point(mu: MultiplierTensor, params: tuple, positive: bool, residual) -> RegionPoint:
    decomposable = is_decomposable_n2_closed_form(mu)
    cp, cocp = is_cp(mu), is_cocp(mu)
    return RegionPoint(params, positive, decomposable, cp, cocp, cp and cocp, residual, mu)


def region_theta(a, t) -> RegionPoint:
    """Depolarizing(t) tensor theta(a).

    ``residual`` is the family-3 value at ``(id, (0 3))`` computed with the
    factor spectra scaled to integer-coefficient polynomials, which gives
    ``2a(1-3t)``; it is twice ``<s, p>`` for the matching cross ray.
    """
    a, t = _check_unit("a", a), _check_unit("t", t)
    mu = tensor(depolarizing(t), theta_map(a))
    positive = t * (2 * a + 1) <= 1
    s_dep = [2 * x for x in mult_to_spectrum(depolarizing(t)).p]
    s_theta = mult_to_spectrum(theta_map(a)).p
    residual = family_value(_outer(s_dep, s_theta), 3, *THETA_WITNESS)
    return _region_point(mu, (a, t), positive, residual)


def region_lambda(b, t) -> RegionPoint:
    """Depolarizing(t) tensor lambda(b); ``residual`` equals ``2(3-2b-t-2bt)`` (four times ``<s, p>``)."""
    b, t = _check_unit("b", b), _check_unit("t", t)
    mu = tensor(depolarizing(t), lambda_map(b))
    positive = b == 0 or 2 * b * t <= 1
    s_dep = [2 * x for x in mult_to_spectrum(depolarizing(t)).p]
    s_lam = [2 * x for x in mult_to_spectrum(lambda_map(b)).p]
    residual = family_value(_outer(s_dep, s_lam), 3, *LAMBDA_WITNESS)
    return _region_point(mu, (b, t), positive, residual)


def region_starry(x, y, z) -> RegionPoint:
    """Tensor square of the one-qubit map with multipliers (1, x, y, z)."""
    x, y, z = (as_rat(v) for v in (x, y, z))
    mu = tensor_square_mu(x, y, z)
    positive = tensor_square_positive(x, y, z)
    return _region_point(mu, (x, y, z), positive, None)


def _pauli_basis():
    import numpy as np

    paulis = [
        np.eye(2, dtype=complex),
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
        np.array([[0, -1j], [1j, 0]]),
    ]
    return paulis, np.array([np.kron(a, b) for a in paulis for b in paulis])


def positivity_probe(mu: MultiplierTensor, grid: int = 64, tol: float = 1e-9) -> bool:
    """Numerical necessary test for positivity of a two-qubit Pauli map.

    Feeds ``(X (x) 1)|Omega>`` for positive ``X = (1 + r.sigma)/2`` (Bloch
    points on a polar mesh, radii from 0 to 1) and checks that every output
    has smallest eigenvalue at least ``-tol``.  False means a violation was found.
    """
    import numpy as np

    if mu.n != 2:
        raise ValueError("the probe handles two-qubit maps")
    paulis, strings = _pauli_basis()
    coeffs = np.array([float(c) for c in mu.coeffs])
    omega = np.zeros((4, 4), dtype=complex)
    for i in (0, 3):
        for j in (0, 3):
            omega[i, j] = 1
    theta = np.linspace(0, np.pi, grid)
    phi = np.linspace(0, 2 * np.pi, grid, endpoint=False)
    radii = np.linspace(0, 1, max(2, grid // 8))
    th, ph, rr = np.meshgrid(theta, phi, radii, indexing="ij")
    bx = (rr * np.sin(th) * np.cos(ph)).ravel()
    bz = (rr * np.cos(th)).ravel()
    by = (rr * np.sin(th) * np.sin(ph)).ravel()
    # Pauli order (I, X, Z, Y)
    xs = 0.5 * (paulis[0][None] + bx[:, None, None] * paulis[1] + bz[:, None, None] * paulis[2]
                + by[:, None, None] * paulis[3])
    big = np.einsum("kab,cd->kacbd", xs, np.eye(2)).reshape(-1, 4, 4)
    inputs = big @ omega @ big.conj().transpose(0, 2, 1)
    traces = np.einsum("sij,kji->ks", strings, inputs)
    outputs = np.einsum("ks,s,sij->kij", traces, coeffs / 4, strings)
    eig = np.linalg.eigvalsh(outputs)
    return bool(eig.min() >= -tol)
