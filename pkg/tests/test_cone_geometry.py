import json
import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pauli_cone.cone_geometry import (
    ZeroPattern,
    check_rank_bound,
    enumerate_rays,
    in_cone,
    is_extremal,
    leq_z,
    make_ray,
    pair_from_p,
    read_rays,
    solution_dimension,
    tensor_rays,
    write_rays,
    zero_pattern,
)
from pauli_cone.exact_arith import lp_feasible
from pauli_cone.pauli_maps import SpectrumPair, k_power
from pauli_cone.symmetry import CROSS_P, CROSS_Q, DIAGONAL_P, flatten

from conftest import random_member


def test_one_qubit_rays(rays1):
    """Pairs of basis vectors, with q supported on the complementary pair."""
    expected = set()
    for i, j in combinations(range(4), 2):
        p = tuple(int(k in (i, j)) for k in range(4))
        q = tuple(1 - x for x in p)
        expected.add((p, q))
    assert {(r.pair.p, r.pair.q) for r in rays1} == expected


def test_two_qubit_census(rays2):
    assert len(rays2) == 252
    for r in rays2:
        assert in_cone(r.pair)
        assert all(x.denominator == 1 for x in r.pair.p + r.pair.q)
        nz_p = sum(1 for x in r.pair.p if x)
        nz_q = sum(1 for x in r.pair.q if x)
        assert nz_p == nz_q and nz_p in (4, 6)
        assert check_rank_bound(r.pattern)


def test_rays_sorted(rays2):
    keys = [(r.pair.p, r.pair.q) for r in rays2]
    assert keys == sorted(keys) and len(set(keys)) == 252


@pytest.mark.parametrize("n", [1, 2])
def test_every_ray_extremal(n, rays1, rays2):
    for r in (rays1 if n == 1 else rays2):
        assert is_extremal(r.pair)
        assert solution_dimension(r.pattern) == 1


def test_insertion_order_independent():
    base = enumerate_rays(2)
    rng = random.Random(4)
    order = list(range(16))
    rng.shuffle(order)
    for o in (list(reversed(range(16))), order):
        assert enumerate_rays(2, o) == base
    assert enumerate_rays(1, [3, 1, 0, 2]) == enumerate_rays(1)


def test_rays_generate_random_cone_points(rays2):
    """Independent completeness check: cone points found by rejection sampling are conic combinations of the rays."""
    rng = random.Random(21)
    gens = [r.pair.p for r in rays2]
    found = 0
    while found < 25:
        p = [Fraction(rng.randint(0, 6)) for _ in range(16)]
        if not all(x >= 0 for x in k_power(2).apply(p)) or not any(p):
            continue
        found += 1
        rows = [[g[k] for g in gens] for k in range(16)]
        assert lp_feasible(rows, p) is not None


def test_non_extremal_members(rays2):
    """Sums of two distinct rays are not extremal."""
    rng = random.Random(8)
    for _ in range(40):
        a, b = rng.sample(rays2, 2)
        pair = pair_from_p([x + y for x, y in zip(a.pair.p, b.pair.p)])
        assert not is_extremal(pair)


def test_is_extremal_examples_and_errors():
    assert not is_extremal(pair_from_p([1, 1, 1, 1]))
    assert is_extremal(pair_from_p([1, 1, 0, 0]))
    with pytest.raises(ValueError):
        is_extremal(pair_from_p([0, 0, 0, 0]))
    with pytest.raises(ValueError):
        is_extremal(pair_from_p([1, 0, 0, 0]))


def test_cross_zero_counts():
    """The cross pair has ten zeros on each side."""
    pat = zero_pattern(SpectrumPair(2, flatten(CROSS_P), flatten(CROSS_Q)))
    assert len(pat.p_zeros) == 10 and len(pat.q_zeros) == 10 and pat.size() == 20


def test_diagonal_rank_bound():
    diag = flatten(DIAGONAL_P)
    pat = zero_pattern(SpectrumPair(2, diag, diag))
    assert pat.size() == 24 and check_rank_bound(pat)
    assert not check_rank_bound(ZeroPattern.from_sets(2, range(7), range(7)))


def test_tensor_rays_example(rays1):
    r13 = make_ray([1, 0, 1, 0])
    r24 = make_ray([0, 1, 0, 1])
    t = tensor_rays(r13, r24)
    assert t.pair.p == tuple(Fraction(a * b) for a in (1, 0, 1, 0) for b in (0, 1, 0, 1))
    assert t.pair.q == tuple(Fraction(a * b) for a in (0, 1, 0, 1) for b in (1, 0, 1, 0))
    assert is_extremal(t.pair)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_leq_z_partial_order(seed):
    rays = enumerate_rays(2)
    rng = random.Random(seed)
    a, b, c = (random_member(rays, rng) for _ in range(3))
    assert leq_z(a, a)
    if leq_z(a, b) and leq_z(b, c):
        assert leq_z(a, c)
    if leq_z(a, b) and leq_z(b, a):
        assert zero_pattern(a) == zero_pattern(b)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_extremal_iff_zero_maximal(seed):
    """A member is extremal iff its pattern matches a ray's pattern exactly."""
    rays = enumerate_rays(2)
    patterns = {r.pattern for r in rays}
    pair = random_member(rays, random.Random(seed), terms=2)
    assert is_extremal(pair) == (zero_pattern(pair) in patterns)


def test_json_round_trip(tmp_path, rays2):
    path = tmp_path / "rays.json"
    write_rays(rays2, path)
    data = json.loads(path.read_text())
    assert data[0].keys() >= {"p", "q", "orbit"}
    back = read_rays(path)
    assert [(r.pair.p, r.pair.q, r.orbit_label) for r in back] == [
        (r.pair.p, r.pair.q, r.orbit_label) for r in rays2
    ]


def test_unsupported_n():
    with pytest.raises(ValueError):
        enumerate_rays(4)
