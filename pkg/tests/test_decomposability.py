import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pauli_cone.cone_geometry import make_ray
from pauli_cone.decomposability import (
    LAMBDA_WITNESS,
    THETA_WITNESS,
    box_diagonal_certificate,
    box_diagonal_generators,
    family_value,
    in_box_diagonal_cone,
    is_decomposable,
    is_decomposable_n1_closed_form,
    is_decomposable_n2_closed_form,
    positivity_probe,
    region_lambda,
    region_theta,
    spectrum_matrix,
    tensor_square_decomposable,
    tensor_square_positive,
    verify_certificate,
    verify_ppt_squared,
)
from pauli_cone.pauli_maps import (
    MultiplierTensor,
    d_tilde_power,
    depolarizing,
    is_ppt,
    lambda_map,
    realignment_sum,
    spectrum_to_mult,
    tensor,
    theta_map,
)
from pauli_cone.symmetry import CROSS_P, flatten

F = Fraction
rat = st.fractions(min_value=-2, max_value=2, max_denominator=6)


def cross_at(sigma1, sigma2):
    """The cross ray whose P-matrix carries the family-3 pattern at (sigma1, sigma2)."""
    p = [0] * 16
    for r, c in ((0, 0), (1, 1), (2, 2), (3, 0), (3, 1), (3, 2)):
        p[4 * sigma1[r] + sigma2[c]] = 1
    return make_ray(p)


def test_transpose_is_decomposable(rays1):
    mu = MultiplierTensor(1, (1, 1, 1, -1))
    v = is_decomposable(mu, rays1)
    assert v.decomposable and verify_certificate(mu, v.s1, v.s2)


def test_cross_witness_is_ppt(rays2):
    """mu = (2/3) D^T P_cross D is PPT (hence decomposable) yet fails the realignment bound."""
    mu = MultiplierTensor(2, [F(2, 3) * x for x in spectrum_to_mult(flatten(CROSS_P)).coeffs])
    assert mu.coeffs == tuple(F(x, 3) for x in (3, 1, 1, -1, -1, 1, -1, 1, -1, -1, 1, 1, 1, 1, 1, 1))
    assert is_ppt(mu)
    v = is_decomposable(mu, rays2)
    assert v.decomposable and verify_certificate(mu, v.s1, v.s2)
    assert realignment_sum(mu) == 6


def test_theta_point(rays2):
    """At (a, t) = (1/2, 9/20): <s, p> = a(1 - 3t) = -7/40 on the (id, (0 3)) cross."""
    mu = tensor(depolarizing(F(9, 20)), theta_map(F(1, 2)))
    v = is_decomposable(mu, rays2)
    assert not v.decomposable and v.violation < 0
    s = [x for row in spectrum_matrix(mu) for x in row]
    ray = cross_at(*THETA_WITNESS)
    assert sum(a * b for a, b in zip(s, ray.pair.p)) == F(-7, 40)
    assert family_value(spectrum_matrix(mu), 3, *THETA_WITNESS) == F(-7, 40)


def test_lambda_point(rays2):
    """At (b, t) = (2/3, 3/4): <s, p> = (3 - 2b - t - 2bt)/2 = -1/24."""
    mu = tensor(depolarizing(F(3, 4)), lambda_map(F(2, 3)))
    assert not is_decomposable(mu, rays2).decomposable
    assert family_value(spectrum_matrix(mu), 3, *LAMBDA_WITNESS) == F(-1, 24)


def test_region_residuals():
    pt = region_theta(F(1, 2), F(9, 20))
    assert pt.positive and not pt.decomposable and pt.residual == F(-7, 20)
    pt = region_lambda(F(2, 3), F(3, 4))
    assert pt.positive and not pt.decomposable and pt.residual == 2 * (3 - F(37, 12))


@given(st.fractions(0, 1, max_denominator=12), st.fractions(0, 1, max_denominator=12))
@settings(max_examples=60, deadline=None)
def test_region_residual_closed_forms(a, t):
    assert region_theta(a, t).residual == 2 * a * (1 - 3 * t)
    assert region_lambda(a, t).residual == 2 * (3 - 2 * a - t - 2 * t * a)


def test_region_validation():
    with pytest.raises(ValueError):
        region_theta(F(3, 2), 0)
    with pytest.raises(ValueError):
        region_lambda(0, -1)
    assert region_lambda(0, 1).positive


@given(st.lists(rat, min_size=4, max_size=4))
@settings(max_examples=100, deadline=None)
def test_n1_closed_form_matches_rays(coeffs):
    from pauli_cone.cone_geometry import enumerate_rays

    mu = MultiplierTensor(1, coeffs)
    v = is_decomposable(mu, enumerate_rays(1))
    assert v.decomposable == is_decomposable_n1_closed_form(mu)


def test_n2_closed_form_matches_rays(rays2):
    rng = random.Random(12)
    for _ in range(60):
        s = [F(rng.randint(-2, 8), rng.randint(1, 3)) for _ in range(16)]
        mu = spectrum_to_mult(s)
        v = is_decomposable(mu, rays2)
        assert v.decomposable == is_decomposable_n2_closed_form(mu)
        if v.decomposable:
            assert verify_certificate(mu, v.s1, v.s2)


@given(st.lists(st.fractions(0, 3, max_denominator=5), min_size=16, max_size=16),
       st.lists(st.fractions(0, 3, max_denominator=5), min_size=16, max_size=16))
@settings(max_examples=25, deadline=None)
def test_cp_plus_cocp_is_decomposable(s1, s2):
    """Sums of a completely positive and a completely copositive map pass the ray test."""
    from pauli_cone.cone_geometry import enumerate_rays

    a = spectrum_to_mult(s1).coeffs
    b = d_tilde_power(2).transpose().apply(s2)
    mu = MultiplierTensor(2, [x + y for x, y in zip(a, b)])
    assert is_decomposable(mu, enumerate_rays(2)).decomposable
    assert is_decomposable_n2_closed_form(mu)


def test_incomplete_ray_list_detected(rays2):
    """Dropping rays lets a non-decomposable map through the sweep; the LP then objects."""
    mu = tensor(depolarizing(F(9, 20)), theta_map(F(1, 2)))
    s = [x for row in spectrum_matrix(mu) for x in row]
    kept = [r for r in rays2 if sum(a * b for a, b in zip(s, r.pair.p)) >= 0]
    with pytest.raises(ArithmeticError):
        is_decomposable(mu, kept)


def test_tensor_square_examples():
    assert tensor_square_positive(1, 1, 1) and tensor_square_decomposable(1, 1, 1)
    assert tensor_square_positive(0, 0, 1)
    assert not tensor_square_positive(1, 1, 0)
    with pytest.raises(ValueError):
        tensor_square_decomposable(1, 1, 0)


def test_box_diagonal_generators_match_rays(rays2):
    p_sides = {r.pair.p for r in rays2 if r.orbit_label in ("Box", "Diagonal")}
    assert {tuple(F(x) for x in g) for g in box_diagonal_generators()} == p_sides


def test_box_diagonal_membership():
    assert not in_box_diagonal_cone(flatten(CROSS_P))
    cert = box_diagonal_certificate([[2, 1, 0, 0], [1, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert cert is not None and all(c >= 0 for c in cert)


def test_ppt_squared_reduced(rays2):
    report = verify_ppt_squared(rays2, reduced=True)
    assert report.ok and report.pairs == 192


def test_positivity_probe():
    assert not positivity_probe(tensor(depolarizing(F(1, 2)), theta_map(1)))
    assert positivity_probe(tensor(depolarizing(F(1, 3)), theta_map(1)))
    assert positivity_probe(MultiplierTensor(2, [1] * 16))
    with pytest.raises(ValueError):
        positivity_probe(depolarizing(F(1, 2)))


@pytest.mark.parametrize("a,t", [(F(1, 2), F(9, 20)), (F(1, 4), F(1, 2)), (F(1), F(1, 4))])
def test_probe_agrees_with_theta_region(a, t):
    assert positivity_probe(region_theta(a, t).mu) == region_theta(a, t).positive
