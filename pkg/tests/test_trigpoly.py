import math

import numpy as np
import pytest

from conftest import assert_canonical, random_poly
from seqclt.trigpoly import (
    c1_norm,
    cosine,
    derivative,
    evaluate,
    grid_values,
    koopman,
    l2_inner,
    linear_combine,
    make_trigpoly,
    project_measurable,
    transfer,
    trigpoly_from_obj,
    trigpoly_to_obj,
)


def test_make_trigpoly_cosine():
    g = make_trigpoly([(1, 0.5 + 0j)])
    assert g.coeffs == ((1, 0.5 + 0j),)
    assert g.degree == 1
    assert g == cosine(1)


def test_make_trigpoly_zero():
    g = make_trigpoly([])
    assert g.is_zero
    assert g.degree == 0


def test_make_trigpoly_rejects_zero_frequency():
    with pytest.raises(ValueError):
        make_trigpoly([(0, 1.0)])


def test_make_trigpoly_rejects_duplicates():
    with pytest.raises(ValueError):
        make_trigpoly([(3, 1.0), (3, 2.0)])


def test_make_trigpoly_drops_exact_zeros():
    g = make_trigpoly([(1, 0.5), (4, 0.0)])
    assert g.coeffs == ((1, 0.5 + 0j),)


def test_evaluate_cosine_quarter():
    assert evaluate(cosine(1), 0.25) == pytest.approx(0.0, abs=1e-15)
    assert evaluate(cosine(1), 0.5) == pytest.approx(-1.0, abs=1e-15)


def test_evaluate_difference_at_zero(f1):
    assert evaluate(f1, 0.0) == pytest.approx(0.0, abs=1e-15)


def test_koopman_doubles_frequency():
    assert koopman(2, cosine(1)) == cosine(2)


def test_koopman_multiple_terms():
    g = linear_combine([(1.0, cosine(1)), (1.0, cosine(2))])
    assert koopman(3, g) == linear_combine([(1.0, cosine(3)), (1.0, cosine(6))])


def test_koopman_zero():
    assert koopman(5, make_trigpoly([])).is_zero


def _transfer_oracle(a, g, x):
    # preimage average (1/a) sum_j g((x+j)/a), the defining quadrature form
    return math.fsum(evaluate(g, ((x + j) / a) % 1.0) for j in range(a)) / a


@pytest.mark.parametrize(
    "a,g_entries,expected_entries",
    [
        (2, [(1, 0.5)], []),
        (3, [(1, 0.5), (3, 0.5)], [(1, 0.5)]),
        (2, [(2, 0.5), (1, -0.5)], [(1, 0.5)]),
    ],
)
def test_transfer_examples_match_quadrature_oracle(a, g_entries, expected_entries):
    g = make_trigpoly(g_entries)
    out = transfer(a, g)
    assert out == make_trigpoly(expected_entries)
    for i in range(4 * g.degree + 1):
        x = i / (4 * g.degree + 1)
        assert evaluate(out, x) == pytest.approx(_transfer_oracle(a, g, x), abs=1e-10)


def test_transfer_quadrature_equivalence_random():
    rng = np.random.default_rng(101)
    for _ in range(25):
        g = random_poly(rng, max_degree=24)
        a = int(rng.integers(2, 8))
        out = transfer(a, g)
        pts = 4 * max(g.degree, 1) + 1
        for i in range(0, pts, 3):
            x = i / pts
            assert evaluate(out, x) == pytest.approx(_transfer_oracle(a, g, x), abs=1e-10)


def test_project_measurable_examples():
    g = linear_combine([(1.0, cosine(1)), (1.0, cosine(2))])
    assert project_measurable(2, g) == cosine(2)
    assert project_measurable(3, cosine(2)).is_zero
    assert project_measurable(2, cosine(2)) == cosine(2)


def test_l2_inner_examples(f1):
    assert l2_inner(cosine(1), cosine(1)) == pytest.approx(0.5)
    assert l2_inner(cosine(1), cosine(2)) == 0.0
    assert l2_inner(f1, f1) == pytest.approx(1.0)


def test_c1_norm_cosine_certified_window():
    exact = 1.0 + 2.0 * math.pi
    res = c1_norm(cosine(1))
    assert res.certified
    assert exact <= res.value <= exact * (1.0 + 1e-3)
    assert res.grid_estimate <= res.value


def test_c1_norm_zero():
    res = c1_norm(make_trigpoly([]))
    assert res.value == 0.0 and res.grid_estimate == 0.0


def test_c1_norm_against_dense_grid_oracle(f1):
    # oracle: plain sup over 10^6 equispaced points, no correction
    pts = 10**6
    oracle = float(np.max(np.abs(grid_values(f1, pts)))) + float(
        np.max(np.abs(grid_values(derivative(f1), pts)))
    )
    res = c1_norm(f1)
    assert oracle <= res.value <= oracle * 1.002


def test_linear_combine_cancellation():
    assert linear_combine([(1.0, cosine(1)), (-1.0, cosine(1))]).is_zero


def test_linear_combine_f1(f1):
    assert f1.coeffs == ((1, -0.5 + 0j), (2, 0.5 + 0j))


def test_linear_combine_zero_scaling():
    assert linear_combine([(2.0, make_trigpoly([]))]).is_zero


def test_adjointness_random():
    rng = np.random.default_rng(7)
    for _ in range(60):
        g = random_poly(rng)
        h = random_poly(rng)
        a = int(rng.integers(2, 8))
        lhs = l2_inner(koopman(a, g), h)
        rhs = l2_inner(g, transfer(a, h))
        scale = g.abs_coeff_sum() * h.abs_coeff_sum()
        assert abs(lhs - rhs) <= 1e-12 * max(scale, 1e-30)


def test_left_inverse_exact():
    rng = np.random.default_rng(8)
    for _ in range(40):
        g = random_poly(rng)
        a = int(rng.integers(2, 8))
        assert transfer(a, koopman(a, g)) == g


def test_koopman_is_isometry():
    rng = np.random.default_rng(9)
    for _ in range(40):
        g = random_poly(rng)
        a = int(rng.integers(2, 8))
        assert l2_inner(koopman(a, g), koopman(a, g)) == l2_inner(g, g)


def test_projection_idempotent_and_contracting():
    rng = np.random.default_rng(10)
    for _ in range(40):
        g = random_poly(rng)
        a = int(rng.integers(2, 8))
        p = project_measurable(a, g)
        assert project_measurable(a, p) == p
        assert l2_inner(p, p) <= l2_inner(g, g)


def test_operations_preserve_canonical_form():
    rng = np.random.default_rng(11)
    for _ in range(20):
        g = random_poly(rng)
        h = random_poly(rng)
        a = int(rng.integers(2, 8))
        for out in (
            koopman(a, g),
            transfer(a, g),
            project_measurable(a, g),
            linear_combine([(0.7, g), (-1.3, h)]),
            derivative(g),
        ):
            assert_canonical(out)


def test_evaluate_accuracy_contract():
    rng = np.random.default_rng(12)
    g = random_poly(rng, max_degree=40, density=0.9)
    # FFT values are an independent evaluation route
    pts = 1 << 12
    vals = grid_values(g, pts)
    budget = max(g.degree, 1) * 2.0**-50 * g.abs_coeff_sum()
    for i in range(0, pts, 97):
        assert abs(evaluate(g, i / pts) - vals[i]) <= max(budget, 1e-12)


def test_serialization_round_trip():
    rng = np.random.default_rng(13)
    for _ in range(10):
        g = random_poly(rng)
        assert trigpoly_from_obj(trigpoly_to_obj(g)) == g


def test_serialization_order_is_irrelevant():
    forward = trigpoly_from_obj(
        [{"freq": 2, "re": 0.5, "im": 0.0}, {"freq": 7, "re": -0.25, "im": 0.125}]
    )
    shuffled = trigpoly_from_obj(
        [{"freq": 7, "re": -0.25, "im": 0.125}, {"freq": 2, "re": 0.5, "im": 0.0}]
    )
    assert forward == shuffled


def test_serialization_rejects_duplicates():
    with pytest.raises(ValueError):
        trigpoly_from_obj(
            [{"freq": 1, "re": 0.5, "im": 0.0}, {"freq": 1, "re": 0.25, "im": 0.0}]
        )
