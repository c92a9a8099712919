import numpy as np
import pytest

from conftest import random_poly
from seqclt.coboundary import CoboundaryResult, result_to_obj, solve, verify
from seqclt.analysis import variance_covariance
from seqclt.sequences import Constant
from seqclt.trigpoly import cosine, koopman, l2_inner, linear_combine, make_trigpoly


def test_solve_f1_base2_gives_cosine(f1):
    res = solve(f1, 2)
    assert res.solvable
    assert res.solution == cosine(1)


def test_solve_f1_base3_gives_certificate(f1):
    res = solve(f1, 3)
    assert not res.solvable
    assert res.root == 1
    assert res.residual == pytest.approx(-0.5 + 0j)


def test_solve_zero_is_trivially_solvable():
    res = solve(make_trigpoly([]), 5)
    assert res.solvable and res.solution.is_zero


def test_solve_rejects_bad_base(f1):
    with pytest.raises(ValueError):
        solve(f1, 1)


def test_verify_accepts_both_branches(f1):
    assert verify(f1, 2, solve(f1, 2))
    assert verify(f1, 3, solve(f1, 3))


def test_verify_rejects_wrong_solution(f1):
    wrong = CoboundaryResult("solution", cosine(3), None, None)
    assert not verify(f1, 2, wrong)


def test_verify_rejects_wrong_certificate(f1):
    assert not verify(f1, 2, CoboundaryResult("obstruction", None, 1, -0.5 + 0j))


def test_soundness_on_random_inputs():
    rng = np.random.default_rng(41)
    for _ in range(120):
        f = random_poly(rng, max_degree=64, density=0.4)
        b = int(rng.integers(2, 8))
        assert verify(f, b, solve(f, b))


def test_round_trip_recovers_u_exactly():
    # dyadic-grid coefficients make every float operation exact, so the
    # chain elimination must return the generating u bit for bit
    rng = np.random.default_rng(42)
    for _ in range(200):
        u = random_poly(rng, max_degree=32, density=0.5, quantize=20)
        b = int(rng.integers(2, 8))
        f = linear_combine([(1.0, koopman(b, u)), (-1.0, u)])
        res = solve(f, b)
        assert res.solvable
        assert res.solution == u


def test_round_trip_general_floats_verifies():
    rng = np.random.default_rng(43)
    for _ in range(100):
        u = random_poly(rng, max_degree=48, density=0.5)
        b = int(rng.integers(2, 8))
        f = linear_combine([(1.0, koopman(b, u)), (-1.0, u)])
        res = solve(f, b)
        assert res.solvable
        assert verify(f, b, res)


def test_solution_branch_bounds_variance(f1):
    # coboundary for the constant sequence: Var stays below 4 ||u||_2^2
    res = solve(f1, 2)
    cap = 4.0 * l2_inner(res.solution, res.solution)
    for n in (1, 10, 100, 1000):
        assert variance_covariance(f1, Constant(2), n) <= cap + 1e-12


def test_obstruction_branch_means_growing_variance(f1):
    assert not solve(f1, 3).solvable
    vals = [variance_covariance(f1, Constant(3), n) for n in (10, 100, 1000, 10000)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert vals[-1] >= 1000.0


def test_result_serialization_shapes(f1):
    sol = result_to_obj(solve(f1, 2))
    assert sol["status"] == "solution"
    assert sol["u"] == [{"freq": 1, "re": 0.5, "im": -0.0}]
    assert sol["root"] is None and sol["residual"] is None
    obs = result_to_obj(solve(f1, 3))
    assert obs["status"] == "obstruction"
    assert obs["u"] is None
    assert obs["root"] == 1
    assert obs["residual"] == {"re": -0.5, "im": 0.0}
