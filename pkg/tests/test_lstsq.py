import numpy as np
import pytest

from oracles import random_rank
from sparseginv.drs import DrsConfig, solve_ahref_ginv, solve_symmetric_ginv
from sparseginv.linalg import mp_residuals, numeric_rank, pseudoinverse, svd_full
from sparseginv.lstsq import (
    LsqInstance,
    build_ahat,
    check_solvability,
    compare_strategies,
    solve_via_h,
    solve_via_hhat,
)


def test_build_ahat_identity():
    assert np.array_equal(build_ahat(np.eye(3)), np.eye(3))
    assert np.array_equal(build_ahat(np.eye(3), np.eye(3), 1.0), 2.0 * np.eye(3))


def test_build_ahat_column_gram():
    A = np.array([[1.0], [1.0]])
    assert np.array_equal(build_ahat(A), np.array([[2.0]]))


def test_build_ahat_is_psd_and_symmetric():
    rng = np.random.default_rng(40)
    A = rng.normal(size=(6, 4))
    L = rng.normal(size=(3, 4))
    M = build_ahat(A, L, 0.7)
    assert np.array_equal(M, M.T)
    assert np.min(np.linalg.eigvalsh(M)) >= -1e-10 * np.linalg.norm(M)


def test_build_ahat_validation():
    with pytest.raises(ValueError):
        build_ahat(np.eye(2), None, -1.0)
    with pytest.raises(ValueError):
        build_ahat(np.eye(2), None, 1.0)
    with pytest.raises(ValueError):
        build_ahat(np.eye(2), np.eye(3), 1.0)


def test_instance_validation():
    with pytest.raises(ValueError):
        LsqInstance(A=np.eye(2), b=np.ones(3))
    with pytest.raises(ValueError):
        LsqInstance(A=np.eye(2), b=np.ones(2), ridge_lambda=-0.5)
    with pytest.raises(ValueError):
        LsqInstance(A=np.eye(2), b=np.ones(2), ridge_lambda=0.5)  # L missing


def test_via_hhat_identity():
    inst = LsqInstance(A=np.eye(3), b=np.array([1.0, -2.0, 0.5]))
    sol = solve_via_hhat(inst, np.eye(3))
    assert np.allclose(sol.theta, inst.b)
    assert sol.normal_residual <= 1e-12


def test_via_hhat_column_case():
    # normal-equation oracle: 2 theta = A^T b = 4  ->  theta = 2
    inst = LsqInstance(A=np.array([[1.0], [1.0]]), b=np.array([1.0, 3.0]))
    sol = solve_via_hhat(inst, np.array([[0.5]]))
    assert np.allclose(sol.theta, [2.0])


def test_via_hhat_ridge():
    # (I + I) theta = b oracle
    b = np.array([2.0, -4.0])
    inst = LsqInstance(A=np.eye(2), b=b, L=np.eye(2), ridge_lambda=1.0)
    sol = solve_via_hhat(inst, 0.5 * np.eye(2))
    assert np.allclose(sol.theta, b / 2.0)
    assert sol.normal_residual <= 1e-6 * (1.0 + np.max(np.abs(b)))


def test_via_hhat_rejects_bad_inverse():
    inst = LsqInstance(A=np.eye(2), b=np.ones(2))
    with pytest.raises(ValueError):
        solve_via_hhat(inst, 2.0 * np.eye(2))


def test_via_h_identity():
    inst = LsqInstance(A=np.eye(3), b=np.array([1.0, 2.0, 3.0]))
    sol = solve_via_h(inst, np.eye(3))
    assert np.allclose(sol.theta, inst.b)


def test_via_h_column_case():
    inst = LsqInstance(A=np.array([[1.0], [1.0]]), b=np.array([1.0, 3.0]))
    sol = solve_via_h(inst, np.array([[0.5, 0.5]]))
    assert np.allclose(sol.theta, [2.0])


def test_via_h_rank_deficient_case():
    A = np.array([[1.0, 1.0], [1.0, 1.0]])
    H = pseudoinverse(svd_full(A))
    inst = LsqInstance(A=A, b=np.array([2.0, 0.0]))
    sol = solve_via_h(inst, H)
    assert np.allclose(sol.theta, [0.5, 0.5])
    # A^T A theta = A^T b
    assert np.allclose(A.T @ A @ sol.theta, A.T @ inst.b)


def test_via_h_rejects_ridge():
    inst = LsqInstance(A=np.eye(2), b=np.ones(2), L=np.eye(2), ridge_lambda=1.0)
    with pytest.raises(ValueError, match="via_h"):
        solve_via_h(inst, np.eye(2))


def test_via_h_rejects_non_ah_symmetric():
    # H = [[0.5,0],[0.5,0]] satisfies the first property for ones(2) but not
    # the third
    A = np.array([[1.0, 1.0], [1.0, 1.0]])
    H = np.array([[0.5, 0.0], [0.5, 0.0]])
    inst = LsqInstance(A=A, b=np.ones(2))
    with pytest.raises(ValueError):
        solve_via_h(inst, H)


def test_check_solvability_random():
    rng = np.random.default_rng(41)
    for _ in range(10):
        m, n = int(rng.integers(1, 11)), int(rng.integers(1, 11))
        A = rng.normal(size=(m, n))
        L = rng.normal(size=(int(rng.integers(1, 6)), n))
        lam = float(rng.uniform(0.0, 2.0))
        b = rng.normal(size=m)
        cert = check_solvability(A, L, lam, b)
        assert cert.solvable
        assert cert.residual <= 1e-8


def test_check_solvability_zero_matrix():
    cert = check_solvability(np.zeros((3, 2)), None, 0.0, np.array([1.0, 2.0, 3.0]))
    assert cert.solvable
    assert np.allclose(cert.theta, np.zeros(2))
    assert cert.residual == 0.0


def test_check_solvability_rank_deficient():
    cert = check_solvability(np.array([[1.0, 1.0], [1.0, 1.0]]), None, 0.0,
                             np.array([1.0, 0.0]))
    assert cert.solvable
    assert cert.residual <= 1e-8


def test_universal_solver_property():
    # both closed forms reach the same least-squares objective
    rng = np.random.default_rng(42)
    cfg = DrsConfig()
    for _ in range(5):
        m = int(rng.integers(10, 40))
        n = int(rng.integers(4, 12))
        r = int(rng.integers(1, n))
        A = random_rank(rng, m, n, r)
        H = solve_ahref_ginv(A, cfg).H
        Hhat = solve_symmetric_ginv(build_ahat(A), cfg).H
        for _ in range(10):
            b = rng.normal(size=m)
            inst = LsqInstance(A=A, b=b)
            t1 = solve_via_h(inst, H)
            t2 = solve_via_hhat(inst, Hhat)
            r1 = np.linalg.norm(A @ t1.theta - b)
            r2 = np.linalg.norm(A @ t2.theta - b)
            assert abs(r1 - r2) <= 1e-6 * max(r1, 1.0)
            scale = 1e-6 * (1.0 + np.max(np.abs(A.T @ b)))
            assert t1.normal_residual <= scale
            assert t2.normal_residual <= scale


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(43)
    for _ in range(5):
        m, n = int(rng.integers(2, 11)), int(rng.integers(2, 11))
        A = rng.normal(size=(m, n))
        L = rng.normal(size=(n, n))
        lam = float(rng.uniform(0.1, 2.0))
        b = rng.normal(size=m)
        inst = LsqInstance(A=A, b=b, L=L, ridge_lambda=lam)
        Hhat = pseudoinverse(svd_full(build_ahat(A, L, lam)))
        theta = solve_via_hhat(inst, Hhat).theta

        def objective(t):
            return (np.sum((A @ t - b) ** 2) + lam * np.sum((L @ t) ** 2))

        grad = 2.0 * build_ahat(A, L, lam) @ theta - 2.0 * A.T @ b
        assert np.linalg.norm(grad) <= 1e-6 * max(1.0, np.linalg.norm(A.T @ b))
        # central differences along random directions at a generic point
        point = rng.normal(size=n)
        grad_p = 2.0 * build_ahat(A, L, lam) @ point - 2.0 * A.T @ b
        eps = 1e-6
        for _ in range(3):
            d = rng.normal(size=n)
            d /= np.linalg.norm(d)
            fd = (objective(point + eps * d) - objective(point - eps * d)) / (2 * eps)
            assert abs(fd - grad_p @ d) <= 1e-4 * max(1.0, abs(grad_p @ d))


def test_compare_strategies_identity():
    rng = np.random.default_rng(44)
    b_samples = [rng.normal(size=3) for _ in range(4)]
    report = compare_strategies(np.eye(3), b_samples=b_samples)
    assert report.mult_count_via_h == 3
    assert report.mult_count_via_hhat == 6  # n for Hhat plus n for A^T
    assert report.max_objective_gap <= 1e-12
    for s in report.samples:
        assert s.residual_norm_via_h <= 1e-10


def test_compare_strategies_rank_deficient_diag():
    rng = np.random.default_rng(45)
    b_samples = [rng.normal(size=2) for _ in range(5)]
    report = compare_strategies(np.diag([2.0, 0.0]), b_samples=b_samples)
    assert report.r == 1
    assert report.max_objective_gap <= 1e-6


def test_compare_strategies_report_contents():
    rng = np.random.default_rng(46)
    A = random_rank(rng, 20, 8, 6)
    b_samples = [rng.normal(size=20) for _ in range(3)]
    report = compare_strategies(A, b_samples=b_samples)
    assert report.norm0_h == report.mult_count_via_h
    assert report.mult_count_via_hhat == report.norm0_hhat + report.norm0_at
    assert len(report.samples) == 3
    d = report.to_dict()
    assert d["m"] == 20 and d["n"] == 8 and d["r"] == 6
    assert len(d["samples"]) == 3
    assert d["max_objective_gap"] <= 1e-6


def test_compare_strategies_synthetic_regime():
    # desk-scale run of the 1000 x 100, rank-75, density-0.1 configuration;
    # equality of the two objectives is the oracle
    from sparseginv.generate import GenSpec, gen_rect_lowrank

    A = gen_rect_lowrank(GenSpec(m=1000, n=100, r=75, density=0.1, seed=1))
    rng = np.random.default_rng(48)
    b_samples = [rng.normal(size=1000) for _ in range(3)]
    report = compare_strategies(A, b_samples=b_samples)
    assert report.converged_h and report.converged_hhat
    assert report.max_objective_gap <= 1e-6
    assert report.norm0_h > 0 and report.norm0_hhat > 0 and report.norm0_at > 0
    assert report.norm1_h > 0 and report.norm1_hhat > 0


def test_solver_output_satisfies_first_three_properties():
    rng = np.random.default_rng(47)
    A = random_rank(rng, 12, 7, 4)
    result = solve_ahref_ginv(A)
    res = mp_residuals(A, result.H)
    assert res.p1_rel <= 1e-6 and res.p2_rel <= 1e-6 and res.p3_rel <= 1e-6
    assert numeric_rank(result.H) == numeric_rank(A)
