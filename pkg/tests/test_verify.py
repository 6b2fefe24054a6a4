"""Spectral estimators and the executable property checks."""

import numpy as np
import pytest
import scipy.linalg as la
import scipy.sparse as sp

from vlapmg import mesh, derham, verify


def _spd(n, cond, seed):
    rng = np.random.default_rng(seed)
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return Q @ np.diag(np.geomspace(1.0, cond, n)) @ Q.T


class TestEigExtremes:
    def test_dense_plain(self):
        A = _spd(60, 50.0, seed=0)
        est = verify.eig_extremes(sp.csr_matrix(A))
        lam = la.eigvalsh(A)
        assert est.method == 'dense'
        assert np.isclose(est.lam_min, lam[0], rtol=1e-10)
        assert np.isclose(est.lam_max, lam[-1], rtol=1e-10)
        assert np.isclose(est.kappa, lam[-1] / lam[0], rtol=1e-10)

    def test_dense_generalized(self):
        A, M = _spd(40, 30.0, seed=1), _spd(40, 5.0, seed=2)
        est = verify.eig_extremes(A, M=M)
        lam = la.eigh(A, M, eigvals_only=True)
        assert np.isclose(est.lam_min, lam[0], rtol=1e-9)
        assert np.isclose(est.lam_max, lam[-1], rtol=1e-9)

    def test_dense_preconditioned(self):
        A = _spd(30, 100.0, seed=3)
        P = np.linalg.inv(_spd(30, 100.0, seed=3))  # exact inverse
        est = verify.eig_extremes(A, precond=P)
        assert est.kappa == pytest.approx(1.0, rel=1e-8)

    def test_lanczos_vs_dense(self):
        # force the iterative path and compare against the dense answer
        A = sp.csr_matrix(_spd(200, 40.0, seed=4))
        est_l = verify.eig_extremes(A, dense_threshold=10, budget=60, seed=1)
        est_d = verify.eig_extremes(A)
        assert est_l.method == 'lanczos'
        assert abs(est_l.lam_max - est_d.lam_max) <= 0.05 * est_d.lam_max
        assert abs(est_l.lam_min - est_d.lam_min) <= 0.05 * est_d.lam_min

    def test_lanczos_pencil_at_h8(self, square_l3):
        # mass-metric pencil, small enough that dense is the oracle
        A = derham.schur_lumped(square_l3)
        Me = square_l3.Me_int()
        d = verify.eig_extremes(A, M=Me)
        l = verify.eig_extremes(A, M=Me, dense_threshold=10, seed=2)
        assert d.method == 'dense' and l.method == 'lanczos'
        assert abs(l.lam_max - d.lam_max) <= 0.05 * d.lam_max
        assert abs(l.lam_min - d.lam_min) <= 0.05 * d.lam_min

    def test_deterministic_under_seed(self):
        A = sp.csr_matrix(_spd(150, 20.0, seed=5))
        a = verify.eig_extremes(A, dense_threshold=10, seed=7)
        b = verify.eig_extremes(A, dense_threshold=10, seed=7)
        assert a.lam_min == b.lam_min and a.lam_max == b.lam_max

    def test_rejects_m_and_precond_together(self):
        A = _spd(10, 5.0, seed=6)
        with pytest.raises(ValueError):
            verify.eig_extremes(A, M=np.eye(10), precond=lambda v: v)

    def test_rejects_indefinite_metric(self):
        A = _spd(12, 5.0, seed=7)
        M = np.diag(np.concatenate((np.ones(6), -np.ones(6))))
        with pytest.raises(ValueError):
            verify.eig_extremes(A, M=M)

    def test_rejects_indefinite_pair_lanczos(self):
        A = np.diag(np.concatenate((np.ones(30), -np.ones(30))))
        with pytest.raises(ValueError):
            verify.eig_extremes(A, precond=lambda v: -v, dense_threshold=5)

    def test_callable_needs_size(self):
        with pytest.raises(ValueError):
            verify.eig_extremes(lambda v: v)


class TestHodge:
    def test_pure_gradient(self, square_l3):
        lv = square_l3
        rng = np.random.default_rng(0)
        p = rng.standard_normal(lv.interior_vertices.size)
        u = lv.G_int() @ p
        parts = verify.hodge_decompose(lv, u)
        assert np.linalg.norm(parts.complement) <= 1e-10 * np.linalg.norm(u)
        assert np.allclose(parts.grad_part, u, atol=1e-10)
        assert np.allclose(parts.potential, p, atol=1e-10)

    def test_random_field(self, square_l3):
        lv = square_l3
        u = np.random.default_rng(1).standard_normal(lv.interior_edges.size)
        parts = verify.hodge_decompose(lv, u)
        Me = lv.Me_int()
        assert np.allclose(parts.grad_part + parts.complement, u, atol=1e-12)
        assert parts.defect <= 1e-10
        # complement is weakly divergence-free
        w = lv.G_int().T @ (Me @ parts.complement)
        assert np.linalg.norm(w) <= 1e-10 * np.linalg.norm(u)

    def test_decomposing_complement_again(self, square_l3):
        lv = square_l3
        u = np.random.default_rng(2).standard_normal(lv.interior_edges.size)
        comp = verify.hodge_decompose(lv, u).complement
        again = verify.hodge_decompose(lv, comp)
        assert np.linalg.norm(again.grad_part) <= 1e-10 * np.linalg.norm(comp)


@pytest.mark.parametrize('domain', mesh.DOMAINS)
def test_structural_checks_pass(domain, any4):
    _, levels = any4[domain]
    lv = levels[2]
    rows = (verify.check_exactness(lv, domain, 3)
            + verify.check_commutator(lv, domain, 3)
            + verify.check_hodge(lv, domain, 3)
            + verify.check_lumped_equiv(lv, domain, 3)
            + verify.check_tri_identity(lv, domain, 3)
            + verify.check_augmented(lv, domain, 3))
    assert rows and all(r.passed for r in rows)


@pytest.mark.parametrize('domain', mesh.DOMAINS)
def test_prolongation_check(domain, any4):
    hier, _ = any4[domain]
    rows = verify.check_prolongation(hier.meshes[1], hier.meshes[2], domain, 3)
    assert rows and all(r.passed for r in rows)


def test_stability_checks_pass(square4):
    _, levels = square4
    rows = (verify.check_poincare(levels, 'square')
            + verify.check_inverse_inequality(levels, 'square')
            + verify.check_bab(levels[2], 'square', 3)
            + verify.check_infsup(levels[1:4], 'square'))
    assert rows and all(r.passed for r in rows)


def test_multigrid_checks_pass(square4):
    _, levels = square4
    rows = verify.check_multigrid(levels, 'square')
    assert rows and all(r.passed for r in rows)
    names = {r.check for r in rows}
    assert {'mg_symmetry', 'mg_positivity', 'mg_kappa',
            'mg_kappa_ladder', 'smoothing_CR'} <= names


def test_run_suite_all_domains_deterministic(crack4):
    rows1 = verify.run_suite(['complex', 'commutator'], domain='crack',
                             max_level=3)
    rows2 = verify.run_suite(['complex', 'commutator'], domain='crack',
                             max_level=3)
    assert len(rows1) == len(rows2) > 0
    for a, b in zip(rows1, rows2):
        assert (a.check, a.level, a.value, a.passed) \
            == (b.check, b.level, b.value, b.passed)
    assert all(r.passed for r in rows1)


def test_run_suite_rejects_unknown():
    with pytest.raises(ValueError):
        verify.run_suite(['spectra'], domain='square', max_level=2)
    with pytest.raises(ValueError):
        verify.run_suite(['complex'], domain='hexagon', max_level=2)


def test_rows_to_csv_format():
    rows = [verify.CheckRow('exactness', 'square', 1, 0.0, '==0', True)]
    text = verify.rows_to_csv(rows)
    lines = text.strip().split('\n')
    assert lines[0] == 'check,domain,level,value,threshold,pass'
    assert lines[1] == 'exactness,square,1,0.0,==0,True'


def test_suite_list_is_stable():
    assert set(verify.SUITES) == {'complex', 'commutator', 'stability',
                                  'multigrid', 'identity', 'all'}
