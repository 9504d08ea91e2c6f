import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dexpbounds import ad, phi_matrix, phi_scalar
from dexpbounds.spectral import (diagonalizability, determinant_residual, eigenvalues,
                                 match_multisets, minimax_check, singular_values,
                                 sort_by_modulus, spectral_summary, weyl_residual)

from conftest import alg

H3_PHI = np.array([[1.0, 0, 0], [0, 1.0, 0], [0, -0.5, 1.0]])
# roots of s^4 - (9/4) s^2 + 1, via mpmath
H3_SV = [1.280776406404415137455352463993519256287, 1.0, 0.7807764064044151374553524639935192562868]
SL2_SV = [3.19452804946532511361521373028750390659, 1.0, 0.4323323583816936540530002525137577982962]


def test_eigenvalues_identity():
    np.testing.assert_array_equal(eigenvalues(np.eye(3)), [1, 1, 1])


def test_eigenvalues_sl2_H():
    w = eigenvalues(ad(alg("sl2"), [1, 0, 0]).matrix)
    np.testing.assert_allclose(w, [2, -2, 0], atol=1e-15)


def test_eigenvalues_nilpotent():
    w = eigenvalues(ad(alg("heis3"), [1, 0, 0]).matrix)
    assert np.all(np.abs(w) == 0)


def test_tie_breaking_is_deterministic():
    w = sort_by_modulus([-1, 1j, 1, -1j, 2])
    np.testing.assert_array_equal(w, [2, 1, 1j, -1j, -1])


def test_singular_values_goldens():
    np.testing.assert_array_equal(singular_values(np.zeros((3, 3))), [0, 0, 0])
    np.testing.assert_allclose(singular_values(H3_PHI), H3_SV, atol=1e-6)
    np.testing.assert_allclose(singular_values(H3_PHI), H3_SV, rtol=1e-14)
    D = np.diag([phi_scalar(2.0), phi_scalar(-2.0), 1.0])
    np.testing.assert_allclose(singular_values(D), SL2_SV, rtol=1e-14)


def test_h3_phi_det_is_one():
    assert np.prod(singular_values(H3_PHI)) == pytest.approx(1.0, rel=1e-14)


def test_diagonalizability_normal(rng):
    S = rng.normal(size=(5, 5))
    d = diagonalizability(S + S.T)
    assert d.diagonalizable and d.kappa <= 1 + 1e-8
    np.testing.assert_allclose(np.linalg.norm(d.P, axis=0), 1.0)


def test_diagonalizability_defective():
    d = diagonalizability(ad(alg("heis3"), [1, 0, 0]).matrix)
    assert not d.diagonalizable
    assert d.kappa == np.inf and d.P is None


def test_diagonalizability_sl2_H():
    d = diagonalizability(ad(alg("sl2"), [1, 0, 0]).matrix)
    assert d.diagonalizable and d.kappa == pytest.approx(1.0, abs=1e-15)


def test_diagonalizability_jordan_block_scaled():
    J = np.array([[1.0, 1.0], [0.0, 1.0]])
    assert not diagonalizability(J).diagonalizable
    # nearly defective but well below the kappa ceiling
    J2 = np.array([[1.0, 1.0], [0.0, 1.001]])
    d = diagonalizability(J2)
    assert d.diagonalizable and 100 < d.kappa < 1e8


def test_spectral_summary_fields():
    s = spectral_summary(np.diag([3.0, -1.0]))
    np.testing.assert_array_equal(s.eigenvalues, [3, -1])
    np.testing.assert_array_equal(s.singular_values, [3, 1])
    assert s.diagonalizable and s.eigvec_condition == 1.0


def _random(rng, n=None):
    n = n or int(rng.integers(1, 9))
    return rng.normal(size=(n, n)) * rng.uniform(0.1, 5)


def test_weyl_and_extremes_random(rng):
    for _ in range(300):
        A = _random(rng)
        lam, s = eigenvalues(A), singular_values(A)
        assert weyl_residual(lam, s) <= 1e-9
        assert abs(lam[0]) <= s[0] + 1e-10
        assert s[-1] <= abs(lam[-1]) + 1e-10
        assert determinant_residual(A) <= 1e-9


def test_weyl_residual_detects_violation():
    # fake spectrum with |lam_1| > s_1
    assert weyl_residual([3.0, 0.1], [2.0, 1.0]) > 0.4


def test_normal_singular_values_are_moduli(rng):
    for _ in range(50):
        Q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
        D = np.diag(rng.normal(size=4))
        A = Q @ D @ Q.T
        np.testing.assert_allclose(np.sort(np.abs(eigenvalues(A)))[::-1], singular_values(A),
                                   atol=1e-10)
    # skew-symmetric: normal with imaginary spectrum
    A = ad(alg("so3"), [0.3, -1.2, 0.5]).matrix
    np.testing.assert_allclose(np.abs(eigenvalues(A)), singular_values(A), atol=1e-10)


def test_spectral_mapping(rng):
    for _ in range(200):
        A = _random(rng)
        A *= rng.uniform(0, 4) / np.linalg.norm(A, 2)
        want = phi_scalar(eigenvalues(A))
        got = eigenvalues(phi_matrix(A).matrix)
        assert match_multisets(want, got, 1e-8) is not None


def test_match_multisets():
    assert match_multisets([1, 2], [2.0, 1.0 + 1e-12], 1e-8) == pytest.approx(1e-12)
    assert match_multisets([1, 1], [1, 2], 1e-8) is None
    assert match_multisets([1], [1, 2], 1e-8) is None


def test_minimax_identity():
    m = minimax_check(np.eye(3), 200)
    assert m.ok
    assert m.sampled_max == pytest.approx(1, abs=1e-15) and m.sampled_min == pytest.approx(1)


def test_minimax_diag():
    m = minimax_check(np.diag([3.0, 1.0]), 500)
    assert m.ok
    assert m.sampled_max == pytest.approx(3, abs=1e-8)
    assert m.sampled_min == pytest.approx(1, abs=1e-8)


def test_minimax_h3_phi():
    m = minimax_check(H3_PHI, 500)
    assert m.ok
    assert m.sampled_max == pytest.approx(H3_SV[0], abs=1e-8)
    assert m.sampled_min == pytest.approx(H3_SV[2], abs=1e-8)


def test_minimax_budget():
    with pytest.raises(ValueError):
        minimax_check(np.eye(2), 10)


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 7), st.integers(0, 2**31))
def test_minimax_property(n, s):
    r = np.random.default_rng(s)
    A = r.normal(size=(n, n))
    assert minimax_check(A, 200, r).ok


def test_intermediate_singular_values_bracket_by_svd(rng):
    # j-th singular value: max over j-dim subspaces of min |Ay|, attained on top-j right
    # singular vectors; any random j-dim subspace gives no more.
    for _ in range(30):
        A = _random(rng, 5)
        _, s, vt = np.linalg.svd(A)
        for j in range(1, 6):
            V = vt[:j].T
            assert np.linalg.svd(A @ V, compute_uv=False)[-1] == pytest.approx(s[j - 1], rel=1e-10)
            Q, _ = np.linalg.qr(rng.normal(size=(5, j)))
            assert np.linalg.svd(A @ Q, compute_uv=False)[-1] <= s[j - 1] * (1 + 1e-12)
