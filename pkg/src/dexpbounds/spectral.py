"""Eigenvalues, singular values and the inequalities relating them.

Eigenvalues are listed with non-increasing modulus, singular values in
non-increasing order, both with multiplicity.
"""

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

DEFAULT_KAPPA_MAX = 1e8


class SpectralError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SpectralSummary:
    eigenvalues: np.ndarray
    singular_values: np.ndarray
    eigvec_condition: float
    diagonalizable: bool


class Diagonalizability(NamedTuple):
    diagonalizable: bool
    P: Optional[np.ndarray]
    kappa: float


def _square(A):
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    return A


def sort_by_modulus(w):
    """Sort by modulus, then real part, then imaginary part, all descending.

    Keys are rounded to 12 decimals so that rounding noise does not decide ties.
    """
    w = np.asarray(w, dtype=complex)
    keys = (-np.round(w.imag, 12), -np.round(w.real, 12), -np.round(np.abs(w), 12))
    return w[np.lexsort(keys)]


def eigenvalues(A):
    A = _square(A)
    try:
        w = np.linalg.eigvals(A)
    except np.linalg.LinAlgError as e:
        raise SpectralError(
            f"eigenvalue solver failed on {A.shape} matrix "
            f"(norm {np.linalg.norm(A):.3e}, finite={np.isfinite(A).all()}): {e}") from e
    return sort_by_modulus(w)


def singular_values(A):
    A = _square(A)
    try:
        return np.linalg.svd(A, compute_uv=False)
    except np.linalg.LinAlgError as e:
        raise SpectralError(f"SVD failed on {A.shape} matrix: {e}") from e


def diagonalizability(A, tol=DEFAULT_KAPPA_MAX):
    """Certify diagonalizability through the eigenvector condition number.

    ``P`` has unit-norm eigenvector columns and ``kappa = s_1(P) / s_n(P)``.
    Matrices with ``kappa > tol`` (including numerically defective ones) are
    reported as not diagonalizable with ``kappa = inf``.
    """
    A = _square(A)
    w, V = np.linalg.eig(A)
    V = V / np.linalg.norm(V, axis=0)
    s = np.linalg.svd(V, compute_uv=False)
    kappa = s[0] / s[-1] if s[-1] > 0 else np.inf
    if not np.isfinite(kappa) or kappa > tol:
        return Diagonalizability(False, None, np.inf)
    return Diagonalizability(True, V, float(kappa))


def spectral_summary(A, tol=DEFAULT_KAPPA_MAX):
    d = diagonalizability(A, tol)
    return SpectralSummary(eigenvalues(A), singular_values(A), d.kappa, d.diagonalizable)


# --- inequalities ----------------------------------------------------------

def weyl_residual(eigs, svals, floor=None):
    """Largest ratio by which a Weyl product inequality is exceeded.

    Returns ``max_r  prod_{k<=r}|lam_k| / prod_{k<=r} s_k - 1`` (<= 0 when all
    hold). Values below ``floor`` are raised to ``floor`` on both sides, which
    preserves weak log-majorisation and absorbs rounding noise in the
    numerically-zero tail. Default floor: ``n * eps * s_1``.
    """
    lam = np.sort(np.abs(np.asarray(eigs)))[::-1]
    s = np.sort(np.asarray(svals, dtype=float))[::-1]
    if floor is None:
        floor = len(s) * np.finfo(float).eps * (s[0] if len(s) else 0.0)
    floor = max(floor, np.finfo(float).tiny)
    log_l = np.cumsum(np.log(np.maximum(lam, floor)))
    log_s = np.cumsum(np.log(np.maximum(s, floor)))
    return float(np.max(np.expm1(log_l - log_s)))


def determinant_residual(A):
    """Relative gaps between prod|lam|, prod s and |det A|."""
    lam = np.abs(eigenvalues(A))
    s = singular_values(A)
    det = abs(np.linalg.det(A))
    ref = max(det, np.finfo(float).tiny)
    return float(max(abs(np.prod(lam) - det), abs(np.prod(s) - det)) / ref)


def match_multisets(a, b, radius):
    """Greedy nearest-neighbour matching of two equal-size complex multisets.

    Returns the largest matched distance, or None if some element of ``a``
    has no unused partner within ``radius`` (a callable radius gets the
    element's value).
    """
    a = list(np.asarray(a, dtype=complex))
    b = list(np.asarray(b, dtype=complex))
    if len(a) != len(b):
        return None
    used = [False] * len(b)
    worst = 0.0
    for z in a:
        r = radius(z) if callable(radius) else radius
        best, best_d = None, np.inf
        for idx, u in enumerate(b):
            if not used[idx] and abs(z - u) < best_d:
                best, best_d = idx, abs(z - u)
        if best is None or best_d > r:
            return None
        used[best] = True
        worst = max(worst, best_d)
    return worst


@dataclass
class MinimaxReport:
    s_max: float
    s_min: float
    sampled_max: float
    sampled_min: float
    samples: int
    violations: list
    ok: bool


def _refine(A, v, sign, rng, steps=200):
    """Random local search on the sphere around ``v`` (sign=+1 max, -1 min)."""
    best = v / np.linalg.norm(v)
    val = np.linalg.norm(A @ best)
    radius = 1e-2
    for _ in range(steps):
        cand = best + radius * rng.normal(size=best.shape)
        cand /= np.linalg.norm(cand)
        cv = np.linalg.norm(A @ cand)
        if sign * (cv - val) > 0:
            best, val = cand, cv
        else:
            radius *= 0.9
    return best, val


def minimax_check(A, sample_budget=1000, rng=None, tol=1e-10, refine_tol=1e-8):
    """Sample ``|A y|`` over unit y against the extremes s_1 and s_n.

    Every sample must lie in ``[s_n - tol, s_1 + tol]``; refinement started
    at the extremal right singular vectors must land within ``refine_tol``
    (relative to ``1 + s_1``) of s_1 and s_n.
    """
    A = np.asarray(A, dtype=float)
    if sample_budget < 100:
        raise ValueError("minimax_check needs at least 100 samples")
    rng = np.random.default_rng(0) if rng is None else rng
    n = A.shape[0]
    _, s, vt = np.linalg.svd(A)
    Y = rng.normal(size=(sample_budget, n))
    Y /= np.linalg.norm(Y, axis=1, keepdims=True)
    vals = np.linalg.norm(Y @ A.T, axis=1)
    violations = []
    for y, v in zip(Y, vals):
        if v > s[0] + tol or v < s[-1] - tol:
            violations.append({"y": y.tolist(), "value": float(v)})
    _, top = _refine(A, vt[0], +1, rng)
    _, bottom = _refine(A, vt[-1], -1, rng)
    sampled_max = max(float(vals.max()), top)
    sampled_min = min(float(vals.min()), bottom)
    for v in (top, bottom):
        if v > s[0] + tol or v < s[-1] - tol:
            violations.append({"y": None, "value": float(v)})
    scale = 1.0 + s[0]
    close = abs(top - s[0]) <= refine_tol * scale and abs(bottom - s[-1]) <= refine_tol * scale
    return MinimaxReport(float(s[0]), float(s[-1]), sampled_max, sampled_min,
                         sample_budget + 2, violations, not violations and close)
