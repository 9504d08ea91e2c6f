"""The function phi(z) = (1 - exp(-z)) / z for scalars and matrices.

phi is entire with phi(0) = 1. For a matrix argument it is defined by its
power series sum_k (-A)^k / (k+1)!, which commutes with A and satisfies
A phi(A) = I - exp(-A).
"""

from dataclasses import dataclass
import math

import numpy as np

SERIES_SWITCH = 0.1
MAX_TERMS = 25
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class PhiOperator:
    matrix: np.ndarray
    scaling_steps: int
    series_terms: int


def phi_scalar(z):
    """Evaluate (1 - e^{-z}) / z, elementwise for arrays.

    Uses the Taylor series below ``|z| = 0.1`` and ``-expm1(-z) / z`` above.
    Real input gives real output.
    """
    z = np.asarray(z)
    zc = z.astype(complex) if np.iscomplexobj(z) else z.astype(float)
    small = np.abs(zc) < SERIES_SWITCH
    # 18 terms: 0.1**17 / 18! < 1e-32
    series = np.zeros_like(zc)
    term = np.ones_like(zc)
    for k in range(18):
        series = series + term / (k + 1)
        term = term * (-zc) / (k + 1)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        direct = -np.expm1(-zc) / np.where(small, 1.0, zc)
    out = np.where(small, series, direct)
    return out[()] if out.ndim == 0 else out


def log_abs_phi(z):
    """log |phi(z)|, finite even when phi(z) overflows (Re z << 0)."""
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape)
    flat, res = z.ravel(), out.ravel()
    for idx, w in enumerate(flat):
        if abs(w) < SERIES_SWITCH or w.real > -30.0:
            with np.errstate(divide="ignore"):
                res[idx] = np.log(abs(phi_scalar(w)))
        else:
            # 1 - e^{-w} = -e^{-w} (1 - e^{w}),  |e^{w}| < e^{-30}
            res[idx] = -w.real + np.log(abs(-np.expm1(w))) - np.log(abs(w))
    return out[()] if out.ndim == 0 else out


def expm1_ratio(u):
    """(e^u - 1) / u for real u, equal to 1 at u = 0."""
    u = float(u)
    if u == 0.0:
        return 1.0
    if u > 709.0:
        return math.inf
    return math.expm1(u) / u


def log_expm1_ratio(u):
    """log((e^u - 1) / u) without overflow for large u."""
    u = float(u)
    if u == 0.0:
        return 0.0
    if u > 30.0:
        return u + math.log1p(-math.exp(-u)) - math.log(u)
    return math.log(math.expm1(u) / u)


def _check_square(A):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    return A


def _scaling(A):
    nrm = np.linalg.norm(A, 2) if A.size else 0.0
    if nrm <= 1.0:
        return 0
    return int(math.ceil(math.log2(nrm)))


def phi_matrix(A):
    """phi(A) by scaling, Taylor expansion and doubling.

    With ``B = A / 2^s`` and ``||B||_2 <= 1``, phi(B) and exp(-B) are summed
    from the same Taylor powers, then ``s`` doublings apply

        phi(2B) = phi(B) (I + exp(-B)) / 2,   exp(-2B) = exp(-B)^2,

    which follow from 1 - e^{-2B} = (1 - e^{-B})(1 + e^{-B}).
    """
    A = _check_square(A)
    n = A.shape[0]
    s = _scaling(A)
    B = A / 2.0 ** s
    eye = np.eye(n)
    phi = np.zeros((n, n))
    E = np.zeros((n, n))
    P = eye.copy()  # (-B)^k
    fact = 1.0  # k!
    terms = 0
    for k in range(MAX_TERMS):
        phi += P / (fact * (k + 1))
        E += P / fact
        terms = k + 1
        P = -P @ B
        fact *= k + 1
        if not P.any() or np.abs(P).max() / fact < _EPS * 1e-3:
            break
    for _ in range(s):
        phi = 0.5 * phi @ (eye + E)
        E = E @ E
    return PhiOperator(phi, s, terms)


def expm_taylor(A):
    """exp(A) by scaling and squaring with a truncated Taylor series."""
    A = _check_square(A)
    s = _scaling(A)
    B = A / 2.0 ** s
    n = A.shape[0]
    E = np.eye(n)
    P = np.eye(n)
    for k in range(1, MAX_TERMS + 1):
        P = P @ B / k
        E = E + P
        if not P.any() or np.abs(P).max() < _EPS * 1e-3:
            break
    for _ in range(s):
        E = E @ E
    return E


def phi_quadrature_oracle(A, rtol=1e-11, max_nodes=1024):
    """Independent reference value phi(A) = int_0^1 exp(-tA) dt.

    Gauss-Legendre on [0, 1]; the node count doubles until successive
    results differ by less than ``rtol * (1 + ||result||)``.
    """
    A = _check_square(A)
    prev = None
    m = 8
    while True:
        nodes, weights = np.polynomial.legendre.leggauss(m)
        t = 0.5 * (nodes + 1.0)
        w = 0.5 * weights
        cur = sum(wi * expm_taylor(-ti * A) for ti, wi in zip(t, w))
        if prev is not None:
            scale = 1.0 + np.linalg.norm(cur, 2)
            if np.linalg.norm(cur - prev, 2) < rtol * scale or m >= max_nodes:
                return cur
        prev = cur
        m *= 2
