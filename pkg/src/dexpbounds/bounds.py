"""Exact extremes of |d exp_x(y)| over unit y, and the bounds that sandwich them.

Up to a left translation, d exp_x = phi(ad_x) with phi(z) = (1 - e^{-z}) / z,
so the minimum and maximum of |d exp_x(y)| over unit y are the smallest and
largest singular values of phi(ad_x). Every function here takes ``x`` in
orthonormal coordinates (see :meth:`LieAlgebra.to_ortho`).

Bounds implemented:

* diagonalizable ``ad_x``: ``C * lt_min <= |d exp_x(y)| <= D * lt_max`` with
  ``lt_min``/``lt_max`` the min/max of ``{1} u {|phi(lam_j |x|)|}`` over the
  nonzero eigenvalues of ``ad`` at ``x/|x|``, and ``C = 1/kappa(P)``,
  ``D = kappa(P)`` for the unit-column eigenvector matrix P;
* any ``x``: ``g^{1-n} prod_j |phi(lam_j |x|)| <= |d exp_x(y)| <= g`` with
  ``g = (e^{d0 |x|} - 1) / (d0 |x|)``, together with
  ``s_n <= lt_min`` and ``lt_max <= s_1``;
* nilpotent ``ad_x`` (``ad_x^p = 0``): ``1 / Q1^{n-1} <= |d exp_x(y)| <= Q1``
  with ``Q1 = sum_{k<p} (d0 |x|)^k / (k+1)!``.
"""

from dataclasses import dataclass, field, asdict
import math
from typing import NamedTuple, Optional

import numpy as np

from .algebra import DomainError, ad, frobenius_certificate
from .matfunc import expm1_ratio, log_abs_phi, log_expm1_ratio, phi_matrix, phi_scalar
from .spectral import DEFAULT_KAPPA_MAX, diagonalizability, eigenvalues, singular_values

NONZERO_EIG_TOL = 1e-9
NILPOTENT_TOL = 1e-10


class Thm1Bounds(NamedTuple):
    lower: float
    upper: float
    C: float
    D: float


class Thm2Bounds(NamedTuple):
    lower: float
    lower_log: float
    upper: float


class NilpotentBounds(NamedTuple):
    p_step: int
    upper: float
    lower: float
    lower_log: float


def _nonzero_x(alg, x):
    op = ad(alg, x)
    if op.norm_x == 0.0:
        raise DomainError("x must be nonzero (d exp_0 is the identity)")
    return op


def nilpotent_step(alg, A, tol=NILPOTENT_TOL):
    """Least k with A^k = 0 for A = ad_x, or None if A is not nilpotent.

    If the algebra has integer structure constants and is nilpotent of step
    p (exact rational test), A^p = 0 is certified and only the minimal k <= p
    is searched numerically. Otherwise ``||A^k|| <= tol ||A||^k`` for some
    k <= n is required.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    nrm = np.linalg.norm(A, 2)
    if nrm == 0.0:
        return 1
    step = alg.nilpotency_step()
    limit = step if step is not None else n
    P = A.copy()
    for k in range(1, limit + 1):
        if k == step or np.linalg.norm(P, 2) <= tol * nrm ** k:
            return k
        P = P @ A
    return None


def unit_eigenvalues(alg, x, nonzero_tol=NONZERO_EIG_TOL):
    """Nonzero eigenvalues of ad at x/|x| (modulus > nonzero_tol).

    For nilpotent ad_x the spectrum is exactly zero and an empty array is
    returned without consulting the (inaccurate) defective eigensolve.
    """
    op = _nonzero_x(alg, x)
    if nilpotent_step(alg, op.matrix) is not None:
        return np.zeros(0, dtype=complex)
    w = eigenvalues(op.unit)
    return w[np.abs(w) > nonzero_tol]


def exact_extremes(alg, x):
    """(min, max) of |d exp_x(y)| over unit y: (s_n, s_1) of phi(ad_x)."""
    s = singular_values(phi_matrix(ad(alg, x).matrix).matrix)
    return float(s[-1]), float(s[0])


def lambda_tilde_extremes(unit_eigs, t):
    if t <= 0:
        raise DomainError(f"t must be positive, got {t}")
    vals = np.abs(phi_scalar(np.asarray(unit_eigs, dtype=complex) * t))
    vals = np.append(vals, 1.0)
    return float(vals.min()), float(vals.max())


def thm1_bounds(alg, x, kappa_max=DEFAULT_KAPPA_MAX, nonzero_tol=NONZERO_EIG_TOL):
    """Diagonalizable-case bounds, or None when ad at x/|x| is not certified."""
    op = _nonzero_x(alg, x)
    d = diagonalizability(op.unit, kappa_max)
    if not d.diagonalizable:
        return None
    lt_min, lt_max = lambda_tilde_extremes(unit_eigenvalues(alg, x, nonzero_tol), op.norm_x)
    C, D = 1.0 / d.kappa, d.kappa
    return Thm1Bounds(C * lt_min, D * lt_max, C, D)


def thm2_bounds(alg, x, delta0_upper, nonzero_tol=NONZERO_EIG_TOL):
    op = _nonzero_x(alg, x)
    if delta0_upper == 0.0:
        return Thm2Bounds(1.0, 0.0, 1.0)
    n = alg.dim
    t = op.norm_x
    u = delta0_upper * t
    lam = unit_eigenvalues(alg, x, nonzero_tol)
    lower_log = (1 - n) * log_expm1_ratio(u) + float(np.sum(log_abs_phi(lam * t)))
    return Thm2Bounds(math.exp(lower_log), lower_log, expm1_ratio(u))


def nilpotent_bounds(alg, x, delta0_upper):
    op = _nonzero_x(alg, x)
    p = nilpotent_step(alg, op.matrix)
    if p is None:
        return None
    u = delta0_upper * op.norm_x
    q1 = sum(u ** k / math.factorial(k + 1) for k in range(p))
    lower_log = (1 - alg.dim) * math.log(q1)
    return NilpotentBounds(p, q1, math.exp(lower_log), lower_log)


@dataclass
class BoundReport:
    x_norm: float
    p_nonzero: int
    exact_min: float
    exact_max: float
    lambda_tilde_min: float
    lambda_tilde_max: float
    thm2_lower: float
    thm2_lower_log: float
    thm2_upper: float
    delta0_upper: float
    kappa: Optional[float] = None
    thm1_C: Optional[float] = None
    thm1_D: Optional[float] = None
    thm1_lower: Optional[float] = None
    thm1_upper: Optional[float] = None
    nilp_step: Optional[int] = None
    nilp_lower: Optional[float] = None
    nilp_lower_log: Optional[float] = None
    nilp_upper: Optional[float] = None
    notes: list = field(default_factory=list)

    def to_dict(self):
        return asdict(self)

    def violations(self, rtol=1e-9, sandwich_atol=1e-9):
        """Named residuals of every inequality that fails (empty if all hold).

        Lower/upper bounds use ``rtol * (1 + value)``; the eigenvalue
        sandwich uses the absolute ``sandwich_atol``. Lower bounds reported in
        log form are compared in log domain.
        """
        out = {}
        lo, hi = self.exact_min, self.exact_max
        tl, th = rtol * (1 + lo), rtol * (1 + hi)
        if lo > hi + th:
            out["order"] = lo - hi
        if self.thm1_lower is not None:
            if self.thm1_lower > lo + tl:
                out["thm1_lower"] = self.thm1_lower - lo
            if hi > self.thm1_upper + th:
                out["thm1_upper"] = hi - self.thm1_upper
        if lo > 0 and self.thm2_lower_log > math.log(lo) + rtol:
            out["thm2_lower"] = self.thm2_lower_log - math.log(lo)
        elif lo <= 0 and self.thm2_lower > tl:
            out["thm2_lower"] = self.thm2_lower
        if hi > self.thm2_upper * (1 + rtol):
            out["thm2_upper"] = hi / self.thm2_upper - 1
        if lo > self.lambda_tilde_min + sandwich_atol:
            out["eq5_min"] = lo - self.lambda_tilde_min
        if self.lambda_tilde_max > hi + sandwich_atol:
            out["eq5_max"] = self.lambda_tilde_max - hi
        if self.nilp_upper is not None:
            if lo > 0 and self.nilp_lower_log > math.log(lo) + rtol:
                out["nilp_lower"] = self.nilp_lower_log - math.log(lo)
            if hi > self.nilp_upper * (1 + rtol):
                out["nilp_upper"] = hi / self.nilp_upper - 1
        return out


def bound_report(alg, x, delta0_upper=None, kappa_max=DEFAULT_KAPPA_MAX,
                 nonzero_tol=NONZERO_EIG_TOL):
    """Exact extremes of |d exp_x| plus every applicable bound at ``x``.

    ``delta0_upper`` defaults to the Frobenius certificate, which is a valid
    overestimate of the bracket norm and keeps every bound sound.
    """
    op = _nonzero_x(alg, x)
    if delta0_upper is None:
        delta0_upper = frobenius_certificate(alg)
    lo, hi = exact_extremes(alg, x)
    lam = unit_eigenvalues(alg, x, nonzero_tol)
    lt_min, lt_max = lambda_tilde_extremes(lam, op.norm_x)
    t2 = thm2_bounds(alg, x, delta0_upper, nonzero_tol)
    rep = BoundReport(
        x_norm=op.norm_x, p_nonzero=int(len(lam)), exact_min=lo, exact_max=hi,
        lambda_tilde_min=lt_min, lambda_tilde_max=lt_max,
        thm2_lower=t2.lower, thm2_lower_log=t2.lower_log, thm2_upper=t2.upper,
        delta0_upper=float(delta0_upper))
    t1 = thm1_bounds(alg, x, kappa_max, nonzero_tol)
    if t1 is not None:
        rep.kappa = t1.D
        rep.thm1_C, rep.thm1_D = t1.C, t1.D
        rep.thm1_lower, rep.thm1_upper = t1.lower, t1.upper
    else:
        rep.notes.append("thm1 not applicable: ad_x not certified diagonalizable")
    nb = nilpotent_bounds(alg, x, delta0_upper)
    if nb is not None:
        rep.nilp_step = nb.p_step
        rep.nilp_lower, rep.nilp_lower_log, rep.nilp_upper = nb.lower, nb.lower_log, nb.upper
    return rep


@dataclass
class DecayReport:
    min_value: float
    witness_t: float
    running_min: list
    singular_at: Optional[float] = None

    @property
    def applicable(self):
        return self.singular_at is None


def corollary_decay(alg, x_hat, t_grid, kappa_max=DEFAULT_KAPPA_MAX, singular_tol=1e-10):
    """Track ``t * s_n(phi(t ad_xhat))`` along a ray, t >= 1.

    Along a ray where ad is diagonalizable and every ``|1 - e^{-lam_j t}|``
    stays away from zero (lam_j the nonzero eigenvalues of ad at x_hat),
    this quantity is bounded below by a positive constant. Returns None if
    ad at ``x_hat`` is not diagonalizable; ``singular_at`` records the first
    grid point with ``min_j |1 - e^{-lam_j t}| <= singular_tol``, where
    phi(t ad) is singular and no such constant exists.
    """
    op = _nonzero_x(alg, x_hat)
    if not diagonalizability(op.unit, kappa_max).diagonalizable:
        return None
    t_grid = [float(t) for t in t_grid]
    if not t_grid:
        raise ValueError("empty t grid")
    lam = unit_eigenvalues(alg, x_hat)
    w, P = np.linalg.eig(op.unit)
    P_inv = np.linalg.inv(P)
    running, best, witness, singular_at = [], np.inf, None, None
    for t in t_grid:
        gap = np.abs(np.expm1(-lam * t)).min() if lam.size else np.inf
        if singular_at is None and gap <= singular_tol:
            singular_at = t
        if singular_at is not None:
            s_n = 0.0
        else:
            # phi(tA) = P phi(t w) P^{-1}. Its smallest singular value is the
            # reciprocal of the largest one of the inverse, which keeps full
            # relative accuracy even when s_1 / s_n exceeds 1 / eps.
            inv = (P * (1.0 / phi_scalar(w * t))) @ P_inv
            s_n = 1.0 / np.linalg.norm(inv, 2)
        val = t * s_n
        if val < best:
            best, witness = val, t
        running.append(float(best))
    return DecayReport(float(best), witness, running, singular_at)
