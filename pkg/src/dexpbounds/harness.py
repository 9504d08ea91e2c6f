"""Seeded property suites over the catalog, and a brute-force extremes oracle.

Each suite draws its samples from a generator seeded by ``(seed, label)``,
so results do not depend on which other algebras or suites ran, and
collects every failure instead of stopping at the first one.
"""

from dataclasses import dataclass, field
import json
import math
import time
import zlib

import numpy as np
import scipy.linalg
from scipy.stats import norm, qmc

from . import bounds as bd
from .algebra import frobenius_certificate
from .builtin import catalog
from .matfunc import expm1_ratio, phi_matrix, phi_quadrature_oracle, phi_scalar
from .spectral import (determinant_residual, eigenvalues, match_multisets, minimax_check,
                       singular_values, weyl_residual)

RTOL = 1e-9
EQ5_ATOL = 1e-9


@dataclass
class PropertyRunReport:
    suite: str
    seed: int
    trials: int
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)
    max_residuals: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    wall_ms: float = 0.0

    @property
    def ok(self):
        return not self.failures

    def record(self, key, value):
        value = float(value)
        if key not in self.max_residuals or value > self.max_residuals[key]:
            self.max_residuals[key] = value

    def to_dict(self, timing=True):
        d = {
            "suite": self.suite, "seed": self.seed, "trials": self.trials,
            "checked": self.checked, "skipped": self.skipped,
            "failures": self.failures,
            "max_residuals": dict(sorted(self.max_residuals.items())),
            "notes": self.notes,
        }
        if timing:
            d["wall_ms"] = self.wall_ms
        return d

    def to_json(self, timing=True):
        """Serialise; ``timing=False`` drops wall_ms for reproducible bytes."""
        return json.dumps(self.to_dict(timing), indent=2, default=_jsonable)


def _jsonable(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, complex):
        return [o.real, o.imag]
    raise TypeError(type(o))


def _rng(seed, label):
    return np.random.default_rng([seed, zlib.crc32(label.encode())])


def random_direction(rng, n):
    v = rng.normal(size=n)
    return v / np.linalg.norm(v)


def random_point(rng, n, lo, hi):
    """Uniform direction times a log-uniform radius in [lo, hi]."""
    r = math.exp(rng.uniform(math.log(lo), math.log(hi)))
    return r * random_direction(rng, n)


def random_matrix(rng, max_n=8, max_norm=None, min_n=1):
    n = int(rng.integers(min_n, max_n + 1))
    A = rng.normal(size=(n, n))
    if max_norm is not None:
        A *= rng.uniform(0, max_norm) / max(np.linalg.norm(A, 2), 1e-300)
    return A


# --- suites ----------------------------------------------------------------

def _entries(names, predicate=None):
    out = [e for e in catalog() if predicate is None or predicate(e)]
    if names is not None:
        names = set(names)
        out = [e for e in out if e.id in names]
    return out


def _rel(excess, scale):
    return excess / (1.0 + abs(scale))


def _suite_thm1(rep, seed, trials, algebras):
    for e in _entries(algebras):
        alg = e.algebra
        rng = _rng(seed, "thm1:" + e.id)
        skipped = 0
        for i in range(trials):
            xhat = random_direction(rng, alg.dim)
            t = rng.uniform(0.1, 20.0)
            x = t * xhat
            b = bd.thm1_bounds(alg, x)
            if b is None:
                skipped += 1
                continue
            lo, hi = bd.exact_extremes(alg, x)
            res = {"lower": _rel(b.lower - lo, lo) - RTOL, "upper": _rel(hi - b.upper, hi) - RTOL}
            _tally(rep, e.id, i, x, res)
        rep.skipped += skipped
        if skipped == trials:
            rep.notes.append(f"{e.id}: all {trials} trials skipped (not applicable)")


def _suite_thm2(rep, seed, trials, algebras, eq5=False):
    for e in _entries(algebras):
        alg = e.algebra
        d0 = frobenius_certificate(alg)
        rng = _rng(seed, "thm2:" + e.id)
        for i in range(trials):
            x = random_point(rng, alg.dim, 0.1, 10.0)
            r = bd.bound_report(alg, x, d0)
            lo, hi = r.exact_min, r.exact_max
            if eq5:
                res = {"eq5_min": lo - r.lambda_tilde_min - EQ5_ATOL,
                       "eq5_max": r.lambda_tilde_max - hi - EQ5_ATOL}
            else:
                res = {"lower_log": (r.thm2_lower_log - math.log(lo) - RTOL) if lo > 0 else
                       (-1.0 if r.thm2_lower == 0 else np.inf),
                       "upper": hi / r.thm2_upper - 1 - RTOL}
            _tally(rep, e.id, i, x, res)


def _suite_nilpotent(rep, seed, trials, algebras):
    for e in _entries(algebras, lambda e: e.nilpotent_step is not None):
        alg = e.algebra
        d0 = frobenius_certificate(alg)
        rng = _rng(seed, "nilpotent:" + e.id)
        for i in range(trials):
            x = random_point(rng, alg.dim, 0.1, 50.0)
            nb = bd.nilpotent_bounds(alg, x, d0)
            if nb is None:
                _tally(rep, e.id, i, x, {"certified": np.inf})
                continue
            lo, hi = bd.exact_extremes(alg, x)
            res = {"lower_log": nb.lower_log - math.log(lo) - RTOL,
                   "upper": hi / nb.upper - 1 - RTOL,
                   "step": nb.p_step - e.nilpotent_step - 0.5}
            _tally(rep, e.id, i, x, res)


def _suite_corollary(rep, seed, trials, algebras):
    grid = np.arange(1, 51, dtype=float)
    for e in _entries(algebras):
        alg = e.algebra
        rng = _rng(seed, "corollary:" + e.id)
        for i in range(trials):
            xhat = random_direction(rng, alg.dim)
            d = bd.corollary_decay(alg, xhat, grid)
            if d is None or not d.applicable:
                rep.skipped += 1
                continue
            # By the diagonalizable-case lower bound, t s_n(t) >= t lt_min(t) / kappa.
            floor = np.inf
            b = bd.thm1_bounds(alg, d.witness_t * xhat)
            if b is not None:
                floor = d.witness_t * b.lower
            res = {"positive": -d.min_value,
                   "floor": (_rel(floor - d.min_value, d.min_value) - RTOL
                             if np.isfinite(floor) else -1.0)}
            _tally(rep, e.id, i, xhat, res)


def _suite_weyl(rep, seed, trials, algebras):
    rng = _rng(seed, "weyl")
    entries = _entries(algebras)
    for i in range(trials):
        if i % 2 == 0 or not entries:
            A = random_matrix(rng, 8)
        else:
            e = entries[(i // 2) % len(entries)]
            x = random_point(rng, e.algebra.dim, 0.1, 10.0)
            A = phi_matrix(bd.ad(e.algebra, x).matrix).matrix
        lam, s = eigenvalues(A), singular_values(A)
        n = len(s)
        floor = n * np.finfo(float).eps * s[0]
        res = {
            "weyl": weyl_residual(lam, s) - RTOL,
            "eig_le_sing": _rel(abs(lam[0]) - s[0], s[0]) - 1e-10,
            "sing_le_eig": _rel(s[-1] - max(abs(lam[-1]), floor), s[0]) - 1e-10,
            "det": determinant_residual(A) - RTOL if abs(np.linalg.det(A)) > 1e-8 else -1.0,
        }
        _tally(rep, "matrix", i, A, res)


def _suite_spectral_mapping(rep, seed, trials, algebras):
    rng = _rng(seed, "spectral-mapping")
    for i in range(trials):
        A = random_matrix(rng, 8, max_norm=4.0)
        want = phi_scalar(eigenvalues(A).astype(complex))
        got = eigenvalues(phi_matrix(A).matrix)
        dist = match_multisets(want, got, 1e-8)
        _tally(rep, "matrix", i, A, {"match": (dist - 1e-8 if dist is not None else np.inf)})


def _suite_phi_oracle(rep, seed, trials, algebras):
    rng = _rng(seed, "phi-oracle")
    for i in range(trials):
        A = random_matrix(rng, 8, max_norm=20.0)
        n = A.shape[0]
        phi = phi_matrix(A).matrix
        ref = phi_quadrature_oracle(A)
        E = scipy.linalg.expm(-A)
        nA = np.linalg.norm(A, 2)
        nphi = np.linalg.norm(phi, 2)
        res = {
            "oracle": np.linalg.norm(phi - ref, 2) / (1 + nphi) - 1e-8,
            "identity": np.linalg.norm(A @ phi - (np.eye(n) - E), 2)
            / (1 + np.linalg.norm(E, 2)) - 1e-10,
            "commute": np.linalg.norm(A @ phi - phi @ A, 2) - 1e-12 * max(nA * nphi, 1e-300),
            "norm_bound": _rel(nphi - expm1_ratio(nA), nphi) - 1e-9,
        }
        _tally(rep, "matrix", i, A, res)


def _suite_lemma31(rep, seed, trials, algebras):
    rng = _rng(seed, "lemma31")
    for i in range(trials):
        n = int(rng.integers(1, 7))
        P, T, Q = (rng.normal(size=(n, n)) for _ in range(3))
        sn = lambda M: singular_values(M)[-1]
        res = {"lemma": sn(P) * sn(T) * sn(Q) - sn(P @ T @ Q) - 1e-10}
        _tally(rep, "triple", i, [P, T, Q], res)


def _suite_minimax(rep, seed, trials, algebras):
    rng = _rng(seed, "minimax")
    for i in range(trials):
        A = random_matrix(rng, 8, min_n=2)
        m = minimax_check(A, 200, rng)
        res = {"violations": len(m.violations) - 0.5,
               "refine_max": abs(m.sampled_max - m.s_max) / (1 + m.s_max) - 1e-8,
               "refine_min": abs(m.sampled_min - m.s_min) / (1 + m.s_max) - 1e-8}
        _tally(rep, "matrix", i, A, res)


def _tally(rep, label, trial, inp, residuals):
    """Record residuals; any positive residual is a failure."""
    rep.checked += 1
    bad = {}
    for k, v in residuals.items():
        rep.record(k, v)
        if v > 0:
            bad[k] = float(v)
    if bad:
        rep.failures.append({"case": label, "trial": trial, "input": inp, "residuals": bad})


SUITES = {
    "thm1": _suite_thm1,
    "thm2": _suite_thm2,
    "eq5": lambda r, s, t, a: _suite_thm2(r, s, t, a, eq5=True),
    "nilpotent": _suite_nilpotent,
    "weyl": _suite_weyl,
    "spectral-mapping": _suite_spectral_mapping,
    "phi-oracle": _suite_phi_oracle,
    "lemma31": _suite_lemma31,
    "minimax": _suite_minimax,
    "corollary-decay": _suite_corollary,
}


def run_suite(suite, seed=0, trials=100, algebras=None):
    """Run a named property suite.

    Residuals are stored shifted so that a positive value means the
    inequality failed at its tolerance; ``max_residuals`` therefore shows the
    tightest margin seen per inequality.
    """
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    if trials < 1:
        raise ValueError("trials must be positive")
    rep = PropertyRunReport(suite, seed, trials)
    t0 = time.perf_counter()
    SUITES[suite](rep, seed, trials, algebras)
    rep.wall_ms = (time.perf_counter() - t0) * 1e3
    return rep


# --- oracle ----------------------------------------------------------------

def brute_force_extremes(A, mesh=1024, refine_steps=200, seed=0):
    """min/max of |A y| over unit y without an SVD.

    A scrambled Sobol mesh mapped to the sphere locates starting points,
    then power iteration on A^T A (max) and inverse iteration on a slightly
    shifted A^T A (min) refine them. Every returned value is attained by an
    actual unit vector.
    """
    A = np.asarray(A, dtype=float)
    if mesh < 100:
        raise ValueError("mesh must be at least 100")
    n = A.shape[1]
    if n == 1:
        v = abs(float(A[0, 0])) if A.shape[0] == 1 else float(np.linalg.norm(A))
        return v, v
    pts = qmc.Sobol(n, scramble=True, seed=seed).random(mesh)
    Y = norm.ppf(np.clip(pts, 1e-12, 1 - 1e-12))
    Y /= np.linalg.norm(Y, axis=1, keepdims=True)
    vals = np.linalg.norm(Y @ A.T, axis=1)
    G = A.T @ A
    if not G.any():
        return 0.0, 0.0

    y = Y[np.argmax(vals)]
    hi = vals.max()
    for _ in range(refine_steps):
        z = G @ y
        y = z / np.linalg.norm(z)
        hi = max(hi, np.linalg.norm(A @ y))

    y = Y[np.argmin(vals)]
    lo = vals.min()
    shift = np.finfo(float).eps * np.trace(G)
    M = G + shift * np.eye(n)
    for _ in range(refine_steps):
        try:
            z = np.linalg.solve(M, y)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(z)) or not z.any():
            break
        y = z / np.linalg.norm(z)
        lo = min(lo, np.linalg.norm(A @ y))
    return float(lo), float(hi)
