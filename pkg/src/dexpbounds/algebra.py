"""Finite-dimensional real Lie algebras given by structure constants.

A Lie algebra is stored in the basis the user declared, together with a
Gram matrix for its inner product. All numerical work happens in the
orthonormal basis obtained from the Cholesky factor of the Gram matrix:
if ``G = L L^T`` then input coordinates ``x`` map to orthonormal
coordinates ``u = L^T x``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

ANTISYMMETRY_TOL = 1e-12
JACOBI_TOL = 1e-10
PD_RATIO_TOL = 1e-10


class StructureError(ValueError):
    """Raised for tensors or files whose shape/content is not a Lie algebra."""


class DomainError(ValueError):
    """Raised when an argument lies outside an operation's domain (e.g. x = 0)."""


@dataclass(frozen=True)
class Violation:
    kind: str  # "antisymmetry" or "jacobi"
    indices: tuple
    residual: float

    def __str__(self):
        idx = ",".join(str(i) for i in self.indices)
        return f"{self.kind} violated at ({idx}): residual {self.residual:.3e}"


@dataclass(frozen=True)
class StructureConstants:
    """``c[i, j, k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``."""

    dim: int
    c: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        if self.dim < 1:
            raise StructureError(f"dimension must be positive, got {self.dim}")
        if c.shape != (self.dim,) * 3:
            raise StructureError(
                f"structure tensor has shape {c.shape}, expected {(self.dim,) * 3}")
        object.__setattr__(self, "c", c)

    @classmethod
    def from_brackets(cls, dim, brackets):
        """Build from ``{(i, j): {k: coeff}}`` with antisymmetric completion."""
        c = np.zeros((dim, dim, dim))
        for (i, j), coeffs in brackets.items():
            for k, v in coeffs.items():
                c[i, j, k] = v
                c[j, i, k] = -v
        return cls(dim, c)


def validate(sc, antisym_tol=ANTISYMMETRY_TOL, jacobi_tol=JACOBI_TOL):
    """Return the list of violated Lie algebra identities (empty if valid).

    Antisymmetry residuals are ``|c[i,j,k] + c[j,i,k]|`` for ``i <= j``;
    Jacobi residuals are reported per ``(i, j, k, l)``.
    """
    if isinstance(sc, StructureConstants):
        c = sc.c
    else:
        c = np.asarray(sc, dtype=float)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise StructureError(f"structure tensor must be n x n x n, got {c.shape}")
    report = []

    sym = np.abs(c + c.transpose(1, 0, 2))
    for i, j, k in zip(*np.nonzero(sym > antisym_tol)):
        if i <= j:
            report.append(Violation("antisymmetry", (int(i), int(j), int(k)),
                                    float(sym[i, j, k])))

    # J[i,j,k,l] = sum_m c[i,j,m] c[m,k,l] + cyclic(i,j,k)
    t = np.einsum("ijm,mkl->ijkl", c, c)
    jac = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
    for i, j, k, l in zip(*np.nonzero(np.abs(jac) > jacobi_tol)):
        report.append(Violation("jacobi", (int(i), int(j), int(k), int(l)),
                                float(abs(jac[i, j, k, l]))))
    return report


@dataclass(frozen=True)
class InnerProduct:
    gram: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.gram, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise StructureError(f"Gram matrix must be square, got shape {g.shape}")
        if np.max(np.abs(g - g.T), initial=0.0) > ANTISYMMETRY_TOL:
            raise StructureError("Gram matrix is not symmetric")
        w = np.linalg.eigvalsh(g)
        if w[0] <= PD_RATIO_TOL * w[-1]:
            raise StructureError("Gram matrix is not positive definite")
        object.__setattr__(self, "gram", g)

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n))


@dataclass(frozen=True)
class AdOperator:
    """Matrix of ``ad_x`` in orthonormal coordinates.

    ``unit`` is the matrix of ``ad`` at ``x / |x|``; it is the zero matrix when
    ``x = 0``.
    """

    matrix: np.ndarray
    source: np.ndarray
    norm_x: float
    unit: np.ndarray


@dataclass(frozen=True)
class DeltaZeroEstimate:
    lower: float
    upper: float
    iterations: int
    converged: bool


@dataclass(frozen=True)
class LieAlgebra:
    name: str
    sc: StructureConstants
    ip: InnerProduct = None
    _L: np.ndarray = field(init=False, repr=False, compare=False)
    ortho_c: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ip = self.ip if self.ip is not None else InnerProduct.identity(self.sc.dim)
        if ip.gram.shape[0] != self.sc.dim:
            raise StructureError(
                f"Gram matrix is {ip.gram.shape[0]}-dimensional, algebra has dim {self.sc.dim}")
        object.__setattr__(self, "ip", ip)
        L = np.linalg.cholesky(ip.gram)
        object.__setattr__(self, "_L", L)
        # Orthonormal basis f_a = sum_i e_i M[i, a] with M = L^{-T}.
        M = np.linalg.inv(L).T
        oc = np.einsum("ia,jb,ijk,lk->abl", M, M, self.sc.c, L.T)
        object.__setattr__(self, "ortho_c", oc)

    @property
    def dim(self):
        return self.sc.dim

    @classmethod
    def from_brackets(cls, name, dim, brackets, gram=None):
        sc = StructureConstants.from_brackets(dim, brackets)
        ip = InnerProduct(gram) if gram is not None else None
        return cls(name, sc, ip)

    def to_ortho(self, x):
        """Input-basis coordinates -> orthonormal coordinates."""
        return self._L.T @ np.asarray(x, dtype=float)

    def from_ortho(self, u):
        return np.linalg.solve(self._L.T, np.asarray(u, dtype=float))

    def norm(self, u):
        """Norm of a vector given in orthonormal coordinates."""
        return float(np.linalg.norm(u))

    def is_abelian(self):
        return not np.any(self.sc.c)

    def has_integer_constants(self):
        return bool(np.all(self.sc.c == np.round(self.sc.c)))

    def nilpotency_step(self):
        """Exact nilpotency step from the lower central series, or None.

        Returns the least ``p`` with ``ad_x^p = 0`` for every ``x``. Only
        computed for integer structure constants (exact rational arithmetic);
        otherwise None.
        """
        return self._exact_step

    @cached_property
    def _exact_step(self):
        if not self.has_integer_constants():
            return None
        return _exact_nilpotency_step(self.sc.c.astype(int))


def _exact_nilpotency_step(c):
    import sympy

    n = c.shape[0]
    # Rows of `span` form a basis of C^k, starting from C^1 = g.
    span = sympy.eye(n)
    for step in range(1, n + 1):
        rows = []
        for v in span.tolist():
            for i in range(n):
                # [e_i, v] coordinates
                rows.append([sum(int(c[i, j, k]) * v[j] for j in range(n))
                             for k in range(n)])
        m = sympy.Matrix(rows)
        rank = m.rank()
        if rank == 0:
            return step
        span = m.rref()[0][:rank, :]
    return None


def ad(alg, x):
    """Adjoint operator of ``x`` (orthonormal coordinates).

    Column ``j`` of the matrix holds the coordinates of ``[x, f_j]``.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (alg.dim,):
        raise StructureError(f"vector has shape {x.shape}, algebra has dim {alg.dim}")
    A = np.einsum("i,ijk->kj", x, alg.ortho_c)
    nx = float(np.linalg.norm(x))
    unit = A / nx if nx > 0 else np.zeros_like(A)
    return AdOperator(A, x, nx, unit)


def frobenius_certificate(alg):
    """Certified upper bound ``sqrt(sum_i ||ad_{f_i}||_F^2)`` on delta_0.

    Valid on the complexification: ``||ad_z||_2 <= ||ad_z||_F <= |z| * this``
    by Cauchy-Schwarz over the (real) coefficient tensor.
    """
    return float(np.sqrt(np.sum(alg.ortho_c ** 2)))


def delta_zero(alg, budget=64, seed=0, max_iter=500, tol=1e-15):
    """Two-sided estimate of the bracket norm ``max |[x, y]|`` over unit x, y.

    ``lower`` comes from multi-start alternating maximisation of the
    trilinear form ``<z, [x, y]>`` on the real sphere, started from every
    basis vector and ``budget`` random points; ``upper`` is
    :func:`frobenius_certificate`.
    """
    if budget < 1:
        raise ValueError("delta_zero needs a positive sample budget")
    n = alg.dim
    c = alg.ortho_c
    upper = frobenius_certificate(alg)
    if upper == 0.0:
        return DeltaZeroEstimate(0.0, 0.0, 0, True)

    rng = np.random.default_rng(seed)
    starts = list(np.eye(n)) + [v / np.linalg.norm(v) for v in rng.normal(size=(budget, n))]
    best = 0.0
    total_iter = 0
    converged = True
    for x in starts:
        A = np.einsum("i,ijk->kj", x, c)
        u, s, vt = np.linalg.svd(A)
        if s[0] == 0.0:
            continue
        y, z = vt[0], u[:, 0]
        val = s[0]
        ok = False
        for _ in range(max_iter):
            total_iter += 1
            # Each block update is an exact maximisation, so val is monotone.
            gx = np.einsum("j,k,ijk->i", y, z, c)
            x = gx / np.linalg.norm(gx)
            A = np.einsum("i,ijk->kj", x, c)
            u, s, vt = np.linalg.svd(A)
            y, z = vt[0], u[:, 0]
            if s[0] - val <= tol * max(1.0, s[0]):
                val = max(val, s[0])
                ok = True
                break
            val = s[0]
        converged &= ok
        best = max(best, val)
    return DeltaZeroEstimate(float(min(best, upper)), upper, total_iter, bool(converged))


# --- file format -------------------------------------------------------------

_TOP_KEYS = {"name", "dim", "brackets", "gram"}
_BRACKET_KEYS = {"i", "j", "coeffs"}


def algebra_from_dict(d):
    if not isinstance(d, dict):
        raise StructureError("algebra file must contain a JSON object")
    extra = set(d) - _TOP_KEYS
    if extra:
        raise StructureError(f"unknown fields: {sorted(extra)}")
    for key in ("name", "dim", "brackets"):
        if key not in d:
            raise StructureError(f"missing field {key!r}")
    n = d["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise StructureError(f"dim must be a positive integer, got {n!r}")
    brackets = {}
    for b in d["brackets"]:
        if not isinstance(b, dict):
            raise StructureError("bracket entries must be objects")
        extra = set(b) - _BRACKET_KEYS
        if extra or set(b) != _BRACKET_KEYS:
            raise StructureError(f"bad bracket entry {b!r}")
        i, j = b["i"], b["j"]
        if not (0 <= i < j < n):
            raise StructureError(f"bracket indices must satisfy 0 <= i < j < dim, got ({i}, {j})")
        coeffs = {}
        for k, v in b["coeffs"].items():
            k = int(k)
            if not 0 <= k < n:
                raise StructureError(f"coefficient index {k} out of range")
            coeffs[k] = float(v)
        brackets[(i, j)] = coeffs
    gram = d.get("gram")
    if gram is not None:
        gram = np.asarray(gram, dtype=float)
        if gram.shape != (n, n):
            raise StructureError(f"gram must be {n}x{n}, got shape {gram.shape}")
    return LieAlgebra.from_brackets(str(d["name"]), n, brackets, gram)


def algebra_to_dict(alg):
    n = alg.dim
    c = alg.sc.c
    brackets = []
    for i in range(n):
        for j in range(i + 1, n):
            coeffs = {str(k): _plain(c[i, j, k]) for k in range(n) if c[i, j, k] != 0}
            if coeffs:
                brackets.append({"i": i, "j": j, "coeffs": coeffs})
    d = {"name": alg.name, "dim": n, "brackets": brackets}
    if not np.array_equal(alg.ip.gram, np.eye(n)):
        d["gram"] = alg.ip.gram.tolist()
    return d


def _plain(v):
    v = float(v)
    return int(v) if v.is_integer() else v


def load_algebra(path):
    """Read an algebra JSON file. Raises ``StructureError`` on bad content."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise StructureError(f"malformed JSON: {e}") from e
    return algebra_from_dict(d)


def dump_algebra(alg, path=None):
    s = json.dumps(algebra_to_dict(alg), indent=2)
    if path is not None:
        Path(path).write_text(s + "\n", encoding="utf-8")
    return s
