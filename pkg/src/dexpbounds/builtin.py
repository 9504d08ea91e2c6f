"""Built-in Lie algebras used by the property suites and the CLI."""

from dataclasses import dataclass, field
import re

import numpy as np

from .algebra import LieAlgebra, ad, validate

_NILP = re.compile(r"nilpotent\((\d+)\)")


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    algebra: LieAlgebra
    traits: frozenset
    known_facts: dict = field(default_factory=dict)

    @property
    def nilpotent_step(self):
        for t in self.traits:
            m = _NILP.fullmatch(t)
            if m:
                return int(m.group(1))
        return None


def _entry(id_, dim, brackets, traits, **facts):
    return CatalogEntry(id_, LieAlgebra.from_brackets(id_, dim, brackets), frozenset(traits), facts)


def _build():
    entries = []
    for n in range(1, 5):
        entries.append(_entry(f"abelian{n}", n, {}, {"abelian", "nilpotent(1)", "solvable"}))
    entries.append(_entry(
        "heis3", 3, {(0, 1): {2: 1}}, {"nilpotent(2)", "solvable"},
        delta0=1.0, frobenius=np.sqrt(2.0)))
    entries.append(_entry(
        "heis5", 5, {(0, 1): {4: 1}, (2, 3): {4: 1}}, {"nilpotent(2)", "solvable"}))
    # Basis H, E, F.
    entries.append(_entry(
        "sl2", 3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, {"semisimple"},
        delta0=2.0, frobenius=np.sqrt(18.0)))
    entries.append(_entry(
        "so3", 3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}},
        {"semisimple", "compact-type"}))
    # Strictly upper triangular 4x4: E12, E23, E34, E13, E24, E14.
    entries.append(_entry(
        "n4", 6,
        # [E12,E23]=E13, [E23,E34]=E24, [E12,E24]=E14, [E13,E34]=E14
        {(0, 1): {3: 1}, (1, 2): {4: 1}, (0, 4): {5: 1}, (2, 3): {5: -1}},
        {"nilpotent(3)", "solvable"}))
    entries.append(_entry("aff1", 2, {(0, 1): {1: 1}}, {"solvable"}))
    entries.append(_entry("heis3_r", 4, {(0, 1): {2: 1}}, {"nilpotent(2)", "solvable"}))
    return entries


_CATALOG = None


def catalog():
    """All built-in algebras (cached; entries are immutable)."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build()
    return list(_CATALOG)


def get(id_):
    for e in catalog():
        if e.id == id_:
            return e
    raise KeyError(f"unknown catalog algebra {id_!r}")


def _rank(vectors, tol=1e-10):
    if len(vectors) == 0:
        return np.zeros((0, 0))
    M = np.asarray(vectors)
    u, s, vt = np.linalg.svd(M)
    r = int(np.sum(s > tol * max(1.0, s[0] if len(s) else 0.0)))
    return vt[:r]


def _derived_series_vanishes(alg):
    c = alg.ortho_c
    basis = np.eye(alg.dim)
    for _ in range(alg.dim + 1):
        if len(basis) == 0:
            return True
        brackets = [np.einsum("i,j,ijk->k", a, b, c) for a in basis for b in basis]
        new = _rank(brackets)
        if len(new) == len(basis):
            return False
        basis = new
    return len(basis) == 0


def _killing(alg):
    ads = [ad(alg, e).matrix for e in np.eye(alg.dim)]
    return np.array([[np.trace(a @ b) for b in ads] for a in ads])


def verify_traits(entry, samples=100, seed=0):
    """Return the declared traits that fail verification (empty if all hold)."""
    alg = entry.algebra
    rng = np.random.default_rng(seed)
    failed = []
    if validate(alg.sc):
        failed.append("lie-algebra")
    for trait in sorted(entry.traits):
        m = _NILP.fullmatch(trait)
        if trait == "abelian":
            ok = alg.is_abelian()
        elif m:
            p = int(m.group(1))
            ok = alg.nilpotency_step() in (None, p)
            reaches = False
            for _ in range(samples):
                A = ad(alg, rng.normal(size=alg.dim)).matrix
                scale = max(np.linalg.norm(A, 2), 1.0)
                ok &= np.linalg.norm(np.linalg.matrix_power(A, p), 2) <= 1e-10 * scale ** p
                if p == 1 or np.linalg.norm(np.linalg.matrix_power(A, p - 1), 2) > 1e-8:
                    reaches = True
            ok &= reaches
        elif trait == "solvable":
            ok = _derived_series_vanishes(alg)
        elif trait == "semisimple":
            ok = abs(np.linalg.det(_killing(alg))) > 1e-8
        elif trait == "compact-type":
            ok = bool(np.all(np.linalg.eigvalsh(_killing(alg)) < -1e-10))
        else:
            ok = False
        if not ok:
            failed.append(trait)
    return failed
