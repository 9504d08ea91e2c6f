import json

import numpy as np
import pytest

from dexpbounds import brute_force_extremes, catalog, run_suite, verify_traits
from dexpbounds.builtin import CatalogEntry, get
from dexpbounds.harness import SUITES

REQUIRED = {"abelian1", "abelian2", "abelian3", "abelian4", "heis3", "heis5", "sl2", "so3",
            "n4", "aff1", "heis3_r"}


def test_catalog_contents():
    assert REQUIRED <= {e.id for e in catalog()}


def test_traits_verified(entry):
    assert verify_traits(entry) == []


def test_wrong_trait_detected():
    e = get("sl2")
    fake = CatalogEntry("sl2", e.algebra, frozenset({"nilpotent(2)", "solvable", "compact-type"}))
    assert set(verify_traits(fake)) == {"nilpotent(2)", "solvable", "compact-type"}
    e = get("n4")
    assert verify_traits(CatalogEntry("n4", e.algebra, frozenset({"nilpotent(2)"}))) == ["nilpotent(2)"]


def test_heis3_r_is_step_two():
    assert get("heis3_r").nilpotent_step == 2


def test_brute_force_identity_and_diag():
    assert brute_force_extremes(np.eye(3)) == pytest.approx((1, 1), abs=1e-12)
    lo, hi = brute_force_extremes(np.diag([3.0, 1.0, 0.5]))
    assert abs(lo - 0.5) <= 1e-6 and abs(hi - 3) <= 1e-6


def test_brute_force_h3_phi():
    A = np.array([[1.0, 0, 0], [0, 1, 0], [0, -0.5, 1]])
    lo, hi = brute_force_extremes(A)
    assert abs(lo - 0.7807764064044151) <= 1e-5 and abs(hi - 1.2807764064044151) <= 1e-5


def test_brute_force_mesh_minimum():
    with pytest.raises(ValueError):
        brute_force_extremes(np.eye(2), mesh=10)


def test_brute_force_oracle_consistency(rng):
    for _ in range(100):
        n = int(rng.integers(1, 7))
        A = rng.normal(size=(n, n))
        s = np.linalg.svd(A, compute_uv=False)
        lo, hi = brute_force_extremes(A, 512, 500)
        assert abs(hi - s[0]) <= 1e-5 * (1 + s[0])
        assert abs(lo - s[-1]) <= 1e-5 * (1 + s[0])
        assert s[-1] - 1e-12 <= lo and hi <= s[0] + 1e-12


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_every_suite_runs_clean(suite):
    rep = run_suite(suite, seed=3, trials=10)
    assert rep.ok, rep.failures[:3]
    assert rep.checked + rep.skipped > 0


def test_thm1_on_heis3_all_skipped():
    rep = run_suite("thm1", seed=5, trials=20, algebras=["heis3"])
    assert rep.checked == 0 and rep.skipped == 20
    assert any("heis3" in n and "skipped" in n for n in rep.notes)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nosuchsuite")
    with pytest.raises(ValueError):
        run_suite("weyl", trials=0)


def test_report_serialisation():
    rep = run_suite("lemma31", seed=1, trials=5)
    d = json.loads(rep.to_json())
    assert set(d) >= {"suite", "seed", "trials", "failures", "max_residuals", "wall_ms"}
    assert "wall_ms" not in json.loads(rep.to_json(timing=False))


def test_failures_are_collected_with_snapshots(monkeypatch):
    # Force every trial to fail and check all of them are recorded.
    import dexpbounds.harness as h
    monkeypatch.setattr(h, "RTOL", -1.0)
    rep = run_suite("weyl", seed=2, trials=7)
    assert len(rep.failures) == 7
    assert [f["trial"] for f in rep.failures] == list(range(7))
    json.loads(rep.to_json())  # inputs serialise


@pytest.mark.parametrize("suite", ["thm2", "weyl", "minimax"])
def test_determinism(suite):
    a = run_suite(suite, seed=11, trials=15).to_json(timing=False)
    b = run_suite(suite, seed=11, trials=15).to_json(timing=False)
    assert a == b
    c = run_suite(suite, seed=12, trials=15).to_json(timing=False)
    assert c != a


def test_sample_independent_of_algebra_filter():
    full = run_suite("thm2", seed=4, trials=5)
    only = run_suite("thm2", seed=4, trials=5, algebras=["sl2"])
    assert only.checked == 5 and full.checked == 5 * len(catalog())
