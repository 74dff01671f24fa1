import json
import math

import numpy as np
import pytest

from cekit.convex_roof import (
    Ensemble,
    cce_mixed_upper,
    mixed_ordering_spotcheck,
    mixer_for_ensemble,
    mixing_ensemble,
)
from cekit.entropy import EntropyParams
from cekit.errors import ResourceLimitError
from cekit.measures import cce_pure, ordering_report
from cekit.states import haar_random, random_density, random_product
from cekit.suites import wootters_eof
from cekit.tensor import DensityOperator

VN = EntropyParams.von_neumann()


def werner_like(p: float) -> DensityOperator:
    psi_minus = np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2.0)
    mat = p * np.outer(psi_minus, psi_minus.conj()) + (1.0 - p) * np.eye(4) / 4.0
    return DensityOperator(mat, (2, 2))


def separable_mix(seed: int, k: int = 3) -> tuple[DensityOperator, Ensemble]:
    rng = np.random.default_rng(seed)
    probs = rng.dirichlet(np.ones(k))
    members = tuple(
        (float(p), random_product((2, 2), seed=1000 * seed + i)) for i, p in enumerate(probs)
    )
    ens = Ensemble(members)
    return ens.density(), ens


def test_identity_mixer_recovers_eigendecomposition():
    rho = random_density((2, 2), rank=3, seed=1)
    vals = np.linalg.eigvalsh(rho.matrix)
    vals = np.sort(vals[vals > 1e-12])[::-1]
    ens = mixing_ensemble(rho, np.eye(3))
    assert sorted((p for p, _ in ens.members), reverse=True) == pytest.approx(list(vals), abs=1e-10)
    assert ens.reconstruction_error(rho) < 1e-10


def test_rank_one_state_gives_singleton_ensemble():
    rho = haar_random((2, 2), seed=2).density()
    ens = mixing_ensemble(rho, np.eye(1))
    assert len(ens.members) == 1
    assert ens.members[0][0] == pytest.approx(1.0, abs=1e-12)


def test_random_mixer_reconstructs():
    rho = random_density((2, 2), rank=2, seed=3)
    rng = np.random.default_rng(0)
    z = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    q, _ = np.linalg.qr(z)
    ens = mixing_ensemble(rho, q[:, :2])
    assert ens.reconstruction_error(rho) < 1e-10


def test_mixing_ensemble_validation():
    rho = random_density((2, 2), rank=2, seed=4)
    with pytest.raises(ValueError):
        mixing_ensemble(rho, np.ones((2, 2)))  # not isometric
    with pytest.raises(ValueError):
        mixing_ensemble(rho, np.eye(3)[:, :1].reshape(3, 1))  # wrong column count
    with pytest.raises(ValueError):
        mixing_ensemble(rho, np.eye(5)[:, :2])  # m > r^2


def test_mixer_for_ensemble_roundtrip():
    rho, ens = separable_mix(seed=5, k=3)
    mixer = mixer_for_ensemble(rho, ens)
    rebuilt = mixing_ensemble(rho, mixer)
    assert rebuilt.reconstruction_error(rho) < 1e-8
    assert rebuilt.average((1, 2), VN) == pytest.approx(ens.average((1, 2), VN), abs=1e-8)


def test_ensemble_validation():
    psi = haar_random((2,), seed=0)
    with pytest.raises(ValueError):
        Ensemble(((0.5, psi), (0.4, psi)))
    with pytest.raises(ValueError):
        Ensemble(((1.5, psi), (-0.5, psi)))
    with pytest.raises(ValueError):
        Ensemble(())


def test_wootters_bell_and_product(bell):
    assert wootters_eof(bell.density()) == pytest.approx(1.0, abs=1e-10)
    assert wootters_eof(random_product((2, 2), seed=1).density()) == pytest.approx(0.0, abs=1e-6)


def test_wootters_werner_closed_form():
    from cekit.entropy import binary_entropy

    for p in (0.5, 0.7, 0.9):
        conc = max(0.0, (3.0 * p - 1.0) / 2.0)
        want = binary_entropy(0.5 * (1.0 + math.sqrt(1.0 - conc**2))) if conc > 0 else 0.0
        assert wootters_eof(werner_like(p)) == pytest.approx(want, abs=1e-10)


def test_roof_on_pure_state_is_exact():
    psi = haar_random((2, 2), seed=7)
    result = cce_mixed_upper(psi.density(), (1,), VN, budget=(2, 50), seed=0)
    assert result.upper_bound == pytest.approx(cce_pure(psi, (1,), VN).value, abs=1e-10)
    assert result.converged


def test_roof_upper_bound_matches_best_ensemble():
    rho = random_density((2, 2), rank=2, seed=8)
    result = cce_mixed_upper(rho, (1,), VN, budget=(3, 200), seed=0)
    recomputed = result.best_ensemble.average((1,), VN)
    assert result.upper_bound == pytest.approx(recomputed, abs=1e-10)
    assert result.best_ensemble.reconstruction_error(rho) < 1e-8


def test_roof_never_worse_than_eigendecomposition():
    rho = random_density((2, 2), rank=2, seed=9)
    eigen_avg = mixing_ensemble(rho, np.eye(2)).average((1,), VN)
    result = cce_mixed_upper(rho, (1,), VN, budget=(2, 300), seed=0)
    assert result.upper_bound <= eigen_avg + 1e-12


def test_roof_separable_state_collapses():
    rho, ens = separable_mix(seed=10)
    result = cce_mixed_upper(rho, (1, 2), VN, budget=(2, 400), seed=0, seed_ensembles=[ens])
    assert result.upper_bound <= 1e-3


def test_roof_werner_matches_concurrence_oracle():
    rho = werner_like(0.9)
    result = cce_mixed_upper(rho, (1,), VN, budget=(6, 1000), seed=1)
    target = 0.5 * wootters_eof(rho)
    assert result.upper_bound == pytest.approx(target, abs=5e-3)
    assert result.upper_bound >= target - 1e-9


def test_roof_random_rank2_matches_oracle():
    for seed in range(3):
        rho = random_density((2, 2), rank=2, seed=100 + seed)
        result = cce_mixed_upper(rho, (1,), VN, budget=(6, 1000), seed=seed)
        target = 0.5 * wootters_eof(rho)
        assert result.upper_bound == pytest.approx(target, abs=5e-3)


def test_roof_deterministic_under_seed():
    rho = random_density((2, 2), rank=2, seed=11)
    a = cce_mixed_upper(rho, (1,), VN, budget=(3, 300), seed=5)
    b = cce_mixed_upper(rho, (1,), VN, budget=(3, 300), seed=5)
    assert a.upper_bound == b.upper_bound


def test_roof_deterministic_across_worker_counts(monkeypatch):
    rho = random_density((2, 2), rank=2, seed=24)
    serial = cce_mixed_upper(rho, (1,), VN, budget=(4, 200), seed=3)
    monkeypatch.setenv("CEKIT_THREADS", "4")
    threaded = cce_mixed_upper(rho, (1,), VN, budget=(4, 200), seed=3)
    assert serial.upper_bound == threaded.upper_bound


def test_roof_rank_guard_and_budget_validation():
    rho = random_density((2, 2, 2), rank=7, seed=12)
    with pytest.raises(ResourceLimitError):
        cce_mixed_upper(rho, (1,), VN)
    small = random_density((2, 2), rank=2, seed=13)
    with pytest.raises(ValueError):
        cce_mixed_upper(small, (1,), VN, budget=(0, 100))


def test_roof_convexity():
    a = random_density((2, 2), rank=2, seed=14)
    b = random_density((2, 2), rank=2, seed=15)
    q = 0.4
    mix = DensityOperator(q * a.matrix + (1 - q) * b.matrix, (2, 2))
    budget = (6, 800)
    ua = cce_mixed_upper(a, (1,), VN, budget=budget, seed=0).upper_bound
    ub = cce_mixed_upper(b, (1,), VN, budget=budget, seed=0).upper_bound
    umix = cce_mixed_upper(mix, (1,), VN, budget=budget, seed=0).upper_bound
    assert umix <= q * ua + (1 - q) * ub + 1e-3


def test_roof_local_unitary_invariance():
    rng = np.random.default_rng(16)
    rho = random_density((2, 2), rank=2, seed=17)
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    u, _ = np.linalg.qr(z)
    full = np.kron(u, np.eye(2))
    rotated = DensityOperator(full @ rho.matrix @ full.conj().T, (2, 2))
    budget = (6, 800)
    before = cce_mixed_upper(rho, (1,), VN, budget=budget, seed=0).upper_bound
    after = cce_mixed_upper(rotated, (1,), VN, budget=budget, seed=0).upper_bound
    assert after == pytest.approx(before, abs=1e-3)


def test_matched_ensembles_alpha_monotone():
    rng = np.random.default_rng(18)
    rho = random_density((2, 2), rank=2, seed=19)
    for _ in range(25):
        z = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        q, _ = np.linalg.qr(z)
        ens = mixing_ensemble(rho, q[:, :2])
        lo = ens.average((1, 2), EntropyParams(1.3, 1.5))
        hi = ens.average((1, 2), EntropyParams(2.6, 1.5))
        assert lo >= hi - 1e-10


def test_mixed_ordering_pure_state_reduces_to_report():
    psi = haar_random((2, 2), seed=20)
    result = mixed_ordering_spotcheck(psi.density(), (1, 2), n_mixers=5, seed=0)
    assert result.all_hold
    assert ordering_report(psi, (1, 2)).all_hold


def test_mixed_ordering_separable_state():
    rho, _ = separable_mix(seed=21)
    result = mixed_ordering_spotcheck(rho, (1, 2), n_mixers=20, seed=0)
    assert result.all_hold


def test_mixed_ordering_random_rank2():
    rho = random_density((2, 2), rank=2, seed=22)
    result = mixed_ordering_spotcheck(rho, (1, 2), n_mixers=100, seed=0)
    assert result.ensembles_checked == 100
    assert result.all_hold


def test_roof_result_serialization():
    rho = random_density((2, 2), rank=2, seed=23)
    result = cce_mixed_upper(rho, (1,), VN, budget=(2, 100), seed=0)
    blob = json.loads(json.dumps(result.to_dict()))
    assert blob["upper_bound"] == pytest.approx(result.upper_bound)
    probs = [m["p"] for m in blob["best_ensemble"]["members"]]
    assert sum(probs) == pytest.approx(1.0, abs=1e-9)
    amp = blob["best_ensemble"]["members"][0]["amplitudes"]
    assert len(amp) == 4 and len(amp[0]) == 2
