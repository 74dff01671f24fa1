import math

import numpy as np
import pytest

from cekit.entropy import (
    EntropyParams,
    alpha_monotonicity_gap,
    binary_entropy,
    fannes_audenaert_bound,
    in_concavity_region,
    in_subadditivity_region,
    majorizes,
    max_entropy_value,
    schur_concavity_witness,
    unified_entropy,
    unified_entropy_spectrum,
)
from cekit.measures import continuity_gap
from cekit.states import haar_random, random_density
from cekit.suites import nearby_state, random_majorization_pair
from cekit.tensor import DensityOperator

MIXED_QUBIT = DensityOperator(np.eye(2) / 2.0, (2,))


def test_linear_entropy_of_maximally_mixed_qubit():
    assert unified_entropy(MIXED_QUBIT, EntropyParams.linear()) == pytest.approx(0.5, abs=1e-14)


def test_pure_state_has_zero_entropy_everywhere():
    pure = DensityOperator(np.diag([1.0, 0.0]), (2,))
    for params in [
        EntropyParams.von_neumann(),
        EntropyParams.renyi(0.7),
        EntropyParams.tsallis(3.0),
        EntropyParams(1.8, 2.3),
    ]:
        assert unified_entropy(pure, params) == 0.0


def test_von_neumann_of_maximally_mixed_qubit():
    assert unified_entropy(MIXED_QUBIT, EntropyParams.von_neumann()) == pytest.approx(1.0, abs=1e-14)


def test_renyi2_direct_evaluation():
    rho = DensityOperator(np.diag([0.75, 0.25]), (2,))
    want = -math.log2(0.75**2 + 0.25**2)
    assert unified_entropy(rho, EntropyParams.renyi(2.0)) == pytest.approx(want, abs=1e-14)
    assert want == pytest.approx(0.678071905112638, abs=1e-12)


def test_params_validation():
    with pytest.raises(ValueError):
        EntropyParams(0.0, 1.0)
    with pytest.raises(ValueError):
        EntropyParams(-1.0, 1.0)
    with pytest.raises(ValueError):
        EntropyParams(2.0, -0.1)


def test_limit_dispatch_thresholds():
    assert EntropyParams(1.0 + 1e-10, 1.0).is_von_neumann
    assert not EntropyParams(1.0 + 1e-6, 1.0).is_von_neumann
    assert EntropyParams(2.0, 1e-13).is_renyi
    assert not EntropyParams(2.0, 1e-6).is_renyi


def test_binary_entropy_endpoints_and_half():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(ValueError):
        binary_entropy(-0.01)
    with pytest.raises(ValueError):
        binary_entropy(1.01)


def test_majorizes_basics():
    assert majorizes([1.0, 0.0], [0.5, 0.5])
    assert not majorizes([0.5, 0.5], [1.0, 0.0])
    assert majorizes([0.4, 0.3, 0.3], [0.4, 0.3, 0.3])
    assert majorizes([1.0], [0.5, 0.5])
    with pytest.raises(ValueError):
        majorizes([0.7, 0.7], [0.5, 0.5])


def test_schur_witness_trivial_cases():
    vn = EntropyParams.von_neumann()
    assert schur_concavity_witness([0.5, 0.5], [1.0, 0.0], vn) == pytest.approx(1.0, abs=1e-12)
    assert schur_concavity_witness([0.3, 0.7], [0.3, 0.7], vn) == 0.0


def test_schur_witness_random_sweep():
    rng = np.random.default_rng(7)
    for _ in range(2000):
        lam, mu = random_majorization_pair(rng, int(rng.integers(2, 7)))
        params = EntropyParams(float(rng.uniform(0.05, 4.0)), float(rng.uniform(0.0, 3.0)))
        assert majorizes(mu, lam)
        assert schur_concavity_witness(lam, mu, params) >= -1e-10


def test_alpha_monotonicity_trivial_and_exact():
    pure = DensityOperator(np.diag([1.0, 0.0]), (2,))
    assert alpha_monotonicity_gap(pure, 1.5, 2.5, 1.0) == 0.0
    # Tsallis on the maximally mixed qubit: S_2 = 1/2, S_3 = 3/8.
    assert alpha_monotonicity_gap(MIXED_QUBIT, 2.0, 3.0, 1.0) == pytest.approx(0.125, abs=1e-14)


def test_alpha_monotonicity_validation():
    with pytest.raises(ValueError):
        alpha_monotonicity_gap(MIXED_QUBIT, 2.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        alpha_monotonicity_gap(MIXED_QUBIT, 1.0, 2.0, 0.5)


def test_alpha_monotonicity_random_sweep():
    rng = np.random.default_rng(13)
    for trial in range(500):
        rho = random_density((2, 2), rank=int(rng.integers(1, 5)), seed=trial)
        lo, hi = np.sort(rng.uniform(0.05, 4.0, size=2))
        beta = float(rng.uniform(1.0, 3.0))
        assert alpha_monotonicity_gap(rho, float(lo), float(hi), beta) >= -1e-10


def test_fannes_audenaert_values():
    assert fannes_audenaert_bound(0.0, 8) == 0.0
    assert fannes_audenaert_bound(0.25, 2) == pytest.approx(binary_entropy(0.25), abs=1e-14)
    assert fannes_audenaert_bound(0.25, 2) == pytest.approx(0.811278124459133, abs=1e-12)
    with pytest.raises(ValueError):
        fannes_audenaert_bound(0.5, 2)
    with pytest.raises(ValueError):
        fannes_audenaert_bound(0.1, 1)


def test_fannes_audenaert_dominates_measure_difference():
    rng = np.random.default_rng(23)
    for trial in range(50):
        psi = haar_random((2, 2, 2), seed=trial)
        eps = float(rng.uniform(0.02, 0.39))
        phi = nearby_state(psi, rng, eps)
        lhs, bound = continuity_gap(psi, phi, (1, 2, 3), EntropyParams.von_neumann())
        assert lhs <= bound + 1e-10


def test_limit_continuity_beta_to_zero():
    # The raw two-parameter formula tends to the Renyi branch scaled by ln 2
    # as beta -> 0 (the branch itself reports bits).
    for seed in range(5):
        rho = random_density((2, 2), rank=3, seed=seed)
        for alpha in (0.5, 2.0, 3.0):
            near = unified_entropy(rho, EntropyParams(alpha, 1e-6))
            renyi_bits = unified_entropy(rho, EntropyParams.renyi(alpha))
            assert near == pytest.approx(math.log(2.0) * renyi_bits, abs=1e-4)


def test_limit_continuity_alpha_to_one():
    # Same ln 2 scaling against the von Neumann branch as alpha -> 1.
    for seed in range(5):
        rho = random_density((2, 2), rank=3, seed=seed)
        vn_bits = unified_entropy(rho, EntropyParams.von_neumann())
        for beta in (0.5, 1.0, 2.0):
            for alpha in (1.0 - 1e-6, 1.0 + 1e-6):
                near = unified_entropy(rho, EntropyParams(alpha, beta))
                assert near == pytest.approx(math.log(2.0) * vn_bits, abs=1e-4)


def test_nonnegative_and_unitary_invariant():
    rng = np.random.default_rng(31)
    for seed in range(20):
        rho = random_density((2, 2), rank=int(rng.integers(1, 5)), seed=seed)
        params = EntropyParams(float(rng.uniform(0.05, 4.0)), float(rng.uniform(0.0, 3.0)))
        s = unified_entropy(rho, params)
        assert s >= 0.0
        z = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        u, _ = np.linalg.qr(z)
        rotated = DensityOperator(u @ rho.matrix @ u.conj().T, (2, 2))
        assert unified_entropy(rotated, params) == pytest.approx(s, abs=1e-10)


def test_concavity_on_concave_region():
    from cekit.suites import sample_concavity_params

    rng = np.random.default_rng(37)
    for trial in range(300):
        params = sample_concavity_params(rng)
        k = int(rng.integers(2, 4))
        probs = rng.dirichlet(np.ones(k))
        parts = [random_density((2, 2), rank=2, seed=1000 * trial + i) for i in range(k)]
        mixed = DensityOperator(sum(p * r.matrix for p, r in zip(probs, parts)), (2, 2))
        avg = sum(p * unified_entropy(r, params) for p, r in zip(probs, parts))
        assert unified_entropy(mixed, params) >= avg - 1e-10


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_maximum_on_maximally_mixed(d):
    rho = DensityOperator(np.eye(d) / d, (d,))
    assert unified_entropy(rho, EntropyParams.von_neumann()) == pytest.approx(math.log2(d), abs=1e-12)
    assert unified_entropy(rho, EntropyParams.renyi(2.0)) == pytest.approx(math.log2(d), abs=1e-12)
    for params in [EntropyParams(2.0, 1.0), EntropyParams(0.5, 2.0), EntropyParams(3.0, 0.7)]:
        e = (1.0 - params.alpha) * params.beta
        want = (d**e - 1.0) / e
        assert unified_entropy(rho, params) == pytest.approx(want, abs=1e-12)
        assert max_entropy_value(d, params) == pytest.approx(want, abs=1e-14)


def test_region_predicates():
    assert in_concavity_region(EntropyParams.von_neumann())
    assert in_concavity_region(EntropyParams.linear())
    assert in_concavity_region(EntropyParams(0.5, 0.0))
    assert in_concavity_region(EntropyParams.tsallis(0.5))
    assert not in_concavity_region(EntropyParams(2.0, 0.1))
    assert in_subadditivity_region(EntropyParams.tsallis(2.0))
    assert in_subadditivity_region(EntropyParams.von_neumann())
    assert not in_subadditivity_region(EntropyParams.tsallis(0.5))
    assert not in_subadditivity_region(EntropyParams(2.0, 2.0))


def test_spectrum_kernel_ignores_zeros():
    params = EntropyParams(2.0, 1.5)
    a = unified_entropy_spectrum([0.5, 0.5], params)
    b = unified_entropy_spectrum([0.5, 0.5, 0.0, 0.0], params)
    assert a == b
