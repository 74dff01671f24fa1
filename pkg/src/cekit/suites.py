"""Randomized property sweeps behind `cekit verify`, with reproduction seeds.

Each suite draws its cases from a seeded generator and reports every
violation as a string carrying enough detail to replay it. Tolerances are
fixed here, not configurable, because they are part of what is being
verified.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .convex_roof import Ensemble, cce_mixed_upper
from .entropy import (
    EntropyParams,
    alpha_monotonicity_gap,
    binary_entropy,
    majorizes,
    schur_concavity_witness,
    unified_entropy_spectrum,
)
from .measures import (
    continuity_gap,
    locc_monotonicity_spotcheck,
    named_measures,
    ordering_report,
    subadditivity_gap,
    subset_spectra,
    tensor_identity_residual,
)
from .states import dicke, ghz, haar_random, random_density, random_product, w
from .swaptest import cce_from_distribution, swap_test_distribution
from .tensor import DensityOperator, PureState

__all__ = [
    "SuiteResult",
    "SUITES",
    "DEFAULT_TRIALS",
    "run_suite",
    "wootters_eof",
    "sample_concavity_params",
    "random_majorization_pair",
    "random_rank1_instrument",
    "nearby_state",
]

GAP_TOL = 1e-10


@dataclass
class SuiteResult:
    name: str
    trials: int
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures


def sample_concavity_params(rng: np.random.Generator) -> EntropyParams:
    """Draw (alpha, beta) from the concavity region, capped at alpha 4, beta 3."""
    branch = int(rng.integers(3))
    if branch == 0:
        a = float(rng.uniform(0.05, 1.0))
        b = float(rng.uniform(0.0, min(3.0, 1.0 / a)))
    elif branch == 1:
        a = float(rng.uniform(1.0, 4.0))
        b = float(rng.uniform(1.0 / a, 3.0))
    else:
        a = float(rng.uniform(0.05, 1.0))
        b = float(rng.uniform(0.0, 1.0))
    return EntropyParams(a, b)


def random_majorization_pair(rng: np.random.Generator, size: int) -> tuple[np.ndarray, np.ndarray]:
    """(lam, mu) with mu majorizing lam, built by averaging transpositions."""
    mu = rng.dirichlet(np.ones(size))
    lam = mu.copy()
    for _ in range(int(rng.integers(1, 4))):
        i, j = rng.choice(size, size=2, replace=False)
        t = float(rng.uniform(0.0, 1.0))
        swapped = lam.copy()
        swapped[i], swapped[j] = lam[j], lam[i]
        lam = (1.0 - t) * lam + t * swapped
    return lam, mu


def random_rank1_instrument(rng: np.random.Generator, d: int = 2) -> list[np.ndarray]:
    """Measure-and-prepare channel: K_i = |a_i><b_i| over an orthonormal {b_i}."""
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    basis, _ = np.linalg.qr(z)
    ops = []
    for i in range(d):
        a = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        a = a / np.linalg.norm(a)
        ops.append(np.outer(a, basis[:, i].conj()))
    return ops


def nearby_state(psi: PureState, rng: np.random.Generator, eps: float) -> PureState:
    """Pure state at exact trace distance eps from psi (eps = sin of the angle)."""
    z = rng.standard_normal(psi.dim) + 1j * rng.standard_normal(psi.dim)
    z = z - np.vdot(psi.amplitudes, z) * psi.amplitudes
    z = z / np.linalg.norm(z)
    angle = math.asin(eps)
    return PureState(math.cos(angle) * psi.amplitudes + math.sin(angle) * z, psi.dims)


def wootters_eof(rho: DensityOperator) -> float:
    """Two-qubit entanglement of formation from the concurrence closed form."""
    if rho.dims != (2, 2):
        raise ValueError(f"concurrence formula needs a two-qubit state, got dims {rho.dims}")
    sy = np.array([[0.0, -1.0j], [1.0j, 0.0]])
    yy = np.kron(sy, sy)
    rho_tilde = yy @ rho.matrix.conj() @ yy
    evals = np.linalg.eigvals(rho.matrix @ rho_tilde)
    lam = np.sort(np.sqrt(np.clip(evals.real, 0.0, None)))[::-1]
    conc = max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))
    if conc == 0.0:
        return 0.0
    x = 0.5 * (1.0 + math.sqrt(1.0 - conc * conc))
    return binary_entropy(x)


def suite_schur(seed: int = 0, trials: int = 10_000) -> SuiteResult:
    """Entropy never increases along a majorization: S(lam) >= S(mu) when lam < mu."""
    rng = np.random.default_rng(seed)
    failures = []
    for trial in range(trials):
        size = int(rng.integers(2, 7))
        lam, mu = random_majorization_pair(rng, size)
        a = float(rng.uniform(0.05, 4.0))
        b = float(rng.uniform(0.0, 3.0))
        params = EntropyParams(a, b)
        if not majorizes(mu, lam):
            failures.append(f"trial {trial} seed {seed}: generated pair fails majorization")
            continue
        gap = schur_concavity_witness(lam, mu, params)
        if gap < -GAP_TOL:
            failures.append(
                f"trial {trial} seed {seed}: gap {gap} at alpha={a}, beta={b}, lam={lam}, mu={mu}"
            )
    return SuiteResult("schur", trials, failures)


def suite_alpha_mono(seed: int = 0, trials: int = 10_000) -> SuiteResult:
    """Entropy is nonincreasing in alpha for beta >= 1."""
    rng = np.random.default_rng(seed)
    dims_pool = [(2,), (3,), (4,), (2, 2), (2, 3)]
    failures = []
    for trial in range(trials):
        dims = dims_pool[int(rng.integers(len(dims_pool)))]
        d = int(np.prod(dims))
        rho = random_density(dims, rank=int(rng.integers(1, d + 1)), seed=seed * 100_003 + trial)
        a_lo, a_hi = np.sort(rng.uniform(0.05, 4.0, size=2))
        beta = float(rng.uniform(1.0, 3.0))
        gap = alpha_monotonicity_gap(rho, float(a_lo), float(a_hi), beta)
        if gap < -GAP_TOL:
            failures.append(
                f"trial {trial} seed {seed}: gap {gap} at alpha_lo={a_lo}, alpha_hi={a_hi}, beta={beta}"
            )
    return SuiteResult("alpha-mono", trials, failures)


def suite_ordering(seed: int = 0, trials: int = 1000, alpha_pairs: int = 20) -> SuiteResult:
    """Lower-bound chain plus alpha-monotonicity of the measure on Haar states."""
    rng = np.random.default_rng(seed)
    failures = []
    s = (1, 2, 3, 4)
    for trial in range(trials):
        psi = haar_random((2, 2, 2, 2), seed=seed * 100_003 + trial)
        report = ordering_report(psi, s)
        for name, ok in report.checks.items():
            if not ok:
                failures.append(f"trial {trial} seed {seed}: {name} violated")
        spectra = subset_spectra(psi, s)
        for _ in range(alpha_pairs):
            a_lo, a_hi = np.sort(rng.uniform(0.3, 3.5, size=2))
            beta = float(rng.uniform(1.0, 3.0))
            lo = math.fsum(
                unified_entropy_spectrum(spec, EntropyParams(float(a_lo), beta))
                for _, spec in sorted(spectra.items())
            ) / 16.0
            hi = math.fsum(
                unified_entropy_spectrum(spec, EntropyParams(float(a_hi), beta))
                for _, spec in sorted(spectra.items())
            ) / 16.0
            if lo < hi - GAP_TOL:
                failures.append(
                    f"trial {trial} seed {seed}: measure increased from alpha {a_lo} to {a_hi} at beta {beta}"
                )
    return SuiteResult("ordering", trials, failures)


def suite_subadd(seed: int = 0, trials: int = 1000) -> SuiteResult:
    """E(s) + E(s') >= E(s u s') for disjoint subsets on the subadditive region."""
    rng = np.random.default_rng(seed)
    alphas = (1.0, 1.5, 2.0, 3.0)
    failures = []
    for trial in range(trials):
        psi = haar_random((2,) * 5, seed=seed * 100_003 + trial)
        labels = rng.permutation(5) + 1
        k1 = int(rng.integers(1, 4))
        k2 = int(rng.integers(1, 6 - k1))
        s = tuple(int(x) for x in labels[:k1])
        s2 = tuple(int(x) for x in labels[k1 : k1 + k2])
        params = EntropyParams(alphas[int(rng.integers(len(alphas)))], 1.0)
        gap = subadditivity_gap(psi, s, s2, params)
        if gap < -GAP_TOL:
            failures.append(
                f"trial {trial} seed {seed}: gap {gap} for s={s}, s'={s2}, alpha={params.alpha}"
            )
    return SuiteResult("subadd", trials, failures)


def suite_tensor_id(seed: int = 0, trials: int = 200) -> SuiteResult:
    """Composition identity across a tensor factorization, all branches."""
    rng = np.random.default_rng(seed)
    failures = []
    for trial in range(trials):
        dims_a = (2, 2) if rng.integers(2) else (2,)
        dims_b = (2, 2) if rng.integers(2) else (3,)
        psi_a = haar_random(dims_a, seed=seed * 100_003 + 2 * trial)
        psi_b = haar_random(dims_b, seed=seed * 100_003 + 2 * trial + 1)
        n = len(dims_a) + len(dims_b)
        labels = [int(x) for x in rng.permutation(n) + 1]
        s = tuple(sorted(labels[: int(rng.integers(1, n + 1))]))
        cycle = trial % 4
        if cycle == 0:
            params = EntropyParams.von_neumann()
        elif cycle == 1:
            params = EntropyParams.renyi(float(rng.uniform(0.3, 3.0)))
        elif cycle == 2:
            params = EntropyParams.linear()
        else:
            params = EntropyParams(float(rng.uniform(0.3, 3.0)), float(rng.uniform(0.2, 3.0)))
        residual = tensor_identity_residual(psi_a, psi_b, s, params)
        if residual >= 1e-10:
            failures.append(
                f"trial {trial} seed {seed}: residual {residual} at alpha={params.alpha}, "
                f"beta={params.beta}, s={s}"
            )
    return SuiteResult("tensor-id", trials, failures)


def suite_continuity(seed: int = 0, trials: int = 500) -> SuiteResult:
    """Both continuity bounds on random nearby pure-state pairs."""
    rng = np.random.default_rng(seed)
    failures = []
    for trial in range(trials):
        psi = haar_random((2, 2, 2), seed=seed * 100_003 + trial)
        eps = float(rng.uniform(0.01, 0.399))
        phi = nearby_state(psi, rng, eps)
        if trial % 2 == 0:
            params = EntropyParams(float(rng.uniform(1.2, 4.0)), float(rng.uniform(1.0, 3.0)))
        else:
            params = EntropyParams.von_neumann()
        lhs, bound = continuity_gap(psi, phi, (1, 2, 3), params)
        if lhs > bound + GAP_TOL:
            failures.append(
                f"trial {trial} seed {seed}: |dE| {lhs} exceeds bound {bound} at "
                f"alpha={params.alpha}, beta={params.beta}, eps={eps}"
            )
    return SuiteResult("continuity", trials, failures)


def suite_locc(seed: int = 0, trials: int = 500) -> SuiteResult:
    """Average measure never increases under rank-1 local instruments."""
    rng = np.random.default_rng(seed)
    failures = []
    for trial in range(trials):
        psi = haar_random((2, 2, 2), seed=seed * 100_003 + trial)
        site = int(rng.integers(1, 4))
        kraus = random_rank1_instrument(rng)
        params = sample_concavity_params(rng)
        gap = locc_monotonicity_spotcheck(psi, (1, 2, 3), params, site, kraus)
        if gap < -GAP_TOL:
            failures.append(
                f"trial {trial} seed {seed}: gap {gap} at site {site}, "
                f"alpha={params.alpha}, beta={params.beta}"
            )
    return SuiteResult("locc", trials, failures)


def suite_swap_consistency(seed: int = 0, trials: int = 100) -> SuiteResult:
    """Exact SWAP-test distribution reproduces the linear-entropy measure."""
    cases: list[tuple[str, PureState]] = []
    for n in (3, 4, 5):
        cases.append((f"ghz:{n}", ghz(n)))
        cases.append((f"w:{n}", w(n)))
    for k in range(5):
        cases.append((f"dicke:4:{k}", dicke(4, k)))
    for trial in range(trials):
        n = 2 + trial % 4
        cases.append((f"haar:{n}q:{trial}", haar_random((2,) * n, seed=seed * 100_003 + trial)))
    failures = []
    for label, psi in cases:
        n = psi.n_subsystems
        dist = swap_test_distribution(psi)
        got = cce_from_distribution(dist, range(1, n + 1))
        want = named_measures(psi, range(1, n + 1)).c
        if abs(got - want) > 1e-10:
            failures.append(f"{label} seed {seed}: swap-test {got} vs direct {want}")
    return SuiteResult("swap-consistency", len(cases), failures)


def suite_roof_separable(seed: int = 0, trials: int = 20) -> SuiteResult:
    """Roof upper bound collapses on constructed fully separable states."""
    rng = np.random.default_rng(seed)
    failures = []
    for trial in range(trials):
        k = int(rng.integers(2, 5))
        probs = rng.dirichlet(np.ones(k))
        members = tuple(
            (float(p), random_product((2, 2), seed=seed * 100_003 + 10 * trial + i))
            for i, p in enumerate(probs)
        )
        ens = Ensemble(members)
        rho = ens.density()
        result = cce_mixed_upper(
            rho, (1, 2), EntropyParams.von_neumann(),
            budget=(2, 400), seed=seed + trial, seed_ensembles=[ens],
        )
        if result.upper_bound > 1e-3:
            failures.append(f"trial {trial} seed {seed}: upper bound {result.upper_bound} > 1e-3")
    return SuiteResult("roof-separable", trials, failures)


def suite_roof_eof(seed: int = 0, trials: int = 20) -> SuiteResult:
    """Roof at s={1}, von Neumann branch, against the concurrence closed form.

    The measure averages over P({1}) = {empty, {1}}, so its roof equals half
    the entanglement of formation.
    """
    failures = []
    for trial in range(trials):
        rho = random_density((2, 2), rank=2, seed=seed * 100_003 + trial)
        result = cce_mixed_upper(
            rho, (1,), EntropyParams.von_neumann(), budget=(6, 1000), seed=seed + trial
        )
        target = 0.5 * wootters_eof(rho)
        err = result.upper_bound - target
        if abs(err) > 5e-3:
            failures.append(
                f"trial {trial} seed {seed}: upper bound {result.upper_bound} vs EOF/2 {target} (err {err})"
            )
    return SuiteResult("roof-eof", trials, failures)


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "schur": suite_schur,
    "alpha-mono": suite_alpha_mono,
    "ordering": suite_ordering,
    "subadd": suite_subadd,
    "tensor-id": suite_tensor_id,
    "continuity": suite_continuity,
    "locc": suite_locc,
    "swap-consistency": suite_swap_consistency,
    "roof-separable": suite_roof_separable,
    "roof-eof": suite_roof_eof,
}

DEFAULT_TRIALS: dict[str, int] = {
    "schur": 10_000,
    "alpha-mono": 10_000,
    "ordering": 1000,
    "subadd": 1000,
    "tensor-id": 200,
    "continuity": 500,
    "locc": 500,
    "swap-consistency": 100,
    "roof-separable": 20,
    "roof-eof": 20,
}


def run_suite(name: str, seed: int = 0, trials: int | None = None) -> SuiteResult:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](seed=seed, trials=trials if trials is not None else DEFAULT_TRIALS[name])
