"""Mixed-state measure as a convex-roof upper bound over decompositions.

Every pure-state decomposition of a rank-r state rho arises from an
isometry ("mixer") applied to the square-rooted eigenvectors, so the
minimization runs over mixers. The search is a seeded, restart-based
pattern search over a Givens-angle/phase parameterization of the mixer;
what it returns is the best ensemble average found, which upper-bounds
the true roof but is never claimed to attain it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .entropy import EntropyParams, unified_entropy_spectrum
from .errors import ResourceLimitError
from .measures import BENCHMARKS, LN2, cce_pure, normalize_subset, subset_spectra
from .parallel import parallel_map
from .tensor import DensityOperator, PureState

__all__ = [
    "MAX_ROOF_RANK",
    "Ensemble",
    "RoofResult",
    "MixedOrderingResult",
    "mixing_ensemble",
    "mixer_for_ensemble",
    "cce_mixed_upper",
    "mixed_ordering_spotcheck",
]

MAX_ROOF_RANK = 6
RANK_EIG_TOL = 1e-12
MEMBER_DROP_TOL = 1e-12
ISOMETRY_ATOL = 1e-10


@dataclass(frozen=True)
class Ensemble:
    """Finite pure-state decomposition: positive weights summing to one."""

    members: tuple[tuple[float, PureState], ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("ensemble must have at least one member")
        if any(p <= 0 for p, _ in self.members):
            raise ValueError("member probabilities must be positive")
        total = math.fsum(p for p, _ in self.members)
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"probabilities must sum to 1 within 1e-10, got {total}")

    def density(self) -> DensityOperator:
        dims = self.members[0][1].dims
        mat = sum(p * np.outer(s.amplitudes, s.amplitudes.conj()) for p, s in self.members)
        return DensityOperator(mat, dims)

    def reconstruction_error(self, rho: DensityOperator) -> float:
        mat = sum(p * np.outer(s.amplitudes, s.amplitudes.conj()) for p, s in self.members)
        return float(np.linalg.norm(mat - rho.matrix))

    def average(self, subset: Iterable[int], params: EntropyParams) -> float:
        return math.fsum(p * cce_pure(s, subset, params).value for p, s in self.members)

    def to_dict(self) -> dict:
        return {
            "members": [
                {
                    "p": p,
                    "amplitudes": [[float(a.real), float(a.imag)] for a in s.amplitudes],
                    "dims": list(s.dims),
                }
                for p, s in self.members
            ]
        }


@dataclass(frozen=True)
class RoofResult:
    upper_bound: float
    best_ensemble: Ensemble
    restarts_used: int
    converged: bool

    def to_dict(self) -> dict:
        return {
            "upper_bound": self.upper_bound,
            "restarts_used": self.restarts_used,
            "converged": self.converged,
            "best_ensemble": self.best_ensemble.to_dict(),
        }


def _eigen_support(rho: DensityOperator) -> tuple[np.ndarray, np.ndarray]:
    vals, vecs = np.linalg.eigh(rho.matrix)
    keep = vals > RANK_EIG_TOL
    order = np.argsort(vals[keep])[::-1]
    return vals[keep][order], vecs[:, keep][:, order]


def _subset_axes(dims: tuple[int, ...], subset: tuple[int, ...]) -> list[tuple[list[int], int]]:
    """For each mask over `subset`: (axes of the smaller cut side to trace, its dim)."""
    n = len(dims)
    out = []
    for mask in range(1 << len(subset)):
        chi = [subset[j] - 1 for j in range(len(subset)) if (mask >> j) & 1]
        comp = [ax for ax in range(n) if ax not in chi]
        if not chi or not comp:
            out.append((list(range(n)), 1))
            continue
        d_chi = prod(dims[ax] for ax in chi)
        d_comp = prod(dims[ax] for ax in comp)
        if d_chi <= d_comp:
            out.append((comp, d_chi))
        else:
            out.append((chi, d_comp))
    return out


def _raw_average(
    raw: np.ndarray,
    dims: tuple[int, ...],
    axes_plan: list[tuple[list[int], int]],
    params: EntropyParams,
    m_subset: int,
) -> float:
    """Ensemble average of the measure over unnormalized member columns.

    Skips the dataclass layer; used only inside the optimizer's inner loop,
    the reported result is always re-evaluated through the public path.
    """
    total = 0.0
    scale = 1.0 / (1 << m_subset)
    for i in range(raw.shape[1]):
        v = raw[:, i]
        p = float(np.real(np.vdot(v, v)))
        if p < MEMBER_DROP_TOL:
            continue
        t = (v / math.sqrt(p)).reshape(dims)
        acc = 0.0
        for axes, d in axes_plan:
            if d == 1:
                continue
            red = np.tensordot(t, t.conj(), axes=(axes, axes)).reshape(d, d)
            lam = np.linalg.eigvalsh(red)
            acc += unified_entropy_spectrum(np.clip(lam, 0.0, None), params)
        total += p * acc * scale
    return total


def mixing_ensemble(rho: DensityOperator, mixer: np.ndarray) -> Ensemble:
    """Decomposition of rho induced by an isometric mixer on its support.

    Row i of the m x r mixer combines the square-rooted eigenvectors into
    the unnormalized member |psi_i>; members lighter than 1e-12 are dropped.
    """
    mixer = np.asarray(mixer, dtype=complex)
    vals, vecs = _eigen_support(rho)
    r = vals.size
    if mixer.ndim != 2 or mixer.shape[1] != r:
        raise ValueError(f"mixer must have shape (m, {r}), got {mixer.shape}")
    m = mixer.shape[0]
    if m < r:
        raise ValueError(f"mixer needs at least {r} rows, got {m}")
    if m > r * r:
        raise ValueError(f"mixer rows capped at r^2 = {r * r}, got {m}")
    if np.abs(mixer.conj().T @ mixer - np.eye(r)).max() > ISOMETRY_ATOL:
        raise ValueError("mixer columns are not orthonormal")
    roots = vecs * np.sqrt(vals)
    raw = roots @ mixer.T
    members = []
    for i in range(m):
        v = raw[:, i]
        p = float(np.real(np.vdot(v, v)))
        if p < MEMBER_DROP_TOL:
            continue
        members.append((p, PureState(v / math.sqrt(p), rho.dims)))
    total = math.fsum(p for p, _ in members)
    members = [(p / total, s) for p, s in members]
    return Ensemble(tuple(members))


def mixer_for_ensemble(rho: DensityOperator, ensemble: Ensemble) -> np.ndarray:
    """Mixer that reproduces a known decomposition of rho (e.g. a constructed
    separable one), used to seed a restart."""
    vals, vecs = _eigen_support(rho)
    r = vals.size
    if ensemble.reconstruction_error(rho) > 1e-8:
        raise ValueError("ensemble does not reconstruct rho")
    rows = []
    for p, s in ensemble.members:
        wk = math.sqrt(p) * s.amplitudes
        rows.append((vecs.conj().T @ wk) / np.sqrt(vals))
    mixer = np.array(rows)
    # Scrub the tiny non-isometry left by the eigenbasis projection.
    u, _, vh = np.linalg.svd(mixer, full_matrices=False)
    mixer = u @ vh
    if mixer.shape[0] > r * r:
        raise ValueError(f"ensemble size {mixer.shape[0]} exceeds the r^2 cap {r * r}")
    return mixer


def _unitary(m: int, theta: np.ndarray) -> np.ndarray:
    """Unitary from m diagonal phases followed by Givens (angle, phase) pairs."""
    u = np.diag(np.exp(1j * theta[:m]))
    pos = m
    for i in range(m):
        for j in range(i + 1, m):
            a, ph = theta[pos], theta[pos + 1]
            pos += 2
            g = np.eye(m, dtype=complex)
            c, s = math.cos(a), math.sin(a)
            g[i, i] = c
            g[j, j] = c
            g[i, j] = -np.exp(1j * ph) * s
            g[j, i] = np.exp(-1j * ph) * s
            u = g @ u
    return u


def _n_params(m: int) -> int:
    return m + m * (m - 1)


def _pattern_search(objective, x0: np.ndarray, max_evals: int, step0: float = 0.5,
                    step_tol: float = 1e-4):
    """Compass search: sweep coordinates, halve the step on stalled sweeps."""
    x = x0.copy()
    fx = objective(x)
    evals = 1
    step = step0
    converged = False
    while evals < max_evals:
        improved = False
        for k in range(x.size):
            if evals >= max_evals:
                break
            for sign in (1.0, -1.0):
                cand = x.copy()
                cand[k] += sign * step
                fc = objective(cand)
                evals += 1
                if fc < fx - 1e-14:
                    x, fx = cand, fc
                    improved = True
                    break
                if evals >= max_evals:
                    break
        if not improved:
            step *= 0.5
            if step < step_tol:
                converged = True
                break
    return x, fx, converged, evals


def cce_mixed_upper(
    rho: DensityOperator,
    subset: Iterable[int],
    params: EntropyParams,
    *,
    budget: tuple[int, int] = (50, 500),
    seed: int = 0,
    mixer_size: int | None = None,
    seed_ensembles: Sequence[Ensemble] = (),
) -> RoofResult:
    """Upper bound on the convex-roof measure of a mixed state.

    `budget` is (restarts, objective evaluations per restart). Restart 0
    always starts from the eigendecomposition ensemble; any seed ensembles
    follow; remaining restarts start from seeded random mixer angles. The
    reduction takes the minimum with ties broken by lowest restart index,
    so results are reproducible under a fixed seed.
    """
    s = normalize_subset(subset, rho.n_subsystems)
    vals, vecs = _eigen_support(rho)
    r = int(vals.size)
    if r > MAX_ROOF_RANK:
        raise ResourceLimitError(f"rank {r} exceeds the roof guard of {MAX_ROOF_RANK}")
    restarts, max_evals = budget
    if restarts < 1 or max_evals < 1:
        raise ValueError(f"budget must be positive, got {budget}")

    if r == 1:
        ens = mixing_ensemble(rho, np.eye(1))
        return RoofResult(ens.average(s, params), ens, restarts_used=0, converged=True)

    m = mixer_size if mixer_size is not None else min(r * r, r + 2)
    if not r <= m <= r * r:
        raise ValueError(f"mixer_size must lie in {r}..{r * r}, got {m}")

    bases: list[tuple[np.ndarray, np.ndarray, int]] = []
    bases.append((np.eye(m, dtype=complex), np.zeros(_n_params(m)), m))
    for ens in seed_ensembles:
        v0 = mixer_for_ensemble(rho, ens)
        m_k = v0.shape[0]
        if m_k < m:
            v0 = np.vstack([v0, np.zeros((m - m_k, r), dtype=complex)])
            m_k = m
        # Complete the isometry columns to a unitary search base.
        q, _ = np.linalg.qr(np.hstack([v0, np.eye(m_k, dtype=complex)]))
        base = np.hstack([v0, q[:, r:m_k]])
        bases.append((base, np.zeros(_n_params(m_k)), m_k))
    children = np.random.SeedSequence(seed).spawn(max(0, restarts - len(bases)))
    for child in children:
        rng = np.random.default_rng(child)
        x0 = rng.uniform(-math.pi, math.pi, size=_n_params(m))
        bases.append((np.eye(m, dtype=complex), x0, m))

    roots = vecs * np.sqrt(vals)
    axes_plan = _subset_axes(rho.dims, s)

    def run(start: tuple[np.ndarray, np.ndarray, int]):
        base, x0, m_k = start

        def objective(theta: np.ndarray) -> float:
            mixer = (_unitary(m_k, theta) @ base)[:, :r]
            return _raw_average(roots @ mixer.T, rho.dims, axes_plan, params, len(s))

        x, _, converged, _ = _pattern_search(objective, x0, max_evals)
        mixer = (_unitary(m_k, x) @ base)[:, :r]
        ens = mixing_ensemble(rho, mixer)
        return ens.average(s, params), ens, converged

    results = parallel_map(run, bases)
    best_idx = 0
    for i in range(1, len(results)):
        if results[i][0] < results[best_idx][0]:
            best_idx = i
    fx, ens, converged = results[best_idx]
    return RoofResult(fx, ens, restarts_used=len(results), converged=converged)


@dataclass(frozen=True)
class MixedOrderingResult:
    ensembles_checked: int
    failures: list[str]

    @property
    def all_hold(self) -> bool:
        return not self.failures


def mixed_ordering_spotcheck(
    rho: DensityOperator,
    subset: Iterable[int],
    *,
    n_mixers: int = 100,
    seed: int = 0,
) -> MixedOrderingResult:
    """Chain relations on matched ensembles of a mixed state.

    Evaluating one and the same ensemble under all four benchmark entropies,
    the per-member pure-state chain transfers to the ensemble averages:
    E >= C/ln2, E >= 2C - 1/2, R2 >= C/ln2, C >= T3.
    """
    s = normalize_subset(subset, rho.n_subsystems)
    vals, _ = _eigen_support(rho)
    r = int(vals.size)
    if r > MAX_ROOF_RANK:
        raise ResourceLimitError(f"rank {r} exceeds the roof guard of {MAX_ROOF_RANK}")
    m = min(r * r, r + 2)
    rng = np.random.default_rng(seed)
    failures: list[str] = []
    for trial in range(n_mixers):
        if r == 1:
            mixer = np.eye(1)
        else:
            z = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
            q, _ = np.linalg.qr(z)
            mixer = q[:, :r]
        ens = mixing_ensemble(rho, mixer)
        avg = {k: 0.0 for k in BENCHMARKS}
        for p, member in ens.members:
            spectra = subset_spectra(member, s)
            for k, pars in BENCHMARKS.items():
                avg[k] += p * (
                    math.fsum(unified_entropy_spectrum(spec, pars) for _, spec in sorted(spectra.items()))
                    / (1 << len(s))
                )
        tol = 1e-10
        checks = {
            "e_ge_c_over_ln2": avg["e"] >= avg["c"] / LN2 - tol,
            "e_ge_2c_minus_half": avg["e"] >= 2 * avg["c"] - 0.5 - tol,
            "r2_ge_c_over_ln2": avg["r2"] >= avg["c"] / LN2 - tol,
            "c_ge_t3": avg["c"] >= avg["t3"] - tol,
        }
        for name, ok in checks.items():
            if not ok:
                failures.append(f"mixer {trial}: {name} violated with averages {avg}")
    return MixedOrderingResult(ensembles_checked=n_mixers, failures=failures)
