"""Concentratable entanglement over the power set of a subsystem subset.

For a pure state and a subset s of its subsystems, the measure is the
average unified entropy of the reduced states over all subsets of s,
with the empty subset contributing zero:

    E(s; alpha, beta) = 2^{-|s|} * sum_{chi in P(s)} S_{alpha,beta}(psi_chi)

Subsets are enumerated by binary counting on the sorted labels of s, so
bit j of a mask selects the j-th smallest label. The spectrum of a reduced
state always equals that of its complementary cut, which lets the
evaluation eigensolve the smaller side of each bipartition, and lets the
s = [n] case pair each subset with its complement and halve the work.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import prod
from typing import Iterable, NamedTuple

import numpy as np

from .entropy import (
    EntropyParams,
    fannes_audenaert_bound,
    in_concavity_region,
    in_subadditivity_region,
    unified_entropy_spectrum,
)
from .errors import ResourceLimitError
from .parallel import parallel_map
from .tensor import (
    PureState,
    _check_kraus_complete,
    embed_local,
    normalize_subset,
    trace_distance,
)

__all__ = [
    "MAX_SUBSET_SIZE",
    "BENCHMARKS",
    "MeasureReport",
    "NamedMeasures",
    "OrderingReport",
    "GmeCertificate",
    "subset_spectra",
    "cce_pure",
    "named_measures",
    "ordering_report",
    "tensor_identity_residual",
    "subadditivity_gap",
    "gme_certificate",
    "continuity_gap",
    "locc_monotonicity_spotcheck",
]

MAX_SUBSET_SIZE = 20
GME_MARGIN = 1e-9
LN2 = math.log(2.0)

#: The four benchmark parameter points: von Neumann, Renyi-2, Tsallis-3, linear.
BENCHMARKS = {
    "e": EntropyParams.von_neumann(),
    "r2": EntropyParams.renyi(2.0),
    "t3": EntropyParams.tsallis(3.0),
    "c": EntropyParams.linear(),
}


class NamedMeasures(NamedTuple):
    e: float
    r2: float
    t3: float
    c: float


@dataclass(frozen=True)
class MeasureReport:
    """Value of one measure evaluation plus its per-subset entropy terms.

    Terms are keyed by subset bitmask over the sorted labels of `subset`.
    """

    value: float
    terms: dict[int, float]
    params: EntropyParams
    subset: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "alpha": self.params.alpha,
            "beta": self.params.beta,
            "subset": list(self.subset),
            "terms": {hex(mask): term for mask, term in sorted(self.terms.items())},
        }


@dataclass(frozen=True)
class OrderingReport:
    e: float
    r2: float
    t3: float
    c: float
    renyi_orders: tuple[float, float]
    renyi_lo: float
    renyi_hi: float
    checks: dict[str, bool]

    @property
    def all_hold(self) -> bool:
        return all(self.checks.values())


@dataclass(frozen=True)
class GmeCertificate:
    value: float
    threshold: float
    certified: bool


def _bipartition_spectrum(psi: PureState, chi: tuple[int, ...]) -> np.ndarray:
    """Spectrum of the reduced state on chi, eigensolved on the smaller cut side."""
    n = psi.n_subsystems
    comp = tuple(i for i in range(1, n + 1) if i not in chi)
    if not chi or not comp:
        return np.array([1.0])
    d_chi = prod(psi.dims[i - 1] for i in chi)
    d_comp = prod(psi.dims[i - 1] for i in comp)
    side = chi if d_chi <= d_comp else comp
    other_axes = [i - 1 for i in (comp if side is chi else chi)]
    t = psi.amplitudes.reshape(psi.dims)
    rho = np.tensordot(t, t.conj(), axes=(other_axes, other_axes))
    d = min(d_chi, d_comp)
    vals = np.linalg.eigvalsh(rho.reshape(d, d))
    return np.where(vals < 0.0, 0.0, vals)[::-1].copy()


def subset_spectra(
    psi: PureState, subset: Iterable[int], *, use_symmetry: bool | None = None
) -> dict[int, np.ndarray]:
    """Reduced-state spectra for every subset of `subset`, keyed by bitmask.

    When `subset` covers all subsystems (the default trigger), each subset
    shares its spectrum with its complement, halving the eigensolves.
    """
    s = normalize_subset(subset, psi.n_subsystems)
    m = len(s)
    if m > MAX_SUBSET_SIZE:
        raise ResourceLimitError(
            f"power set of {m} labels exceeds the enumeration guard of {MAX_SUBSET_SIZE}"
        )
    if use_symmetry is None:
        use_symmetry = m == psi.n_subsystems
    elif use_symmetry and m != psi.n_subsystems:
        raise ValueError("complement pairing requires the subset to cover every subsystem")

    full = (1 << m) - 1
    masks = range(1 << m)
    if use_symmetry:
        canonical = [mask for mask in masks if mask <= (full ^ mask)]
    else:
        canonical = list(masks)

    def spectrum_of(mask: int) -> np.ndarray:
        chi = tuple(s[j] for j in range(m) if (mask >> j) & 1)
        return _bipartition_spectrum(psi, chi)

    computed = dict(zip(canonical, parallel_map(spectrum_of, canonical)))
    out: dict[int, np.ndarray] = {}
    for mask in masks:
        out[mask] = computed[mask] if mask in computed else computed[full ^ mask]
    return out


def cce_pure(
    psi: PureState,
    subset: Iterable[int],
    params: EntropyParams,
    *,
    use_symmetry: bool | None = None,
) -> MeasureReport:
    """Concentratable entanglement of a pure state over P(subset)."""
    s = normalize_subset(subset, psi.n_subsystems)
    spectra = subset_spectra(psi, s, use_symmetry=use_symmetry)
    terms = {mask: unified_entropy_spectrum(spec, params) for mask, spec in spectra.items()}
    value = math.fsum(terms[mask] for mask in sorted(terms)) / (1 << len(s))
    return MeasureReport(value=value, terms=terms, params=params, subset=s)


def _cce_value(psi: PureState, subset: tuple[int, ...], params: EntropyParams) -> float:
    if not subset:
        return 0.0
    return cce_pure(psi, subset, params).value


def named_measures(psi: PureState, subset: Iterable[int]) -> NamedMeasures:
    """The four benchmark measures (von Neumann, Renyi-2, Tsallis-3, linear)
    from a single pass over the subset spectra."""
    s = normalize_subset(subset, psi.n_subsystems)
    spectra = subset_spectra(psi, s)
    scale = 1.0 / (1 << len(s))
    vals = {
        k: math.fsum(unified_entropy_spectrum(spec, p) for _, spec in sorted(spectra.items())) * scale
        for k, p in BENCHMARKS.items()
    }
    return NamedMeasures(**vals)


def ordering_report(
    psi: PureState,
    subset: Iterable[int],
    renyi_orders: tuple[float, float] = (1.0, 2.0),
    *,
    tol: float = 1e-10,
) -> OrderingReport:
    """Benchmark values plus the chain of lower-bound relations among them."""
    lo, hi = renyi_orders
    if not 0 < lo <= hi:
        raise ValueError(f"need 0 < alpha_lo <= alpha_hi, got {renyi_orders}")
    s = normalize_subset(subset, psi.n_subsystems)
    spectra = subset_spectra(psi, s)
    scale = 1.0 / (1 << len(s))

    def value(p: EntropyParams) -> float:
        return math.fsum(unified_entropy_spectrum(spec, p) for _, spec in sorted(spectra.items())) * scale

    e = value(BENCHMARKS["e"])
    r2 = value(BENCHMARKS["r2"])
    t3 = value(BENCHMARKS["t3"])
    c = value(BENCHMARKS["c"])
    renyi_lo = value(EntropyParams.renyi(lo)) if lo != 1.0 else e
    renyi_hi = value(EntropyParams.renyi(hi)) if hi != 1.0 else e
    checks = {
        "e_ge_c_over_ln2": e >= c / LN2 - tol,
        "e_ge_2c_minus_half": e >= 2.0 * c - 0.5 - tol,
        "r2_ge_c_over_ln2": r2 >= c / LN2 - tol,
        "c_ge_t3": c >= t3 - tol,
        "renyi_alpha_monotone": renyi_lo >= renyi_hi - tol,
    }
    return OrderingReport(
        e=e, r2=r2, t3=t3, c=c,
        renyi_orders=(lo, hi), renyi_lo=renyi_lo, renyi_hi=renyi_hi,
        checks=checks,
    )


def tensor_identity_residual(
    psi_a: PureState, psi_b: PureState, subset: Iterable[int], params: EntropyParams
) -> float:
    """Absolute defect of the tensor-product composition identity.

    For psi = psi_a (x) psi_b and s split across the factor boundary,

        E(s) = E(s&A) + E(s&B) + (1-alpha)*beta * E(s&A) * E(s&B)

    with the cross term vanishing on the von Neumann and Renyi branches.
    """
    n_a = psi_a.n_subsystems
    n = n_a + psi_b.n_subsystems
    s = normalize_subset(subset, n)
    s_a = tuple(i for i in s if i <= n_a)
    s_b = tuple(i - n_a for i in s if i > n_a)
    joint = PureState(np.kron(psi_a.amplitudes, psi_b.amplitudes), psi_a.dims + psi_b.dims)
    e_joint = _cce_value(joint, s, params)
    e_a = _cce_value(psi_a, s_a, params)
    e_b = _cce_value(psi_b, s_b, params)
    if params.is_von_neumann or params.is_renyi:
        cross = 0.0
    else:
        cross = (1.0 - params.alpha) * params.beta
    return abs(e_joint - e_a - e_b - cross * e_a * e_b)


def subadditivity_gap(
    psi: PureState, s: Iterable[int], s_prime: Iterable[int], params: EntropyParams
) -> float:
    """E(s) + E(s') - E(s u s') for disjoint subsets, on the subadditive region."""
    if not in_subadditivity_region(params):
        raise ValueError(
            f"subadditivity holds on alpha >= 1 at beta = 1 (or the von Neumann limit), "
            f"got alpha={params.alpha}, beta={params.beta}"
        )
    n = psi.n_subsystems
    a = normalize_subset(s, n)
    b = normalize_subset(s_prime, n)
    if set(a) & set(b):
        raise ValueError(f"subsets overlap: {a} and {b}")
    union = tuple(sorted(a + b))
    spectra = subset_spectra(psi, union)
    terms = {mask: unified_entropy_spectrum(spec, params) for mask, spec in spectra.items()}
    bit_of = {label: j for j, label in enumerate(union)}
    mask_a = sum(1 << bit_of[i] for i in a)
    mask_b = sum(1 << bit_of[i] for i in b)

    def part(mask_sub: int, size: int) -> float:
        inside = [mask for mask in sorted(terms) if mask & ~mask_sub == 0]
        return math.fsum(terms[mask] for mask in inside) / (1 << size)

    e_union = math.fsum(terms[mask] for mask in sorted(terms)) / (1 << len(union))
    return part(mask_a, len(a)) + part(mask_b, len(b)) - e_union


def gme_certificate(psi: PureState, params: EntropyParams) -> GmeCertificate:
    """Sufficient test for genuine tripartite entanglement on equal qudits.

    The threshold is the largest value any biseparable three-qudit pure state
    can reach; certification requires clearing it by more than floating-point
    noise, since biseparable states can sit exactly on the threshold.
    """
    if psi.n_subsystems != 3:
        raise ValueError(f"certificate needs exactly 3 subsystems, got {psi.n_subsystems}")
    d = psi.dims[0]
    if any(dim != d for dim in psi.dims):
        raise ValueError(f"certificate needs equal local dimensions, got {psi.dims}")
    value = cce_pure(psi, (1, 2, 3), params).value
    if params.is_von_neumann or params.is_renyi:
        threshold = 0.5 * math.log2(d)
    else:
        e = (1.0 - params.alpha) * params.beta
        threshold = (d**e - 1.0) / (2.0 * e)
    return GmeCertificate(value=value, threshold=threshold, certified=value > threshold + GME_MARGIN)


def continuity_gap(
    psi: PureState, phi: PureState, subset: Iterable[int], params: EntropyParams
) -> tuple[float, float]:
    """(|E(psi) - E(phi)|, continuity bound) for nearby pure states.

    The bound is 2*alpha*eps/(alpha-1) for alpha > 1, beta >= 1, and the
    Fannes-Audenaert envelope eps*log2(d-1) + h(eps) on the von Neumann
    branch, with eps the trace distance of the two states.
    """
    if psi.dims != phi.dims:
        raise ValueError(f"dimension mismatch: {psi.dims} vs {phi.dims}")
    eps = trace_distance(psi.density(), phi.density())
    if eps >= 0.5:
        raise ValueError(f"trace distance {eps} is outside the hypothesis eps < 1/2")
    s = normalize_subset(subset, psi.n_subsystems)
    lhs = abs(_cce_value(psi, s, params) - _cce_value(phi, s, params))
    if params.is_von_neumann:
        bound = fannes_audenaert_bound(eps, psi.dim) if eps > 0.0 else 0.0
    elif params.alpha > 1 and params.beta >= 1:
        bound = 2.0 * params.alpha * eps / (params.alpha - 1.0)
    else:
        raise ValueError(
            f"no continuity bound for alpha={params.alpha}, beta={params.beta}; "
            "need alpha > 1 with beta >= 1, or the von Neumann limit"
        )
    return lhs, bound


def locc_monotonicity_spotcheck(
    psi: PureState,
    subset: Iterable[int],
    params: EntropyParams,
    site: int,
    kraus: list[np.ndarray],
) -> float:
    """E(psi) minus the branch-averaged measure after a local operation.

    Restricted to rank-1 Kraus elements so each outcome branch is pure and
    the pure-state formula applies directly; nonnegative (within tolerance)
    for parameters in the concavity region.
    """
    if not in_concavity_region(params):
        raise ValueError(
            f"average monotonicity requires the concavity region, got "
            f"alpha={params.alpha}, beta={params.beta}"
        )
    if not 1 <= site <= psi.n_subsystems:
        raise ValueError(f"site must lie in 1..{psi.n_subsystems}, got {site}")
    d = psi.dims[site - 1]
    ops = _check_kraus_complete(kraus, d)
    # A single-element set is unitary by completeness; multi-outcome sets are
    # restricted to rank-1 elements.
    if len(ops) > 1:
        for k in ops:
            sv = np.linalg.svd(k, compute_uv=False)
            if sv.size > 1 and sv[1] > 1e-10 * max(1.0, float(sv[0])):
                raise ValueError("non-rank-1 Kraus element rejected for this check")
    s = normalize_subset(subset, psi.n_subsystems)
    before = _cce_value(psi, s, params)
    avg = 0.0
    for k in ops:
        v = embed_local(k, site, psi.dims) @ psi.amplitudes
        p = float(np.real(np.vdot(v, v)))
        if p < 1e-12:
            continue
        branch = PureState(v / math.sqrt(p), psi.dims)
        avg += p * _cce_value(branch, s, params)
    return before - avg
