"""The two-parameter unified entropy, its named limits, and order oracles.

Branch conventions (base 2 wherever a logarithm appears):

    alpha != 1, beta > 0:  [ (Tr rho^alpha)^beta - 1 ] / ((1 - alpha) * beta)
    beta  == 0 (Renyi):    log2(Tr rho^alpha) / (1 - alpha)
    alpha == 1 (von Neumann):  -Tr rho log2 rho, with 0 log 0 := 0

The prefactor 1/((1-alpha)*beta) is numerically unstable near the limits,
so dispatch happens on explicit thresholds rather than on the raw formula.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .tensor import ZERO_EIG_FLOOR, DensityOperator, hermitian_eigenvalues

__all__ = [
    "EntropyParams",
    "unified_entropy",
    "unified_entropy_spectrum",
    "binary_entropy",
    "majorizes",
    "schur_concavity_witness",
    "alpha_monotonicity_gap",
    "fannes_audenaert_bound",
    "in_concavity_region",
    "in_subadditivity_region",
    "max_entropy_value",
]

VON_NEUMANN_ALPHA_ATOL = 1e-9
RENYI_BETA_ATOL = 1e-12
PROB_SUM_ATOL = 1e-10


@dataclass(frozen=True)
class EntropyParams:
    """Entropy order pair (alpha, beta); alpha=1 and beta=0 select limit branches."""

    alpha: float
    beta: float = 1.0

    def __post_init__(self) -> None:
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.beta < 0:
            raise ValueError(f"beta must be nonnegative, got {self.beta}")

    @property
    def is_von_neumann(self) -> bool:
        return abs(self.alpha - 1.0) < VON_NEUMANN_ALPHA_ATOL

    @property
    def is_renyi(self) -> bool:
        return self.beta < RENYI_BETA_ATOL

    @classmethod
    def von_neumann(cls) -> "EntropyParams":
        return cls(1.0, 1.0)

    @classmethod
    def renyi(cls, alpha: float) -> "EntropyParams":
        return cls(alpha, 0.0)

    @classmethod
    def tsallis(cls, alpha: float) -> "EntropyParams":
        return cls(alpha, 1.0)

    @classmethod
    def linear(cls) -> "EntropyParams":
        return cls(2.0, 1.0)


def in_concavity_region(p: EntropyParams) -> bool:
    """Parameter region on which the entropy is concave (and the measure an
    average-monotone): {0<a<=1, ab<=1} u {a>=1, ab>=1} u {0<a<1, 0<=b<=1}."""
    a, b = p.alpha, p.beta
    if 0 < a <= 1 and a * b <= 1:
        return True
    if a >= 1 and a * b >= 1:
        return True
    if 0 < a < 1 and 0 <= b <= 1:
        return True
    return False


def in_subadditivity_region(p: EntropyParams) -> bool:
    """Parameters with a subadditive entropy: alpha >= 1 at beta = 1, plus the
    von Neumann limit."""
    if p.is_von_neumann:
        return True
    return p.alpha >= 1 and p.beta == 1.0


def _as_prob_vector(v: Iterable[float]) -> np.ndarray:
    arr = np.asarray(list(v) if not isinstance(v, np.ndarray) else v, dtype=float).reshape(-1)
    if arr.size == 0:
        raise ValueError("probability vector must be nonempty")
    if float(arr.min()) < -1e-10:
        raise ValueError(f"negative probability {arr.min()}")
    total = float(arr.sum())
    if abs(total - 1.0) > PROB_SUM_ATOL:
        raise ValueError(f"probabilities must sum to 1 within {PROB_SUM_ATOL}, got {total}")
    return np.clip(arr, 0.0, None)


def unified_entropy_spectrum(spectrum: Iterable[float], p: EntropyParams) -> float:
    """Unified entropy evaluated on a clamped eigenvalue vector.

    Entries at or below the numerically-zero floor are dropped under the
    0^alpha := 0 and 0 log 0 := 0 conventions.
    """
    lam = np.asarray(spectrum, dtype=float)
    lam = lam[lam > ZERO_EIG_FLOOR]
    if p.is_von_neumann:
        return float(-(lam * np.log2(lam)).sum()) + 0.0
    t = float((lam**p.alpha).sum())
    if p.is_renyi:
        return math.log2(t) / (1.0 - p.alpha) + 0.0
    return (t**p.beta - 1.0) / ((1.0 - p.alpha) * p.beta) + 0.0


def unified_entropy(rho: DensityOperator | np.ndarray, p: EntropyParams) -> float:
    """Unified entropy of a density operator."""
    return unified_entropy_spectrum(hermitian_eigenvalues(rho), p)


def binary_entropy(eps: float) -> float:
    """-e log2 e - (1-e) log2 (1-e), zero at both endpoints."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"argument must lie in [0, 1], got {eps}")
    if eps == 0.0 or eps == 1.0:
        return 0.0
    return float(-eps * math.log2(eps) - (1.0 - eps) * math.log2(1.0 - eps))


def majorizes(lam: Iterable[float], mu: Iterable[float], *, atol: float = 1e-10) -> bool:
    """True iff lam majorizes mu: descending partial sums of lam dominate mu's."""
    a = np.sort(_as_prob_vector(lam))[::-1]
    b = np.sort(_as_prob_vector(mu))[::-1]
    size = max(a.size, b.size)
    a = np.pad(a, (0, size - a.size))
    b = np.pad(b, (0, size - b.size))
    return bool(np.all(np.cumsum(a) >= np.cumsum(b) - atol))


def schur_concavity_witness(lam: Iterable[float], mu: Iterable[float], p: EntropyParams) -> float:
    """Signed gap S(diag lam) - S(diag mu); nonnegative whenever mu majorizes lam."""
    return unified_entropy_spectrum(_as_prob_vector(lam), p) - unified_entropy_spectrum(
        _as_prob_vector(mu), p
    )


def alpha_monotonicity_gap(
    rho: DensityOperator | np.ndarray, alpha_lo: float, alpha_hi: float, beta: float
) -> float:
    """S_{alpha_lo,beta}(rho) - S_{alpha_hi,beta}(rho) for alpha_lo <= alpha_hi, beta >= 1."""
    if not 0 < alpha_lo <= alpha_hi:
        raise ValueError(f"need 0 < alpha_lo <= alpha_hi, got {alpha_lo}, {alpha_hi}")
    if beta < 1:
        raise ValueError(f"beta must be >= 1, got {beta}")
    lam = hermitian_eigenvalues(rho)
    return unified_entropy_spectrum(lam, EntropyParams(alpha_lo, beta)) - unified_entropy_spectrum(
        lam, EntropyParams(alpha_hi, beta)
    )


def fannes_audenaert_bound(eps: float, d: int) -> float:
    """Continuity envelope eps*log2(d-1) + h(eps) for the von Neumann branch.

    Only defined on 0 <= eps < 1/2; larger eps falls outside the hypothesis
    and is flagged rather than computed.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if not 0.0 <= eps:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    if eps >= 0.5:
        raise ValueError(f"eps must be < 1/2, got {eps}")
    return eps * math.log2(d - 1) + binary_entropy(eps)


def max_entropy_value(d: int, p: EntropyParams) -> float:
    """Entropy of the d-dimensional maximally mixed state."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if p.is_von_neumann or p.is_renyi:
        return math.log2(d)
    e = (1.0 - p.alpha) * p.beta
    return (d**e - 1.0) / e
