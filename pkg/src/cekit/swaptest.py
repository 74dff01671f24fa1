"""Exact and shot-sampled simulation of the n-qubit parallelized SWAP test.

Register layout: controls are qubits 1..n, the first state copy sits on
n+1..2n and the second on 2n+1..3n. A control bitstring z is read with
control 1 as the most significant bit. The probability of the event
"every control in s reads 0" determines the linear-entropy measure:

    C(s) = 1 - sum_{z in Z0(s)} p(z)

where Z0(s) is the set of bitstrings with 0 at every index in s.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ResourceLimitError
from .tensor import PureState, normalize_subset

__all__ = [
    "MAX_SWAP_QUBITS",
    "ControlDistribution",
    "ShotRecord",
    "BoundTriplet",
    "swap_test_distribution",
    "cce_from_distribution",
    "sample_shots",
    "estimate_from_shots",
    "bounds_from_estimate",
]

MAX_SWAP_QUBITS = 5
_H = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / math.sqrt(2.0)


@dataclass(frozen=True)
class ControlDistribution:
    """Exact outcome distribution of the control register."""

    probs: np.ndarray
    n: int

    def __post_init__(self) -> None:
        p = np.array(self.probs, dtype=float).reshape(-1)
        if p.size != 1 << self.n:
            raise ValueError(f"need 2^{self.n} probabilities, got {p.size}")
        if float(p.min()) < -1e-12:
            raise ValueError(f"negative probability {p.min()}")
        total = float(p.sum())
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"probabilities must sum to 1 within 1e-10, got {total}")
        p = np.clip(p, 0.0, None)
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    def bitstring(self, z: int) -> str:
        return format(z, f"0{self.n}b")

    def as_dict(self) -> dict[str, float]:
        return {self.bitstring(z): float(p) for z, p in enumerate(self.probs)}

    def to_dict(self) -> dict:
        return {"n": self.n, "probs": self.as_dict()}


@dataclass(frozen=True)
class ShotRecord:
    """Multinomial counts over control bitstrings."""

    counts: dict[str, int]
    shots: int
    seed: int

    def __post_init__(self) -> None:
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts must sum to the number of shots")

    def to_dict(self) -> dict:
        return {"counts": dict(self.counts), "shots": self.shots, "seed": self.seed}


def swap_test_distribution(psi: PureState) -> ControlDistribution:
    """Simulate the parallelized SWAP test on two copies of a qubit state.

    n controls in |0>, Hadamards, one controlled-SWAP per index (control i
    swaps qubit i of copy one with qubit i of copy two), Hadamards again,
    then the marginal distribution of the control register.
    """
    if any(d != 2 for d in psi.dims):
        raise ValueError(f"SWAP test is defined for qubit registers, got dims {psi.dims}")
    n = psi.n_subsystems
    if n > MAX_SWAP_QUBITS:
        raise ResourceLimitError(f"statevector of 3n = {3 * n} qubits exceeds the n <= {MAX_SWAP_QUBITS} guard")
    total = 3 * n
    # Controls |0...0> lead the register, so the two-copy amplitudes fill
    # the control-index-0 block of the joint vector.
    state = np.zeros(2**total, dtype=complex)
    state[: 2 ** (2 * n)] = np.kron(psi.amplitudes, psi.amplitudes)
    t = state.reshape([2] * total)

    for c in range(n):
        t = _apply_single(t, _H, c)
    for i in range(n):
        t = _apply_cswap(t, i, n + i, 2 * n + i)
    for c in range(n):
        t = _apply_single(t, _H, c)

    probs = np.abs(t.reshape(2**n, -1)) ** 2
    return ControlDistribution(probs.sum(axis=1), n)


def _apply_single(t: np.ndarray, gate: np.ndarray, axis: int) -> np.ndarray:
    out = np.tensordot(gate, t, axes=([1], [axis]))
    return np.moveaxis(out, 0, axis)


def _apply_cswap(t: np.ndarray, control: int, a: int, b: int) -> np.ndarray:
    idx = [slice(None)] * t.ndim
    idx[control] = 1
    a_adj = a - (a > control)
    b_adj = b - (b > control)
    out = t.copy()
    out[tuple(idx)] = np.swapaxes(t[tuple(idx)], a_adj, b_adj)
    return out


def _zero_mask(n: int, subset: Iterable[int]) -> int:
    s = normalize_subset(subset, n)
    return sum(1 << (n - i) for i in s)


def cce_from_distribution(dist: ControlDistribution, subset: Iterable[int]) -> float:
    """Linear-entropy measure estimate 1 - sum over Z0(subset) of p(z)."""
    mask = _zero_mask(dist.n, subset)
    keep = [z for z in range(1 << dist.n) if z & mask == 0]
    return 1.0 - float(np.sum(dist.probs[keep]))


def sample_shots(dist: ControlDistribution, shots: int, seed: int) -> ShotRecord:
    """Multinomial draw from the exact distribution, reproducible under seed."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, dist.probs)
    record = {
        dist.bitstring(z): int(c) for z, c in enumerate(counts) if c > 0
    }
    return ShotRecord(counts=record, shots=shots, seed=seed)


def estimate_from_shots(record: ShotRecord, n: int, subset: Iterable[int]) -> tuple[float, float]:
    """(estimate, binomial standard error) of C(subset) from sampled counts."""
    mask = _zero_mask(n, subset)
    hits = sum(c for z, c in record.counts.items() if int(z, 2) & mask == 0)
    c_hat = 1.0 - hits / record.shots
    sigma = math.sqrt(max(c_hat * (1.0 - c_hat), 0.0) / record.shots)
    return c_hat, sigma


@dataclass(frozen=True)
class BoundTriplet:
    e_lower: float
    r2_lower: float
    t3_upper: float

    def to_dict(self) -> dict:
        return {"e_lower": self.e_lower, "r2_lower": self.r2_lower, "t3_upper": self.t3_upper}


def bounds_from_estimate(c: float) -> BoundTriplet:
    """Measure bounds implied by a linear-entropy value c.

    The von Neumann measure is bounded below by max(c/ln2, 2c - 1/2), the
    Renyi-2 measure by c/ln2, and the Tsallis-3 measure above by c.
    """
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"estimate must lie in [0, 1], got {c}")
    return BoundTriplet(
        e_lower=max(c / math.log(2.0), 2.0 * c - 0.5),
        r2_lower=c / math.log(2.0),
        t3_upper=c,
    )
