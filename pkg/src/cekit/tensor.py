"""Dense complex linear algebra on small tensor-product Hilbert spaces.

Subsystems carry 1-based labels and subsystem 1 is the slowest-varying
(most significant) tensor index. Every operation is a pure function of
immutable inputs, so values are safe to share across parallel workers.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "PureState",
    "DensityOperator",
    "normalize_subset",
    "kron",
    "reduced_state",
    "partial_trace",
    "hermitian_eigenvalues",
    "trace_power",
    "trace_distance",
    "apply_local_kraus",
    "apply_local_kraus_pure",
    "embed_local",
    "permute_subsystems",
]

NORM_ATOL = 1e-12
HERMITIAN_ATOL = 1e-10
NEGATIVE_EIG_TOL = 1e-10
# Eigenvalues at or below this floor are numerically-zero dust and take the
# continuous-extension value 0^alpha := 0; without the floor, small-alpha
# powers amplify 1e-17 noise into order-one entropy errors.
ZERO_EIG_FLOOR = 1e-12
KRAUS_COMPLETENESS_ATOL = 1e-10


def _as_dims(dims: Iterable[int]) -> tuple[int, ...]:
    out = tuple(int(d) for d in dims)
    if not out:
        raise ValueError("dims must be nonempty")
    if any(d < 2 for d in out):
        raise ValueError(f"every local dimension must be >= 2, got {out}")
    return out


def normalize_subset(subset: Iterable[int], n: int, *, allow_empty: bool = False) -> tuple[int, ...]:
    """Validate 1-based subsystem labels and return them sorted ascending."""
    idx = tuple(sorted(int(i) for i in subset))
    if not idx:
        if allow_empty:
            return idx
        raise ValueError("subset must be nonempty")
    if idx[0] < 1 or idx[-1] > n:
        raise ValueError(f"subsystem labels must lie in 1..{n}, got {idx}")
    if len(set(idx)) != len(idx):
        raise ValueError(f"duplicate subsystem labels in {idx}")
    return idx


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector with an explicit tensor-product structure."""

    amplitudes: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = _as_dims(self.dims)
        amp = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amp.size != prod(dims):
            raise ValueError(f"amplitude length {amp.size} does not match dims {dims}")
        norm = float(np.linalg.norm(amp))
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"squared norm must be 1 within {NORM_ATOL}, got norm {norm}")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)
        object.__setattr__(self, "dims", dims)

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return int(self.amplitudes.size)

    def density(self) -> "DensityOperator":
        return DensityOperator(np.outer(self.amplitudes, self.amplitudes.conj()), self.dims)


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, positive-semidefinite, unit-trace matrix with dimension structure."""

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = _as_dims(self.dims)
        mat = np.array(self.matrix, dtype=complex)
        d = prod(dims)
        if mat.shape != (d, d):
            raise ValueError(f"matrix shape {mat.shape} does not match dims {dims}")
        if np.abs(mat - mat.conj().T).max() > 1e-12:
            raise ValueError("matrix is not Hermitian within 1e-12")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > 1e-12:
            raise ValueError(f"trace must be 1 within 1e-12, got {tr}")
        lo = float(np.linalg.eigvalsh(mat)[0])
        if lo < -NEGATIVE_EIG_TOL:
            raise ValueError(f"matrix has eigenvalue {lo} below -{NEGATIVE_EIG_TOL}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", dims)

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two vectors or two matrices.

    Row-major index convention: index(i, j) = i * dim(b) + j.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != b.ndim or a.ndim not in (1, 2):
        raise ValueError("operands must be both vectors or both matrices")
    return np.kron(a, b)


def _clamped_descending(vals: np.ndarray) -> np.ndarray:
    lo = float(vals.min())
    if lo < -NEGATIVE_EIG_TOL:
        raise ValueError(f"eigenvalue {lo} below -{NEGATIVE_EIG_TOL}; input is not PSD")
    out = np.where(vals < 0.0, 0.0, vals)[::-1].copy()
    return out


def hermitian_eigenvalues(m: np.ndarray | DensityOperator, *, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Descending real spectrum of a Hermitian PSD matrix.

    Negative eigenvalues within -1e-10 (finite-arithmetic drift) are clamped
    to zero so that downstream entropies stay real; anything more negative is
    rejected.
    """
    mat = m.matrix if isinstance(m, DensityOperator) else np.asarray(m, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("input must be a square matrix")
    if np.abs(mat - mat.conj().T).max() > atol:
        raise ValueError(f"matrix is not Hermitian within {atol}")
    return _clamped_descending(np.linalg.eigvalsh(mat))


def reduced_state(psi: PureState, subset: Iterable[int]) -> DensityOperator:
    """Reduced density matrix of `psi` on `subset`, complement traced out.

    Kept subsystems appear in ascending original order.
    """
    keep = normalize_subset(subset, psi.n_subsystems)
    keep_axes = [i - 1 for i in keep]
    traced = [ax for ax in range(psi.n_subsystems) if ax not in keep_axes]
    t = psi.amplitudes.reshape(psi.dims)
    rho = np.tensordot(t, t.conj(), axes=(traced, traced))
    dk = prod(psi.dims[ax] for ax in keep_axes)
    return DensityOperator(rho.reshape(dk, dk), tuple(psi.dims[ax] for ax in keep_axes))


def partial_trace(rho: DensityOperator, keep: Iterable[int]) -> DensityOperator:
    """Partial trace keeping `keep`, the mixed-state analogue of reduced_state."""
    n = rho.n_subsystems
    kept = normalize_subset(keep, n)
    kept_axes = [i - 1 for i in kept]
    traced = [ax for ax in range(n) if ax not in kept_axes]
    t = rho.matrix.reshape(rho.dims + rho.dims)
    remaining = n
    for ax in sorted(traced, reverse=True):
        t = np.trace(t, axis1=ax, axis2=ax + remaining)
        remaining -= 1
    dk = prod(rho.dims[ax] for ax in kept_axes)
    return DensityOperator(t.reshape(dk, dk), tuple(rho.dims[ax] for ax in kept_axes))


def trace_power(rho: DensityOperator | np.ndarray, alpha: float) -> float:
    """Sum of eigenvalues raised to `alpha`, with 0**alpha treated as 0."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    lam = hermitian_eigenvalues(rho)
    lam = lam[lam > ZERO_EIG_FLOOR]
    return float(np.sum(lam**alpha))


def trace_distance(a: DensityOperator, b: DensityOperator) -> float:
    """Half the trace norm of the difference of two equal-dimension states."""
    if a.dims != b.dims:
        raise ValueError(f"dimension mismatch: {a.dims} vs {b.dims}")
    diff_eigs = np.linalg.eigvalsh(a.matrix - b.matrix)
    return float(0.5 * np.abs(diff_eigs).sum())


def embed_local(op: np.ndarray, site: int, dims: Sequence[int]) -> np.ndarray:
    """Embed a single-site operator into the full space via identity padding."""
    dims = _as_dims(dims)
    if not 1 <= site <= len(dims):
        raise ValueError(f"site must lie in 1..{len(dims)}, got {site}")
    op = np.asarray(op, dtype=complex)
    d = dims[site - 1]
    if op.shape != (d, d):
        raise ValueError(f"operator shape {op.shape} does not match local dimension {d}")
    left = prod(dims[: site - 1])
    right = prod(dims[site:])
    return np.kron(np.kron(np.eye(left), op), np.eye(right))


def _check_kraus_complete(kraus: Sequence[np.ndarray], d: int) -> list[np.ndarray]:
    ops = [np.asarray(k, dtype=complex) for k in kraus]
    if not ops:
        raise ValueError("empty Kraus set")
    for k in ops:
        if k.shape != (d, d):
            raise ValueError(f"Kraus operator shape {k.shape} does not match local dimension {d}")
    total = sum(k.conj().T @ k for k in ops)
    if np.abs(total - np.eye(d)).max() > KRAUS_COMPLETENESS_ATOL:
        raise ValueError("Kraus set violates completeness on the site")
    return ops


def apply_local_kraus(
    rho: DensityOperator, site: int, kraus: Sequence[np.ndarray]
) -> list[tuple[float, DensityOperator]]:
    """Outcome branches of a local operation acting on one subsystem.

    Returns (probability, normalized post-measurement state) pairs; branches
    with probability below 1e-12 are dropped.
    """
    if not 1 <= site <= rho.n_subsystems:
        raise ValueError(f"site must lie in 1..{rho.n_subsystems}, got {site}")
    ops = _check_kraus_complete(kraus, rho.dims[site - 1])
    branches: list[tuple[float, DensityOperator]] = []
    for k in ops:
        full = embed_local(k, site, rho.dims)
        out = full @ rho.matrix @ full.conj().T
        p = float(np.real(np.trace(out)))
        if p < 1e-12:
            continue
        branches.append((p, DensityOperator(out / p, rho.dims)))
    return branches


def apply_local_kraus_pure(
    psi: PureState, site: int, kraus: Sequence[np.ndarray]
) -> list[tuple[float, PureState]]:
    """Pure-state branches of a local operation; one Kraus operator per outcome."""
    if not 1 <= site <= psi.n_subsystems:
        raise ValueError(f"site must lie in 1..{psi.n_subsystems}, got {site}")
    ops = _check_kraus_complete(kraus, psi.dims[site - 1])
    branches: list[tuple[float, PureState]] = []
    for k in ops:
        v = embed_local(k, site, psi.dims) @ psi.amplitudes
        p = float(np.real(np.vdot(v, v)))
        if p < 1e-12:
            continue
        branches.append((p, PureState(v / np.sqrt(p), psi.dims)))
    return branches


def permute_subsystems(psi: PureState, order: Sequence[int]) -> PureState:
    """Relabel subsystems so that new subsystem k is old subsystem order[k-1]."""
    n = psi.n_subsystems
    perm = [int(i) for i in order]
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"order must be a permutation of 1..{n}, got {order}")
    axes = [i - 1 for i in perm]
    t = psi.amplitudes.reshape(psi.dims).transpose(axes)
    return PureState(t.reshape(-1), tuple(psi.dims[ax] for ax in axes))
