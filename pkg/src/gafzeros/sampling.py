"""Sampling coefficient blocks of the stationary Gaussian process.

A block (xi_0, ..., xi_N) is drawn through the discretized spectral
representation: independent standard complex normals sit on a frequency grid
(cell midpoints for the density, one node per atom), and

    xi_k = sum_j exp(-i k t_j) sqrt(w_j) zeta_j.

The cell masses sum to one exactly, so every marginal has unit variance by
construction, and the empirical covariances converge to the Fourier
coefficients of the measure as replicas accumulate.

Reproducibility contract: ``sample_block(F, N, seed)`` is bit-stable for a
fixed (seed, measure, N, grid).  Replica seeds are derived with SplitMix64:

    state  = (seed + (index + 1) * 0x9E3779B97F4A7C15) mod 2^64
    state ^= state >> 30;  state *= 0xBF58476D1CE4E5B9;  state &= 2^64-1
    state ^= state >> 27;  state *= 0x94D049BB133111EB;  state &= 2^64-1
    state ^= state >> 31

and the result feeds numpy's PCG64.  Counts produced from these streams are
reproducible across runs; other languages re-implementing the hash get the
same replica seeds even though their normal variates will differ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .periodic import PI, TWOPI
from .spectral import SpectralMeasure

__all__ = [
    "CoefficientBlock", "sample_block", "sample_blocks", "empirical_covariance",
    "radius_check", "replica_seed", "spectral_nodes",
]

_MASK64 = (1 << 64) - 1


def replica_seed(seed: int, index: int) -> int:
    """SplitMix64-derived seed for one replica; see the module docstring."""
    state = (int(seed) + (int(index) + 1) * 0x9E3779B97F4A7C15) & _MASK64
    state ^= state >> 30
    state = (state * 0xBF58476D1CE4E5B9) & _MASK64
    state ^= state >> 27
    state = (state * 0x94D049BB133111EB) & _MASK64
    state ^= state >> 31
    return state


@dataclass(frozen=True)
class CoefficientBlock:
    """One sampled coefficient vector with its provenance."""

    values: np.ndarray
    seed: int
    F_label: str
    grid_size: int

    @property
    def degree(self) -> int:
        return self.values.size - 1


def default_grid_size(N: int) -> int:
    return max(8 * (N + 1), 4096)


def spectral_nodes(F: SpectralMeasure, M: int):
    """Frequency nodes and masses: density cells first, atoms last.

    Step densities are integrated exactly over each cell; trig-polynomial
    densities use their exact antiderivative; anything else takes
    midpoint * width.  Density masses are rescaled so the total, including
    atoms, is exactly one.
    """
    F.validate_normalized()
    nodes = []
    masses = []
    atom_mass = F.atom_mass
    if F.density is not None:
        edges = -PI + TWOPI * np.arange(M + 1) / M
        mids = 0.5 * (edges[:-1] + edges[1:])
        w = _cell_masses(F.density, edges, mids)
        total = w.sum()
        if total <= 0:
            raise DomainError("density part carries no mass")
        w *= (1.0 - atom_mass) / total
        nodes.append(mids)
        masses.append(w)
    for t, m in F.atoms:
        nodes.append(np.array([t]))
        masses.append(np.array([m]))
    return np.concatenate(nodes), np.concatenate(masses)


def _cell_masses(dens, edges, mids):
    if dens.trig is not None:
        tp = dens.trig
        d = tp.degree
        ks = np.arange(-d, d + 1)
        anti = np.zeros((edges.size, 2 * d + 1), dtype=complex)
        nonzero = ks != 0
        anti[:, nonzero] = np.exp(1j * np.outer(edges, ks[nonzero])) / (1j * ks[nonzero])
        anti[:, d] = edges
        prim = np.real(anti @ tp.c)
        return np.diff(prim)
    if dens.breakpoints.size:
        vals = dens(mids)
        w = vals * np.diff(edges)
        # correct the cells that straddle a jump by exact sub-cell lengths
        for b in dens.breakpoints:
            idx = np.searchsorted(edges, b) - 1
            if 0 <= idx < mids.size:
                lo, hi = edges[idx], edges[idx + 1]
                left = dens(0.5 * (lo + b)) * (b - lo) if b > lo else 0.0
                right = dens(0.5 * (b + hi)) * (hi - b) if hi > b else 0.0
                w[idx] = left + right
        return w
    return dens(mids) * np.diff(edges)


def _block_machine(F: SpectralMeasure, N: int, grid_size: int | None):
    if N < 1:
        raise DomainError("block length N must be at least 1")
    M = default_grid_size(N) if grid_size is None else int(grid_size)
    t, w = spectral_nodes(F, M)
    phases = np.exp(-1j * np.outer(np.arange(N + 1), t))
    return M, np.sqrt(w), phases


def _draw_values(seed: int, sqrt_w: np.ndarray, phases: np.ndarray) -> np.ndarray:
    rng = np.random.default_rng(int(seed) & _MASK64)
    g = rng.standard_normal((sqrt_w.size, 2))
    zeta = (g[:, 0] + 1j * g[:, 1]) / math.sqrt(2.0)
    return phases @ (sqrt_w * zeta)


def sample_block(F: SpectralMeasure, N: int, seed: int,
                 grid_size: int | None = None) -> CoefficientBlock:
    """Draw one coefficient block (xi_0, ..., xi_N)."""
    M, sqrt_w, phases = _block_machine(F, N, grid_size)
    values = _draw_values(seed, sqrt_w, phases)
    return CoefficientBlock(values=values, seed=int(seed), F_label=F.label, grid_size=M)


def sample_blocks(F: SpectralMeasure, N: int, replicas: int, seed: int,
                  grid_size: int | None = None) -> list[CoefficientBlock]:
    """Independent replicas with SplitMix64-derived per-replica seeds.

    Bit-identical to calling :func:`sample_block` with each derived seed; the
    node grid and phase matrix are shared across replicas for speed.
    """
    M, sqrt_w, phases = _block_machine(F, N, grid_size)
    out = []
    for i in range(int(replicas)):
        rs = replica_seed(seed, i)
        out.append(CoefficientBlock(values=_draw_values(rs, sqrt_w, phases),
                                    seed=rs, F_label=F.label, grid_size=M))
    return out


def empirical_covariance(blocks, k: int):
    """Lag-k sample covariance averaged over blocks and positions.

    Returns ``(value, stderr)``; the standard error is taken across the
    per-block averages.  Negative lags are evaluated by conjugating the
    positive lag, so the Hermitian symmetry is exact by construction.
    """
    blocks = list(blocks)
    if not blocks:
        raise DomainError("need at least one block")
    if k < 0:
        value, se = empirical_covariance(blocks, -k)
        return np.conj(value), se
    per_block = []
    for blk in blocks:
        v = blk.values
        if k >= v.size:
            raise DomainError(f"lag {k} exceeds block degree {v.size - 1}")
        per_block.append(np.mean(v[k:] * np.conj(v[: v.size - k])))
    per_block = np.array(per_block)
    value = per_block.mean()
    if per_block.size > 1:
        spread = np.abs(per_block - value) ** 2
        se = math.sqrt(spread.sum() / (per_block.size - 1) / per_block.size)
    else:
        se = 0.0
    return complex(value), float(se)


def radius_check(block: CoefficientBlock) -> float:
    """Deviation of |xi_k|^(1/k) from 1 over the upper half of the block.

    Unit-variance marginals force the k-th root of |xi_k| to 1, which pins the
    convergence radius of the random series at 1; the deviation shrinks like
    sqrt(log k)/k.  Zero coefficients are skipped.
    """
    v = block.values
    N = v.size - 1
    if N < 64:
        raise DomainError("radius check needs a block of degree >= 64")
    ks = np.arange(N // 2, N + 1)
    mags = np.abs(v[ks])
    keep = mags > 0.0
    if not np.any(keep):
        return math.inf
    dev = np.abs(mags[keep] ** (1.0 / ks[keep]) - 1.0)
    return float(dev.max())
