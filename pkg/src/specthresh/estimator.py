"""Averaged periodogram, thresholding operators, shrinkage and coherence.

Spectral matrices are plain complex ndarrays; a `SpectralEstimate` bundles
the per-frequency matrices with the estimator metadata (smoothing span,
method, per-frequency thresholds).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from .dft import FourierGrid, periodogram_all
from .errors import DataError, ParameterError
from .model import TimeSeriesMatrix

METHODS = ("smoothed", "shrinkage", "hard", "lasso", "adaptive_lasso")


@dataclass(frozen=True)
class ThresholdOperator:
    """Entrywise generalized thresholding operator.

    All kinds satisfy, for every complex z and lambda >= 0:
    |S(z)| <= |z|, S(z) = 0 when |z| <= lambda, and |S(z) - z| <= lambda.
    """

    kind: str  # hard | lasso | adaptive_lasso
    eta: float = 2.0

    def __post_init__(self):
        if self.kind not in ("hard", "lasso", "adaptive_lasso"):
            raise ParameterError(f"unknown threshold operator {self.kind!r}")
        if self.eta <= 0:
            raise ParameterError("eta must be positive")

    def __call__(self, z: np.ndarray, lam: float) -> np.ndarray:
        if lam < 0:
            raise ParameterError("threshold must be nonnegative")
        z = np.asarray(z, dtype=complex)
        mod = np.abs(z)
        if self.kind == "hard":
            return np.where(mod >= lam, z, 0.0)
        if self.kind == "lasso":
            shrunk = np.maximum(mod - lam, 0.0)
        else:
            with np.errstate(divide="ignore"):
                penalty = np.where(mod > 0, lam ** (self.eta + 1) * mod ** (-self.eta), np.inf)
            shrunk = np.maximum(mod - penalty, 0.0)
        with np.errstate(invalid="ignore"):
            phase = np.where(mod > 0, z / np.where(mod > 0, mod, 1.0), 0.0)
        return phase * shrunk


def apply_threshold(
    f_hat: np.ndarray,
    op: ThresholdOperator,
    lam: float,
    preserve_diagonal: bool = True,
) -> np.ndarray:
    """Apply the operator entrywise; diagonal kept intact by default."""
    out = op(f_hat, lam)
    if preserve_diagonal:
        out[np.diag_indices_from(out)] = np.diag(f_hat)
    return out


@dataclass
class SpectralEstimate:
    """Per-frequency spectral matrices plus estimator metadata.

    `matrices[j]` is the p x p estimate at Fourier index j; conjugate
    symmetry matrices[-j] = conj(matrices[j]) holds for representable pairs.
    """

    n: int
    p: int
    m: int
    method: str
    matrices: Dict[int, np.ndarray]
    lambdas: Optional[Dict[int, float]] = None
    eta: Optional[float] = None
    channel_names: Optional[tuple] = None

    @property
    def grid(self) -> FourierGrid:
        return FourierGrid(self.n)

    def frequencies(self):
        return sorted(self.matrices)

    def min_eigenvalues(self) -> Dict[int, float]:
        """Smallest eigenvalue per frequency (thresholding may break PSD)."""
        return {
            j: float(np.min(np.linalg.eigvalsh(0.5 * (m + m.conj().T))))
            for j, m in self.matrices.items()
        }


def _window_indices(grid: FourierGrid, j: int, m: int) -> np.ndarray:
    if m < 0 or 2 * m + 1 > grid.n:
        raise ParameterError(f"invalid half-span m={m} for n={grid.n}")
    raw = np.arange(j - m, j + m + 1)
    return (raw + grid.half) % grid.n  # positions into the periodogram_all array


def averaged_periodogram(
    x: TimeSeriesMatrix,
    m: int,
    j: int,
    periodograms: Optional[np.ndarray] = None,
    center: bool = True,
) -> np.ndarray:
    """Flat average f_hat(w_j; m) = sum_{|k|<=m} I(w_{j+k}) / (2 pi (2m+1))."""
    grid = FourierGrid(x.n)
    if periodograms is None:
        periodograms = periodogram_all(x, center=center)
    idx = _window_indices(grid, grid.wrap(j), m)
    return periodograms[idx].mean(axis=0) / (2.0 * np.pi)


def _mirror(grid: FourierGrid, matrices: Dict[int, np.ndarray]) -> Dict[int, np.ndarray]:
    """Fill negative indices by conjugation of the computed j >= 0 half."""
    out = dict(matrices)
    for j in grid.indices:
        j = int(j)
        if j < 0 and j not in out:
            out[j] = out[-j].conj()
    return out


def smoothed_estimate(
    x: TimeSeriesMatrix,
    m: int,
    periodograms: Optional[np.ndarray] = None,
    center: bool = True,
) -> SpectralEstimate:
    """Averaged periodogram at every Fourier frequency."""
    grid = FourierGrid(x.n)
    if periodograms is None:
        periodograms = periodogram_all(x, center=center)
    mats = {}
    for j in grid.indices:
        j = int(j)
        if j < 0:
            continue
        mats[j] = averaged_periodogram(x, m, j, periodograms=periodograms)
    mats = _mirror(grid, mats)
    return SpectralEstimate(x.n, x.p, m, "smoothed", mats, channel_names=x.channel_names)


def threshold_estimate(
    x: TimeSeriesMatrix,
    m: int,
    op: ThresholdOperator,
    lambdas: Dict[int, float],
    preserve_diagonal: bool = True,
    periodograms: Optional[np.ndarray] = None,
    center: bool = True,
) -> SpectralEstimate:
    """Thresholded averaged periodogram with per-frequency thresholds.

    Thresholds are required for j >= 0 (or all j); lambda_{-j} defaults to
    lambda_j, and negative frequencies are filled by conjugation.
    """
    grid = FourierGrid(x.n)
    if periodograms is None:
        periodograms = periodogram_all(x, center=center)
    mats: Dict[int, np.ndarray] = {}
    lams: Dict[int, float] = {}
    for j in grid.indices:
        j = int(j)
        if j < 0:
            continue
        if j in lambdas:
            lam = lambdas[j]
        elif -j in lambdas:
            lam = lambdas[-j]
        else:
            raise ParameterError(f"no threshold provided for frequency index {j}")
        f_hat = averaged_periodogram(x, m, j, periodograms=periodograms)
        mats[j] = apply_threshold(f_hat, op, lam, preserve_diagonal=preserve_diagonal)
        lams[j] = float(lam)
    mats = _mirror(grid, mats)
    for j in grid.indices:
        j = int(j)
        if j < 0:
            lams[j] = lams[-j]
    method = "adaptive_lasso" if op.kind == "adaptive_lasso" else op.kind
    return SpectralEstimate(
        x.n, x.p, m, method, mats, lambdas=lams,
        eta=op.eta if op.kind == "adaptive_lasso" else None,
        channel_names=x.channel_names,
    )


def shrinkage_estimate(
    x: TimeSeriesMatrix,
    m: int,
    j: int,
    periodograms: Optional[np.ndarray] = None,
    center: bool = True,
) -> np.ndarray:
    """Shrink the averaged periodogram toward its scaled-identity target.

    Plug-ins: mu = tr(f_hat)/p; beta^2 estimates the variance of the
    window mean from the within-window dispersion of the periodograms;
    delta^2 = ||f_hat - mu I||_F^2 / p; the weight on the diagonal target
    is the estimation-error fraction beta^2/delta^2, clamped to [0, 1].
    """
    grid = FourierGrid(x.n)
    if 2 * m + 1 < 2:
        raise ParameterError("shrinkage needs a window of at least 2 periodograms")
    if periodograms is None:
        periodograms = periodogram_all(x, center=center)
    idx = _window_indices(grid, grid.wrap(j), m)
    window = periodograms[idx] / (2.0 * np.pi)
    f_hat = window.mean(axis=0)
    p = x.p
    mu = float(np.trace(f_hat).real) / p
    delta2 = float(np.sum(np.abs(f_hat - mu * np.eye(p)) ** 2)) / p
    w = 2 * m + 1
    beta2 = float(np.sum(np.abs(window - f_hat) ** 2)) / (p * w * (w - 1))
    if delta2 <= 0.0:
        return f_hat
    rho = min(1.0, beta2 / delta2)
    return rho * mu * np.eye(p) + (1.0 - rho) * f_hat


def shrinkage_all(
    x: TimeSeriesMatrix,
    m: int,
    periodograms: Optional[np.ndarray] = None,
    center: bool = True,
) -> SpectralEstimate:
    grid = FourierGrid(x.n)
    if periodograms is None:
        periodograms = periodogram_all(x, center=center)
    mats = {
        int(j): shrinkage_estimate(x, m, int(j), periodograms=periodograms)
        for j in grid.indices
        if j >= 0
    }
    mats = _mirror(grid, mats)
    return SpectralEstimate(x.n, x.p, m, "shrinkage", mats, channel_names=x.channel_names)


def coherence(matrix: np.ndarray, tau_floor: float = 1e-12) -> np.ndarray:
    """Coherence g_rs = f_rs / sqrt(f_rr f_ss); unit diagonal."""
    diag = np.diag(matrix).real
    bad = np.nonzero(diag < tau_floor)[0]
    if bad.size:
        raise DataError(f"degenerate channel {int(bad[0])}: diagonal below {tau_floor}")
    scale = 1.0 / np.sqrt(diag)
    g = matrix * np.outer(scale, scale)
    g[np.diag_indices_from(g)] = 1.0
    return g


def coherence_threshold(g_hat: np.ndarray, lam: float, tau: float) -> np.ndarray:
    """Hard-threshold off-diagonal coherence entries at level 2 lambda / tau."""
    if tau <= 0:
        raise ParameterError("tau must be positive")
    op = ThresholdOperator("hard")
    return apply_threshold(g_hat, op, 2.0 * lam / tau, preserve_diagonal=True)


def aggregate_coherence_graph(est: SpectralEstimate, tau_floor: float = 1e-12) -> np.ndarray:
    """Mean of |coherence| across the estimate's frequencies, zero diagonal.

    Produces the p x p weighted adjacency matrix used for coherence-network
    edge selection.  Typically the estimate covers all of F_n; a partial
    estimate averages over whatever frequencies it holds.
    """
    freqs = est.frequencies()
    if not freqs:
        raise ParameterError("estimate holds no frequencies")
    acc = np.zeros((est.p, est.p))
    for j in freqs:
        acc += np.abs(coherence(est.matrices[j], tau_floor=tau_floor))
    acc /= len(freqs)
    np.fill_diagonal(acc, 0.0)
    return 0.5 * (acc + acc.T)
