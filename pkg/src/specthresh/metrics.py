"""Scoring estimated spectra: RMISE, support recovery, ROC curves."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ParameterError
from .estimator import SpectralEstimate


@dataclass
class EvaluationReport:
    """Metrics of one estimate (or a replicate mean with sd)."""

    method: str
    rmise: float
    precision: Optional[float] = None
    recall: Optional[float] = None
    f1: Optional[float] = None
    auc: Optional[float] = None
    sd: Dict[str, float] = field(default_factory=dict)


def rmise(est: SpectralEstimate, truth: Dict[int, np.ndarray]) -> float:
    """Relative mean integrated squared error in percent:
    100 * sum_j ||f_hat(w_j) - f(w_j)||_F^2 / sum_j ||f(w_j)||_F^2."""
    freqs = est.frequencies()
    if set(freqs) != set(truth):
        raise ParameterError("estimate and truth cover different frequency sets")
    num = sum(float(np.sum(np.abs(est.matrices[j] - truth[j]) ** 2)) for j in freqs)
    den = sum(float(np.sum(np.abs(truth[j]) ** 2)) for j in freqs)
    if den == 0:
        raise ParameterError("truth is identically zero")
    return 100.0 * num / den


def _pair_mask(p: int, include_diagonal: bool) -> np.ndarray:
    mask = np.ones((p, p), dtype=bool)
    if not include_diagonal:
        np.fill_diagonal(mask, False)
    return mask


def _prf(est_nz: np.ndarray, true_nz: np.ndarray) -> Tuple[float, float, float]:
    hits = int(np.sum(est_nz & true_nz))
    n_est = int(np.sum(est_nz))
    n_true = int(np.sum(true_nz))
    # empty-denominator conventions: no predictions -> precision 1,
    # empty truth -> recall 1
    precision = hits / n_est if n_est else 1.0
    recall = hits / n_true if n_true else 1.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return precision, recall, f1


@dataclass
class SupportScores:
    per_frequency: Dict[int, Tuple[float, float, float]]
    precision: float
    recall: float
    f1: float


def support_scores(
    est: SpectralEstimate,
    truth: Dict[int, np.ndarray],
    zero_tol: Optional[float] = None,
    include_diagonal: bool = False,
) -> SupportScores:
    """Per-frequency and frequency-averaged precision/recall/F1.

    Estimate entries count as nonzero when exactly nonzero (thresholding
    produces exact zeros); truth entries below `zero_tol` count as zero.
    The default tolerance is 1e-12 relative to the largest truth modulus.
    Diagonal entries are excluded by default (nonzero on both sides for
    any reasonable estimate, pure score inflation).
    """
    freqs = est.frequencies()
    if set(freqs) != set(truth):
        raise ParameterError("estimate and truth cover different frequency sets")
    mask = _pair_mask(est.p, include_diagonal)
    if zero_tol is None:
        peak = max(float(np.max(np.abs(truth[j]))) for j in freqs)
        zero_tol = 1e-12 * peak
    per = {}
    for j in freqs:
        est_nz = (np.abs(est.matrices[j]) > 0) & mask
        true_nz = (np.abs(truth[j]) > zero_tol) & mask
        per[j] = _prf(est_nz, true_nz)
    arr = np.array([per[j] for j in freqs])
    means = arr.mean(axis=0)
    return SupportScores(per, float(means[0]), float(means[1]), float(means[2]))


@dataclass
class RocCurve:
    points: List[Tuple[float, float]]  # (fpr, tpr), sorted by fpr
    auc: float


def roc_points(weighted_graph: np.ndarray, truth_support: np.ndarray) -> RocCurve:
    """ROC of edge scores against the true support, strict upper triangle.

    Sweeps a cut over the unique edge weights in descending order and adds
    the trapezoid endpoints (0,0) and (1,1).
    """
    g = np.asarray(weighted_graph, dtype=float)
    if not np.allclose(g, g.T, atol=1e-10):
        raise ParameterError("weighted graph must be symmetric")
    p = g.shape[0]
    iu = np.triu_indices(p, k=1)
    scores = g[iu]
    labels = np.asarray(truth_support, dtype=bool)[iu]
    n_pos = int(labels.sum())
    n_neg = labels.size - n_pos
    points = [(0.0, 0.0)]
    for cut in np.unique(scores)[::-1]:
        pred = scores >= cut
        tpr = float(np.sum(pred & labels)) / n_pos if n_pos else 1.0
        fpr = float(np.sum(pred & ~labels)) / n_neg if n_neg else 0.0
        points.append((fpr, tpr))
    points.append((1.0, 1.0))
    points = sorted(set(points))
    xs = np.array([pt[0] for pt in points])
    ys = np.array([pt[1] for pt in points])
    auc = float(np.trapezoid(ys, xs))
    return RocCurve(points, auc)


def replicate_summary(reports: Sequence[EvaluationReport]) -> EvaluationReport:
    """Entrywise mean and sample standard deviation across replicates."""
    if not reports:
        raise ParameterError("no reports to summarize")
    method = reports[0].method
    out = EvaluationReport(method=method, rmise=0.0)
    for name in ("rmise", "precision", "recall", "f1", "auc"):
        vals = [getattr(r, name) for r in reports]
        if any(v is None for v in vals):
            continue
        arr = np.array(vals, dtype=float)
        setattr(out, name, float(arr.mean()))
        if len(arr) >= 2:
            out.sd[name] = float(arr.std(ddof=1))
    return out
