"""Class-discriminant projection and silhouette-based separability.

The projection is multi-class Fisher LDA solved by within-class
whitening: shrink the pooled within-class scatter, Cholesky-whiten,
then take the top eigenvectors of the whitened between-class scatter.
Separability is scored with silhouettes over Mahalanobis distances in
the projected space, with stratified-bootstrap confidence intervals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg
from scipy.spatial.distance import pdist, squareform

from .dataset import SyllableEmbedding
from .errors import NumericalError, ParameterError, ValidationError

COV_MODES = ("pooled_within", "global")


@dataclass
class LdaModel:
    """A fitted discriminant projection.

    projection maps centered raw vectors to k discriminant axes;
    columns are scaled so each axis has unit pooled within-class
    variance, ordered by decreasing eigenvalue, with the largest-
    magnitude entry of each column made positive.
    """

    mean: np.ndarray
    projection: np.ndarray
    eigenvalues: np.ndarray
    class_labels: list[str]
    gamma: float
    pca_rank: int | None


@dataclass
class SeparabilityReport:
    """Silhouette summary for one embedding set."""

    class_labels: list[str]
    class_counts: dict[str, int]
    per_class_mean: dict[str, float]
    overall_mean: float
    macro_mean: float
    per_class_ci: dict[str, tuple[float, float]] | None
    overall_ci: tuple[float, float] | None
    eigenvalues: list[float]
    num_dims: int
    gamma_lda: float
    gamma_cov: float
    cov_mode: str
    bootstrap_n: int
    seed: int


def stack_embeddings(embeddings: list[SyllableEmbedding]) -> tuple[np.ndarray, np.ndarray]:
    """Stack embedding vectors into (X, labels) arrays, checking dims."""
    if not embeddings:
        raise ValidationError("embedding list is empty")
    dim = embeddings[0].vector.shape[0]
    for emb in embeddings:
        if emb.vector.shape[0] != dim:
            raise ValidationError(
                f"syllable {emb.syllable_id}: dimension {emb.vector.shape[0]} != {dim}"
            )
    X = np.stack([emb.vector for emb in embeddings])
    y = np.array([emb.label for emb in embeddings])
    return X, y


def _scatter_matrices(X: np.ndarray, y: np.ndarray,
                      class_labels: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n, d = X.shape
    c = class_labels.shape[0]
    mean = X.mean(axis=0)
    sw = np.zeros((d, d))
    sb = np.zeros((d, d))
    for label in class_labels:
        grp = X[y == label]
        mu = grp.mean(axis=0)
        dev = grp - mu
        sw += dev.T @ dev
        gap = mu - mean
        sb += grp.shape[0] * np.outer(gap, gap)
    return sw / (n - c), sb / n


def _shrink(cov: np.ndarray, gamma: float) -> np.ndarray:
    d = cov.shape[0]
    return (1.0 - gamma) * cov + gamma * (np.trace(cov) / d) * np.eye(d)


def fit_lda(embeddings: list[SyllableEmbedding], num_dims: int = 4,
            gamma: float = 1e-3, pca_pre: bool = True) -> LdaModel:
    """Fit a shrinkage-regularized multi-class discriminant projection.

    num_dims is capped by the theory at num_classes - 1. gamma in
    [0, 1] blends the pooled within-class covariance toward a scaled
    identity. With pca_pre, data is first reduced to rank
    min(dim, n - num_classes) by PCA so the within-class scatter stays
    invertible when dimension rivals sample count.
    """
    X, y = stack_embeddings(embeddings)
    class_labels = np.unique(y)
    n, d = X.shape
    c = class_labels.shape[0]
    if c < 2:
        raise ValidationError(f"need at least 2 classes, got {c}")
    if n <= c:
        raise ValidationError(f"need more samples ({n}) than classes ({c})")
    if not 1 <= num_dims <= c - 1:
        raise ParameterError(f"num_dims must lie in [1, num_classes-1={c - 1}], got {num_dims}")
    if not 0.0 <= gamma <= 1.0:
        raise ParameterError(f"gamma must lie in [0, 1], got {gamma}")

    mean = X.mean(axis=0)
    Z = X - mean
    pca_rank = None
    basis = None
    if pca_pre:
        pca_rank = min(d, n - c)
        if pca_rank < d:
            _, _, vt = np.linalg.svd(Z, full_matrices=False)
            basis = vt[:pca_rank].T
            Z = Z @ basis
        else:
            pca_rank = d

    sw, sb = _scatter_matrices(Z, y, class_labels)
    sw = _shrink(sw, gamma)
    try:
        chol = linalg.cholesky(sw, lower=True)
    except linalg.LinAlgError as exc:
        raise NumericalError(
            f"within-class covariance is not positive definite ({exc}); increase gamma"
        ) from exc
    # whiten: with L L^T = Sw, eigvectors u of L^-1 Sb L^-T give
    # w = L^-T u satisfying Sb w = lambda Sw w and w^T Sw w = 1
    inv_l = linalg.solve_triangular(chol, np.eye(sw.shape[0]), lower=True)
    m = inv_l @ sb @ inv_l.T
    evals, evecs = linalg.eigh((m + m.T) / 2.0)
    order = np.argsort(-evals, kind="stable")[:num_dims]
    w = inv_l.T @ evecs[:, order]
    evals = np.maximum(evals[order], 0.0)

    if basis is not None:
        w = basis @ w
    # deterministic sign: largest-magnitude entry of each column positive
    flips = w[np.abs(w).argmax(axis=0), np.arange(w.shape[1])] < 0
    w[:, flips] *= -1.0

    return LdaModel(
        mean=mean,
        projection=w,
        eigenvalues=evals,
        class_labels=[str(v) for v in class_labels],
        gamma=gamma,
        pca_rank=pca_rank,
    )


def project(model: LdaModel, vectors: np.ndarray) -> np.ndarray:
    """Apply a fitted projection to a (n, dim) array of raw vectors."""
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.ndim != 2:
        raise ParameterError(f"vectors must be 2-D, got shape {vectors.shape}")
    if vectors.shape[1] != model.mean.shape[0]:
        raise ParameterError(
            f"vectors have dimension {vectors.shape[1]} but the model expects {model.mean.shape[0]}"
        )
    return (vectors - model.mean) @ model.projection


def pooled_covariance(X: np.ndarray, y: np.ndarray, gamma: float = 1e-6) -> np.ndarray:
    """Pooled within-class covariance with divisor n - c and shrinkage."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise ValidationError(f"X shape {X.shape} does not match {y.shape[0]} labels")
    if not 0.0 <= gamma <= 1.0:
        raise ParameterError(f"gamma must lie in [0, 1], got {gamma}")
    class_labels = np.unique(y)
    n, c = X.shape[0], class_labels.shape[0]
    if n <= c:
        raise ValidationError(f"need more samples ({n}) than classes ({c})")
    sw = np.zeros((X.shape[1], X.shape[1]))
    for label in class_labels:
        grp = X[y == label]
        dev = grp - grp.mean(axis=0)
        sw += dev.T @ dev
    return _shrink(sw / (n - c), gamma)


def _inverse_factor(cov: np.ndarray) -> np.ndarray:
    """Return F with F F^T = cov^-1, so ||F^T (a - b)|| is Mahalanobis."""
    try:
        chol = linalg.cholesky(cov, lower=True)
    except linalg.LinAlgError as exc:
        raise NumericalError(
            f"covariance is not positive definite ({exc}); increase gamma"
        ) from exc
    return linalg.solve_triangular(chol, np.eye(cov.shape[0]), lower=True).T


def mahalanobis_matrix(X: np.ndarray, cov: np.ndarray) -> np.ndarray:
    """All-pairs Mahalanobis distances under one covariance."""
    X = np.asarray(X, dtype=np.float64)
    factor = _inverse_factor(cov)
    return squareform(pdist(X @ factor))


def silhouettes(distances: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Per-sample silhouette widths from a precomputed distance matrix.

    s_i = (b_i - a_i) / max(a_i, b_i) with a_i the mean distance to
    the own cluster (excluding self) and b_i the smallest mean
    distance to any other cluster. Singletons score 0, as does the
    degenerate a_i = b_i = 0 case.
    """
    distances = np.asarray(distances, dtype=np.float64)
    y = np.asarray(y)
    n = y.shape[0]
    if distances.shape != (n, n):
        raise ValidationError(f"distance matrix shape {distances.shape} does not match {n} labels")
    if not np.allclose(distances, distances.T, atol=1e-9):
        raise ValidationError("distance matrix is not symmetric")
    if np.abs(np.diagonal(distances)).max(initial=0.0) > 1e-12:
        raise ValidationError("distance matrix diagonal is not zero")
    class_labels = np.unique(y)
    if class_labels.shape[0] < 2:
        raise ValidationError("silhouettes need at least 2 clusters")

    onehot = (y[:, None] == class_labels[None, :]).astype(np.float64)
    counts = onehot.sum(axis=0)
    sums = distances @ onehot  # (n, c): total distance from i to each cluster
    own_col = onehot.argmax(axis=1)

    own_counts = counts[own_col]
    with np.errstate(invalid="ignore", divide="ignore"):
        a = sums[np.arange(n), own_col] / (own_counts - 1.0)
    other = sums / counts[None, :]
    other[np.arange(n), own_col] = np.inf
    b = other.min(axis=1)

    scores = np.zeros(n)
    regular = (own_counts > 1) & (np.maximum(a, b) > 0.0)
    scores[regular] = (b[regular] - a[regular]) / np.maximum(a[regular], b[regular])
    return scores


def _global_covariance(X: np.ndarray, gamma: float) -> np.ndarray:
    dev = X - X.mean(axis=0)
    return _shrink(dev.T @ dev / (X.shape[0] - 1), gamma)


def analyze(embeddings: list[SyllableEmbedding], num_dims: int = 4,
            gamma_lda: float = 1e-3, gamma_cov: float = 1e-6,
            cov_mode: str = "pooled_within", bootstrap_n: int = 1000,
            seed: int = 0, pca_pre: bool = True) -> SeparabilityReport:
    """Fit, project, score, and bootstrap in one pass.

    Bootstrap resamples are stratified within class with sizes
    preserved; the projection and the distance covariance stay fixed
    at their full-sample fits, so the intervals reflect sampling
    variability of the silhouette means alone. Percentile intervals
    are widened, if needed, to contain the point estimate.
    """
    if cov_mode not in COV_MODES:
        raise ParameterError(f"cov_mode must be one of {COV_MODES}, got {cov_mode!r}")
    if bootstrap_n < 0:
        raise ParameterError(f"bootstrap_n must be nonnegative, got {bootstrap_n}")

    model = fit_lda(embeddings, num_dims=num_dims, gamma=gamma_lda, pca_pre=pca_pre)
    X, y = stack_embeddings(embeddings)
    Z = project(model, X)
    if cov_mode == "pooled_within":
        cov = pooled_covariance(Z, y, gamma=gamma_cov)
    else:
        cov = _global_covariance(Z, gamma_cov)
    factor = _inverse_factor(cov)
    ZF = Z @ factor

    labels = np.array(model.class_labels)
    scores = silhouettes(squareform(pdist(ZF)), y)
    per_class = {str(lab): float(scores[y == lab].mean()) for lab in labels}
    overall = float(scores.mean())
    macro = float(np.mean(list(per_class.values())))
    counts = {str(lab): int((y == lab).sum()) for lab in labels}

    per_class_ci = None
    overall_ci = None
    if bootstrap_n > 0:
        class_indices = [np.flatnonzero(y == lab) for lab in labels]
        boot_y = np.concatenate([np.repeat(lab, idx.shape[0]) for lab, idx in zip(labels, class_indices)])
        overall_stats = np.empty(bootstrap_n)
        class_stats = np.empty((bootstrap_n, labels.shape[0]))
        for it in range(bootstrap_n):
            rng = np.random.default_rng([seed, it])
            take = np.concatenate([rng.choice(idx, size=idx.shape[0], replace=True)
                                   for idx in class_indices])
            s = silhouettes(squareform(pdist(ZF[take])), boot_y)
            overall_stats[it] = s.mean()
            for j, lab in enumerate(labels):
                class_stats[it, j] = s[boot_y == lab].mean()

        def interval(samples: np.ndarray, point: float) -> tuple[float, float]:
            lo, hi = np.percentile(samples, [2.5, 97.5])
            return (float(min(lo, point)), float(max(hi, point)))

        overall_ci = interval(overall_stats, overall)
        per_class_ci = {str(lab): interval(class_stats[:, j], per_class[str(lab)])
                        for j, lab in enumerate(labels)}

    return SeparabilityReport(
        class_labels=[str(lab) for lab in labels],
        class_counts=counts,
        per_class_mean=per_class,
        overall_mean=overall,
        macro_mean=macro,
        per_class_ci=per_class_ci,
        overall_ci=overall_ci,
        eigenvalues=[float(v) for v in model.eigenvalues],
        num_dims=num_dims,
        gamma_lda=gamma_lda,
        gamma_cov=gamma_cov,
        cov_mode=cov_mode,
        bootstrap_n=bootstrap_n,
        seed=seed,
    )
