from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from subnetsim.core.errors import PosteriorFitError
from subnetsim.learning.features import FeatureTransformer


class SampleWindow:
    """Ring buffer of the M most recent (raw input, features, next AoI) samples."""

    def __init__(
        self,
        capacity: int,
        raw_dim: int,
        feature_dim: int | None = None,
        transformer: FeatureTransformer | None = None,
    ) -> None:
        if capacity < 1:
            raise ValueError("Window capacity must be at least 1")
        if feature_dim is None:
            feature_dim = transformer.feature_dim if transformer is not None else raw_dim
        self.capacity = capacity
        self.transformer = transformer
        self._raw = np.empty((capacity, raw_dim))
        self._features = np.empty((capacity, feature_dim))
        self._targets = np.empty(capacity)
        self._start = 0
        self._size = 0

    def __len__(self) -> int:
        return self._size

    @property
    def feature_dim(self) -> int:
        return self._features.shape[1]

    def push(self, x: np.ndarray, y: float, features: np.ndarray | None = None) -> "SampleWindow":
        if features is None:
            features = self.transformer.transform(x) if self.transformer is not None else x
        if self._size < self.capacity:
            slot = (self._start + self._size) % self.capacity
            self._size += 1
        else:
            slot = self._start
            self._start = (self._start + 1) % self.capacity
        self._raw[slot] = x
        self._features[slot] = features
        self._targets[slot] = y
        return self

    def _order(self) -> np.ndarray:
        return (self._start + np.arange(self._size)) % self.capacity

    def raw(self) -> np.ndarray:
        return self._raw[self._order()]

    def features(self) -> np.ndarray:
        return self._features[self._order()]

    def targets(self) -> np.ndarray:
        return self._targets[self._order()]


def push_sample(
    window: SampleWindow,
    x: np.ndarray,
    y: float,
    features: np.ndarray | None = None,
) -> SampleWindow:
    """Append (x, y), evicting the oldest entry once the window holds M samples."""
    return window.push(np.asarray(x, dtype=float), float(y), features)


@dataclass(frozen=True)
class Prediction:
    mu: float | np.ndarray
    var: float | np.ndarray


@dataclass(frozen=True)
class BrrPosterior:
    """Gaussian weight posterior fitted on centered features and targets.

    ``chol`` is the lower Cholesky factor L of the precision lambda I + Phi^T Phi,
    so Sigma_w = (L L^T)^-1 and quadratic forms x^T Sigma_w x come from solves
    against L without forming the inverse.
    """

    w_hat: np.ndarray
    chol: np.ndarray
    b0: float
    sigma2: float
    feature_mean: np.ndarray
    num_samples: int

    @property
    def feature_dim(self) -> int:
        return self.w_hat.shape[0]

    @cached_property
    def sigma_w(self) -> np.ndarray:
        inv_chol = np.linalg.solve(self.chol, np.eye(self.feature_dim))
        return inv_chol.T @ inv_chol


def fit_posteriors(
    windows: Sequence[SampleWindow],
    ridge_lambda: float,
    sigma2_floor: float,
) -> list[BrrPosterior]:
    """Fit one posterior per window, stacking windows of equal length into one batch.

    Targets and feature columns are centered so the bias is the target mean and
    the zero-mean prior applies to the weights only. The weight covariance is
    (lambda I + Phi^T Phi)^-1 and the noise variance is the windowed mean
    squared residual, floored at ``sigma2_floor``.

    Raises:
        ValueError: If a window is empty
        PosteriorFitError: If the samples are not finite or the regularized
            Gram matrix cannot be factorized
    """
    if any(len(window) == 0 for window in windows):
        raise ValueError("Cannot fit a posterior on an empty window")
    if len({len(window) for window in windows}) > 1:
        return [fit_posteriors([window], ridge_lambda, sigma2_floor)[0] for window in windows]
    if not windows:
        return []

    phi = np.stack([window.features() for window in windows])
    y = np.stack([window.targets() for window in windows])
    if not (np.isfinite(phi).all() and np.isfinite(y).all()):
        raise PosteriorFitError(f"Posterior fit failed on {phi.shape[1]} samples: non-finite input")

    feature_mean = phi.mean(axis=1)
    b0 = y.mean(axis=1)
    phi_c = phi - feature_mean[:, None, :]
    y_c = y - b0[:, None]
    phi_t = np.swapaxes(phi_c, 1, 2)

    gram = phi_t @ phi_c + ridge_lambda * np.eye(phi.shape[2])
    try:
        chol = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError as exc:
        raise PosteriorFitError(f"Posterior fit failed on {phi.shape[1]} samples: {exc}") from exc
    half = np.linalg.solve(chol, phi_t @ y_c[..., None])
    w_hat = np.linalg.solve(np.swapaxes(chol, 1, 2), half)[..., 0]

    residuals = y_c - (phi_c @ w_hat[..., None])[..., 0]
    sigma2 = np.maximum(np.mean(residuals**2, axis=1), sigma2_floor)
    return [
        BrrPosterior(
            w_hat=w_hat[i],
            chol=chol[i],
            b0=float(b0[i]),
            sigma2=float(sigma2[i]),
            feature_mean=feature_mean[i],
            num_samples=phi.shape[1],
        )
        for i in range(len(windows))
    ]


def fit_posterior(window: SampleWindow, ridge_lambda: float, sigma2_floor: float) -> BrrPosterior:
    """Fit the posterior mean and covariance of the weights on one window."""
    return fit_posteriors([window], ridge_lambda, sigma2_floor)[0]


def predict(post: BrrPosterior, features: np.ndarray) -> Prediction:
    """Predictive mean and variance for one feature vector or a stack of them.

    The variance is sigma^2 (1 + x^T Sigma_w x) for the centered x, so it
    stays in the squared units of the targets.

    Raises:
        ValueError: If the feature dimension does not match the posterior
    """
    features = np.asarray(features, dtype=float)
    if features.shape[-1] != post.feature_dim:
        raise ValueError(f"Expected {post.feature_dim} features, got {features.shape[-1]}")
    centered = features - post.feature_mean
    mu = centered @ post.w_hat + post.b0
    whitened = np.linalg.solve(post.chol, centered.reshape(-1, post.feature_dim).T)
    spread = np.sum(whitened**2, axis=0).reshape(features.shape[:-1])
    var = post.sigma2 * (1.0 + spread)
    if features.ndim == 1:
        return Prediction(mu=float(mu), var=float(var))
    return Prediction(mu=mu, var=var)
