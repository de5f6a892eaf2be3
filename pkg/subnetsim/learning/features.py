import numpy as np
from sklearn.preprocessing import PolynomialFeatures

from subnetsim.core.config import ScenarioConfig


class FeatureTransformer:
    """Maps raw inputs [AoI, P^1..P^B] to scaled degree-2 polynomial features.

    AoI is divided by the threshold delta and each power entry by the maximum
    power p, then all monomials of degree one and two are formed without a
    constant term, giving r = d + d(d+1)/2 features for d = B + 1 inputs.
    """

    def __init__(self, num_rbs: int, aoi_scale: float, power_scale: float) -> None:
        self.raw_dim = num_rbs + 1
        self._scale = np.array([aoi_scale] + [power_scale] * num_rbs, dtype=float)
        self._poly = PolynomialFeatures(degree=2, include_bias=False)
        self._poly.fit(np.zeros((1, self.raw_dim)))

    @classmethod
    def from_config(cls, cfg: ScenarioConfig) -> "FeatureTransformer":
        return cls(cfg.num_rbs, cfg.aoi_threshold_s, cfg.max_power_w)

    @property
    def feature_dim(self) -> int:
        return int(self._poly.n_output_features_)

    def raw_inputs(self, aoi: float, power: np.ndarray) -> np.ndarray:
        """Raw input rows [aoi, power] for one power vector or a stack of them."""
        power = np.atleast_2d(np.asarray(power, dtype=float))
        aoi_column = np.full((power.shape[0], 1), float(aoi))
        return np.hstack((aoi_column, power))

    def transform(self, raw: np.ndarray) -> np.ndarray:
        """Transform raw rows (k x d) or a single raw vector (d,)."""
        raw = np.asarray(raw, dtype=float)
        single = raw.ndim == 1
        rows = np.atleast_2d(raw)
        if rows.shape[1] != self.raw_dim:
            raise ValueError(f"Expected {self.raw_dim} raw inputs, got {rows.shape[1]}")
        features = self._poly.transform(rows / self._scale)
        return features[0] if single else features


def transform_features(aoi: float, power: np.ndarray, cfg: ScenarioConfig) -> np.ndarray:
    """Feature vector of dimension r for one (AoI, power vector) pair."""
    if aoi < 0:
        raise ValueError("AoI must be non-negative")
    transformer = FeatureTransformer.from_config(cfg)
    return transformer.transform(transformer.raw_inputs(aoi, power)[0])
