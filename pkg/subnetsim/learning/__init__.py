from subnetsim.learning.features import FeatureTransformer, transform_features
from subnetsim.learning.brr import (
    SampleWindow,
    BrrPosterior,
    Prediction,
    push_sample,
    fit_posterior,
    fit_posteriors,
    predict
)

__all__ = [
    "FeatureTransformer",
    "transform_features",
    "SampleWindow",
    "BrrPosterior",
    "Prediction",
    "push_sample",
    "fit_posterior",
    "fit_posteriors",
    "predict"
]
