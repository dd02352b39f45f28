"""Multiple Gaussian process regression and classification."""

import json

import numpy as np

from . import _core
from ._core import (
    ConfigError,
    DataError,
    DomainError,
    Model,
    NumericalError,
    dlogk_dorder,
    gig_moments,
    load,
    log_bessel_k,
    solve_hyper,
    std_normal_cdf,
    trunc_moments,
)

__all__ = [
    "ConfigError",
    "DataError",
    "DomainError",
    "Model",
    "NumericalError",
    "dlogk_dorder",
    "fit",
    "fit_report",
    "generate_toy",
    "gig_moments",
    "load",
    "log_bessel_k",
    "solve_hyper",
    "std_normal_cdf",
    "trunc_moments",
]


def fit(x, y, config, feature_names=None):
    """Fit a model. `config` is a run-config dict with the CLI schema."""
    x = np.ascontiguousarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    y = np.ascontiguousarray(y, dtype=float)
    return _core._fit(x, y, json.dumps(config), list(feature_names or []))


def fit_report(model):
    """Fit summary as a dict: ELBO trace, hyperparameters, weights, warnings."""
    return json.loads(model._report_json())


def generate_toy(config=None, **overrides):
    """Toy regression data. Keys follow the toy config schema (active is 1-based)."""
    cfg = dict(config or {})
    cfg.update(overrides)
    return _core._generate_toy(json.dumps(cfg))

