"""Toeplitz operators on the Bergman space of the upper half-plane."""

import json

from . import _core
from ._core import (
    CalculusError,
    ConfigError,
    DomainError,
    NumericRangeError,
    basis_deriv,
    basis_eval,
    closed_form_K,
    creation_isometry_residual,
    derive_K,
    euclid_to_phyp,
    gram_matrix,
    kernel,
    list_experiments,
    phyp_distance,
    phyp_to_euclid,
)

__all__ = [
    "CalculusError",
    "ConfigError",
    "DomainError",
    "NumericRangeError",
    "basis_deriv",
    "basis_eval",
    "carleson_norm",
    "closed_form_K",
    "creation_isometry_residual",
    "derive_K",
    "derive_K_json",
    "euclid_to_phyp",
    "gram_matrix",
    "kernel",
    "list_experiments",
    "phyp_distance",
    "phyp_to_euclid",
    "run_experiment",
    "singular_values",
    "toeplitz_matrix",
]


def carleson_norm(measure, k=0.0, gamma=0.5):
    """Return (norm, argmax center) for a measure given as a dict."""
    return _core.carleson_norm(json.dumps(measure), float(k), float(gamma))


def toeplitz_matrix(measure, N, alpha=0, beta=0):
    """N x N truncation as a complex numpy array."""
    return _core.toeplitz_matrix(json.dumps(measure), alpha, beta, N)


def singular_values(measure, N, alpha=0, beta=0):
    return _core.singular_values(json.dumps(measure), alpha, beta, N)


def derive_K_json(j):
    return json.loads(_core.derive_K_json(j))


def run_experiment(name, **fields):
    """Run a bundled experiment; keyword arguments are config fields."""
    config = {"schema_version": 1, "experiment": name, **fields}
    return json.loads(_core.run_experiment(json.dumps(config)))
