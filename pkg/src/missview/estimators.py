"""Scikit-learn compatible wrappers around the profiling and injection core,
so the toolkit composes with sklearn pipelines operating on plain arrays
(NaN = missing)."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .data import Dataset, numeric_variable
from .stats import summarize
from .synth import ConditionalRemoval, InjectionPlan, Mcar, apply_plan


def _to_dataset(X, feature_names=None) -> Dataset:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError("expected a 2D array")
    if feature_names is None:
        feature_names = [f"x{j}" for j in range(X.shape[1])]
    return Dataset(
        "array", [numeric_variable(n, X[:, j]) for j, n in enumerate(feature_names)]
    )


class MissingnessProfiler(BaseEstimator):
    """Computes per-feature amount missing and the pairwise joint-missingness
    matrix, with the outer-product expectation under random missingness.

    Attributes after fit: am_, jm_, expected_jm_, jm_deviation_.
    """

    def fit(self, X, y=None):
        ds = _to_dataset(X)
        summary = summarize(ds)
        self.n_features_in_ = ds.n_variables
        self.am_ = summary.am
        self.jm_ = summary.jm
        self.expected_jm_ = summary.expected_jm
        self.jm_deviation_ = summary.jm_deviation
        return self

    def score(self, X, y=None):
        """Mean absolute deviation of JM from its random-missingness
        expectation; high values flag structured missingness."""
        check_is_fitted(self, "jm_deviation_")
        m = self.n_features_in_
        if m < 2:
            return 0.0
        off = ~np.eye(m, dtype=bool)
        return float(np.abs(self.jm_deviation_[off]).mean())


class MissingnessInjector(TransformerMixin, BaseEstimator):
    """Removes values from a complete array: independent random removal per
    feature, optionally followed by removal in one feature conditioned on the
    outer quartiles of another."""

    def __init__(self, mcar_rate=0.0, conditional=None, random_state=0):
        self.mcar_rate = mcar_rate
        self.conditional = conditional  # (target_index, cond_index, rate)
        self.random_state = random_state

    def fit(self, X, y=None):
        self.n_features_in_ = np.asarray(X).shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        ds = _to_dataset(X)
        steps = []
        if self.mcar_rate > 0:
            steps.extend(Mcar(variable=n, rate=self.mcar_rate) for n in ds.variable_names)
        if self.conditional is not None:
            t, c, rate = self.conditional
            steps.append(
                ConditionalRemoval(
                    x1=ds.variable_names[t], x2=ds.variable_names[c], rate=rate
                )
            )
        plan = InjectionPlan(seed=self.random_state, steps=tuple(steps))
        out, _ = apply_plan(ds, plan)
        return np.column_stack([v.values for v in out.variables])
