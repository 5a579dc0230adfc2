"""scikit-learn transformers over columns of squeeze parameters.

They let the protocol sit inside a ``Pipeline``: accelerations go in,
squeeze parameters come out of :class:`SqueezeFromAcceleration`, and
:class:`TeleportationFidelity` or :class:`InformationGain` turn those into
per-row observables.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils import check_array
from sklearn.utils.validation import check_is_fitted

from ._validation import check_n_max, check_outcome, check_qubit, check_r_column, check_statistics
from .entropy import five_state_model, info_gain
from .fock import Statistics
from .relativity import C_SI, AccelerationParams, squeeze
from .teleport import teleport_fidelity_report


class SqueezeFromAcceleration(TransformerMixin, BaseEstimator):
    """Map a column of proper accelerations to squeeze parameters."""

    def __init__(self, omega=1.0, statistics="bosonic", c=C_SI):
        self.omega = omega
        self.statistics = statistics
        self.c = c

    def fit(self, X, y=None):
        X = check_array(X, dtype=float)
        self.statistics_ = check_statistics(self.statistics)
        AccelerationParams(0.0, self.omega, self.c)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self)
        X = check_array(X, dtype=float)
        if X.shape[1] != 1:
            raise ValueError("expected one column of accelerations")
        r = [squeeze(AccelerationParams(a, self.omega, self.c), self.statistics_).r for a in X[:, 0]]
        return np.asarray(r).reshape(-1, 1)

    def get_feature_names_out(self, input_features=None):
        return np.array(["r"], dtype=object)


class TeleportationFidelity(TransformerMixin, BaseEstimator):
    """Run the protocol at each ``r`` and report numeric and closed-form fidelity.

    Output columns: ``fidelity``, ``fidelity_closed``, ``abs_diff``, ``deficit``.
    """

    def __init__(self, statistics="bosonic", n_max=30, alpha=2 ** -0.5, beta=2 ** -0.5,
                 outcome="00", method="bruteforce"):
        self.statistics = statistics
        self.n_max = n_max
        self.alpha = alpha
        self.beta = beta
        self.outcome = outcome
        self.method = method

    def fit(self, X, y=None):
        self.statistics_ = check_statistics(self.statistics)
        check_r_column(X, self.statistics_)
        self.psi_ = check_qubit(self.alpha, self.beta)
        self.outcome_ = check_outcome(self.outcome)
        self.n_max_ = check_n_max(self.n_max)
        if self.method not in ("bruteforce", "closed"):
            raise ValueError(f"method must be 'bruteforce' or 'closed', got {self.method!r}")
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self)
        r_values = check_r_column(X, self.statistics_)
        out = np.empty((len(r_values), 4))
        for row, r in enumerate(r_values):
            res = teleport_fidelity_report(self.statistics_, r, self.psi_, self.n_max_,
                                           self.outcome_, self.method)
            out[row] = res.corrected, res.closed_form, abs(res.corrected - res.closed_form), res.deficit
        return out

    def get_feature_names_out(self, input_features=None):
        return np.array(["fidelity", "fidelity_closed", "abs_diff", "deficit"], dtype=object)


class InformationGain(TransformerMixin, BaseEstimator):
    """Entropy gain ``S(pre) - S(post)`` per row; bosonic runs add the five-state model."""

    def __init__(self, statistics="bosonic", method="numeric", tail_tolerance=1e-8):
        self.statistics = statistics
        self.method = method
        self.tail_tolerance = tail_tolerance

    def fit(self, X, y=None):
        self.statistics_ = check_statistics(self.statistics)
        check_r_column(X, self.statistics_)
        if self.method not in ("numeric", "closed"):
            raise ValueError(f"method must be 'numeric' or 'closed', got {self.method!r}")
        if not self.tail_tolerance > 0:
            raise ValueError("tail_tolerance must be positive")
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self)
        r_values = check_r_column(X, self.statistics_)
        cols = []
        for r in r_values:
            full = info_gain(self.statistics_, r, method=self.method,
                             tail_tolerance=self.tail_tolerance)
            if self.statistics_ is Statistics.BOSONIC:
                cols.append((full, five_state_model(r)))
            else:
                cols.append((full,))
        return np.asarray(cols, dtype=float).reshape(len(r_values), -1)

    def get_feature_names_out(self, input_features=None):
        if check_statistics(self.statistics) is Statistics.BOSONIC:
            return np.array(["dS_full", "dS_5state"], dtype=object)
        return np.array(["dS_full"], dtype=object)
