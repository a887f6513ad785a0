"""scikit-learn style wrappers so the verifiers compose with pipelines and grid tools.

Graphs play the role of samples: ``X`` is any iterable of inputs accepted by
:func:`~localmaclaurin.validation.check_graph`.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError

from .certified import DEFAULT_SCHEDULE, TIGHT_TOLERANCE
from .optimizer import maximize
from .structure import diagnose_equality
from .validation import check_graph, check_graphs
from .weights import verify_localised


class LocalisedMaclaurinVerifier(TransformerMixin, BaseEstimator):
    """Verify ``f_{s,q,G}(1) <= k_s(G)^(q/s)`` for each graph.

    ``fit`` stores the reports; ``predict`` returns verdict strings and
    ``transform`` returns ``[lhs, rhs, rhs - lhs]`` as floats (midpoints of
    the certified enclosures).
    """

    def __init__(self, s=1, q=2, schedule=DEFAULT_SCHEDULE, tolerance=float(TIGHT_TOLERANCE)):
        self.s = s
        self.q = q
        self.schedule = schedule
        self.tolerance = tolerance

    def _verify(self, X):
        tol = Fraction(self.tolerance)
        return [verify_localised(G, self.s, self.q, None, self.schedule, tol)
                for G in check_graphs(X)]

    def fit(self, X, y=None):
        self.reports_ = self._verify(X)
        return self

    def predict(self, X):
        return np.array([r.verdict.value for r in self._verify(X)])

    def transform(self, X):
        rows = [[float(r.lhs), float(r.rhs), float(r.gap)] for r in self._verify(X)]
        return np.array(rows, dtype=float).reshape(-1, 3)


class EqualityPredictor(ClassifierMixin, BaseEstimator):
    """Predict from structure alone whether equality holds at ``x = 1``.

    Labels are ``True`` (tight) / ``False`` (strict). ``s == q`` is always tight.
    """

    def __init__(self, s=1, q=2):
        self.s = s
        self.q = q

    def fit(self, X, y=None):
        check_graphs(X)
        self.classes_ = np.array([False, True])
        return self

    def predict(self, X):
        if not hasattr(self, "classes_"):
            raise NotFittedError("call fit before predict")
        if self.s == self.q:
            return np.ones(len(check_graphs(X)), dtype=bool)
        return np.array([diagnose_equality(G, self.s, self.q).predicts_tight
                         for G in check_graphs(X)], dtype=bool)


class CliquePolynomialMaximizer(BaseEstimator):
    """Maximise ``f_{s,q,G}`` over ``h_{s,G} = 1`` for a single graph.

    Fitted attributes: ``maximum_`` (certified value), ``argmax_``,
    ``support_`` (sorted vertex list), ``n_iter_`` and ``converged_``.
    """

    def __init__(self, s=1, q=2, max_iter=10_000, tol=1e-12):
        self.s = s
        self.q = q
        self.max_iter = max_iter
        self.tol = tol

    def fit(self, X, y=None):
        G = check_graph(X)
        result = maximize(G, self.s, self.q, self.max_iter, self.tol)
        self.result_ = result
        self.maximum_ = result.best
        self.argmax_ = result.argmax
        self.support_ = [v for v in range(G.n) if result.support >> v & 1]
        self.n_iter_ = result.iterations
        self.converged_ = result.converged
        return self

    def score(self, X=None, y=None):
        if not hasattr(self, "maximum_"):
            raise NotFittedError("call fit before score")
        return float(self.maximum_)
