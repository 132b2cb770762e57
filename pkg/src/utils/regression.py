"""
Regression helpers.

This module provides the two trainable models: ridge regression fitted in
closed form on mean-centered data with predictions clipped to [0, 1] (LCP),
and class-weighted L2-penalized logistic regression fitted by Newton/IRLS
(CWI), plus the LCP -> CWI conversion.
"""

import logging
from typing import Optional, Sequence, Tuple, Union, List

import numpy as np
from scipy.special import expit

from datalayer.model.dto.model_dto import RidgeModel, LogisticModel
from datalayer.model.lcp_models import ClassWeight
from .exceptions import ValidationError, SingularSystemError, ConvergenceError
from .rating_helpers import cwi_label


logger = logging.getLogger(__name__)

MAX_ITERATIONS = 1000
STEP_TOLERANCE = 1e-10
_EPS = np.finfo(float).eps


def _as_matrix(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2:
        raise ValidationError(f"feature matrix must be 2-dimensional, got {X.ndim} dimensions")
    return X


def _check_features(model: Union[RidgeModel, LogisticModel], X: np.ndarray) -> None:
    if X.shape[1] != len(model.weights):
        raise ValidationError(
            f"model expects {len(model.weights)} features, got {X.shape[1]}"
        )


# ============================================================================
# Ridge Regression (LCP)
# ============================================================================

def ridge_fit(
    X,
    y: Sequence[float],
    l2_strength: float = 1.0,
    feature_names: Sequence[str] = (),
) -> RidgeModel:
    """
    Fit w, b minimizing sum (y - Xw - b)^2 + l2_strength * |w|^2.

    The intercept is unpenalized: the system is solved on centered data and
    b = mean(y) - mean(X) w.

    Args:
        X: Feature matrix (n x p)
        y: Targets (n)
        l2_strength: Penalty strength, >= 0
        feature_names: Optional column names stored with the model

    Returns:
        RidgeModel

    Raises:
        SingularSystemError: If l2_strength is 0 and X is rank deficient
    """
    X = _as_matrix(X)
    y = np.asarray(y, dtype=float)
    if X.shape[0] != y.size:
        raise ValidationError(f"{X.shape[0]} rows but {y.size} targets")
    if y.size < 2:
        raise ValidationError("ridge regression needs at least 2 samples")
    if l2_strength < 0:
        raise ValidationError(f"l2_strength must be >= 0, got {l2_strength}")

    x_mean = X.mean(axis=0)
    y_mean = y.mean()
    Xc = X - x_mean
    gram = Xc.T @ Xc + l2_strength * np.eye(X.shape[1])
    if l2_strength == 0 and np.linalg.matrix_rank(gram) < X.shape[1]:
        raise SingularSystemError()
    try:
        weights = np.linalg.solve(gram, Xc.T @ (y - y_mean))
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(str(exc)) from exc

    return RidgeModel(
        feature_names=tuple(feature_names),
        weights=tuple(float(w) for w in weights),
        intercept=float(y_mean - x_mean @ weights),
        l2_strength=l2_strength,
    )


def ridge_predict(model: RidgeModel, X) -> List[float]:
    """Linear predictions clipped to [0, 1]."""
    X = _as_matrix(X)
    _check_features(model, X)
    raw = X @ np.asarray(model.weights) + model.intercept
    return [float(v) for v in np.clip(raw, 0.0, 1.0)]


# ============================================================================
# Logistic Regression (CWI)
# ============================================================================

def balanced_class_weights(labels: Sequence[bool]) -> Tuple[float, float]:
    """
    Weights n / (2 n_c) for the (positive, negative) classes.

    Raises:
        ValidationError: If only one class is present
    """
    labels = np.asarray(labels, dtype=bool)
    n = labels.size
    n_pos = int(labels.sum())
    n_neg = n - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValidationError("both classes must be present")
    return n / (2.0 * n_pos), n / (2.0 * n_neg)


def _objective(Xa, y, s, penalty, beta) -> float:
    z = Xa @ beta
    # log(1 + e^z) - y z is the negative log-likelihood of one sample
    return float(s @ (np.logaddexp(0.0, z) - y * z) + 0.5 * penalty @ (beta * beta))


def logistic_fit(
    X,
    labels: Sequence[bool],
    l2_strength: float = 1.0,
    class_weight: Union[ClassWeight, str, Tuple[float, float], None] = ClassWeight.BALANCED,
    sample_weight: Optional[Sequence[float]] = None,
    feature_names: Sequence[str] = (),
    max_iter: int = MAX_ITERATIONS,
    tol: float = STEP_TOLERANCE,
) -> LogisticModel:
    """
    Fit a weighted logistic regression by Newton/IRLS from zero.

    Minimizes sum_i s_i * nll_i + (l2_strength / 2) |w|^2 with the intercept
    unpenalized, where s_i is the class weight of sample i times its sample
    weight. A step that increases the objective is halved until it does not.

    Args:
        X: Feature matrix (n x p)
        labels: Binary labels
        l2_strength: Penalty strength on the weights
        class_weight: "balanced", "none"/None or an explicit (positive, negative) pair
        sample_weight: Optional per-sample weights
        feature_names: Optional column names stored with the model
        max_iter: Iteration limit
        tol: Convergence threshold on the largest parameter update

    Returns:
        LogisticModel

    Raises:
        ConvergenceError: If the fit does not converge within max_iter
    """
    X = _as_matrix(X)
    y_bool = np.asarray(labels, dtype=bool)
    if X.shape[0] != y_bool.size:
        raise ValidationError(f"{X.shape[0]} rows but {y_bool.size} labels")
    if l2_strength < 0:
        raise ValidationError(f"l2_strength must be >= 0, got {l2_strength}")
    if y_bool.all() or not y_bool.any():
        raise ValidationError("both classes must be present")

    if class_weight is None or class_weight == ClassWeight.NONE:
        weights_pair = (1.0, 1.0)
    elif class_weight == ClassWeight.BALANCED:
        weights_pair = balanced_class_weights(y_bool)
    else:
        weights_pair = (float(class_weight[0]), float(class_weight[1]))
        if min(weights_pair) <= 0:
            raise ValidationError("class weights must be positive")

    y = y_bool.astype(float)
    s = np.where(y_bool, weights_pair[0], weights_pair[1])
    if sample_weight is not None:
        sample_weight = np.asarray(sample_weight, dtype=float)
        if sample_weight.shape != y.shape or np.any(sample_weight < 0):
            raise ValidationError("sample weights must be nonnegative, one per sample")
        s = s * sample_weight

    Xa = np.hstack([X, np.ones((X.shape[0], 1))])
    penalty = np.append(np.full(X.shape[1], float(l2_strength)), 0.0)
    beta = np.zeros(Xa.shape[1])
    current = _objective(Xa, y, s, penalty, beta)

    for iteration in range(1, max_iter + 1):
        mu = expit(Xa @ beta)
        gradient = Xa.T @ (s * (mu - y)) + penalty * beta
        hessian = Xa.T @ ((s * mu * (1.0 - mu))[:, None] * Xa) + np.diag(penalty)
        try:
            delta = np.linalg.solve(hessian, gradient)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(
                f"logistic regression diverged after {iteration} iterations", iterations=iteration
            ) from exc

        step = 1.0
        candidate = beta - delta
        value = _objective(Xa, y, s, penalty, candidate)
        while value > current and step * np.max(np.abs(delta)) >= tol:
            step /= 2.0
            candidate = beta - step * delta
            value = _objective(Xa, y, s, penalty, candidate)

        update = float(np.max(np.abs(candidate - beta)))
        if value <= current:
            beta, current = candidate, value
        if update < tol:
            logger.debug("Logistic regression converged after %d iterations", iteration)
            return LogisticModel(
                feature_names=tuple(feature_names),
                weights=tuple(float(w) for w in beta[:-1]),
                intercept=float(beta[-1]),
                l2_strength=l2_strength,
                class_weights=weights_pair,
                iterations=iteration,
            )

    raise ConvergenceError(
        f"logistic regression did not converge within {max_iter} iterations", iterations=max_iter
    )


def predict_proba(model: LogisticModel, X) -> List[float]:
    """Positive-class probabilities, kept strictly inside (0, 1)."""
    X = _as_matrix(X)
    _check_features(model, X)
    proba = expit(X @ np.asarray(model.weights) + model.intercept)
    return [float(p) for p in np.clip(proba, _EPS, 1.0 - _EPS)]


def logistic_predict(model: LogisticModel, X, decision_threshold: float = 0.5) -> List[bool]:
    """Positive iff the predicted probability reaches decision_threshold."""
    if not 0.0 < decision_threshold < 1.0:
        raise ValidationError(f"decision threshold must lie in (0, 1), got {decision_threshold}")
    return [p >= decision_threshold for p in predict_proba(model, X)]


def lcp_to_cwi(predictions: Sequence[float], threshold: float = 0.375) -> List[bool]:
    """Binarize LCP predictions with the CWI threshold."""
    return [cwi_label(p, threshold) for p in predictions]
