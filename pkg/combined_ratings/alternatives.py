# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Alternative scalar summaries: rating-scale averages and power means of strengths."""
import math
from typing import TYPE_CHECKING, Union

import numpy as np
from scipy.special import logsumexp

from .aggregation import Evaluator, combined_rating, finite_difference_gradient, prepare
from .elo import LN10_OVER_400
from .errors import InvalidInputError, NumericFailureError
from .profiles import ProfileLike, WeightsLike

if TYPE_CHECKING:
    from .rules import AggregationRule


def _active(R: ProfileLike, weights: WeightsLike):
    profile, weights = prepare(R, weights)
    lam = weights.values
    mask = lam > 0
    return profile.values[mask], lam[mask] / lam[mask].sum()


def arithmetic_rating(R: ProfileLike, weights: WeightsLike = None) -> float:
    """Weighted arithmetic mean of ratings (a geometric mean on the strength scale)."""
    values, w = _active(R, weights)
    rating = float(np.dot(w, values))
    return min(max(rating, float(values.min())), float(values.max()))


def power_mean_rating(R: ProfileLike, weights: WeightsLike = None, p: Union[float, int] = 1.0) -> float:
    """Rating of the weighted power mean of order ``p`` of the Elo strengths.

    ``p == 0`` is the geometric-mean limit (arithmetic_rating) and ``p == 1`` is
    the combined rating.
    """
    p = float(p)
    if not math.isfinite(p):
        raise InvalidInputError(f'power mean order must be finite, got {p!r}')
    if p == 0:
        return arithmetic_rating(R, weights)
    if p == 1:
        return combined_rating(R, weights)

    values, w = _active(R, weights)
    if values.size == 1:
        return float(values[0])

    shift = values.max()
    scale = p * LN10_OVER_400
    rating = shift + logsumexp((values - shift) * scale, b=w) / scale
    return float(min(max(rating, values.min()), shift))


def marginal_ratio(rule: Union[Evaluator, 'AggregationRule'], x: float, y: float, step: float = 1e-3) -> float:
    """Ratio of the two central finite-difference partials at (x, y), equal weights."""
    evaluator = getattr(rule, 'evaluate', rule)
    gradient = finite_difference_gradient(evaluator, [x, y], [1.0, 1.0], step=step)

    if gradient[1] <= 0 or gradient[0] <= 0:
        raise NumericFailureError(f'non-positive partial derivative at ({x}, {y}): {gradient.tolist()}')
    return float(gradient[0] / gradient[1])
