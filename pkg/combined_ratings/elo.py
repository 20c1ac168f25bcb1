# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Scalar Elo primitives: strength conversion, expected score and odds.

All conversions go through the single constant ``LN10_OVER_400`` so that
``10 ** (x / 400)`` is always evaluated as ``exp(x * LN10_OVER_400)``.
Expected scores use the logistic form and saturate to exactly 0 or 1 once
the rating gap passes roughly 12000 points in double precision.
"""
import math
from typing import Union

import numpy as np
from scipy.special import expit

from .errors import InvalidInputError
from .schemas.definitions import ELO_SCALE

LN10_OVER_400 = math.log(10.0) / ELO_SCALE

Number = Union[float, int, np.floating]


def check_rating(value: Number, name: str = 'rating') -> float:
    """Return the value as a float or raise if it is not a finite real."""
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidInputError(f'{name} must be a real number, got {value!r}') from None

    if not math.isfinite(value):
        raise InvalidInputError(f'{name} must be finite, got {value!r}')
    return value


def log_strength(r: Number) -> float:
    """Natural log of the Elo strength, ``r * ln(10) / 400``."""
    return check_rating(r) * LN10_OVER_400


def rating_from_log_strength(x: Number) -> float:
    """Inverse of log_strength."""
    return float(x) / LN10_OVER_400


def elo_strength(r: Number) -> float:
    """Elo strength ``q(r) = 10 ** (r / 400)``."""
    r = check_rating(r)

    try:
        return math.exp(r * LN10_OVER_400)
    except OverflowError:
        raise InvalidInputError(f'rating {r} is too large to express as a finite strength') from None


def elo_rating_from_strength(s: Number) -> float:
    """Inverse strength map ``400 * log10(s)``."""
    try:
        s = float(s)
    except (TypeError, ValueError):
        raise InvalidInputError(f'strength must be a real number, got {s!r}') from None

    if not math.isfinite(s) or s <= 0:
        raise InvalidInputError(f'strength must be finite and strictly positive, got {s!r}')
    return math.log(s) / LN10_OVER_400


def expected_score(a: Number, b: Number) -> float:
    """Elo expected score of rating ``a`` against rating ``b``."""
    a = check_rating(a, 'a')
    b = check_rating(b, 'b')
    return float(expit((a - b) * LN10_OVER_400))


def elo_odds(a: Number, b: Number) -> float:
    """Odds ``E / (1 - E) = 10 ** ((a - b) / 400)``; overflows to inf."""
    a = check_rating(a, 'a')
    b = check_rating(b, 'b')

    try:
        return math.exp((a - b) * LN10_OVER_400)
    except OverflowError:
        return math.inf


def strengths(ratings) -> np.ndarray:
    """Vectorized elo_strength over an array of finite ratings."""
    ratings = np.asarray(ratings, dtype=float)
    if not np.all(np.isfinite(ratings)):
        raise InvalidInputError('ratings must be finite')
    return np.exp(ratings * LN10_OVER_400)
