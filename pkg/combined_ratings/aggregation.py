# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""The combined Elo rating: a weighted mean of strengths mapped back to ratings.

    C(R) = 400 * log10( sum_i l_i * 10^(R_i/400) / sum_i l_i )

Sums are taken in shifted form (subtract the largest rating among the
positively weighted coordinates before exponentiating), which keeps
translation equivariance tight and avoids overflow for extreme ratings.
Zero weights drop their coordinate; an all-zero weight vector is rejected.
"""
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.special import logsumexp

from .elo import LN10_OVER_400, elo_rating_from_strength, elo_strength
from .errors import InvalidInputError, NotRepresentableError, NumericFailureError
from .mixins import MarshmallowDataclassMixin
from .profiles import Partition, ProfileLike, RatingProfile, WeightVector, WeightsLike
from .schemas import definitions
from .utils import get_defaults

RatingFunction = Callable[[RatingProfile], float]
Evaluator = Callable[[RatingProfile, WeightVector], float]

FINITE_DIFFERENCE_STEP = 1e-3


@dataclass(frozen=True)
class MarginalWeights(MarshmallowDataclassMixin):
    """Partial derivatives of the combined rating with respect to each coordinate."""

    labels: List[str]
    weights: List[definitions.Probability]

    @property
    def values(self) -> np.ndarray:
        return np.array(self.weights, dtype=float)


def prepare(R: ProfileLike, weights: WeightsLike = None) -> Tuple[RatingProfile, WeightVector]:
    """Coerce inputs and check that they pair up."""
    profile = RatingProfile.coerce(R)
    return profile, WeightVector.coerce(weights, len(profile))


def _active(profile: RatingProfile, weights: WeightVector) -> Tuple[np.ndarray, np.ndarray]:
    """Ratings and weights of the positively weighted coordinates."""
    values = profile.values
    lam = weights.values
    mask = lam > 0
    return values[mask], lam[mask]


def combined_rating(R: ProfileLike, weights: WeightsLike = None) -> float:
    """Combined Elo rating of a profile under policy weights (equal by default)."""
    profile, weights = prepare(R, weights)
    values, lam = _active(profile, weights)

    if values.size == 1:
        return float(values[0])

    shift = values.max()
    log_mean = logsumexp((values - shift) * LN10_OVER_400, b=lam / lam.sum())
    rating = shift + log_mean / LN10_OVER_400

    # keep internality as an exact ordering even after rounding
    return float(min(max(rating, values.min()), shift))


def combined_strength(R: ProfileLike, weights: WeightsLike = None) -> float:
    """Weighted arithmetic mean of the per-coordinate Elo strengths."""
    return elo_strength(combined_rating(R, weights))


def direct_combined_rating(R: ProfileLike, weights: WeightsLike = None) -> float:
    """Unshifted reference formula, only safe for moderate ratings (|R_i| <= 3500)."""
    profile, weights = prepare(R, weights)
    lam = weights.values
    mean_strength = float(np.sum(lam * 10.0 ** (profile.values / 400.0)) / lam.sum())
    return elo_rating_from_strength(mean_strength)


def normalize_weights(weights: WeightsLike) -> WeightVector:
    """Scale weights to sum to one; the combined rating is unchanged."""
    weights = weights if isinstance(weights, WeightVector) else WeightVector(weights=list(weights))
    total = weights.total
    return WeightVector(weights=[w / total for w in weights.weights])


def recursive_aggregate(R: ProfileLike, weights: WeightsLike, partition,
                        evaluator: Optional[Evaluator] = None) -> float:
    """Aggregate each block, then aggregate the block ratings with block total weights.

    ``evaluator`` defaults to combined_rating; any rule with the same signature
    can be aggregated recursively. Blocks with zero total weight drop out.
    """
    evaluator = evaluator or combined_rating
    profile, weights = prepare(R, weights)
    partition = Partition.coerce(partition).check(len(profile))

    block_ratings = []
    block_weights = []
    for block in partition:
        block_weight = weights.subset(block).total if any(weights.weights[i] > 0 for i in block) else 0.0
        if block_weight == 0:
            continue

        block_ratings.append(evaluator(profile.subset(block), weights.subset(block)))
        block_weights.append(block_weight)

    labels = [f'block_{j + 1}' for j in range(len(block_ratings))]
    return evaluator(RatingProfile(labels=labels, ratings=block_ratings), WeightVector(weights=block_weights))


def marginal_weights(R: ProfileLike, weights: WeightsLike = None) -> MarginalWeights:
    """Endogenous marginal weights l_j q(R_j) / sum_i l_i q(R_i)."""
    profile, weights = prepare(R, weights)
    values = profile.values
    lam = weights.values
    mask = lam > 0

    shift = values[mask].max()
    mass = np.where(mask, lam * np.exp(np.minimum(values - shift, 0.0) * LN10_OVER_400), 0.0)
    return MarginalWeights(labels=list(profile.labels), weights=(mass / mass.sum()).tolist())


def finite_difference_gradient(evaluator: Evaluator, R: ProfileLike, weights: WeightsLike = None,
                               step: float = FINITE_DIFFERENCE_STEP) -> np.ndarray:
    """Central finite-difference partials of a rule, in rating points per rating point."""
    profile, weights = prepare(R, weights)
    gradient = np.empty(len(profile))

    for j, label in enumerate(profile.labels):
        rating = profile.ratings[j]
        upper = evaluator(profile.replace(label, rating + step), weights)
        lower = evaluator(profile.replace(label, rating - step), weights)
        gradient[j] = (upper - lower) / (2 * step)

    if not np.all(np.isfinite(gradient)):
        raise NumericFailureError(f'finite differences are not finite at {profile.ratings}')
    return gradient


def replicate_coordinate(R: ProfileLike, weights: WeightsLike, index: int,
                         parts: int) -> Tuple[RatingProfile, WeightVector]:
    """Split coordinate ``index`` into ``parts`` identical copies sharing its weight."""
    profile, weights = prepare(R, weights)
    if parts < 1:
        raise ValueError(f'parts must be positive, got {parts}')

    labels, ratings, lam = [], [], []
    for i, (label, rating, weight) in enumerate(zip(profile.labels, profile.ratings, weights.weights)):
        copies = parts if i == index else 1
        for k in range(copies):
            labels.append(f'{label}.{k + 1}' if copies > 1 else label)
            ratings.append(rating)
            lam.append(weight / copies)

    return RatingProfile(labels=labels, ratings=ratings), WeightVector(weights=lam)


def _probe(rule: RatingFunction, n: int, index: int, rating: float) -> float:
    ratings = [0.0] * n
    ratings[index] = rating
    return rule(RatingProfile.from_values(ratings))


def recover_weights(rule: RatingFunction, n: Optional[int] = None, probe: Optional[float] = None,
                    tolerance: Optional[float] = None) -> WeightVector:
    """Identify the normalized weights of a strength-average rule by probing it.

    Each probe sets one coordinate to ``probe`` (and then to ``-probe``) with all
    others at zero; since q(0) = 1 the response pins down that coordinate's weight.
    """
    n = n if n is not None else getattr(rule, 'dimension')
    defaults = get_defaults()['recovery']
    probe = float(defaults['probe'] if probe is None else probe)
    tolerance = float(defaults['tolerance'] if tolerance is None else tolerance)
    if probe == 0:
        raise InvalidInputError('probe rating must be nonzero')

    estimates = []
    for rating in (probe, -probe):
        scale = elo_strength(rating) - 1.0
        estimates.append(np.array([(elo_strength(_probe(rule, n, i, rating)) - 1.0) / scale for i in range(n)]))

    upper, lower = estimates
    residual = max(float(np.max(np.abs(upper - lower))), abs(math.fsum(upper) - 1.0), float(-upper.min()))

    if residual > tolerance:
        raise NotRepresentableError(
            f'rule is not a strength average for any weights (probe residual {residual:.3g} > {tolerance:g})',
            residual=residual)

    recovered = normalize_weights(np.clip(upper, 0.0, None).tolist())

    # one mixed profile guards against rules that only agree on the probes
    mixed = RatingProfile.from_values(np.linspace(-probe, probe, n).tolist() if n > 1 else [probe])
    mismatch = abs(rule(mixed) - combined_rating(mixed, recovered))
    if mismatch > tolerance:
        raise NotRepresentableError(f'rule disagrees with recovered weights by {mismatch:.3g} rating points',
                                    residual=mismatch)

    return recovered


__all__ = (
    "MarginalWeights",
    "combined_rating",
    "combined_strength",
    "direct_combined_rating",
    "finite_difference_gradient",
    "marginal_weights",
    "normalize_weights",
    "prepare",
    "recover_weights",
    "recursive_aggregate",
    "replicate_coordinate",
)
