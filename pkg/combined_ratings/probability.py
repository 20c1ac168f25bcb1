# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Pairwise probabilities induced by the combined rating and by format lotteries.

Two objects are kept apart here. The combined-rating probability averages
strengths first and then applies the Elo formula (a Bradley-Terry / Luce pool
over player-format components). The random-format lottery picks a format with
exogenous probabilities and averages the per-format Elo scores. The combined
probability is itself a mixture of per-format scores, but with matchup
dependent ("endogenous") weights.
"""
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.special import expit, logsumexp

from .aggregation import combined_rating
from .elo import LN10_OVER_400, expected_score
from .errors import DimensionError
from .mixins import MarshmallowDataclassMixin
from .profiles import FormatDistribution, ProfileLike, RatingProfile, WeightVector, WeightsLike
from .schemas import definitions


@dataclass(frozen=True)
class ProbabilityDecomposition(MarshmallowDataclassMixin):
    """Combined probability written as a mixture of per-format scores."""

    weights: List[definitions.Probability]
    scores: List[definitions.Probability]
    reconstructed: definitions.Probability


@dataclass(frozen=True)
class MatchupReport(MarshmallowDataclassMixin):
    """Everything the library can say about one pairing."""

    profile_a: RatingProfile
    profile_b: RatingProfile
    weights: WeightVector
    combined_a: definitions.EloPoints
    combined_b: definitions.EloPoints
    per_format_scores: List[definitions.Probability]
    combined_probability: definitions.Probability
    endogenous_weights: List[definitions.Probability]
    distribution: Optional[FormatDistribution] = None
    lottery_probability: Optional[definitions.Probability] = None

    @property
    def rating_difference(self) -> float:
        return self.combined_a - self.combined_b

    @property
    def gap(self) -> Optional[float]:
        """Combined-rating probability minus lottery probability."""
        if self.lottery_probability is None:
            return None
        return self.combined_probability - self.lottery_probability


def prepare_pair(R: ProfileLike, S: ProfileLike,
                 weights: WeightsLike = None) -> Tuple[RatingProfile, RatingProfile, WeightVector]:
    """Coerce a pair of profiles and weights, checking dimensions."""
    R = RatingProfile.coerce(R)
    S = RatingProfile.coerce(S, labels=R.labels)

    if len(R) != len(S):
        raise DimensionError(f'profiles have {len(R)} and {len(S)} coordinates')
    return R, S, WeightVector.coerce(weights, len(R))


def _log_pool(profile: RatingProfile, weights: WeightVector) -> float:
    """Natural log of sum_i l_i q(R_i)."""
    lam = weights.values
    mask = lam > 0
    return float(logsumexp(profile.values[mask] * LN10_OVER_400, b=lam[mask]))


def pairwise_probability(R: ProfileLike, S: ProfileLike, weights: WeightsLike = None) -> float:
    """Probability that R beats S under the combined rating (Bradley-Terry form)."""
    R, S, weights = prepare_pair(R, S, weights)
    return float(expit(_log_pool(R, weights) - _log_pool(S, weights)))


def per_format_scores(R: ProfileLike, S: ProfileLike) -> List[float]:
    """Format-specific Elo expected scores p_i(R, S)."""
    R, S, _ = prepare_pair(R, S)
    return [expected_score(a, b) for a, b in zip(R.ratings, S.ratings)]


def lottery_probability(R: ProfileLike, S: ProfileLike, distribution) -> float:
    """Expected score when a format is drawn from ``distribution`` first."""
    R, S, _ = prepare_pair(R, S)
    distribution = FormatDistribution.coerce(distribution, len(R))
    scores = per_format_scores(R, S)
    return math.fsum(pi * p for pi, p in zip(distribution.probabilities, scores))


def endogenous_weights(R: ProfileLike, S: ProfileLike, weights: WeightsLike = None) -> List[float]:
    """Matchup weights proportional to l_i (q(R_i) + q(S_i))."""
    R, S, weights = prepare_pair(R, S, weights)
    lam = weights.values
    mask = lam > 0

    log_mass = np.full(len(R), -np.inf)
    log_mass[mask] = np.log(lam[mask]) + np.logaddexp(R.values[mask] * LN10_OVER_400,
                                                      S.values[mask] * LN10_OVER_400)
    return np.exp(log_mass - logsumexp(log_mass[mask])).tolist()


def decompose_combined_probability(R: ProfileLike, S: ProfileLike,
                                   weights: WeightsLike = None) -> ProbabilityDecomposition:
    """Express the combined probability as sum_i w_i(R, S) p_i(R, S)."""
    w = endogenous_weights(R, S, weights)
    p = per_format_scores(R, S)
    return ProbabilityDecomposition(weights=w, scores=p, reconstructed=math.fsum(a * b for a, b in zip(w, p)))


def pooling_constant(weights: WeightsLike) -> float:
    """The K that makes pooling_rating satisfy same-scale normalization."""
    weights = weights if isinstance(weights, WeightVector) else WeightVector(weights=list(weights))
    return -400.0 * math.log10(weights.total)


def pooling_rating(R: ProfileLike, weights: WeightsLike = None, K: float = None) -> float:
    """400 log10(sum_i l_i q(R_i)) + K; the normalized member when K is None."""
    R = RatingProfile.coerce(R)
    weights = WeightVector.coerce(weights, len(R))
    K = pooling_constant(weights) if K is None else float(K)
    return _log_pool(R, weights) / LN10_OVER_400 + K


def pooled_component_probabilities(R: ProfileLike, S: ProfileLike,
                                   weights: WeightsLike = None) -> Tuple[List[float], List[float]]:
    """Selection probability of every player-format component in a single Luce pool."""
    R, S, weights = prepare_pair(R, S, weights)
    lam = weights.values
    mask = lam > 0

    log_r = np.full(len(R), -np.inf)
    log_s = np.full(len(S), -np.inf)
    log_r[mask] = np.log(lam[mask]) + R.values[mask] * LN10_OVER_400
    log_s[mask] = np.log(lam[mask]) + S.values[mask] * LN10_OVER_400
    total = logsumexp(np.concatenate([log_r[mask], log_s[mask]]))
    return np.exp(log_r - total).tolist(), np.exp(log_s - total).tolist()


def matchup(R: ProfileLike, S: ProfileLike, weights: WeightsLike = None,
            distribution=None) -> MatchupReport:
    """Build the full matchup report for two profiles."""
    R, S, weights = prepare_pair(R, S, weights)
    combined_a = combined_rating(R, weights)
    combined_b = combined_rating(S, weights)
    lottery = None

    if distribution is not None:
        distribution = FormatDistribution.coerce(distribution, len(R))
        lottery = lottery_probability(R, S, distribution)

    return MatchupReport(
        profile_a=R,
        profile_b=S,
        weights=weights,
        combined_a=combined_a,
        combined_b=combined_b,
        per_format_scores=per_format_scores(R, S),
        combined_probability=pairwise_probability(R, S, weights),
        endogenous_weights=endogenous_weights(R, S, weights),
        distribution=distribution,
        lottery_probability=lottery,
    )
