# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Role-specific ratings (e.g. White/Black) with an Elo-style update."""
import math
from dataclasses import dataclass, replace
from typing import Dict, Optional, Tuple

from .aggregation import combined_rating
from .elo import expected_score
from .errors import InvalidInputError, InvalidScoreError, RoleError
from .mixins import MarshmallowDataclassMixin
from .profiles import RatingProfile, WeightsLike
from .schemas import definitions
from .utils import get_defaults

VALID_SCORES = (0.0, 0.5, 1.0)


def default_k_factor() -> float:
    return float(get_defaults()['roles']['k_factor'])


@dataclass(frozen=True)
class GameResult(MarshmallowDataclassMixin):
    """Score of the first-role player: 0, 1/2 or 1."""

    score: definitions.GameScore

    def __post_init__(self):
        try:
            score = float(self.score)
        except (TypeError, ValueError):
            raise InvalidScoreError(f'score must be one of {VALID_SCORES}, got {self.score!r}') from None
        if score not in VALID_SCORES:
            raise InvalidScoreError(f'score must be one of {VALID_SCORES}, got {self.score!r}')
        object.__setattr__(self, 'score', score)


@dataclass(frozen=True)
class RoleProfile(MarshmallowDataclassMixin):
    """Per-role rating coordinates plus the update factor K (Elo points per score unit)."""

    ratings: RatingProfile
    k_factor: Optional[definitions.PositiveFloat] = None

    def __post_init__(self):
        k_factor = default_k_factor() if self.k_factor is None else self.k_factor
        if not math.isfinite(k_factor) or k_factor <= 0:
            raise InvalidInputError(f'K factor must be positive, got {k_factor!r}')
        object.__setattr__(self, 'k_factor', float(k_factor))

    @classmethod
    def from_roles(cls, roles: Dict[str, float], k_factor: Optional[float] = None) -> 'RoleProfile':
        return cls(RatingProfile(labels=list(roles), ratings=list(roles.values())), k_factor)

    def rating(self, role: str) -> float:
        try:
            return self.ratings[role]
        except KeyError:
            raise RoleError(f'unknown role {role!r}; expected one of {self.ratings.labels}') from None

    def with_rating(self, role: str, rating: float) -> 'RoleProfile':
        self.rating(role)
        return replace(self, ratings=self.ratings.replace(role, rating))


def role_expected_score(a: RoleProfile, b: RoleProfile, role_a: str, role_b: str) -> float:
    """Expected score of a playing ``role_a`` against b playing ``role_b``."""
    return expected_score(a.rating(role_a), b.rating(role_b))


def role_update(a: RoleProfile, b: RoleProfile, role_a: str, role_b: str, score,
                k_factor: Optional[float] = None) -> Tuple[RoleProfile, RoleProfile]:
    """Update only the two played coordinates; the deltas are exact negatives."""
    result = score if isinstance(score, GameResult) else GameResult(score)
    k_factor = a.k_factor if k_factor is None else float(k_factor)
    if not math.isfinite(k_factor) or k_factor <= 0:
        raise InvalidInputError(f'K factor must be positive, got {k_factor!r}')

    expected = role_expected_score(a, b, role_a, role_b)
    delta = k_factor * (result.score - expected)

    return (a.with_rating(role_a, a.rating(role_a) + delta),
            b.with_rating(role_b, b.rating(role_b) - delta))


def role_display_rating(a: RoleProfile, weights: WeightsLike = None) -> float:
    """Displayed scalar, recomputed from the role coordinates by the combined rating."""
    return combined_rating(a.ratings, weights)
