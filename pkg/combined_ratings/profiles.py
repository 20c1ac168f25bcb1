# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Rating profiles, weight vectors, partitions and format distributions."""
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np

from .errors import DimensionError, InvalidDistributionError, InvalidInputError, InvalidWeightsError, PartitionError
from .mixins import MarshmallowDataclassMixin
from .schemas import definitions

DISTRIBUTION_TOLERANCE = 1e-12


def default_labels(n: int) -> List[str]:
    return [f'format_{i + 1}' for i in range(n)]


@dataclass(frozen=True)
class RatingProfile(MarshmallowDataclassMixin):
    """Named vector of Elo ratings, one per format or role."""

    labels: List[definitions.FormatLabel]
    ratings: List[definitions.EloPoints]

    def __post_init__(self):
        labels = [str(label) for label in self.labels]
        ratings = []

        for label, rating in zip(labels, self.ratings):
            try:
                rating = float(rating)
            except (TypeError, ValueError):
                raise InvalidInputError(f'rating for {label} is not a number: {rating!r}') from None
            if not math.isfinite(rating):
                raise InvalidInputError(f'rating for {label} must be finite, got {rating!r}')
            ratings.append(rating)

        if len(labels) != len(self.ratings):
            raise DimensionError(f'{len(labels)} labels for {len(self.ratings)} ratings')
        if not labels:
            raise InvalidInputError('a rating profile needs at least one coordinate')
        if len(set(labels)) != len(labels):
            raise InvalidInputError(f'duplicate labels in profile: {labels}')

        object.__setattr__(self, 'labels', labels)
        object.__setattr__(self, 'ratings', ratings)

    @classmethod
    def from_values(cls, values: Iterable[float], labels: Optional[Sequence[str]] = None) -> 'RatingProfile':
        values = list(values)
        return cls(labels=list(labels) if labels is not None else default_labels(len(values)), ratings=values)

    @classmethod
    def coerce(cls, obj: 'ProfileLike', labels: Optional[Sequence[str]] = None) -> 'RatingProfile':
        """Accept a profile or any sequence of ratings."""
        if isinstance(obj, RatingProfile):
            return obj
        if isinstance(obj, (int, float, np.floating)):
            obj = [obj]
        return cls.from_values(obj, labels)

    def __len__(self):
        return len(self.ratings)

    def __iter__(self):
        return iter(self.ratings)

    def __getitem__(self, label: str) -> float:
        try:
            return self.ratings[self.labels.index(label)]
        except ValueError:
            raise KeyError(label) from None

    @property
    def values(self) -> np.ndarray:
        return np.array(self.ratings, dtype=float)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def replace(self, label: str, rating: float) -> 'RatingProfile':
        """Copy of the profile with one coordinate changed."""
        ratings = list(self.ratings)
        ratings[self.index(label)] = rating
        return RatingProfile(labels=list(self.labels), ratings=ratings)

    def shifted(self, delta: float) -> 'RatingProfile':
        return RatingProfile(labels=list(self.labels), ratings=[r + delta for r in self.ratings])

    def subset(self, indices: Sequence[int]) -> 'RatingProfile':
        return RatingProfile(labels=[self.labels[i] for i in indices], ratings=[self.ratings[i] for i in indices])

    def as_dict(self) -> dict:
        return dict(zip(self.labels, self.ratings))


@dataclass(frozen=True)
class WeightVector(MarshmallowDataclassMixin):
    """Non-negative policy weights with at least one strictly positive entry."""

    weights: List[definitions.Weight]

    def __post_init__(self):
        weights = []
        for weight in self.weights:
            try:
                weight = float(weight)
            except (TypeError, ValueError):
                raise InvalidWeightsError(f'weight is not a number: {weight!r}') from None
            if not math.isfinite(weight) or weight < 0:
                raise InvalidWeightsError(f'weights must be finite and non-negative, got {weight!r}')
            weights.append(weight)

        if not weights:
            raise InvalidWeightsError('weight vector is empty')
        if not any(w > 0 for w in weights):
            raise InvalidWeightsError('at least one weight must be strictly positive')

        object.__setattr__(self, 'weights', weights)

    @classmethod
    def equal(cls, n: int) -> 'WeightVector':
        return cls(weights=[1.0] * n)

    @classmethod
    def coerce(cls, obj: 'WeightsLike', n: int) -> 'WeightVector':
        """Accept a weight vector, a sequence of weights, or None for equal weights."""
        if obj is None:
            return cls.equal(n)
        weights = obj if isinstance(obj, WeightVector) else cls(weights=list(obj))
        if len(weights) != n:
            raise DimensionError(f'{len(weights)} weights for {n} coordinates')
        return weights

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    @property
    def values(self) -> np.ndarray:
        return np.array(self.weights, dtype=float)

    @property
    def total(self) -> float:
        return math.fsum(self.weights)

    def subset(self, indices: Sequence[int]) -> 'WeightVector':
        return WeightVector(weights=[self.weights[i] for i in indices])

    def scaled(self, alpha: float) -> 'WeightVector':
        return WeightVector(weights=[alpha * w for w in self.weights])


@dataclass(frozen=True)
class Partition(MarshmallowDataclassMixin):
    """Ordered list of disjoint, nonempty blocks of 0-based coordinate indices."""

    blocks: List[List[int]]

    def __post_init__(self):
        blocks = [[int(i) for i in block] for block in self.blocks]
        seen = set()

        if not blocks:
            raise PartitionError('a partition needs at least one block')

        for block in blocks:
            if not block:
                raise PartitionError('partition blocks must be nonempty')
            for index in block:
                if index < 0:
                    raise PartitionError(f'negative index {index} in partition')
                if index in seen:
                    raise PartitionError(f'index {index} appears in more than one block')
                seen.add(index)

        object.__setattr__(self, 'blocks', blocks)

    @classmethod
    def singletons(cls, n: int) -> 'Partition':
        return cls(blocks=[[i] for i in range(n)])

    @classmethod
    def coerce(cls, obj: Union['Partition', Sequence[Sequence[int]]]) -> 'Partition':
        return obj if isinstance(obj, Partition) else cls(blocks=[list(block) for block in obj])

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def check(self, n: int) -> 'Partition':
        """Raise unless the blocks cover exactly the indices 0..n-1."""
        covered = sorted(i for block in self.blocks for i in block)
        if covered != list(range(n)):
            raise PartitionError(f'blocks {self.blocks} do not partition {n} coordinates')
        return self

    def describe(self) -> str:
        """1-based set notation for display."""
        return '(' + ','.join('{' + ','.join(str(i + 1) for i in block) + '}' for block in self.blocks) + ')'


@dataclass(frozen=True)
class FormatDistribution(MarshmallowDataclassMixin):
    """Exogenous format-selection probabilities for a random-format lottery."""

    probabilities: List[definitions.Probability]

    def __post_init__(self):
        try:
            probabilities = [float(p) for p in self.probabilities]
        except (TypeError, ValueError):
            raise InvalidDistributionError(f'probabilities must be numbers: {self.probabilities!r}') from None

        if not probabilities:
            raise InvalidDistributionError('distribution is empty')
        if any(not math.isfinite(p) or p < 0 for p in probabilities):
            raise InvalidDistributionError(f'probabilities must be finite and non-negative: {probabilities}')
        if abs(math.fsum(probabilities) - 1.0) > DISTRIBUTION_TOLERANCE:
            raise InvalidDistributionError(f'probabilities sum to {math.fsum(probabilities)!r}, not 1')

        object.__setattr__(self, 'probabilities', probabilities)

    @classmethod
    def uniform(cls, n: int) -> 'FormatDistribution':
        return cls(probabilities=[1.0 / n] * n)

    @classmethod
    def basis(cls, n: int, index: int) -> 'FormatDistribution':
        return cls(probabilities=[1.0 if i == index else 0.0 for i in range(n)])

    @classmethod
    def from_weights(cls, weights: 'WeightsLike') -> 'FormatDistribution':
        """Explicit conversion from policy weights via normalization."""
        weights = weights if isinstance(weights, WeightVector) else WeightVector(weights=list(weights))
        total = weights.total
        probabilities = [w / total for w in weights.weights]
        # absorb the last-bit rounding so the sum check is exact
        probabilities[-1] = max(0.0, 1.0 - math.fsum(probabilities[:-1]))
        return cls(probabilities=probabilities)

    @classmethod
    def coerce(cls, obj, n: int) -> 'FormatDistribution':
        distribution = obj if isinstance(obj, FormatDistribution) else cls(probabilities=list(obj))
        if len(distribution) != n:
            raise DimensionError(f'{len(distribution)} probabilities for {n} formats')
        return distribution

    def __len__(self):
        return len(self.probabilities)

    @property
    def values(self) -> np.ndarray:
        return np.array(self.probabilities, dtype=float)


ProfileLike = Union[RatingProfile, Sequence[float]]
WeightsLike = Union[WeightVector, Sequence[float], None]
