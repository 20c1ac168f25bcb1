# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Aggregation rules: the combined rating and the rules it is compared against."""
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional

import numpy as np
from scipy.special import logsumexp

from .aggregation import combined_rating, prepare
from .alternatives import arithmetic_rating, power_mean_rating
from .elo import LN10_OVER_400
from .errors import InvalidRuleError
from .mixins import MarshmallowDataclassMixin
from .profiles import ProfileLike, RatingProfile, WeightVector, WeightsLike
from .schemas import definitions
from .utils import get_defaults


def default_eta() -> float:
    return float(get_defaults()['rules']['entropy_eta'])


_evaluators: Dict[str, Callable[['AggregationRule', RatingProfile, WeightVector], float]] = {}


def evaluator(rule_id: str):
    """Decorator to register the evaluator for a rule id."""

    def wrapper(f):
        assert rule_id not in _evaluators
        _evaluators[rule_id] = f
        return f

    return wrapper


def shannon_entropy(weights: WeightsLike) -> float:
    """Entropy (natural log) of normalized weights; zero weights contribute nothing."""
    weights = weights if isinstance(weights, WeightVector) else WeightVector(weights=list(weights))
    w = weights.values / weights.total
    w = w[w > 0]
    return float(-np.sum(w * np.log(w)))


@dataclass(frozen=True)
class AggregationRule(MarshmallowDataclassMixin):
    """A named rule mapping (profile, weights) to an Elo rating."""

    id: definitions.RuleId
    eta: Optional[definitions.PositiveFloat] = None
    p: Optional[float] = None

    def __post_init__(self):
        if self.id not in _evaluators:
            raise InvalidRuleError(f'Unknown rule: {self.id}')

        if self.id == 'entropy':
            eta = default_eta() if self.eta is None else self.eta
            if not math.isfinite(eta) or eta <= 0:
                raise InvalidRuleError(f'entropy rule needs eta > 0, got {eta!r}')
            object.__setattr__(self, 'eta', float(eta))
        elif self.eta is not None:
            raise InvalidRuleError(f'eta only applies to the entropy rule, not {self.id}')

        if self.id == 'power_mean':
            if self.p is None or not math.isfinite(self.p):
                raise InvalidRuleError(f'power_mean rule needs a finite p, got {self.p!r}')
            object.__setattr__(self, 'p', float(self.p))
        elif self.p is not None:
            raise InvalidRuleError(f'p only applies to the power_mean rule, not {self.id}')

    @classmethod
    def main(cls) -> 'AggregationRule':
        return cls('main')

    @classmethod
    def arithmetic(cls) -> 'AggregationRule':
        return cls('arithmetic')

    @classmethod
    def piecewise(cls) -> 'AggregationRule':
        return cls('piecewise')

    @classmethod
    def entropy(cls, eta: Optional[float] = None) -> 'AggregationRule':
        return cls('entropy', eta=eta)

    @classmethod
    def power_mean(cls, p: float) -> 'AggregationRule':
        return cls('power_mean', p=p)

    @property
    def name(self) -> str:
        if self.id == 'entropy':
            return f'entropy(eta={self.eta:g})'
        if self.id == 'power_mean':
            return f'power_mean(p={self.p:g})'
        return self.id

    def evaluate(self, R: ProfileLike, weights: WeightsLike = None) -> float:
        """Evaluate the rule on a profile."""
        profile, weights = prepare(R, weights)
        return _evaluators[self.id](self, profile, weights)

    __call__ = evaluate

    def bind(self, weights: WeightsLike) -> 'BoundRule':
        """Fix the weights, leaving a function of the profile only."""
        weights = weights if isinstance(weights, WeightVector) else WeightVector(weights=list(weights))
        return BoundRule(self, weights)


class BoundRule:
    """A rule with hidden weights, as seen by weight recovery."""

    def __init__(self, rule: AggregationRule, weights: WeightVector):
        self.rule = rule
        self.weights = weights

    @property
    def dimension(self) -> int:
        return len(self.weights)

    def __call__(self, R: ProfileLike) -> float:
        return self.rule.evaluate(R, self.weights)

    def __repr__(self):
        return f'BoundRule({self.rule.name}, n={self.dimension})'


@evaluator('main')
def _evaluate_main(rule: AggregationRule, profile: RatingProfile, weights: WeightVector) -> float:
    return combined_rating(profile, weights)


@evaluator('arithmetic')
def _evaluate_arithmetic(rule: AggregationRule, profile: RatingProfile, weights: WeightVector) -> float:
    return arithmetic_rating(profile, weights)


@evaluator('piecewise')
def _evaluate_piecewise(rule: AggregationRule, profile: RatingProfile, weights: WeightVector) -> float:
    # strength average in one or two dimensions, rating average from three up
    if len(profile) <= 2:
        return combined_rating(profile, weights)
    return arithmetic_rating(profile, weights)


@evaluator('entropy')
def _evaluate_entropy(rule: AggregationRule, profile: RatingProfile, weights: WeightVector) -> float:
    lam = weights.values
    mask = lam > 0
    values = profile.values[mask]
    w = lam[mask] / lam[mask].sum()

    log_strength = logsumexp(values * LN10_OVER_400, b=w)
    entropy = shannon_entropy(weights)
    if entropy > 0:
        log_strength = np.logaddexp(log_strength, math.log(rule.eta * entropy))
    return float(log_strength / LN10_OVER_400)


@evaluator('power_mean')
def _evaluate_power_mean(rule: AggregationRule, profile: RatingProfile, weights: WeightVector) -> float:
    return power_mean_rating(profile, weights, rule.p)


def get_rule(rule_id: str, eta: Optional[float] = None, p: Optional[float] = None) -> AggregationRule:
    """Build a rule from CLI-style arguments."""
    if rule_id == 'entropy':
        return AggregationRule.entropy(eta)
    if rule_id == 'power_mean':
        return AggregationRule.power_mean(1.0 if p is None else p)
    return AggregationRule(rule_id)


INDEPENDENCE_RULES = ('main', 'arithmetic', 'piecewise', 'entropy')
