# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Executable axiom checks for aggregation rules.

Three substantive properties are checked for any rule:

    normalization  a uniform profile r * 1 aggregates to r
    recursion      block-wise aggregation with block total weights equals direct aggregation
    marginal       at equal weights and n = 2 the ratio of partial derivatives equals the Elo odds

Every check evaluates a fixed canonical witness first and then seeded random
instances, so a failing verdict always carries a concrete, reproducible input.
"""
import math
from dataclasses import dataclass, field
from multiprocessing.pool import ThreadPool
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np
from eql.utils import load_dump

from .aggregation import finite_difference_gradient, recursive_aggregate, replicate_coordinate
from .alternatives import marginal_ratio
from .elo import elo_odds
from .errors import InvalidInputError, NumericFailureError
from .mixins import MarshmallowDataclassMixin
from .probability import lottery_probability, pairwise_probability
from .profiles import FormatDistribution, Partition, ProfileLike, RatingProfile, WeightVector, WeightsLike
from .rules import INDEPENDENCE_RULES, AggregationRule, get_rule, shannon_entropy
from .schemas import definitions
from .utils import get_defaults, load_etc_dump

AXIOMS = ('normalization', 'recursion', 'marginal')
DERIVED_CHECKS = ('relabeling', 'weight_scale', 'monotonicity', 'replication')

EXPECTED_INDEPENDENCE: Dict[str, Tuple[bool, bool, bool]] = {
    'main': (True, True, True),
    'arithmetic': (True, True, False),
    'piecewise': (True, False, True),
    'entropy': (False, True, True),
}

CYCLE_PROBABILITY_TOLERANCE = 1e-12
CYCLE_RATING_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SamplingConfig(MarshmallowDataclassMixin):
    """Seed, counts, ranges and tolerances for the randomized checks."""

    seed: int = 0
    samples: definitions.PositiveInteger = 1000
    rating_range: List[float] = field(default_factory=lambda: [1000.0, 3000.0])
    weight_range: List[float] = field(default_factory=lambda: [0.1, 10.0])
    dimensions: List[int] = field(default_factory=lambda: [2, 6])
    enumerate_partitions_up_to: int = 5
    sampled_partitions: definitions.PositiveInteger = 20
    rating_tolerance: definitions.PositiveFloat = 1e-6
    marginal_tolerance: definitions.PositiveFloat = 1e-4
    finite_difference_step: definitions.PositiveFloat = 1e-3
    scale_factors: List[float] = field(default_factory=lambda: [1e-3, 0.5, 2.0, 7.0, 1e3])

    def __post_init__(self):
        if self.samples < 1 or self.sampled_partitions < 1:
            raise InvalidInputError('sample counts must be at least 1')

        for name in ('rating_range', 'weight_range', 'dimensions'):
            bounds = getattr(self, name)
            if len(bounds) != 2 or not all(math.isfinite(b) for b in bounds) or bounds[0] > bounds[1]:
                raise InvalidInputError(f'{name} must be a nonempty [low, high] range, got {bounds}')

        if self.weight_range[1] <= 0 or self.weight_range[0] < 0:
            raise InvalidInputError(f'weight_range must allow positive weights, got {self.weight_range}')
        if self.dimensions[0] < 2:
            raise InvalidInputError(f'dimensions must start at 2 or more, got {self.dimensions}')
        if any(not math.isfinite(a) or a <= 0 for a in self.scale_factors):
            raise InvalidInputError(f'scale factors must be positive, got {self.scale_factors}')

    @classmethod
    def default(cls, **overrides) -> 'SamplingConfig':
        """Packaged defaults from etc/ratings-defaults.yml, with overrides."""
        settings = dict(get_defaults()['axioms'])
        settings.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**settings)

    def rng(self, stream: int) -> np.random.Generator:
        """Independent generator per check, so results do not depend on check order."""
        return np.random.default_rng([self.seed, stream])

    def random_instance(self, rng: np.random.Generator, n: Optional[int] = None) -> Tuple[List[float], List[float]]:
        """Random ratings and positive weights of dimension n (or a random dimension)."""
        if n is None:
            n = int(rng.integers(self.dimensions[0], self.dimensions[1], endpoint=True))
        ratings = rng.uniform(*self.rating_range, size=n)
        weights = rng.uniform(*self.weight_range, size=n)
        # WeightVector needs one strictly positive entry
        if not np.any(weights > 0):
            weights[0] = self.weight_range[1]
        return ratings.tolist(), weights.tolist()


@dataclass(frozen=True)
class AxiomVerdict(MarshmallowDataclassMixin):
    """Outcome of one check with the worst instance observed."""

    name: str
    verdict: definitions.Verdict
    discrepancy: float
    tolerance: float
    witness: Dict[str, Any]
    instances: int = 0

    @property
    def holds(self) -> bool:
        return self.verdict == 'holds'


@dataclass(frozen=True)
class AxiomReport(MarshmallowDataclassMixin):
    """Verdicts of the three substantive axioms plus the derived checks."""

    rule: str
    normalization: AxiomVerdict
    recursion: AxiomVerdict
    marginal: AxiomVerdict
    relabeling: AxiomVerdict
    weight_scale: AxiomVerdict
    monotonicity: AxiomVerdict
    replication: AxiomVerdict
    grouping: Optional[AxiomVerdict] = None

    @property
    def substantive(self) -> Tuple[bool, bool, bool]:
        return self.normalization.holds, self.recursion.holds, self.marginal.holds

    @property
    def holds(self) -> bool:
        return all(self.substantive)

    def verdicts(self) -> List[AxiomVerdict]:
        checks = [getattr(self, name) for name in AXIOMS + DERIVED_CHECKS]
        return checks + ([self.grouping] if self.grouping is not None else [])


@dataclass(frozen=True)
class IndependenceReport(MarshmallowDataclassMixin):
    """Verdict matrix over the comparison rules against the expected pattern."""

    reports: List[AxiomReport]
    expected: Dict[str, List[bool]]

    @property
    def matrix(self) -> Dict[str, Tuple[bool, bool, bool]]:
        return {report.rule.split('(')[0]: report.substantive for report in self.reports}

    @property
    def matches(self) -> bool:
        return all(tuple(self.expected[rule]) == row for rule, row in self.matrix.items())


@dataclass(frozen=True)
class CycleReport(MarshmallowDataclassMixin):
    """Three profiles with equal combined ratings that beat each other in a cycle."""

    labels: List[str]
    names: List[str]
    profiles: List[RatingProfile]
    lottery_probabilities: List[definitions.Probability]
    combined_probabilities: List[definitions.Probability]
    combined_ratings: List[definitions.EloPoints]
    expected_probability: definitions.Probability

    @property
    def pairs(self) -> List[Tuple[str, str]]:
        return [(a, b) for a, b in zip(self.names, self.names[1:] + self.names[:1])]

    @property
    def lottery_matches(self) -> bool:
        return all(abs(p - self.expected_probability) <= CYCLE_PROBABILITY_TOLERANCE
                   for p in self.lottery_probabilities)

    @property
    def ratings_equal(self) -> bool:
        return max(self.combined_ratings) - min(self.combined_ratings) <= CYCLE_RATING_TOLERANCE

    @property
    def holds(self) -> bool:
        return self.lottery_matches and self.ratings_equal


def evaluate_rule(rule: AggregationRule, R: ProfileLike, weights: WeightsLike = None) -> float:
    """Evaluate a named rule on a profile."""
    return rule.evaluate(R, weights)


def iter_partitions(n: int) -> Iterator[Partition]:
    """All set partitions of 0..n-1, blocks ordered by their smallest index."""
    if n < 1:
        raise InvalidInputError(f'cannot partition {n} coordinates')

    def _extend(index: int, blocks: List[List[int]]):
        if index == n:
            yield Partition(blocks=[list(block) for block in blocks])
            return

        for block in blocks:
            block.append(index)
            yield from _extend(index + 1, blocks)
            block.pop()

        blocks.append([index])
        yield from _extend(index + 1, blocks)
        blocks.pop()

    yield from _extend(0, [])


def random_partition(n: int, rng: np.random.Generator) -> Partition:
    """Random ordered partition of 0..n-1."""
    if n < 1:
        raise InvalidInputError(f'cannot partition {n} coordinates')

    assignment = rng.integers(0, rng.integers(1, n, endpoint=True), size=n)
    blocks = [np.flatnonzero(assignment == label).tolist() for label in np.unique(assignment)]
    return Partition(blocks=[blocks[i] for i in rng.permutation(len(blocks))])


def _partitions_for(n: int, sampling: SamplingConfig, rng: np.random.Generator) -> Iterator[Partition]:
    if n <= sampling.enumerate_partitions_up_to:
        for partition in iter_partitions(n):
            # recursion is stated for ordered partitions
            yield Partition(blocks=[partition.blocks[i] for i in rng.permutation(len(partition))])
    else:
        for _ in range(sampling.sampled_partitions):
            yield random_partition(n, rng)


class _Tracker:
    """Keeps the canonical failure, else the largest discrepancy seen."""

    def __init__(self, name: str, tolerance: float):
        self.name = name
        self.tolerance = tolerance
        self.worst = -math.inf
        self.witness: Dict[str, Any] = {}
        self.canonical_failure = False
        self.instances = 0

    def observe(self, discrepancy: float, witness: Dict[str, Any], canonical: bool = False):
        self.instances += 1
        if not math.isfinite(discrepancy):
            discrepancy = math.inf

        if self.canonical_failure:
            self.worst = max(self.worst, discrepancy)
            return

        if canonical and discrepancy > self.tolerance:
            self.canonical_failure = True
            self.worst = discrepancy
            self.witness = dict(witness, canonical=True)
        elif discrepancy > self.worst:
            self.worst = discrepancy
            self.witness = dict(witness, canonical=canonical)

    def verdict(self) -> AxiomVerdict:
        discrepancy = self.witness.get('discrepancy', self.worst) if self.canonical_failure else self.worst
        return AxiomVerdict(name=self.name,
                            verdict='holds' if self.worst <= self.tolerance else 'fails',
                            discrepancy=float(discrepancy),
                            tolerance=self.tolerance,
                            witness=self.witness,
                            instances=self.instances)


def _normalization_gap(rule: AggregationRule, ratings: List[float], weights: List[float]) -> float:
    return abs(rule.evaluate(ratings, weights) - ratings[0])


def _recursion_gap(rule: AggregationRule, ratings, weights, partition: Partition) -> Tuple[float, float, float]:
    direct = rule.evaluate(ratings, weights)
    grouped = recursive_aggregate(ratings, weights, partition, evaluator=rule.evaluate)
    return abs(direct - grouped), direct, grouped


def _marginal_gap(rule: AggregationRule, x: float, y: float, step: float) -> Tuple[float, float, float]:
    expected = elo_odds(x, y)
    try:
        ratio = marginal_ratio(rule, x, y, step=step)
    except NumericFailureError:
        return math.inf, math.nan, expected
    return abs(ratio - expected) / expected, ratio, expected


def check_normalization(rule: AggregationRule, sampling: SamplingConfig) -> AxiomVerdict:
    """A uniform profile r * 1 must aggregate to r."""
    tracker = _Tracker('normalization', sampling.rating_tolerance)
    gap = _normalization_gap(rule, [0.0, 0.0], [1.0, 1.0])
    tracker.observe(gap, dict(ratings=[0.0, 0.0], weights=[1.0, 1.0], discrepancy=gap), canonical=True)

    rng = sampling.rng(1)
    for _ in range(sampling.samples):
        ratings, weights = sampling.random_instance(rng)
        ratings = [ratings[0]] * len(ratings)
        gap = _normalization_gap(rule, ratings, weights)
        tracker.observe(gap, dict(ratings=ratings, weights=weights, discrepancy=gap))

    return tracker.verdict()


def check_recursion(rule: AggregationRule, sampling: SamplingConfig) -> AxiomVerdict:
    """Direct aggregation against block-wise aggregation over ordered partitions."""
    tracker = _Tracker('recursion', sampling.rating_tolerance)
    ratings, weights, blocks = [0.0, 400.0, 400.0], [1.0, 1.0, 1.0], [[0, 1], [2]]
    gap, direct, grouped = _recursion_gap(rule, ratings, weights, Partition(blocks=blocks))
    tracker.observe(gap, dict(ratings=ratings, weights=weights, partition=blocks, direct=direct, grouped=grouped,
                              discrepancy=gap), canonical=True)

    rng = sampling.rng(3)
    for _ in range(sampling.samples):
        ratings, weights = sampling.random_instance(rng)
        for partition in _partitions_for(len(ratings), sampling, rng):
            gap, direct, grouped = _recursion_gap(rule, ratings, weights, partition)
            tracker.observe(gap, dict(ratings=ratings, weights=weights, partition=partition.blocks, direct=direct,
                                      grouped=grouped, discrepancy=gap))

    return tracker.verdict()


def check_marginal(rule: AggregationRule, sampling: SamplingConfig) -> AxiomVerdict:
    """Relative error of the finite-difference marginal ratio against 10^((x - y)/400), n = 2."""
    tracker = _Tracker('marginal', sampling.marginal_tolerance)
    step = sampling.finite_difference_step

    x, y = 400.0, 0.0
    gap, ratio, expected = _marginal_gap(rule, x, y, step)
    tracker.observe(gap, dict(x=x, y=y, ratio=ratio, expected=expected, discrepancy=gap), canonical=True)

    rng = sampling.rng(4)
    for _ in range(sampling.samples):
        x, y = rng.uniform(*sampling.rating_range, size=2).tolist()
        gap, ratio, expected = _marginal_gap(rule, x, y, step)
        tracker.observe(gap, dict(x=x, y=y, ratio=ratio, expected=expected, discrepancy=gap))

    return tracker.verdict()


def check_relabeling(rule: AggregationRule, sampling: SamplingConfig) -> AxiomVerdict:
    """Permuting ratings and weights together leaves the rule unchanged."""
    tracker = _Tracker('relabeling', sampling.rating_tolerance)
    rng = sampling.rng(5)

    for _ in range(sampling.samples):
        ratings, weights = sampling.random_instance(rng)
        permutation = rng.permutation(len(ratings)).tolist()
        gap = abs(rule.evaluate(ratings, weights)
                  - rule.evaluate([ratings[i] for i in permutation], [weights[i] for i in permutation]))
        tracker.observe(gap, dict(ratings=ratings, weights=weights, permutation=permutation, discrepancy=gap))

    return tracker.verdict()


def check_weight_scale(rule: AggregationRule, sampling: SamplingConfig) -> AxiomVerdict:
    """Multiplying all weights by a positive constant leaves the rule unchanged."""
    tracker = _Tracker('weight_scale', sampling.rating_tolerance)
    rng = sampling.rng(6)

    for _ in range(sampling.samples):
        ratings, weights = sampling.random_instance(rng)
        base = rule.evaluate(ratings, weights)
        for factor in sampling.scale_factors:
            gap = abs(rule.evaluate(ratings, [factor * w for w in weights]) - base)
            tracker.observe(gap, dict(ratings=ratings, weights=weights, factor=factor, discrepancy=gap))

    return tracker.verdict()


def check_monotonicity(rule: AggregationRule, sampling: SamplingConfig) -> AxiomVerdict:
    """Every finite-difference partial must be strictly positive; the discrepancy is -min partial."""
    tracker = _Tracker('monotonicity', 0.0)
    rng = sampling.rng(7)

    for _ in range(sampling.samples):
        ratings, weights = sampling.random_instance(rng)
        gradient = finite_difference_gradient(rule.evaluate, ratings, weights, step=sampling.finite_difference_step)
        gap = -float(gradient.min())
        # zero partials count as failures, not ties
        if gap == 0:
            gap = math.ulp(1.0)
        tracker.observe(gap, dict(ratings=ratings, weights=weights, gradient=gradient.tolist(), discrepancy=gap))

    return tracker.verdict()


def check_replication(rule: AggregationRule, sampling: SamplingConfig) -> AxiomVerdict:
    """Splitting a coordinate into identical copies that share its weight leaves the rule unchanged."""
    tracker = _Tracker('replication', sampling.rating_tolerance)
    rng = sampling.rng(8)

    for _ in range(sampling.samples):
        ratings, weights = sampling.random_instance(rng)
        index = int(rng.integers(0, len(ratings)))
        parts = int(rng.integers(2, 4, endpoint=True))
        split_ratings, split_weights = replicate_coordinate(ratings, weights, index, parts)
        gap = abs(rule.evaluate(ratings, weights) - rule.evaluate(split_ratings, split_weights))
        tracker.observe(gap, dict(ratings=ratings, weights=weights, index=index, parts=parts, discrepancy=gap))

    return tracker.verdict()


def grouping_identity_gap(weights: WeightsLike, partition) -> float:
    """|H(w) - H(block totals) - sum_B W_B H(w | B)| with natural logs."""
    weights = weights if isinstance(weights, WeightVector) else WeightVector(weights=list(weights))
    partition = Partition.coerce(partition).check(len(weights))
    total = weights.total

    block_totals = [weights.subset(block).total for block in partition]
    within = math.fsum((w / total) * shannon_entropy(weights.subset(block))
                       for w, block in zip(block_totals, partition) if w > 0)
    between = shannon_entropy([w for w in block_totals if w > 0])
    return abs(shannon_entropy(weights) - between - within)


def check_entropy_grouping(sampling: SamplingConfig) -> AxiomVerdict:
    """Numerical check of the Shannon entropy grouping identity on random partitions."""
    tracker = _Tracker('grouping', sampling.rating_tolerance)
    rng = sampling.rng(9)

    for _ in range(sampling.samples):
        _, weights = sampling.random_instance(rng)
        partition = random_partition(len(weights), rng)
        gap = grouping_identity_gap(weights, partition)
        tracker.observe(gap, dict(weights=weights, partition=partition.blocks, discrepancy=gap))

    return tracker.verdict()


def check_axioms(rule: AggregationRule, sampling: Optional[SamplingConfig] = None) -> AxiomReport:
    """Run every check for one rule. Failures are verdicts, never errors."""
    sampling = sampling or SamplingConfig.default()
    return AxiomReport(
        rule=rule.name,
        normalization=check_normalization(rule, sampling),
        recursion=check_recursion(rule, sampling),
        marginal=check_marginal(rule, sampling),
        relabeling=check_relabeling(rule, sampling),
        weight_scale=check_weight_scale(rule, sampling),
        monotonicity=check_monotonicity(rule, sampling),
        replication=check_replication(rule, sampling),
        grouping=check_entropy_grouping(sampling) if rule.id == 'entropy' else None,
    )


def reproduce_witness(rule: AggregationRule, verdict: AxiomVerdict, sampling: Optional[SamplingConfig] = None) -> float:
    """Re-evaluate a verdict's witness from scratch and return its discrepancy."""
    witness = verdict.witness
    step = (sampling or SamplingConfig.default()).finite_difference_step
    checks: Dict[str, Callable[[], float]] = {
        'normalization': lambda: _normalization_gap(rule, witness['ratings'], witness['weights']),
        'recursion': lambda: _recursion_gap(rule, witness['ratings'], witness['weights'],
                                            Partition(blocks=witness['partition']))[0],
        'marginal': lambda: _marginal_gap(rule, witness['x'], witness['y'], step)[0],
    }

    if verdict.name not in checks:
        raise InvalidInputError(f'no standalone reproduction for {verdict.name} checks')
    return checks[verdict.name]()


def independence_matrix(sampling: Optional[SamplingConfig] = None, eta: Optional[float] = None,
                        threads: int = 1) -> IndependenceReport:
    """Check the main rule and the three counterexample rules."""
    sampling = sampling or SamplingConfig.default()
    rules = [get_rule(rule_id, eta=eta if rule_id == 'entropy' else None) for rule_id in INDEPENDENCE_RULES]

    pool = ThreadPool(processes=max(1, threads))
    try:
        reports = pool.map(lambda rule: check_axioms(rule, sampling), rules)
    finally:
        pool.close()
        pool.join()

    return IndependenceReport(reports=reports, expected={k: list(v) for k, v in EXPECTED_INDEPENDENCE.items()})


def verify_cycle(path: Optional[str] = None) -> CycleReport:
    """Uniform-lottery probabilities and combined ratings of the three cycle profiles."""
    data = load_etc_dump('profiles', 'cycle.yml') if path is None else load_dump(path)
    labels = data['labels']
    names = list(data['profiles'])
    profiles = [RatingProfile(labels=labels, ratings=data['profiles'][name]) for name in names]
    numerator, denominator = data['expected_lottery']

    uniform = FormatDistribution.uniform(len(labels))
    pairs = list(zip(profiles, profiles[1:] + profiles[:1]))

    return CycleReport(
        labels=labels,
        names=names,
        profiles=profiles,
        lottery_probabilities=[lottery_probability(a, b, uniform) for a, b in pairs],
        combined_probabilities=[pairwise_probability(a, b) for a, b in pairs],
        combined_ratings=[evaluate_rule(AggregationRule.main(), profile) for profile in profiles],
        expected_probability=numerator / denominator,
    )
