# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Leaderboards, matchup reports and rule comparisons over player records."""
from dataclasses import dataclass
from multiprocessing.pool import ThreadPool
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

from .aggregation import combined_rating
from .alternatives import arithmetic_rating, power_mean_rating
from .errors import SchemaMismatchError
from .mixins import MarshmallowDataclassMixin
from .probability import MatchupReport, matchup
from .profiles import FormatDistribution, WeightVector, WeightsLike
from .ratings_loader import PlayerRecord, format_rating
from .schemas import definitions
from .utils import format_fixed, get_defaults, round_half_away

TIE_TOLERANCE = 1e-9
CLASSICAL_LABEL = 'classical'

T = TypeVar('T')


@dataclass(frozen=True)
class LeaderboardRow(MarshmallowDataclassMixin):
    """A ranked player; ``combined`` is unrounded and ``display`` is the rounded value."""

    combined_rank: definitions.PositiveInteger
    classical_rank: Optional[definitions.PositiveInteger]
    name: definitions.NonEmptyStr
    combined: definitions.EloPoints
    display: int
    ratings: List[definitions.EloPoints]


@dataclass(frozen=True)
class Leaderboard(MarshmallowDataclassMixin):
    """Players sorted by unrounded combined rating, best first."""

    labels: List[str]
    weights: List[definitions.Weight]
    rows: List[LeaderboardRow]

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def row(self, name: str) -> LeaderboardRow:
        return next(row for row in self.rows if row.name == name)

    def table(self) -> str:
        """Human readable table."""
        from eql.table import Table

        columns = ['rank', 'classical_rank', 'name', 'combined'] + self.labels
        entries = []
        for row in self.rows:
            entry = {'rank': row.combined_rank,
                     'classical_rank': '' if row.classical_rank is None else row.classical_rank,
                     'name': row.name,
                     'combined': row.display}
            entry.update({label: format_rating(r) for label, r in zip(self.labels, row.ratings)})
            entries.append(entry)

        return str(Table.from_list(columns, entries))


@dataclass(frozen=True)
class ComparisonRow(MarshmallowDataclassMixin):
    """One player under the arithmetic rule, each power mean and the combined rating."""

    name: definitions.NonEmptyStr
    arithmetic: definitions.EloPoints
    power_means: List[definitions.EloPoints]
    combined: definitions.EloPoints


@dataclass(frozen=True)
class ComparisonTable(MarshmallowDataclassMixin):
    """Rule comparison sorted by the combined rating."""

    labels: List[str]
    p_values: List[float]
    rows: List[ComparisonRow]

    def __iter__(self):
        return iter(self.rows)

    def row(self, name: str) -> ComparisonRow:
        return next(row for row in self.rows if row.name == name)

    def table(self, places: Optional[int] = None) -> str:
        from eql.table import Table

        places = get_defaults()['display']['rating_places'] if places is None else places
        p_columns = [f'p={p:g}' for p in self.p_values]
        columns = ['name', 'arithmetic'] + p_columns + ['combined']
        entries = []
        for row in self.rows:
            entry = {'name': row.name,
                     'arithmetic': format_fixed(row.arithmetic, places),
                     'combined': format_fixed(row.combined, places)}
            entry.update({column: format_fixed(value, places) for column, value in zip(p_columns, row.power_means)})
            entries.append(entry)

        return str(Table.from_list(columns, entries))


def check_schema(records: Sequence[PlayerRecord]) -> List[str]:
    """Return the shared format labels or raise."""
    labels = list(records[0].labels) if records else []
    for record in records:
        if record.labels != labels:
            raise SchemaMismatchError(f'{record.name} has formats {record.labels}, expected {labels}')
    return labels


def _sort_by_value(records: Sequence[PlayerRecord], values: Sequence[float]) -> List[int]:
    """Indices sorted by value descending; ties by ascending name.

    Values closer than TIE_TOLERANCE to a neighbour in value order form one tie group, so a chain
    of near ties is ordered by name as a whole even when its ends differ by more than the tolerance.
    """
    ranked: List[int] = []
    group: List[int] = []

    for i in sorted(range(len(records)), key=lambda k: (-values[k], records[k].name)):
        if group and values[group[-1]] - values[i] > TIE_TOLERANCE:
            ranked.extend(sorted(group, key=lambda k: records[k].name))
            group = []
        group.append(i)

    ranked.extend(sorted(group, key=lambda k: records[k].name))
    return ranked


def _parallel_map(f: Callable[[PlayerRecord], T], records: Sequence[PlayerRecord], threads: int) -> List[T]:
    if threads <= 1 or len(records) < 2:
        return [f(record) for record in records]

    pool = ThreadPool(processes=threads)
    try:
        # map keeps input order
        return pool.map(f, records)
    finally:
        pool.close()
        pool.join()


def _classical_ranks(records: Sequence[PlayerRecord], labels: List[str]) -> List[int]:
    """Competition ranks by the classical column (first column when there is none)."""
    index = labels.index(CLASSICAL_LABEL) if CLASSICAL_LABEL in labels else 0
    values = [record.ratings.ratings[index] for record in records]
    return [1 + sum(other > value for other in values) for value in values]


def rank_players(records: Iterable[PlayerRecord], weights: WeightsLike = None, threads: int = 1) -> Leaderboard:
    """Rank players by combined rating; classical ranks are echoed when present, else computed."""
    records = list(records)
    labels = check_schema(records)
    if not records:
        return Leaderboard(labels=[], weights=[] if weights is None else list(weights), rows=[])

    weights = WeightVector.coerce(weights, len(labels))
    combined = _parallel_map(lambda record: combined_rating(record.ratings, weights), records, threads)
    computed_ranks = _classical_ranks(records, labels)

    rows = []
    for rank, i in enumerate(_sort_by_value(records, combined), 1):
        record = records[i]
        classical = record.classical_rank if record.classical_rank is not None else computed_ranks[i]
        rows.append(LeaderboardRow(combined_rank=rank,
                                   classical_rank=classical,
                                   name=record.name,
                                   combined=combined[i],
                                   display=int(round_half_away(combined[i])),
                                   ratings=list(record.ratings.ratings)))

    return Leaderboard(labels=labels, weights=list(weights.weights), rows=rows)


def matchup_report(a: PlayerRecord, b: PlayerRecord, weights: WeightsLike = None,
                   distribution=None) -> MatchupReport:
    """Matchup report for two players with a shared format schema."""
    labels = check_schema([a, b])
    if distribution is not None and not isinstance(distribution, FormatDistribution):
        distribution = FormatDistribution.coerce(distribution, len(labels))
    return matchup(a.ratings, b.ratings, weights, distribution)


def format_matchup(report: MatchupReport, name_a: str = 'A', name_b: str = 'B',
                   rating_places: Optional[int] = None, probability_places: Optional[int] = None) -> str:
    """Plain-text rendering of a matchup report."""
    display = get_defaults()['display']
    rating_places = display['rating_places'] if rating_places is None else rating_places
    probability_places = display['probability_places'] if probability_places is None else probability_places
    labels = report.profile_a.labels

    def rating(value):
        return format_fixed(value, rating_places)

    def prob(value):
        return format_fixed(value, probability_places)

    lines = [
        f'combined rating {name_a}: {rating(report.combined_a)}',
        f'combined rating {name_b}: {rating(report.combined_b)}',
        f'rating difference: {rating(report.rating_difference)}',
        f'combined probability: {prob(report.combined_probability)}',
        'per-format scores: ' + ', '.join(f'{label}={prob(p)}'
                                          for label, p in zip(labels, report.per_format_scores)),
        'endogenous weights: ' + ', '.join(f'{label}={prob(w)}'
                                           for label, w in zip(labels, report.endogenous_weights)),
    ]

    if report.lottery_probability is not None:
        lines.append(f'lottery probability: {prob(report.lottery_probability)}')
        lines.append(f'combined - lottery gap: {prob(report.gap)}')

    return '\n'.join(lines)


def compare_methods(records: Iterable[PlayerRecord], weights: WeightsLike = None,
                    p_list: Sequence[float] = (0, 1), threads: int = 1) -> ComparisonTable:
    """Arithmetic, power-mean and combined ratings per player, sorted by the combined rating."""
    records = list(records)
    labels = check_schema(records)
    p_list = [float(p) for p in p_list]
    if not records:
        return ComparisonTable(labels=[], p_values=p_list, rows=[])

    weights = WeightVector.coerce(weights, len(labels))

    def evaluate(record: PlayerRecord) -> ComparisonRow:
        return ComparisonRow(name=record.name,
                             arithmetic=arithmetic_rating(record.ratings, weights),
                             power_means=[power_mean_rating(record.ratings, weights, p) for p in p_list],
                             combined=combined_rating(record.ratings, weights))

    rows = _parallel_map(evaluate, records, threads)
    order = _sort_by_value(records, [row.combined for row in rows])
    return ComparisonTable(labels=labels, p_values=p_list, rows=[rows[i] for i in order])
