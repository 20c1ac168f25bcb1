# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Load player ratings from CSV or JSON files."""
import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, TextIO, Union

from .errors import (DuplicatePlayerError, InvalidInputError, RatingsParseError, SchemaMismatchError)
from .mixins import MarshmallowDataclassMixin
from .profiles import RatingProfile
from .schemas import definitions

NAME_COLUMN, RANK_COLUMN = definitions.RESERVED_COLUMNS

Source = Union[str, Path, TextIO]


@dataclass(frozen=True)
class PlayerRecord(MarshmallowDataclassMixin):
    """One player: a name, one rating per format, and an optional classical rank."""

    name: definitions.NonEmptyStr
    ratings: RatingProfile
    classical_rank: Optional[definitions.PositiveInteger] = None

    def __post_init__(self):
        name = str(self.name).strip()
        if not name:
            raise InvalidInputError('player name must be nonempty')
        if self.classical_rank is not None and (isinstance(self.classical_rank, bool) or self.classical_rank < 1):
            raise InvalidInputError(f'classical rank for {name} must be a positive integer, '
                                    f'got {self.classical_rank!r}')
        object.__setattr__(self, 'name', name)

    @property
    def labels(self) -> List[str]:
        return self.ratings.labels


class PlayerCollection:
    """Collection of player records sharing one format schema."""

    def __init__(self, records: Optional[Iterable[PlayerRecord]] = None):
        self.name_map: Dict[str, PlayerRecord] = {}
        self.records: List[PlayerRecord] = []
        self.labels: Optional[List[str]] = None

        for record in (records or []):
            self.add_record(record)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __contains__(self, name: str):
        return name in self.name_map

    def __getitem__(self, name: str) -> PlayerRecord:
        try:
            return self.name_map[name]
        except KeyError:
            raise InvalidInputError(f'no player named {name!r}') from None

    def filter(self, cb: Callable[[PlayerRecord], bool]) -> 'PlayerCollection':
        """Retrieve a filtered collection of records."""
        return PlayerCollection(filter(cb, self.records))

    def add_record(self, record: PlayerRecord):
        if record.name in self.name_map:
            raise DuplicatePlayerError(f'player {record.name!r} appears more than once')

        if self.labels is None:
            self.labels = list(record.labels)
        elif record.labels != self.labels:
            raise SchemaMismatchError(f'{record.name} has formats {record.labels}, expected {self.labels}')

        self.name_map[record.name] = record
        self.records.append(record)

    def load_file(self, source: Source, fmt: Optional[str] = None) -> List[PlayerRecord]:
        records = parse_ratings_file(source, fmt)
        for record in records:
            self.add_record(record)
        return records

    def load_files(self, paths: Iterable[Source], fmt: Optional[str] = None):
        """Load multiple files into the collection."""
        for path in paths:
            self.load_file(path, fmt)


def infer_format(source: Source, fmt: Optional[str] = None) -> str:
    """Explicit format, else the file suffix, else csv."""
    if fmt is None and isinstance(source, (str, Path)):
        fmt = Path(source).suffix.lstrip('.').lower() or None
    fmt = fmt or 'csv'

    if fmt not in definitions.FILE_FORMATS:
        raise InvalidInputError(f'unsupported ratings format {fmt!r}; expected one of {definitions.FILE_FORMATS}')
    return fmt


def _parse_rating(value, label: str, name: str, line: Optional[int], source: Optional[str]) -> float:
    if isinstance(value, bool):
        raise RatingsParseError(f'{label} rating for {name} is not a number: {value!r}', line, source)
    try:
        rating = float(value)
    except (TypeError, ValueError):
        raise RatingsParseError(f'{label} rating for {name} is not a number: {value!r}', line, source) from None

    if not math.isfinite(rating):
        location = f'line {line}: ' if line is not None else ''
        raise InvalidInputError(f'{location}{label} rating for {name} must be finite, got {value!r}')
    return rating


def _parse_rank(value, name: str, line: Optional[int], source: Optional[str]) -> Optional[int]:
    if value is None or (isinstance(value, str) and not value.strip()):
        return None
    try:
        rank = int(str(value).strip())
    except ValueError:
        raise RatingsParseError(f'classical rank for {name} is not an integer: {value!r}', line, source) from None
    if rank < 1:
        raise RatingsParseError(f'classical rank for {name} must be positive, got {rank}', line, source)
    return rank


def _parse_csv(stream: TextIO, source: Optional[str]) -> List[PlayerRecord]:
    reader = csv.reader(stream)
    header = next(reader, None)

    if header is None:
        return []

    header = [column.strip() for column in header]
    if header:
        # byte order mark left by streams not opened as utf-8-sig
        header[0] = header[0].lstrip('\ufeff')
    if not header or header[0] != NAME_COLUMN:
        raise RatingsParseError(f'first column must be {NAME_COLUMN!r}, got {header[:1]}', 1, source)

    labels = [column for column in header[1:] if column != RANK_COLUMN]
    if not labels:
        raise RatingsParseError('header declares no format columns', 1, source)
    if len(set(header)) != len(header):
        raise RatingsParseError(f'duplicate columns in header: {header}', 1, source)

    records = []
    seen: Dict[str, int] = {}

    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue

        if len(row) != len(header):
            raise RatingsParseError(f'expected {len(header)} columns, got {len(row)}: {row}', line, source)

        cells = dict(zip(header, row))
        name = cells[NAME_COLUMN].strip()
        if not name:
            raise RatingsParseError('missing player name', line, source)
        if name in seen:
            raise DuplicatePlayerError(f'line {line}: player {name!r} already listed on line {seen[name]}')
        seen[name] = line

        ratings = [_parse_rating(cells[label], label, name, line, source) for label in labels]
        records.append(PlayerRecord(name=name,
                                    ratings=RatingProfile(labels=labels, ratings=ratings),
                                    classical_rank=_parse_rank(cells.get(RANK_COLUMN), name, line, source)))

    return records


def _parse_json(stream: TextIO, source: Optional[str]) -> List[PlayerRecord]:
    try:
        contents = json.load(stream)
    except json.JSONDecodeError as e:
        raise RatingsParseError(e.msg, e.lineno, source) from None

    if not isinstance(contents, list):
        raise RatingsParseError('expected a JSON array of players', None, source)

    records = []
    labels = None
    seen = set()

    for position, entry in enumerate(contents, 1):
        if not isinstance(entry, dict) or not isinstance(entry.get(NAME_COLUMN), str) \
                or not isinstance(entry.get('ratings'), dict):
            raise RatingsParseError(f'entry {position} needs a "name" string and a "ratings" object', None, source)

        name = entry[NAME_COLUMN].strip()
        if not name:
            raise RatingsParseError(f'entry {position} has an empty name', None, source)
        if name in seen:
            raise DuplicatePlayerError(f'player {name!r} appears more than once')
        seen.add(name)

        entry_labels = list(entry['ratings'])
        if labels is None:
            labels = entry_labels
        elif set(entry_labels) != set(labels):
            raise SchemaMismatchError(f'{name} has formats {entry_labels}, expected {labels}')

        ratings = [_parse_rating(entry['ratings'][label], label, name, None, source) for label in labels]
        records.append(PlayerRecord(name=name,
                                    ratings=RatingProfile(labels=labels, ratings=ratings),
                                    classical_rank=_parse_rank(entry.get(RANK_COLUMN), name, None, source)))

    return records


def parse_ratings_file(source: Source, fmt: Optional[str] = None) -> List[PlayerRecord]:
    """Parse a path or open text stream into player records (header-only input gives [])."""
    fmt = infer_format(source, fmt)
    parser = _parse_csv if fmt == 'csv' else _parse_json

    try:
        if isinstance(source, (str, Path)):
            with io.open(str(source), 'r', encoding='utf-8-sig', newline='') as f:
                return parser(f, str(source))

        return parser(source, getattr(source, 'name', None))
    except UnicodeDecodeError as e:
        name = str(source) if isinstance(source, (str, Path)) else getattr(source, 'name', None)
        raise RatingsParseError(f'not valid UTF-8 at byte {e.start}', None, name) from None


def format_rating(value: float) -> str:
    """Shortest text that parses back to the same float."""
    return str(int(value)) if float(value).is_integer() and abs(value) < 2 ** 53 else repr(float(value))


def dump_ratings(records: Iterable[PlayerRecord], fmt: str = 'csv') -> str:
    """Render records in the input format; parsing the result gives the same records."""
    records = list(records)
    fmt = infer_format(None, fmt)
    labels = records[0].labels if records else []
    with_rank = any(record.classical_rank is not None for record in records)

    if fmt == 'json':
        entries = []
        for record in records:
            entry = {NAME_COLUMN: record.name,
                     'ratings': {label: json.loads(format_rating(r)) for label, r in zip(labels, record.ratings)}}
            if record.classical_rank is not None:
                entry[RANK_COLUMN] = record.classical_rank
            entries.append(entry)
        return json.dumps(entries, indent=2) + '\n'

    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow([NAME_COLUMN] + labels + ([RANK_COLUMN] if with_rank else []))

    for record in records:
        row = [record.name] + [format_rating(r) for r in record.ratings]
        if with_rank:
            row.append('' if record.classical_rank is None else str(record.classical_rank))
        writer.writerow(row)

    return stream.getvalue()
