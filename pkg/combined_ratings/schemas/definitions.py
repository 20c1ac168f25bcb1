# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Custom shared definitions for schemas."""

from typing import Literal, Final

from marshmallow import validate
from marshmallow_dataclass import NewType

ELO_SCALE: Final[float] = 400.0
LABEL_PATTERN = r'^[A-Za-z0-9_][A-Za-z0-9_. -]*$'
RESERVED_COLUMNS: Final[tuple] = ('name', 'classical_rank')
RULE_IDS: Final[tuple] = ('main', 'arithmetic', 'piecewise', 'entropy', 'power_mean')
OUTPUT_FORMATS: Final[tuple] = ('table', 'json')
FILE_FORMATS: Final[tuple] = ('csv', 'json')

# marshmallow Float fields reject nan and +/-inf unless allow_nan is set
EloPoints = NewType('EloPoints', float)
Weight = NewType('Weight', float, validate=validate.Range(min=0))
Probability = NewType('Probability', float, validate=validate.Range(min=0, max=1))
PositiveFloat = NewType('PositiveFloat', float, validate=validate.Range(min=0, min_inclusive=False))
PositiveInteger = NewType('PositiveInteger', int, validate=validate.Range(min=1))
NonEmptyStr = NewType('NonEmptyStr', str, validate=validate.Length(min=1))
FormatLabel = NewType('FormatLabel', str, validate=validate.Regexp(LABEL_PATTERN))
GameScore = NewType('GameScore', float, validate=validate.OneOf([0.0, 0.5, 1.0]))
RuleId = Literal['main', 'arithmetic', 'piecewise', 'entropy', 'power_mean']
FileFormat = Literal['csv', 'json']
Verdict = Literal['holds', 'fails']
