# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Errors raised by the combined ratings library."""


class RatingsError(ValueError):
    """Base class for all library errors."""


class InvalidInputError(RatingsError):
    """A rating or strength is not a finite (or positive) real number."""


class DimensionError(RatingsError):
    """Vectors that must pair up have different lengths."""


class InvalidWeightsError(RatingsError):
    """A weight vector is negative, non-finite or all zero."""


class InvalidDistributionError(RatingsError):
    """A format-selection distribution is not a probability vector."""


class PartitionError(RatingsError):
    """Blocks are empty, overlap, or do not cover every coordinate."""


class NotRepresentableError(RatingsError):
    """A rule is not a strength-average rule for any weight vector."""

    def __init__(self, message, residual=None):
        super(NotRepresentableError, self).__init__(message)
        self.residual = residual


class NumericFailureError(RatingsError):
    """A finite-difference quantity could not be computed."""


class InvalidRuleError(RatingsError):
    """Unknown rule id or invalid rule parameters."""


class RoleError(RatingsError):
    """A role is missing from a role profile."""


class InvalidScoreError(RatingsError):
    """A game score outside {0, 1/2, 1}."""


class SchemaMismatchError(RatingsError):
    """Player records do not share the same format labels."""


class DuplicatePlayerError(RatingsError):
    """The same player name appears twice in one ratings file."""


class RatingsParseError(RatingsError):
    """Malformed ratings file contents."""

    def __init__(self, message, line=None, source=None):
        location = f'line {line}: ' if line is not None else ''
        super(RatingsParseError, self).__init__(f'{location}{message}')
        self.error_msg = message
        self.line = line
        self.source = source
