# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

import functools
import json
from pathlib import Path
from typing import Dict, List, Optional

import click

from .errors import InvalidDistributionError, RatingsError
from .misc import client_error, getdefault
from .profiles import FormatDistribution
from .ratings_loader import PlayerCollection
from .schemas import definitions
from .utils import NumpyEncoder, add_params, parse_float_list


def parse_float_option(ctx, param, value) -> Optional[List[float]]:
    """Click callback for comma separated floats."""
    if value is None:
        return None
    try:
        return parse_float_list(value)
    except ValueError as e:
        raise click.BadParameter(str(e), ctx=ctx, param=param) from None


def parse_roles_option(ctx, param, value) -> Optional[Dict[str, float]]:
    """Click callback for `white=2400,black=2300`."""
    if value is None:
        return None

    roles = {}
    for chunk in value.split(','):
        role, sep, rating = chunk.partition('=')
        if not sep or not role.strip():
            raise click.BadParameter(f'expected role=rating, got {chunk!r}', ctx=ctx, param=param)
        try:
            roles[role.strip()] = float(rating)
        except ValueError:
            raise click.BadParameter(f'rating for {role.strip()} is not a number: {rating!r}',
                                     ctx=ctx, param=param) from None
    return roles


def parse_distribution(value: Optional[str], n: int, weights=None) -> Optional[FormatDistribution]:
    """`uniform`, `weights`, or explicit comma separated probabilities."""
    if value is None:
        return None
    if value == 'uniform':
        return FormatDistribution.uniform(n)
    if value == 'weights':
        return FormatDistribution.from_weights(weights if weights is not None else [1.0] * n)
    try:
        probabilities = parse_float_list(value)
    except ValueError:
        raise InvalidDistributionError(f"lottery must be 'uniform', 'weights' or comma separated numbers, "
                                       f"got {value!r}") from None
    return FormatDistribution.coerce(probabilities, n)


weights_option = click.Option(['--weights', '-w'], callback=parse_float_option,
                              help='Comma separated policy weights, one per format (default: equal)')
output_option = click.Option(['--output', '-o'], type=click.Choice(definitions.OUTPUT_FORMATS),
                             default=getdefault('output'), help='Human readable table or JSON')
threads_option = click.Option(['--threads', '-t'], type=int, default=getdefault('threads'),
                              help='Worker threads for per-player evaluation')


def handle_errors(f):
    """Convert library errors into CLI errors, or re-raise them in debug mode."""

    @functools.wraps(f)
    def wrapped(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except RatingsError as e:
            client_error(str(e), e, ctx=click.get_current_context(silent=True))

    return wrapped


def player_collection(required=True):
    """Add arguments to load a PlayerCollection from a ratings file."""

    def decorator(f):
        @add_params(
            click.Option(['--ratings-file', '-f'], required=required,
                         type=click.Path(exists=True, dir_okay=False), help='CSV or JSON ratings file'),
            click.Option(['--format', 'file_format'], type=click.Choice(definitions.FILE_FORMATS),
                         help='Input format (default: from the file suffix)'),
        )
        @functools.wraps(f)
        def get_collection(*args, **kwargs):
            ratings_file = kwargs.pop('ratings_file')
            file_format = kwargs.pop('file_format')
            players = None

            if ratings_file:
                try:
                    players = PlayerCollection()
                    players.load_file(Path(ratings_file), file_format)
                except RatingsError as e:
                    client_error(f'Error loading {ratings_file}: {e}', e, ctx=click.get_current_context(silent=True))

            kwargs['players'] = players
            return f(*args, **kwargs)

        return get_collection

    return decorator


def echo_json(obj):
    """Machine output: sorted, indented JSON and nothing else."""
    click.echo(json.dumps(obj, indent=2, sort_keys=True, cls=NumpyEncoder))


def echo_verdict(label: str, holds: bool, detail: str = ''):
    click.echo(f'{label}: ' + click.style('holds' if holds else 'fails', fg='green' if holds else 'red')
               + (f'  {detail}' if detail else ''))
