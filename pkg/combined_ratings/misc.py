# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Misc support."""
import json
import os
from typing import NoReturn

import click

from .utils import cached, get_defaults, get_path

CONFIG_FILE = '.combined-ratings-cfg.json'
ENV_PREFIX = 'CR_'


class ClientError(click.ClickException):
    """Custom CLI error to format output or full debug stacktrace."""

    def __init__(self, message, original_error=None):
        super(ClientError, self).__init__(message)
        self.original_error = original_error
        self.original_error_type = type(original_error).__name__ if original_error else ''

    def show(self, file=None, err=True):
        """Print the error to the console."""
        msg = f'{click.style(f"CLI Error {self.original_error_type}".rstrip(), fg="red", bold=True)}: ' \
              f'{self.format_message()}'
        click.echo(msg, err=err, file=file)


def client_error(message, exc: Exception = None, debug=None, ctx: click.Context = None, file=None,
                 err=None) -> NoReturn:
    config_debug = True if ctx and ctx.ensure_object(dict) and ctx.obj.get('debug') is True else False
    debug = debug if debug is not None else config_debug

    if debug:
        click.echo(click.style('DEBUG: ', fg='yellow') + message, err=err, file=file)
        if exc is not None:
            raise exc
        raise ClientError(message)
    else:
        raise ClientError(message, original_error=exc)


@cached
def parse_config():
    """Parse a default config file."""
    config_file = get_path(CONFIG_FILE)
    config = {}

    if os.path.exists(config_file):
        with open(config_file) as f:
            config = json.load(f)

        click.secho('Loaded config file: {}'.format(config_file), fg='yellow')

    return config


def packaged_default(name):
    """Fallback from etc/ratings-defaults.yml for the settings the CLI exposes."""
    defaults = get_defaults()
    return {
        'k_factor': defaults['roles']['k_factor'],
        'entropy_eta': defaults['rules']['entropy_eta'],
        'seed': defaults['axioms']['seed'],
        'samples': defaults['axioms']['samples'],
        'threads': 1,
        'output': 'table',
        'debug': False,
    }.get(name)


def getdefault(name):
    """Callback function for `default`: environment variable, then config file, then packaged default."""
    envvar = f"{ENV_PREFIX}{name.upper()}"
    config = parse_config()
    return lambda: os.environ.get(envvar, config.get(name, packaged_default(name)))
