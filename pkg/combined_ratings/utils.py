# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Util functions."""
import functools
import json
import math
import os
from dataclasses import is_dataclass, astuple
from decimal import Decimal, ROUND_HALF_UP
from typing import List, Sequence

import eql.utils
import numpy as np

CURR_DIR = os.path.dirname(os.path.abspath(__file__))
ROOT_DIR = os.path.dirname(CURR_DIR)
ETC_DIR = os.path.join(ROOT_DIR, "etc")


class NumpyEncoder(json.JSONEncoder):
    """Encode numpy scalars and arrays as plain JSON."""

    def default(self, obj):
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, np.generic):
            return obj.item()
        return super(NumpyEncoder, self).default(obj)


def get_path(*paths) -> str:
    """Get a file by relative path."""
    return os.path.join(ROOT_DIR, *paths)


def get_etc_path(*paths):
    """Load a file from the etc/ folder."""
    return os.path.join(ETC_DIR, *paths)


def load_etc_dump(*path):
    """Load a json/yml file from the etc/ folder."""
    return eql.utils.load_dump(get_etc_path(*path))


def freeze(obj):
    """Helper function to make mutable objects immutable and hashable."""
    if not isinstance(obj, type) and is_dataclass(obj):
        obj = astuple(obj)

    if isinstance(obj, np.ndarray):
        return tuple(obj.tolist())
    elif isinstance(obj, (list, tuple)):
        return tuple(freeze(o) for o in obj)
    elif isinstance(obj, dict):
        return freeze(sorted(obj.items()))
    else:
        return obj


_cache = {}


def cached(f):
    """Helper function to memoize functions."""
    func_key = id(f)

    @functools.wraps(f)
    def wrapped(*args, **kwargs):
        _cache.setdefault(func_key, {})
        cache_key = freeze(args), freeze(kwargs)

        if cache_key not in _cache[func_key]:
            _cache[func_key][cache_key] = f(*args, **kwargs)

        return _cache[func_key][cache_key]

    def clear():
        _cache.pop(func_key, None)

    wrapped.clear = clear
    return wrapped


def clear_caches():
    _cache.clear()


@cached
def get_defaults() -> dict:
    """Packaged defaults from etc/ratings-defaults.yml."""
    return load_etc_dump('ratings-defaults.yml')


def round_half_away(value: float, places: int = 0) -> Decimal:
    """Round half away from zero, using the shortest decimal repr of the float."""
    exponent = Decimal(1).scaleb(-places)
    return Decimal(repr(float(value))).quantize(exponent, rounding=ROUND_HALF_UP)


def format_fixed(value: float, places: int) -> str:
    """Locale-independent fixed point formatting with `.` as the separator."""
    if not math.isfinite(value):
        return str(value)
    return str(round_half_away(value, places))


def parse_float_list(text: str) -> List[float]:
    """Parse `1,2.5,3` into floats."""
    if text is None:
        return []

    values = []
    for chunk in text.split(','):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f'Empty entry in list: {text!r}')
        values.append(float(chunk))
    return values


def format_float_list(values: Sequence[float], places: int = None) -> str:
    """Inverse of parse_float_list for display."""
    if places is None:
        return ','.join(repr(float(v)) for v in values)
    return ','.join(format_fixed(v, places) for v in values)


def add_params(*params):
    """Add parameters to a click command."""

    def decorator(f):
        if not hasattr(f, '__click_params__'):
            f.__click_params__ = []
        f.__click_params__.extend(params)
        return f

    return decorator
