# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Combined Elo ratings across formats."""
import sys

assert (3, 8) <= sys.version_info < (4, 0), "Only Python 3.8+ supported"

from . import (  # noqa: E402
    aggregation,
    alternatives,
    elo,
    errors,
    leaderboard,
    main,
    misc,
    probability,
    profiles,
    ratings_loader,
    roles,
    rules,
    schemas,
    utils,
    verification
)

__all__ = (
    'aggregation',
    'alternatives',
    'elo',
    'errors',
    'leaderboard',
    'main',
    'misc',
    'probability',
    'profiles',
    'ratings_loader',
    'roles',
    'rules',
    'schemas',
    'utils',
    'verification',
)
