# Copyright Elasticsearch B.V. and/or licensed to Elasticsearch B.V. under one
# or more contributor license agreements. Licensed under the Elastic License
# 2.0; you may not use this file except in compliance with the Elastic License
# 2.0.

"""Marshmallow (de)serialization shared by the value types."""
from typing import Any, Type, TypeVar

import marshmallow_dataclass
from marshmallow import Schema

from .utils import cached

RecordT = TypeVar('RecordT', bound='MarshmallowDataclassMixin')


def _drop_unset(value: Any) -> Any:
    """Remove None entries from dumped dicts at any depth; lists keep their length."""
    if isinstance(value, dict):
        return {k: _drop_unset(v) for k, v in value.items() if v is not None}
    if isinstance(value, (list, tuple)):
        return type(value)(_drop_unset(v) for v in value)
    return value


class MarshmallowDataclassMixin:
    """Give a frozen dataclass `from_dict` and `to_dict` backed by its generated schema."""

    @classmethod
    @cached
    def __schema(cls) -> Schema:
        return marshmallow_dataclass.class_schema(cls)()

    @classmethod
    def from_dict(cls: Type[RecordT], obj: dict) -> RecordT:
        """Validate a plain dict and build the dataclass (post-init checks run too)."""
        return cls.__schema().load(obj)

    def to_dict(self, strip_none_values=True) -> dict:
        dumped: dict = self.__schema().dump(self)
        return _drop_unset(dumped) if strip_none_values else dumped
