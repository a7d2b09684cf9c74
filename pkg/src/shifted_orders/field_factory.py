from typing import Union

from .fields.base import BaseField
from .fields.prime_field import PrimeField
from .fields.rational_field import RationalField
from .settings import FieldConfig, get_field_config


def get_field(spec: Union[str, FieldConfig]) -> BaseField:
    config = get_field_config(spec) if isinstance(spec, str) else spec

    field_map = {
        "rationals": RationalField,
        "prime": PrimeField,
    }

    field_class = field_map.get(config.kind)
    if not field_class:
        raise ValueError(f"No field implementation for kind {config.kind}")

    return field_class(config)
