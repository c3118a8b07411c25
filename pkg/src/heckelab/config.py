"""Session configuration: resource caps and output options.

All algorithms are deterministic; the ``seedless`` flag is reserved and has
no effect.  Caps convert worst-case blowup into clean typed errors.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

from .errors import MalformedInputError

DEFAULT_Q_FACTOR_CAP = 16
DEFAULT_FIELD_FACTOR_CAP = 48
DEFAULT_PRIMITIVE_ELEMENT_CAP = 48
DEFAULT_GROUP_ORDER_CAP = 512
DEFAULT_WEYL_ORDER_CAP = 10080

ENV_CAPS = "HECKE_LAB_CAPS"


@dataclass(frozen=True)
class SessionConfig:
    q_factor_cap: int = DEFAULT_Q_FACTOR_CAP
    field_factor_cap: int = DEFAULT_FIELD_FACTOR_CAP
    primitive_element_cap: int = DEFAULT_PRIMITIVE_ELEMENT_CAP
    group_order_cap: int = DEFAULT_GROUP_ORDER_CAP
    weyl_order_cap: int = DEFAULT_WEYL_ORDER_CAP
    output_format: str = "json"
    seedless: bool = True

    _CAP_FIELDS = (
        "q_factor_cap",
        "field_factor_cap",
        "primitive_element_cap",
        "group_order_cap",
        "weyl_order_cap",
    )

    def __post_init__(self):
        for name in self._CAP_FIELDS:
            if getattr(self, name) <= 0:
                raise MalformedInputError(f"cap {name} must be positive")
        if self.output_format not in ("json", "table"):
            raise MalformedInputError(
                f"unknown output format {self.output_format!r}"
            )

    @classmethod
    def from_dict(cls, data: dict) -> "SessionConfig":
        kwargs = {}
        caps = data.get("degree_caps", {})
        mapping = {
            "q_factor": "q_factor_cap",
            "field_factor": "field_factor_cap",
            "primitive_element": "primitive_element_cap",
        }
        for key, attr in mapping.items():
            if key in caps:
                kwargs[attr] = int(caps[key])
        for key in ("group_order_cap", "weyl_order_cap", "output_format", "seedless"):
            if key in data:
                kwargs[key] = data[key]
        return cls(**kwargs)

    def with_env_overrides(self, environ=None) -> "SessionConfig":
        """Apply HECKE_LAB_CAPS="name=value,name=value" overrides."""
        environ = os.environ if environ is None else environ
        raw = environ.get(ENV_CAPS)
        if not raw:
            return self
        overrides = {}
        for item in raw.split(","):
            item = item.strip()
            if not item:
                continue
            if "=" not in item:
                raise MalformedInputError(f"bad {ENV_CAPS} entry {item!r}")
            name, value = item.split("=", 1)
            name = name.strip()
            if name not in self._CAP_FIELDS:
                raise MalformedInputError(f"unknown cap {name!r} in {ENV_CAPS}")
            overrides[name] = int(value)
        return replace(self, **overrides)


DEFAULT_CONFIG = SessionConfig()
