import logging
from enum import Enum
from typing import Dict, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator
from pydantic_settings import BaseSettings
from sympy import isprime

from .errors import FieldSpecError

PRIME_LIMIT = 2 ** 31


class LogLevel(str, Enum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


class FieldConfig(BaseModel):
    """Configuration for the working field"""
    kind: Literal["rationals", "prime"] = Field(description="Rationals or a prime field")
    p: Optional[int] = Field(default=None, ge=2, description="Characteristic of the prime field")

    @field_validator("p")
    @classmethod
    def p_must_be_prime(cls, v):
        if v is None:
            return v
        if v >= PRIME_LIMIT:
            raise ValueError(f"p must be below 2^31, got {v}")
        if not isprime(v):
            raise ValueError(f"p must be prime, got {v}")
        return v

    @model_validator(mode="after")
    def p_matches_kind(self):
        if self.kind == "prime" and self.p is None:
            raise ValueError("prime field needs p")
        if self.kind == "rationals" and self.p is not None:
            raise ValueError("the rationals take no p")
        return self

    @property
    def label(self) -> str:
        return "q" if self.kind == "rationals" else f"p{self.p}"


class SearchConfig(BaseModel):
    """Budgets for the seeded randomised searches"""
    random_tries: int = Field(default=64, ge=1, le=4096, description="Random combinations per search")
    seed_retries: int = Field(default=8, ge=1, le=64, description="Deterministic seed schedule length")
    exhaustive_field_limit: int = Field(default=7, ge=2, le=31, description="Largest field order searched exhaustively")


class GlobalSettings(BaseSettings):
    """Global settings, overridable through SHIFTED_ORDERS_* environment variables"""
    default_field: str = Field(default="p101", description="Field preset used when nothing else is given")
    cap: int = Field(default=24, ge=1, le=200, description="Resolution length cap")
    seed: int = Field(default=0, ge=0, description="Base seed for randomised searches")
    nilpotency_cap: int = Field(default=30, ge=2, le=200, description="Longest path length considered")
    max_paths: int = Field(default=20000, ge=1, description="Path enumeration guard")
    log_level: LogLevel = Field(default=LogLevel.WARNING, description="Logging level")
    max_workers: int = Field(default=1, ge=1, le=64, description="Corpus parallelism")
    search: SearchConfig = Field(default_factory=SearchConfig, description="Search budgets")

    model_config = {
        "env_prefix": "SHIFTED_ORDERS_",
        "case_sensitive": False,
        "env_nested_delimiter": "__",
    }

    @field_validator("default_field")
    @classmethod
    def default_field_must_parse(cls, v):
        try:
            get_field_config(v)
        except FieldSpecError as e:
            raise ValueError(str(e)) from e
        return v


# Named presets; any other "pN" string is accepted as long as N is a prime below 2^31
FIELD_PRESETS: Dict[str, FieldConfig] = {
    "q": FieldConfig(kind="rationals"),
    "p2": FieldConfig(kind="prime", p=2),
    "p3": FieldConfig(kind="prime", p=3),
    "p5": FieldConfig(kind="prime", p=5),
    "p7": FieldConfig(kind="prime", p=7),
    "p101": FieldConfig(kind="prime", p=101),
    "p32003": FieldConfig(kind="prime", p=32003),
    "p65521": FieldConfig(kind="prime", p=65521),
    "p2147483647": FieldConfig(kind="prime", p=2147483647),
}


def get_field_config(name: str) -> FieldConfig:
    """Resolve a preset name or a "pN" string into a validated FieldConfig"""
    key = name.strip().lower()
    if key in FIELD_PRESETS:
        return FIELD_PRESETS[key]
    if key.startswith("p") and key[1:].isdigit():
        try:
            return FieldConfig(kind="prime", p=int(key[1:]))
        except ValueError as e:
            raise FieldSpecError(f"Invalid field '{name}': {e}") from e
    available = list(FIELD_PRESETS.keys())
    raise FieldSpecError(f"Field '{name}' not supported. Available: {available} or any pN with N prime")


def validate_all_configs() -> Dict[str, bool]:
    """Validate all field presets"""
    results = {}
    for name, config in FIELD_PRESETS.items():
        try:
            FieldConfig.model_validate(config.model_dump())
            results[name] = True
        except ValueError:
            results[name] = False
    return results


def configure_logging(level: LogLevel) -> None:
    """Apply the configured level to the package logger"""
    logger = logging.getLogger("shifted_orders")
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        logger.addHandler(handler)
    logger.setLevel(level.value)


def load_settings(**overrides) -> GlobalSettings:
    """Read settings from the environment, applying explicit overrides"""
    # init arguments win over the environment and go through validation
    return GlobalSettings(**{k: v for k, v in overrides.items() if v is not None})
