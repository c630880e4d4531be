"""Precision settings and the exception hierarchy shared by every module."""
from __future__ import annotations

import configparser
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import mpmath


class MixedRecError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParams(MixedRecError, ValueError):
    pass


class SingularParams(MixedRecError, ValueError):
    pass


class RealnessViolation(MixedRecError, ArithmeticError):
    pass


class ConvergenceFailure(MixedRecError, ArithmeticError):
    pass


class DegenerateU(MixedRecError, ArithmeticError):
    pass


class SizeMismatch(MixedRecError, ValueError):
    pass


class SharedZeroSuspected(MixedRecError, ArithmeticError):
    pass


class MergeCollision(MixedRecError, ArithmeticError):
    pass


class ConstraintViolation(MixedRecError, ValueError):
    pass


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision and tolerances.

    ``sep_tol`` is relative: the absolute separation threshold used for a set
    of zeros is ``sep_tol * (1 + span)``.
    """

    working_digits: int = 50
    realness_tol: float = 1e-25
    residual_tol: float = 1e-9
    sep_tol: float = 1e-8
    newton_max_iter: int = 100

    def __post_init__(self):
        if int(self.working_digits) < 30:
            raise InvalidParams("working_digits must be >= 30")
        for name in ("realness_tol", "residual_tol"):
            value = getattr(self, name)
            if not 0 < value <= 1e-6:
                raise InvalidParams(f"{name} must lie in (0, 1e-6], got {value}")
        if not self.sep_tol > 0:
            raise InvalidParams("sep_tol must be positive")

    def workdps(self):
        """Context manager switching mpmath to the working precision."""
        return mpmath.workdps(self.working_digits)

    def with_overrides(self, **kwargs) -> "PrecisionConfig":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})

    def to_dict(self) -> dict:
        return asdict(self)


DEFAULT_CONFIG = PrecisionConfig()

_CASTS = {
    "working_digits": int,
    "realness_tol": float,
    "residual_tol": float,
    "sep_tol": float,
    "newton_max_iter": int,
}


def load_config(path: str | Path, base: PrecisionConfig = DEFAULT_CONFIG) -> PrecisionConfig:
    """Read ``key = value`` lines (no section header needed) into a config."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    parser.read_string("[config]\n" + Path(path).read_text())
    values = {}
    for key, raw in parser["config"].items():
        key = key.replace("-", "_")
        if key not in _CASTS:
            raise InvalidParams(f"unknown config key {key!r}")
        values[key] = _CASTS[key](raw.strip().strip('"'))
    return replace(base, **values)
