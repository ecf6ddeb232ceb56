"""Parsing of unit-suffixed quantities from configuration files.

Values are written with explicit unit suffixes ("195 mm", "325 g",
"1.36 N.mm/deg", "0.5 %") and stored in SI (m, kg, N*m/rad, plain
fractions).  Bare numbers are accepted where a dimensionless value is
expected; dimensioned keys require a unit so that millimetre-scale inputs
cannot silently leak in as metres.
"""

from __future__ import annotations

import math

from .errors import ConfigError

_LENGTH = {"m": 1.0, "cm": 1e-2, "mm": 1e-3}
_MASS = {"kg": 1.0, "g": 1e-3}
_ANGLE = {"rad": 1.0, "deg": math.pi / 180.0}
_STIFFNESS = {
    "n.m/rad": 1.0,
    "n.mm/rad": 1e-3,
    "n.m/deg": 180.0 / math.pi,
    "n.mm/deg": 1e-3 * 180.0 / math.pi,
}


def _split(text: str):
    parts = text.strip().split()
    if len(parts) == 1:
        return parts[0], ""
    if len(parts) == 2:
        return parts[0], parts[1]
    raise ConfigError(f"malformed quantity {text!r}")


def _number(token: str, context: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ConfigError(f"{context}: {token!r} is not a number") from None


def _normalize_unit(unit: str) -> str:
    return unit.replace("·", ".").replace("*", ".").lower()


def parse_length(text: str, context: str = "length") -> float:
    value, unit = _split(text)
    if not unit:
        raise ConfigError(f"{context}: length {text!r} needs a unit (m, cm, mm)")
    factor = _LENGTH.get(_normalize_unit(unit))
    if factor is None:
        raise ConfigError(f"{context}: unknown length unit {unit!r}")
    return _number(value, context) * factor


def parse_mass(text: str, context: str = "mass") -> float:
    value, unit = _split(text)
    if not unit:
        raise ConfigError(f"{context}: mass {text!r} needs a unit (kg, g)")
    factor = _MASS.get(_normalize_unit(unit))
    if factor is None:
        raise ConfigError(f"{context}: unknown mass unit {unit!r}")
    return _number(value, context) * factor


def parse_angle(text: str, context: str = "angle") -> float:
    value, unit = _split(text)
    if not unit:
        raise ConfigError(f"{context}: angle {text!r} needs a unit (deg, rad)")
    factor = _ANGLE.get(_normalize_unit(unit))
    if factor is None:
        raise ConfigError(f"{context}: unknown angle unit {unit!r}")
    return _number(value, context) * factor


def parse_stiffness(text: str, context: str = "stiffness") -> float:
    value, unit = _split(text)
    if not unit:
        raise ConfigError(f"{context}: stiffness {text!r} needs a unit "
                          "(N.m/rad, N.mm/deg, ...)")
    factor = _STIFFNESS.get(_normalize_unit(unit))
    if factor is None:
        raise ConfigError(f"{context}: unknown stiffness unit {unit!r}")
    return _number(value, context) * factor


def parse_fraction(text: str, context: str = "fraction") -> float:
    """A plain fraction, or a percentage with a '%' suffix."""
    value, unit = _split(text)
    if unit == "%":
        return _number(value, context) / 100.0
    if unit:
        raise ConfigError(f"{context}: expected a bare fraction or '%', got {unit!r}")
    return _number(value, context)


def parse_float(text: str, context: str = "value") -> float:
    value, unit = _split(text)
    if unit:
        raise ConfigError(f"{context}: expected a dimensionless number, got unit {unit!r}")
    return _number(value, context)


def parse_int(text: str, context: str = "value") -> int:
    value, unit = _split(text)
    if unit:
        raise ConfigError(f"{context}: expected a bare integer, got unit {unit!r}")
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{context}: {value!r} is not an integer") from None
