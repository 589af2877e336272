"""Physical constants, quantity parsing, and unit conversion.

Everything downstream works in coherent SI; eV, angstrom, nm, and electron
masses are accepted only at the boundary (CLI flags, file input) and are
converted on parse.  The one-dimensional "pressure" carries force units [N]
because it is the derivative of an energy with respect to a length.

Pinned constants (CODATA 2018):

    hbar            1.054571817e-34 J*s   (h/2pi, h exact since 2019)
    electron mass   9.1093837015e-31 kg
    electronvolt    1.602176634e-19 J     (exact since 2019)
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum

from .errors import DimensionMismatch, DomainError, MalformedNumber, UnknownUnit


@dataclass(frozen=True)
class PhysicalConstants:
    """Fixed constants table; values are pinned, never user-mutable."""

    hbar: float = 1.054571817e-34        # J*s
    electron_mass: float = 9.1093837015e-31  # kg
    electronvolt: float = 1.602176634e-19    # J


CONSTANTS = PhysicalConstants()


class Dimension(Enum):
    LENGTH = "length"
    ENERGY = "energy"
    MASS = "mass"
    FORCE = "force"
    DIMENSIONLESS = "dimensionless"


# unit symbol -> (dimension, multiplicative factor to SI)
_UNIT_TABLE: dict[str, tuple[Dimension, float]] = {
    "m": (Dimension.LENGTH, 1.0),
    "nm": (Dimension.LENGTH, 1e-9),
    "angstrom": (Dimension.LENGTH, 1e-10),
    "J": (Dimension.ENERGY, 1.0),
    "eV": (Dimension.ENERGY, CONSTANTS.electronvolt),
    "kg": (Dimension.MASS, 1.0),
    "me": (Dimension.MASS, CONSTANTS.electron_mass),
    "N": (Dimension.FORCE, 1.0),
    "": (Dimension.DIMENSIONLESS, 1.0),
}

_SI_SYMBOL = {
    Dimension.LENGTH: "m",
    Dimension.ENERGY: "J",
    Dimension.MASS: "kg",
    Dimension.FORCE: "N",
    Dimension.DIMENSIONLESS: "",
}

_QUANTITY_RE = re.compile(
    r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*([A-Za-z]*)\s*$"
)


@dataclass(frozen=True)
class Quantity:
    """An SI-normalized value tagged with its dimension."""

    value: float
    dimension: Dimension

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise DomainError(f"quantity value must be finite, got {self.value}")

    def to(self, unit: str) -> float:
        """Value expressed in ``unit``; the unit must match this dimension."""
        dim, factor = _lookup_unit(unit)
        if dim is not self.dimension:
            raise DimensionMismatch(
                f"cannot express {self.dimension.value} in '{unit}' ({dim.value})"
            )
        return self.value / factor

    def _check(self, other: "Quantity") -> None:
        if not isinstance(other, Quantity):
            raise DimensionMismatch("can only compare Quantity with Quantity")
        if other.dimension is not self.dimension:
            raise DimensionMismatch(
                f"cannot compare {self.dimension.value} with {other.dimension.value}"
            )

    def __lt__(self, other: "Quantity") -> bool:
        self._check(other)
        return self.value < other.value

    def __le__(self, other: "Quantity") -> bool:
        self._check(other)
        return self.value <= other.value


def _lookup_unit(unit: str) -> tuple[Dimension, float]:
    try:
        return _UNIT_TABLE[unit]
    except KeyError:
        known = ", ".join(sorted(u for u in _UNIT_TABLE if u))
        raise UnknownUnit(f"unknown unit '{unit}' (supported: {known})") from None


def parse_quantity(text: str) -> Quantity:
    """Parse ``<number><unit>`` into an SI-normalized :class:`Quantity`.

    Supported units: m, nm, angstrom, J, eV, kg, me (electron masses), N,
    or no unit at all for dimensionless values.

    Raises:
        MalformedNumber: the numeric part does not parse.
        UnknownUnit: the unit suffix is not in the table above.
    """
    match = _QUANTITY_RE.match(text)
    if match is None:
        # Distinguish a bad unit from a bad number: strip a trailing
        # alphabetic suffix and see whether a number remains.
        stripped = re.match(r"^\s*(.*?)([A-Za-z]*)\s*$", text)
        if stripped and stripped.group(2) and _is_number(stripped.group(1)):
            raise UnknownUnit(f"unknown unit '{stripped.group(2)}' in '{text}'")
        raise MalformedNumber(f"could not parse a number from '{text}'")
    number, unit = match.groups()
    dim, factor = _lookup_unit(unit)
    return Quantity(float(number) * factor, dim)


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def format_quantity(q: Quantity, digits: int | None = None) -> str:
    """Render a quantity in SI units.

    With ``digits=None`` the shortest round-tripping decimal is used, so
    ``parse_quantity(format_quantity(q))`` recovers ``q`` exactly.  Human
    tables pass ``digits=9``.
    """
    symbol = _SI_SYMBOL[q.dimension]
    if digits is None:
        return f"{q.value!r}{symbol}"
    return f"{q.value:.{digits}g}{symbol}"


def quantity(value: float, unit: str) -> Quantity:
    """Construct a Quantity from a value expressed in ``unit``."""
    dim, factor = _lookup_unit(unit)
    return Quantity(value * factor, dim)


# Bundled inputs for the worked hydrogen example: well depth equal to the
# hydrogen ionization energy, half-width equal to the Bohr radius.
HYDROGEN_DEPTH = quantity(13.6058, "eV")
HYDROGEN_HALF_WIDTH = quantity(0.529e-10, "m")
HYDROGEN_MASS = quantity(1.0, "me")
