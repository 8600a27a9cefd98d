"""Physical constants (CODATA 2018) and natural/SI unit conversion.

Everything in this package computes in natural units (hbar = c = 1, masses
in units of the electron mass, charge in units of e) and converts to SI
only when a number is reported.  The conversion factors below are the SI
value of one natural unit for each supported quantity kind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 values in SI units.

    ``alpha`` is the tabulated fine-structure constant; it is stored
    separately from (e, epsilon0, hbar, c) and must agree with the
    combination e^2 / (4 pi epsilon0 hbar c) to about 1e-9 relative,
    which is the rounding level of the tabulated values.
    """

    e: float = 1.602176634e-19          # elementary charge, C (exact)
    m_e: float = 9.1093837015e-31       # electron mass, kg
    c: float = 299792458.0              # speed of light, m/s (exact)
    hbar: float = 1.054571817e-34       # reduced Planck constant, J s
    epsilon0: float = 8.8541878128e-12  # vacuum permittivity, F/m
    alpha: float = 7.2973525693e-3      # fine-structure constant

    def alpha_derived(self) -> float:
        """Fine-structure constant recomputed from e, epsilon0, hbar, c."""
        return self.e**2 / (4.0 * math.pi * self.epsilon0 * self.hbar * self.c)

    def alpha_consistency(self) -> float:
        """Relative deviation between stored and recomputed alpha."""
        return abs(self.alpha_derived() - self.alpha) / self.alpha


CODATA2018 = PhysicalConstants()

#: Quantity kinds understood by :func:`convert`.
QUANTITY_KINDS = (
    "dimensionless",
    "energy",
    "mass",
    "length",
    "time",
    "frequency",       # angular frequency, rad/s
    "speed",
    "momentum",
    "field",           # magnetic flux density, T
    "moment",          # magnetic moment, J/T
    "current",         # electric current, A
)


@dataclass(frozen=True)
class UnitSystem:
    """A named system of units given by the SI value of each base unit."""

    name: str
    to_si: dict[str, float] = field(default_factory=dict)

    def factor(self, quantity: str) -> float:
        try:
            return self.to_si[quantity]
        except KeyError:
            raise ValueError(
                f"unknown quantity kind {quantity!r}; expected one of {QUANTITY_KINDS}"
            ) from None


SI_UNITS = UnitSystem("si", {k: 1.0 for k in QUANTITY_KINDS})


def natural_units(constants: PhysicalConstants = CODATA2018) -> UnitSystem:
    """Electron-scale natural units: hbar = c = m_e = e = 1.

    The magnetic-field unit m^2 c^2 / (e hbar) makes the cyclotron energy
    e hbar B / m come out in units of m c^2, and the moment unit e hbar / m
    makes the Bohr magneton equal to 1/2.
    """
    e, m, c, hbar = constants.e, constants.m_e, constants.c, constants.hbar
    return UnitSystem(
        "natural",
        {
            "dimensionless": 1.0,
            "energy": m * c**2,
            "mass": m,
            "length": hbar / (m * c),
            "time": hbar / (m * c**2),
            "frequency": m * c**2 / hbar,
            "speed": c,
            "momentum": m * c,
            "field": m**2 * c**2 / (e * hbar),
            "moment": e * hbar / m,
            "current": e * m * c**2 / hbar,
        },
    )


NATURAL_UNITS = natural_units()


def convert(value: float, quantity: str, src: UnitSystem, dst: UnitSystem) -> float:
    """Convert ``value`` of the given quantity kind between unit systems."""
    return value * (src.factor(quantity) / dst.factor(quantity))
