"""Trembling motion of the free Dirac electron.

The package follows one thread: the velocity operator of the Dirac
equation has eigenvalues +-c only, so an electron wave packet mixing
both energy branches trembles at 2E/hbar with amplitude hbar/2mc; in
second quantization the trembling becomes a pair current, and feeding
the field of the circulating charge back into degenerate perturbation
theory corrects g = 2 by alpha/pi.

Modules
-------
constants    CODATA 2018 values, natural/SI conversion
linalg       commutators, canonical Hermitian eigensystems, expm
dirac        gamma-free Dirac algebra, plane-wave spinors, Landau ladder
kinematics   velocity eigensystem, <v^2>, trembling displacement
wavepacket   packet evolution and trembling-signature extraction
fock         8-mode fermionic Fock space and pair currents
perturbation magnetic-moment ladder, g = 2(1 + alpha/2pi), Landau check
verify       registry of named numerical self-checks
reporting    CheckResult, deterministic JSON/CSV reports
cli          zitterlab verify | simulate | perturb | spectrum
"""

from .constants import CODATA2018, NATURAL_UNITS, SI_UNITS, convert
from .reporting import CheckResult, make_check

__version__ = "0.1.0"

__all__ = [
    "CODATA2018",
    "NATURAL_UNITS",
    "SI_UNITS",
    "convert",
    "CheckResult",
    "make_check",
    "__version__",
]
