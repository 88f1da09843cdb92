"""Thomas-Fermi atoms, free electron gases and density matrices under Levy (order-alpha) kinetics.

Submodules
----------
constants   model parameters and closed-form constants
series      small-``x`` expansion of the screening function
tfsolver    shooting solver for the screening equation
profile     neutral-atom density, potential and energies
fermigas    box-state counting and degeneracy pressure
densmat     reduced density matrices of finite fermion states
oracles     independent brute-force references
validation  numbered acceptance checks
io          CSV/SVG output and the ``fracqm`` command line
"""
from .constants import DerivedConstants, DomainError, ModelParams, derive_constants
from .profile import build_profile, energy_report
from .tfsolver import OdeConfig, TFSolution, integrate, omega_eval, series_start, shoot

__version__ = "0.1.0"

__all__ = [
    "DerivedConstants",
    "DomainError",
    "ModelParams",
    "derive_constants",
    "OdeConfig",
    "TFSolution",
    "integrate",
    "omega_eval",
    "series_start",
    "shoot",
    "build_profile",
    "energy_report",
]
