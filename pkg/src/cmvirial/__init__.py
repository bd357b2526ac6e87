"""Centre-of-mass contamination of variational energies.

A two-particle quartic oscillator shows how a product of lab-frame Gaussians
overestimates the energy and still satisfies the virial theorem, compared
against an accurate eigenvalue oracle and against tabulated isotopologue
energies.
"""
from .errors import ConvergenceError, DomainError, TableFormatError
from .hamiltonian import (
    DimensionlessModel,
    EnergyDecomposition,
    OscillatorSystem,
    reduce_to_dimensionless,
    relative_hamiltonian_coefficients,
    separate_cm,
)
from .minimize import Minimum, numeric_minimize
from .molecules import (
    IsotopologueRecord,
    RegressionFit,
    builtin_table,
    delta_w,
    fit_linear,
    sweep_figures,
    toy_delta_w,
)
from .oracle import ExactGroundState, convergence_study, ground_state_energy, shooting_ground_state
from .variational import (
    TrialFunction,
    VariationalResult,
    energy_lab,
    energy_rel,
    minimize_lab,
    minimize_rel,
    virial_report,
)

__version__ = "0.1.0"
