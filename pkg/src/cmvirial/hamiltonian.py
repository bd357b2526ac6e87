"""Two-particle quartic oscillator and its reduction to one mass ratio.

The lab-frame Hamiltonian is

    H_T = -hbar^2/(2 m1) d^2/dx1^2 - hbar^2/(2 m2) d^2/dx2^2 + k (x1 - x2)^4

Measuring lengths in ``L = (hbar^2 / (m1 k))^(1/6)`` and energies in
``hbar^2 / (m1 L^2)`` leaves ``beta = m1 / m2`` as the only parameter:

    H_Td = -1/2 d^2/dq1^2 - beta/2 d^2/dq2^2 + (q1 - q2)^4
         = T_cm + H_d,
    T_cm = -beta / (2 (1 + beta)) (d/dq1 + d/dq2)^2,
    H_d  = -(beta + 1)/2 d^2/dq^2 + q^4,        q = q1 - q2.
"""
import math
import numbers
from dataclasses import dataclass

from .errors import DomainError


def _positive(name, value):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise DomainError(f"{name} must be a real number, got {value!r}")
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class OscillatorSystem:
    m1: float
    m2: float
    k: float
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("m1", "m2", "k", "hbar"):
            object.__setattr__(self, name, _positive(name, getattr(self, name)))

    @property
    def total_mass(self):
        return self.m1 + self.m2

    @property
    def reduced_mass(self):
        return self.m1 * self.m2 / (self.m1 + self.m2)


@dataclass(frozen=True)
class DimensionlessModel:
    """Mass ratio plus the length scale used to reach it.

    ``length_scale`` is built from ``m1``, which keeps the reduction
    asymmetric in the particle labels.
    """

    beta: float
    length_scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "beta", _positive("beta", self.beta))
        object.__setattr__(self, "length_scale", _positive("length_scale", self.length_scale))

    @property
    def kinetic_coeff(self):
        return relative_hamiltonian_coefficients(self.beta)[0]

    @property
    def cm_coeff(self):
        return cm_kinetic_coefficient(self.beta)


@dataclass(frozen=True)
class EnergyDecomposition:
    """Expectation values in dimensionless energy units."""

    t_cm: float
    t_rel: float
    v: float

    @property
    def total(self):
        return self.t_cm + self.t_rel + self.v

    @property
    def kinetic(self):
        return self.t_cm + self.t_rel


def reduce_to_dimensionless(sys):
    """Mass ratio and length scale of ``sys``."""
    beta = sys.m1 / sys.m2
    length = (sys.hbar**2 / (sys.m1 * sys.k)) ** (1.0 / 6.0)
    return DimensionlessModel(beta=beta, length_scale=length)


def energy_unit(sys):
    """Physical value of one dimensionless energy unit, ``hbar^2 / (m1 L^2)``."""
    length = reduce_to_dimensionless(sys).length_scale
    return sys.hbar**2 / (sys.m1 * length**2)


def separate_cm(sys):
    """``(total mass, reduced mass)`` for the CM / relative split."""
    return sys.total_mass, sys.reduced_mass


def check_beta(beta):
    return _positive("beta", beta)


def relative_hamiltonian_coefficients(beta):
    """``(kinetic, quartic)`` coefficients of ``H_d = -c d^2/dq^2 + q^4``."""
    beta = check_beta(beta)
    return (beta + 1.0) / 2.0, 1.0


def cm_kinetic_coefficient(beta):
    """Coefficient ``beta / (2 (1 + beta))`` of ``-(d/dq1 + d/dq2)^2``."""
    beta = check_beta(beta)
    return beta / (2.0 * (1.0 + beta))


def to_relative_coordinates(q1, q2, beta):
    """Map dimensionless lab coordinates to ``(Q, q)``.

    ``Q`` is the centre of mass in units of ``L``; with ``m2 = m1 / beta``
    it is ``(beta q1 + q2) / (1 + beta)``.
    """
    return (beta * q1 + q2) / (1.0 + beta), q1 - q2


def to_lab_coordinates(cm, q, beta):
    """Inverse of :func:`to_relative_coordinates`."""
    return cm + q / (1.0 + beta), cm - beta * q / (1.0 + beta)
