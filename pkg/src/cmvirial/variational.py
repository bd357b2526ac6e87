"""Gaussian variational energies with and without the centre of mass removed.

Two trial functions are compared on the dimensionless lab Hamiltonian:

* ``exp(-a q^2)`` depends on ``q = q1 - q2`` only, so ``<T_cm> = 0``;
* ``exp(-a q1^2 - b q2^2)`` is a product of lab-frame orbitals, the shape
  of an SCF wavefunction, and always carries ``<T_cm> > 0``.

With ``<q^2> = 1/(4a)`` and ``<q^4> = 3/(16 a^2)`` for a normalized
Gaussian density the energies are

    W(a)    = (beta + 1) a / 2 + 3 / (16 a^2)
    W(a, b) = a / 2 + beta b / 2 + 3 (1/(4a) + 1/(4b))^2
"""
import enum
import math
from dataclasses import dataclass

from .errors import DomainError
from .hamiltonian import EnergyDecomposition, check_beta
from .minimize import numeric_minimize

WIDTH_CONSTANT = 3.0 * 6.0 ** (1.0 / 3.0) / 8.0  # W_r at beta -> 0
QUARTIC_DEGREE = 4


class TrialKind(enum.Enum):
    RELATIVE = "relative"
    LAB = "lab"


@dataclass(frozen=True)
class TrialFunction:
    kind: TrialKind
    params: tuple

    def __post_init__(self):
        expected = 1 if self.kind is TrialKind.RELATIVE else 2
        params = tuple(float(p) for p in self.params)
        if len(params) != expected:
            raise DomainError(f"{self.kind.value} trial takes {expected} width(s), got {len(params)}")
        if not all(math.isfinite(p) and p > 0 for p in params):
            raise DomainError(f"trial widths must be positive, got {params}")
        object.__setattr__(self, "params", params)

    @classmethod
    def relative(cls, a):
        return cls(TrialKind.RELATIVE, (a,))

    @classmethod
    def lab(cls, a, b):
        return cls(TrialKind.LAB, (a, b))


@dataclass(frozen=True)
class VirialReport:
    """Normalized virial residuals ``(2 <T> - n <V>) / max(1, |W|)``.

    ``total`` uses the full kinetic energy, as an SCF code would;
    ``relative_only`` drops the centre-of-mass part.
    """

    total: float
    relative_only: float
    degree: float


@dataclass(frozen=True)
class VariationalResult:
    trial: TrialFunction
    energy: float
    decomposition: EnergyDecomposition
    virial_residual: float
    iterations: int = 0

    @property
    def widths(self):
        return self.trial.params


def _check_width(name, value):
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"width {name} must be positive, got {value!r}")


def _check_beta_nonneg(beta):
    # beta = 0 is the infinitely heavy partner; the energies stay finite there
    if not (math.isfinite(beta) and beta >= 0):
        raise DomainError(f"beta must be non-negative, got {beta!r}")


def decompose_rel(a, beta):
    _check_width("a", a)
    _check_beta_nonneg(beta)
    return EnergyDecomposition(t_cm=0.0, t_rel=(beta + 1.0) * a / 2.0, v=3.0 / (16.0 * a * a))


def decompose_lab(a, b, beta):
    _check_width("a", a)
    _check_width("b", b)
    _check_beta_nonneg(beta)
    spread = 0.25 / a + 0.25 / b  # <q^2>
    return EnergyDecomposition(
        t_cm=beta * (a + b) / (2.0 * (1.0 + beta)),
        t_rel=(a + beta * beta * b) / (2.0 * (1.0 + beta)),
        v=3.0 * spread * spread,
    )


def energy_rel(a, beta):
    """``<H_d>`` for ``exp(-a q^2)``."""
    _check_width("a", a)
    _check_beta_nonneg(beta)
    return (beta + 1.0) * a / 2.0 + 3.0 / (16.0 * a * a)


def energy_lab(a, b, beta):
    """``<H_Td>`` for ``exp(-a q1^2 - b q2^2)``."""
    _check_width("a", a)
    _check_width("b", b)
    _check_beta_nonneg(beta)
    spread = 0.25 / a + 0.25 / b
    return a / 2.0 + beta * b / 2.0 + 3.0 * spread * spread


def virial_report(result, potential_degree=QUARTIC_DEGREE):
    """Virial residuals of ``result`` for a potential homogeneous of degree n.

    A stationary state satisfies ``2 <T> = n <V>``; ``n = -1`` gives the
    Coulomb form ``2 <T> = -<V>``.
    """
    n = float(potential_degree)
    if n == 0:
        raise DomainError("potential degree must be non-zero")
    dec = result.decomposition if isinstance(result, VariationalResult) else result
    scale = max(1.0, abs(dec.total))
    return VirialReport(
        total=(2.0 * (dec.t_cm + dec.t_rel) - n * dec.v) / scale,
        relative_only=(2.0 * dec.t_rel - n * dec.v) / scale,
        degree=n,
    )


def _result(trial, energy, dec, iterations=0):
    residual = virial_report(dec).total
    return VariationalResult(trial, energy, dec, residual, iterations)


def optimal_width_rel(beta):
    beta = check_beta(beta)
    return (3.0 / (4.0 * (beta + 1.0))) ** (1.0 / 3.0)


def optimal_widths_lab(beta):
    beta = check_beta(beta)
    root = math.sqrt(beta)
    a = (3.0 * (1.0 + root) / 4.0) ** (1.0 / 3.0)
    return a, a / root


def closed_form_rel(beta):
    beta = check_beta(beta)
    return WIDTH_CONSTANT * (beta + 1.0) ** (2.0 / 3.0)


def closed_form_lab(beta):
    beta = check_beta(beta)
    return WIDTH_CONSTANT * (math.sqrt(beta) + 1.0) ** (4.0 / 3.0)


def minimize_rel(beta):
    """Optimal relative-coordinate Gaussian, from the stationarity condition."""
    a = optimal_width_rel(beta)
    return _result(TrialFunction.relative(a), closed_form_rel(beta), decompose_rel(a, beta))


def minimize_lab(beta):
    """Optimal product Gaussian; the widths obey ``a = sqrt(beta) b``."""
    a, b = optimal_widths_lab(beta)
    return _result(TrialFunction.lab(a, b), closed_form_lab(beta), decompose_lab(a, b, beta))


def numeric_minimize_rel(beta, start=1.0, tol=1e-10, max_sweeps=10_000):
    beta = check_beta(beta)
    found = numeric_minimize(lambda a: energy_rel(a, beta), [start], tol, max_sweeps)
    (a,) = found.x
    dec = decompose_rel(a, beta)
    return _result(TrialFunction.relative(a), found.value, dec, found.iterations)


def numeric_minimize_lab(beta, start=(1.0, 1.0), tol=1e-10, max_sweeps=10_000):
    beta = check_beta(beta)
    found = numeric_minimize(lambda a, b: energy_lab(a, b, beta), start, tol, max_sweeps)
    a, b = found.x
    dec = decompose_lab(a, b, beta)
    return _result(TrialFunction.lab(a, b), found.value, dec, found.iterations)
