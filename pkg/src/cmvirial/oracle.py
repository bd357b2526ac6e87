"""Accurate ground state of ``H_d = -c d^2/dq^2 + q^4``, ``c = (beta + 1)/2``.

Two independent routes:

* :func:`ground_state_energy` diagonalizes ``H_d`` in a harmonic-oscillator
  basis whose lowest function is the optimal relative Gaussian, doubling
  the basis until the energy stops moving;
* :func:`shooting_ground_state` integrates the even solution outward with
  Numerov's method and locates the energy at which it stops diverging,
  with Richardson extrapolation in the step size.

Rescaling ``q = c^(1/6) s`` gives ``E0(beta) = c^(2/3) E0(c = 1)``; that law
is used only as a cross-check.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eig_banded
from scipy.optimize import brentq

from . import kernels
from .errors import ConvergenceError, DomainError
from .hamiltonian import check_beta, relative_hamiltonian_coefficients
from .variational import closed_form_rel, optimal_width_rel

MIN_BASIS = 16
MAX_BASIS = 512


@dataclass(frozen=True)
class ExactGroundState:
    beta: float
    energy: float
    basis_size: int
    residual: float
    basis_frequency: float


def basis_frequency(beta):
    """Oscillator parameter ``alpha`` whose ``phi_0`` is the optimal Gaussian."""
    return 2.0 * optimal_width_rel(beta)


def truncated_energy(beta, size, parity="even", alpha=None):
    """Lowest eigenvalue of ``H_d`` on the first ``size`` basis functions.

    ``parity="even"`` keeps ``phi_0, phi_2, ...`` up to index ``size - 1``
    (``ceil(size / 2)`` functions); ``parity="full"`` keeps all of them.
    """
    beta = check_beta(beta)
    if size < 1:
        raise DomainError(f"basis size must be at least 1, got {size}")
    kin, _ = relative_hamiltonian_coefficients(beta)
    if alpha is None:
        alpha = basis_frequency(beta)
    if parity == "even":
        bands = kernels.quartic_bands((size + 1) // 2, kin, alpha, even_only=True)
    elif parity == "full":
        bands = kernels.quartic_bands(size, kin, alpha, even_only=False)
    else:
        raise DomainError(f"parity must be 'even' or 'full', got {parity!r}")
    if bands.shape[1] == 1:
        return float(bands[0, 0])
    values = eig_banded(bands, lower=True, eigvals_only=True, select="i", select_range=(0, 0))
    return float(values[0])


def ground_state_energy(beta, tol=1e-9, max_basis=MAX_BASIS, start=MIN_BASIS):
    """Converged basis-set ground-state energy.

    The basis doubles from ``start`` until two consecutive sizes agree to
    ``tol``. Raises :class:`ConvergenceError` past ``max_basis``.
    """
    beta = check_beta(beta)
    if not (math.isfinite(tol) and tol >= 1e-12):
        raise DomainError(f"tol must be at least 1e-12, got {tol!r}")
    alpha = basis_frequency(beta)
    size = start
    previous = truncated_energy(beta, size, alpha=alpha)
    while size * 2 <= max_basis:
        size *= 2
        energy = truncated_energy(beta, size, alpha=alpha)
        residual = abs(energy - previous)
        if residual <= tol:
            return ExactGroundState(beta, energy, size, residual, alpha)
        previous = energy
    state = ExactGroundState(beta, previous, size, residual if size > start else math.inf, alpha)
    raise ConvergenceError(
        f"basis energy not converged to {tol:g} at size {size} (last change {state.residual:.3g})",
        state=state,
    )


def convergence_study(beta, sizes):
    """``[(size, energy), ...]`` for the given increasing basis sizes."""
    sizes = [int(s) for s in sizes]
    if not sizes or any(s < 2 for s in sizes):
        raise DomainError("basis sizes must all be at least 2")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise DomainError("basis sizes must be strictly increasing")
    alpha = basis_frequency(beta)
    return [(s, truncated_energy(beta, s, alpha=alpha)) for s in sizes]


def scaled_energy(result):
    """``E0(beta) (2 / (beta + 1))^(2/3)``, which should not depend on beta."""
    return result.energy * (2.0 / (result.beta + 1.0)) ** (2.0 / 3.0)


def _shoot(beta, n_steps, q_extent=6.0):
    kin, _ = relative_hamiltonian_coefficients(beta)
    q_max = q_extent * kin ** (1.0 / 6.0)

    def endpoint(energy):
        value, _ = kernels.numerov_even_endpoint(energy, kin, q_max, n_steps)
        return value

    # E0 < W_r < second even level (about 7.46 c^(2/3)); psi(q_max) flips sign once between
    lower = 0.0
    upper = closed_form_rel(beta)
    return brentq(endpoint, lower, upper, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)


def shooting_ground_state(beta, n_steps=4000):
    """Ground-state energy from Numerov shooting, Richardson-extrapolated.

    Numerov's global error is ``O(h^4)``, so ``(16 E(h/2) - E(h)) / 15``
    removes the leading term.
    """
    beta = check_beta(beta)
    coarse = _shoot(beta, n_steps)
    fine = _shoot(beta, 2 * n_steps)
    return (16.0 * fine - coarse) / 15.0
