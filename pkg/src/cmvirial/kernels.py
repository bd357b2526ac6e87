"""Numeric inner loops for the ground-state oracle.

Each kernel has a numba version (``*_jit``) and a numpy version
(``*_np``). The public name dispatches to one of them according to
:data:`cmvirial._jit.USE_NUMBA`. Both are always importable so they can be
benchmarked and cross-checked against each other.

Harmonic-oscillator basis conventions: ``phi_n(q) ~ H_n(sqrt(alpha) q)
exp(-alpha q^2 / 2)``, so ``q = (b + b^dagger) / sqrt(2 alpha)`` and the
Gaussian ``exp(-a q^2)`` is ``phi_0`` with ``alpha = 2 a``.
"""
import numpy as np

from ._jit import USE_NUMBA, njit


# ---------------------------------------------------------------------------
# Hamiltonian  kin * p^2 + q^4  in the oscillator basis, lower band storage
# ---------------------------------------------------------------------------

def _x4_elements_np(n):
    """<n|X^4|n>, <n|X^4|n+2>, <n|X^4|n+4> with X = b + b^dagger."""
    n = np.asarray(n, dtype=np.float64)
    d0 = 6.0 * n * n + 6.0 * n + 3.0
    d2 = (4.0 * n + 6.0) * np.sqrt((n + 1.0) * (n + 2.0))
    d4 = np.sqrt((n + 1.0) * (n + 2.0) * (n + 3.0) * (n + 4.0))
    return d0, d2, d4


def quartic_bands_np(size, kin, alpha, even_only):
    n = np.arange(0, 2 * size, 2) if even_only else np.arange(size)
    x0, x2, x4 = _x4_elements_np(n)
    q4 = 1.0 / (4.0 * alpha * alpha)
    diag = kin * 0.5 * alpha * (2.0 * n + 1.0) + q4 * x0
    off2 = -kin * 0.5 * alpha * np.sqrt((n + 1.0) * (n + 2.0)) + q4 * x2
    off4 = q4 * x4
    r2, r4 = (1, 2) if even_only else (2, 4)
    bands = np.zeros((r4 + 1, size))
    bands[0] = diag
    m2, m4 = max(size - r2, 0), max(size - r4, 0)
    bands[r2, :m2] = off2[:m2]
    bands[r4, :m4] = off4[:m4]
    return bands


@njit
def quartic_bands_jit(size, kin, alpha, even_only):
    step = 2 if even_only else 1
    nb = 3 if even_only else 5
    bands = np.zeros((nb, size))
    q4 = 1.0 / (4.0 * alpha * alpha)
    for j in range(size):
        n = float(step * j)
        bands[0, j] = kin * 0.5 * alpha * (2.0 * n + 1.0) + q4 * (6.0 * n * n + 6.0 * n + 3.0)
        r2 = np.sqrt((n + 1.0) * (n + 2.0))
        if j + 2 // step < size:
            bands[2 // step, j] = -kin * 0.5 * alpha * r2 + q4 * (4.0 * n + 6.0) * r2
        if j + 4 // step < size:
            bands[4 // step, j] = q4 * r2 * np.sqrt((n + 3.0) * (n + 4.0))
    return bands


def quartic_bands(size, kin, alpha, even_only=True):
    """Lower band storage of ``kin * p^2 + q^4`` on ``size`` basis functions.

    With ``even_only`` the functions are ``phi_0, phi_2, ...`` and the
    result has 3 rows; otherwise ``phi_0 ... phi_{size-1}`` and 5 rows.
    Row ``k`` column ``j`` holds ``H[j + k, j]``, the layout expected by
    :func:`scipy.linalg.eig_banded` with ``lower=True``.
    """
    if USE_NUMBA:
        return quartic_bands_jit(int(size), float(kin), float(alpha), bool(even_only))
    return quartic_bands_np(int(size), float(kin), float(alpha), bool(even_only))


# ---------------------------------------------------------------------------
# Numerov integration of  -kin psi'' + q^4 psi = E psi  from q = 0 outward
# ---------------------------------------------------------------------------

def numerov_even_np(energy, kin, q_max, n_steps):
    h = q_max / n_steps
    q = np.linspace(0.0, q_max, n_steps + 1)
    g = (energy - q**4) / kin
    f = 1.0 + (h * h / 12.0) * g
    psi = np.empty(n_steps + 1)
    psi[0] = 1.0
    # even start: psi(-h) = psi(h)
    psi[1] = (12.0 - 10.0 * f[0]) * psi[0] / (2.0 * f[1])
    scale = 0.0
    for i in range(1, n_steps):
        psi[i + 1] = ((12.0 - 10.0 * f[i]) * psi[i] - f[i - 1] * psi[i - 1]) / f[i + 1]
        if abs(psi[i + 1]) > 1e100:
            psi[i : i + 2] *= 1e-100
            scale += 100.0
    return psi[-1], scale


@njit
def numerov_even_jit(energy, kin, q_max, n_steps):
    h = q_max / n_steps
    c = h * h / 12.0
    f_prev = 1.0 + c * energy / kin
    f_cur = 1.0 + c * (energy - h**4) / kin
    p_prev = 1.0
    p_cur = (12.0 - 10.0 * f_prev) * p_prev / (2.0 * f_cur)
    scale = 0.0
    for i in range(1, n_steps):
        q_next = (i + 1) * h
        f_next = 1.0 + c * (energy - q_next**4) / kin
        p_next = ((12.0 - 10.0 * f_cur) * p_cur - f_prev * p_prev) / f_next
        if abs(p_next) > 1e100:
            p_next *= 1e-100
            p_cur *= 1e-100
            scale += 100.0
        p_prev, p_cur = p_cur, p_next
        f_prev, f_cur = f_cur, f_next
    return p_cur, scale


def numerov_even_endpoint(energy, kin, q_max, n_steps):
    """Value of the even solution at ``q_max`` (with ``psi(0) = 1``).

    Returns ``(value, log10_scale)``; the true endpoint is
    ``value * 10**log10_scale``. Only the sign is needed for shooting.
    """
    if USE_NUMBA:
        return numerov_even_jit(float(energy), float(kin), float(q_max), int(n_steps))
    return numerov_even_np(float(energy), float(kin), float(q_max), int(n_steps))
