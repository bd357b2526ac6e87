import numpy as np
import pytest

from cmvirial import kernels
from cmvirial._jit import HAVE_NUMBA
from oracles import dense_x4

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


def dense_from_bands(bands, even_only):
    size = bands.shape[1]
    h = np.diag(bands[0])
    for k in range(1, bands.shape[0]):
        off = np.diag(bands[k, : size - k], -k)
        h += off + off.T
    return h


def dense_hamiltonian(size, kin, alpha, pad=8):
    """kin p^2 + q^4 from dense ladder matrices, truncated after the products."""
    n = size + pad
    b = np.diag(np.sqrt(np.arange(1, n)), 1)
    q = (b + b.T) / np.sqrt(2 * alpha)
    p = 1j * np.sqrt(alpha / 2) * (b.T - b)
    h = kin * (p @ p).real + np.linalg.matrix_power(q, 4)
    return h[:size, :size]


def test_x4_elements_match_dense_power():
    n = np.arange(12)
    d0, d2, d4 = kernels._x4_elements_np(n)
    dense = dense_x4(20)
    np.testing.assert_allclose(d0, dense[n, n], rtol=1e-14)
    np.testing.assert_allclose(d2, dense[n, n + 2], rtol=1e-14)
    np.testing.assert_allclose(d4, dense[n, n + 4], rtol=1e-14)


@pytest.mark.parametrize("kin, alpha", [(1.0, 1.0), (0.55, 1.76), (2.5, 0.8)])
def test_full_bands_reconstruct_dense_hamiltonian(kin, alpha):
    bands = kernels.quartic_bands_np(14, kin, alpha, False)
    np.testing.assert_allclose(dense_from_bands(bands, False), dense_hamiltonian(14, kin, alpha), atol=1e-12)


def test_even_bands_are_even_sub_block():
    full = dense_from_bands(kernels.quartic_bands_np(16, 0.8, 1.3, False), False)
    even = dense_from_bands(kernels.quartic_bands_np(8, 0.8, 1.3, True), True)
    np.testing.assert_allclose(even, full[::2, ::2], atol=1e-13)
    # parity decoupling: odd-even couplings vanish
    assert np.all(full[::2, 1::2] == 0)


@needs_numba
@pytest.mark.parametrize("even_only", [True, False])
@pytest.mark.parametrize("size", [1, 2, 3, 5, 40])
def test_jit_and_numpy_bands_agree(even_only, size):
    a = kernels.quartic_bands_jit(size, 0.7, 1.9, even_only)
    b = kernels.quartic_bands_np(size, 0.7, 1.9, even_only)
    np.testing.assert_allclose(a, b, rtol=1e-14, atol=0)


@needs_numba
@pytest.mark.parametrize("energy", [0.5, 1.0603620904841828, 1.5])
def test_jit_and_numpy_numerov_agree(energy):
    a = kernels.numerov_even_jit(energy, 1.0, 6.0, 1500)
    b = kernels.numerov_even_np(energy, 1.0, 6.0, 1500)
    assert a[1] == b[1]
    assert a[0] == pytest.approx(b[0], rel=1e-9)


def test_numerov_free_particle_cosine():
    # with q^4 negligible on [0, 0.1] the even solution is cos(sqrt(E/kin) q)
    val, scale = kernels.numerov_even_np(4.0, 1.0, 0.1, 200)
    assert scale == 0
    assert val == pytest.approx(np.cos(0.2), rel=2e-6)


def test_numerov_sign_change_brackets_ground_state():
    below = kernels.numerov_even_endpoint(1.05, 1.0, 6.0, 4000)[0]
    above = kernels.numerov_even_endpoint(1.07, 1.0, 6.0, 4000)[0]
    assert below > 0 > above
