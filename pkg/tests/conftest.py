"""Shared fixtures: canonical grids, wavelets with cached constants, field builders."""

import numpy as np
import pytest

import wavecwt as wc


def band_limited_spectrum(grid, k_lo, k_hi, seed=0):
    """Random spectrum supported on a |k| shell with a smooth taper and no DC."""
    rng = np.random.default_rng(seed)
    kmag = grid.k_mag()
    amp = rng.normal(size=grid.shape) + 1j * rng.normal(size=grid.shape)
    ramp = 0.15 * (k_hi - k_lo)
    env = np.clip((kmag - k_lo) / ramp, 0.0, 1.0) * np.clip((k_hi - kmag) / ramp, 0.0, 1.0)
    return wc.SpectralField3(grid, amp * env)


def rel_l2(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    return np.linalg.norm(a - b) / max(np.linalg.norm(a), np.linalg.norm(b))


@pytest.fixture(scope="session")
def grid16():
    return wc.Grid3.cubic(16, 16.0)


@pytest.fixture(scope="session")
def exp_sph():
    return wc.exp_spherical_wavelet()


@pytest.fixture(scope="session")
def exp_sph_constant(exp_sph):
    report = wc.admissibility_constant(exp_sph, tol=1e-8)
    assert report.converged
    return report.value


@pytest.fixture(scope="session")
def packet():
    return wc.gaussian_packet(40.0, 1.0, 0.5, 0.5)


@pytest.fixture(scope="session")
def packet_constant(packet):
    report = wc.admissibility_constant(packet, tol=1e-8)
    assert report.converged
    return report.value


@pytest.fixture(scope="session")
def kaiser3():
    return wc.kaiser_wavelet(3.0)


# dilation window covering the [0.7, 1.6] band for the exponential wavelet
EXP_SPH_A_RANGE = (0.067, 2.65)


@pytest.fixture(scope="session")
def exp_sph_pgrid(grid16, exp_sph):
    return wc.make_parameter_grid(grid16, exp_sph, *EXP_SPH_A_RANGE, 24)
