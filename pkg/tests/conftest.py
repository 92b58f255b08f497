import pytest

from nighedge import NigParams, QuadConfig, mmm_scalars

# parameter triple calibrated to SPX call quotes; the reference setup for
# most numeric cross-checks
SPX_ALPHA = 25.61598030765035
SPX_BETA = -1.2668546614155765
SPX_DELTA = 0.40532772478162127

STRIKES = (2300.0, 2350.0, 2400.0)


@pytest.fixture(scope="session")
def spx_params() -> NigParams:
    return NigParams(SPX_ALPHA, SPX_BETA, SPX_DELTA)


@pytest.fixture(scope="session")
def spx_scalars(spx_params):
    return mmm_scalars(spx_params)


@pytest.fixture(scope="session")
def flat_params() -> NigParams:
    # beta = -1/2 makes mu_S = 0 exactly, so the measure change degenerates
    return NigParams(10.0, -0.5, 0.4)


@pytest.fixture(scope="session")
def flat_scalars(flat_params):
    return mmm_scalars(flat_params)


@pytest.fixture(scope="session")
def ref_cfg() -> QuadConfig:
    # the reference FFT setup: N = 2^16, eta = 0.25, a = 1.75, epsilon = 0.01
    return QuadConfig()


@pytest.fixture(scope="session")
def fast_cfg() -> QuadConfig:
    # cheap grid for tests whose maturities stay away from zero
    return QuadConfig(n_points=2**13, eta=0.5, oversample=2)
