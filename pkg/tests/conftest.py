"""Shared fixtures: one on-disk cache and the expensive covariance builds."""

import numpy as np
import pytest

from snb.counting import build_table, gap_integrals
from snb.fredholm import ResolutionPolicy
from snb.ordered import autocovariances


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    return str(tmp_path_factory.mktemp("snb-cache"))


@pytest.fixture(scope="session")
def policy():
    return ResolutionPolicy()


@pytest.fixture(scope="session")
def gaps2_80(policy, cache_dir):
    return gap_integrals(2, 80, policy, cache_dir=cache_dir)


@pytest.fixture(scope="session")
def gaps1_100(policy, cache_dir):
    return gap_integrals(1, 100, policy, cache_dir=cache_dir)


@pytest.fixture(scope="session")
def gaps4_50(policy, cache_dir):
    return gap_integrals(4, 50, policy, cache_dir=cache_dir)


@pytest.fixture(scope="session")
def cov2_80(gaps2_80):
    return autocovariances(gaps2_80)


@pytest.fixture(scope="session")
def cov1_100(gaps1_100):
    return autocovariances(gaps1_100)


@pytest.fixture(scope="session")
def cov4_50(gaps4_50):
    return autocovariances(gaps4_50)


@pytest.fixture(scope="session")
def fine_table(policy, cache_dir):
    # uniform grid for finite-difference spacing densities
    step = 0.025
    grid = np.arange(step, 10.0 + step / 2, step)
    return build_table(2, grid, ResolutionPolicy.lmax_for(10.0), policy,
                       cache_dir=cache_dir)
