from __future__ import annotations

from fractions import Fraction

import pytest

from fuchsian_app.constants import SAMPLE_CONFIG
from fuchsian_app.services.sampling import random_config
from fuchsian_app.types import ProblemConfig
from fuchsian_app.utils import dict_to_config


def with_exponents(config: ProblemConfig, rho) -> ProblemConfig:
    """Replace the exponents, re-solving rho_{0,3} from the Fuchs relation."""
    rho = [tuple(Fraction(x) for x in triple) for triple in rho]
    finite = sum((sum(triple) for triple in rho[1:]), Fraction(0))
    r01, r02 = rho[0][0], rho[0][1]
    rho[0] = (r01, r02, finite - r01 - r02 - 2)
    return ProblemConfig(n=config.n, t=config.t, rho=tuple(rho), q=config.q, p=config.p)


@pytest.fixture
def sample_config() -> ProblemConfig:
    return dict_to_config(SAMPLE_CONFIG)


@pytest.fixture(params=[101, 202, 303])
def config_n3(request) -> ProblemConfig:
    return random_config(3, request.param)
