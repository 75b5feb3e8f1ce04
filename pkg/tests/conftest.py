import math

import pytest

from nfgain import Medium, ScenarioConfig, UserPosition


@pytest.fixture
def config() -> ScenarioConfig:
    return ScenarioConfig()


@pytest.fixture
def user(config) -> UserPosition:
    return config.user()


@pytest.fixture
def medium(config) -> Medium:
    return config.medium()


@pytest.fixture
def broadside_user() -> UserPosition:
    return UserPosition(r=5.0, theta=math.pi / 2, phi=math.pi / 2)
