"""improlms/tests/conftest.py

Common fixtures needed for testing: the plants and the channel of the
reference experiments, their scenarios and statistics.
"""

import numpy as np
import pytest

import improlms as ilms


@pytest.fixture
def f1():
    return np.array([1, 1j, 1, 1j])


@pytest.fixture
def g1():
    return np.array([0.5j, 0.5, 0, 0.5])


@pytest.fixture
def f2():
    return np.array([1, 0.5j, 0.5, -1])


@pytest.fixture
def g2():
    return np.array([0.2, 0.5j, 0.5, -0.2j])


@pytest.fixture
def channel_taps():
    return np.array([0.3, -0.5, -0.7j, 1])


@pytest.fixture
def proper_input():
    return ilms.ImproperWhiteSpec(0.1, 0.1, 0.0)


@pytest.fixture
def improper_input():
    return ilms.ImproperWhiteSpec(0.1, 0.1, 0.8)


@pytest.fixture
def sysid_proper(f1, g1, proper_input):
    return ilms.SystemIdentification(f1, g1, proper_input, noise_var=1e-3)


@pytest.fixture
def sysid_improper(f2, g2, improper_input):
    return ilms.SystemIdentification(f2, g2, improper_input, noise_var=1e-3)


@pytest.fixture
def equalization(channel_taps):
    return ilms.ChannelEqualization(
        channel_taps,
        delay=4,
        input_spec=ilms.ImproperWhiteSpec(0.1, 0.1, 1.0),
        noise_var=1e-2,
        filter_len=5,
    )


@pytest.fixture
def stats_proper(sysid_proper):
    return ilms.statistics.stats_of(sysid_proper)


@pytest.fixture
def stats_improper(sysid_improper):
    return ilms.statistics.stats_of(sysid_improper)


@pytest.fixture
def stats_equalization(equalization):
    return ilms.statistics.stats_of(equalization)


@pytest.fixture
def wiener_proper(stats_proper):
    return ilms.wiener_solution(stats_proper)


@pytest.fixture
def wiener_improper(stats_improper):
    return ilms.wiener_solution(stats_improper)


@pytest.fixture
def provide_data_to_unittest(
    request,
    f1,
    g1,
    f2,
    g2,
    channel_taps,
    sysid_proper,
    sysid_improper,
    equalization,
):
    request.cls.f1 = f1
    request.cls.g1 = g1
    request.cls.f2 = f2
    request.cls.g2 = g2
    request.cls.H = channel_taps
    request.cls.S1 = sysid_proper
    request.cls.S2 = sysid_improper
    request.cls.EQ = equalization
