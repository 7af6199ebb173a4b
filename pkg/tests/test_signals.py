import numpy as np
import pytest

import improlms as ilms
from improlms.helpers import raise_if


def test_moments():
    r_x, q_x, rho_x = ilms.ImproperWhiteSpec(0.1, 0.1, 0.8).moments()

    assert r_x == pytest.approx(0.2)
    assert q_x == pytest.approx(0.16j)
    assert abs(rho_x) == pytest.approx(0.8)


def test_moments_real_imag_imbalance():
    r_x, q_x, rho_x = ilms.ImproperWhiteSpec(0.3, 0.1, 0.0).moments()

    assert r_x == pytest.approx(0.4)
    assert q_x == pytest.approx(0.2)
    assert rho_x == pytest.approx(0.5)


def test_degenerate_spec():
    spec = ilms.ImproperWhiteSpec(0.0, 0.0, 0.0)
    with pytest.raises(raise_if.DegenerateSignalError):
        spec.moments()
    with pytest.raises(raise_if.DegenerateSignalError):
        ilms.signals.gen_improper_white(spec, 10, seed=0)


@pytest.mark.parametrize(
    "args", [(-0.1, 0.1, 0.0), (0.1, 0.1, 1.5), (np.nan, 0.1, 0.0)]
)
def test_invalid_spec(args):
    with pytest.raises(raise_if.StructureError):
        ilms.ImproperWhiteSpec(*args)


def test_covariance_matrix_is_psd():
    for rho in (-1.0, 0.0, 0.3, 1.0):
        r_zz = ilms.ImproperWhiteSpec(0.1, 0.2, rho).covariance_matrix()
        assert np.all(np.linalg.eigvalsh(r_zz) >= -1e-15)


def test_gen_improper_white_is_deterministic():
    spec = ilms.ImproperWhiteSpec(0.1, 0.1, 0.8)
    a = ilms.signals.gen_improper_white(spec, 100, seed=7)
    b = ilms.signals.gen_improper_white(spec, 100, seed=7)
    c = ilms.signals.gen_improper_white(spec, 100, seed=8)

    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not a.flags.writeable


def test_gen_improper_white_moments():
    spec = ilms.ImproperWhiteSpec(0.1, 0.1, 0.8)
    x = ilms.signals.gen_improper_white(spec, 200_000, seed=1)
    r_x, q_x, _ = spec.moments()

    # a few standard errors of the sample moments
    assert abs(np.mean(np.abs(x) ** 2) - r_x) < 10 * r_x / np.sqrt(x.size)
    assert abs(np.mean(x**2) - q_x) < 10 * r_x / np.sqrt(x.size)


def test_maximally_improper_lies_on_a_line():
    x = ilms.signals.gen_improper_white(
        ilms.ImproperWhiteSpec(0.1, 0.1, 1.0), 50, seed=2
    )
    assert np.allclose(x.real, x.imag)


def test_run_seed_is_stable():
    a = ilms.signals.run_seed(3, 5)
    b = ilms.signals.run_seed(3, 5)

    assert a.generate_state(4).tolist() == b.generate_state(4).tolist()
    assert (
        a.generate_state(4).tolist()
        != ilms.signals.run_seed(3, 6).generate_state(4).tolist()
    )


def test_sysid_stream(sysid_proper, f1, g1):
    stream = ilms.signals.synthesize_stream(sysid_proper, 64, seed=0)

    assert len(stream) == 64
    assert stream.x_vectors.shape == (64, 4)
    expected = stream.x_vectors @ f1.conj() + stream.x_vectors.conj() @ (
        g1.conj()
    )
    assert np.allclose(stream.d, expected)
    # newest sample first
    assert np.array_equal(stream.x_vectors[1, 1:], stream.x_vectors[0, :-1])


def test_equalization_stream(equalization, channel_taps):
    no_noise = equalization.replace(noise_var=0.0)
    stream = ilms.signals.synthesize_stream(no_noise, 40, seed=4)

    assert stream.x_vectors.shape == (40, 5)
    assert np.all(stream.m == 0)
    # x_0(n) = sum_k h[k] d(n + delay - k), h the reversed taps
    d = stream.d
    h = channel_taps[::-1]
    for n in range(4, 36):
        expected = sum(h[k] * d[n + 4 - k] for k in range(4))
        assert stream.x_vectors[n, 0] == pytest.approx(expected)


@pytest.mark.parametrize("name", ["sysid_proper", "equalization"])
def test_stream_prefix(request, name):
    scenario = request.getfixturevalue(name)
    short = ilms.signals.synthesize_stream(scenario, 50, seed=11)
    long = ilms.signals.synthesize_stream(scenario, 120, seed=11)

    assert np.array_equal(short.x_vectors, long.x_vectors[:50])
    assert np.array_equal(short.d, long.d[:50])
    assert np.array_equal(short.m, long.m[:50])


def test_stream_too_short(sysid_proper):
    with pytest.raises(raise_if.StructureError):
        ilms.signals.synthesize_stream(sysid_proper, 3, seed=0)


def test_scenario_validation(f1, g1, proper_input, channel_taps):
    with pytest.raises(raise_if.StructureError):
        ilms.SystemIdentification(f1, g1[:3], proper_input)
    with pytest.raises(raise_if.StructureError):
        ilms.SystemIdentification(f1, g1, proper_input, noise_var=-1.0)
    with pytest.raises(raise_if.StructureError):
        ilms.ChannelEqualization(channel_taps, 9, proper_input, 0.0, 5)
    with pytest.raises(TypeError):
        ilms.SystemIdentification(f1, g1, (0.1, 0.1, 0.0))


def test_scenario_replace_and_to_dict(sysid_proper):
    improper = sysid_proper.replace(
        input_spec=sysid_proper.input.with_impropriety(0.5)
    )

    assert improper.input.rho_uv == 0.5
    assert sysid_proper.input.rho_uv == 0.0
    description = improper.to_dict()
    assert description["kind"] == "sysid"
    assert description["g"][0] == [0.0, 0.5]


def test_sample_second_order_stats(sysid_improper):
    stream = ilms.signals.synthesize_stream(sysid_improper, 100_000, seed=5)
    sampled = ilms.signals.sample_second_order_stats(stream)
    exact = ilms.statistics.stats_of(sysid_improper)

    # sample moments of products of unit scale Gaussians
    tolerance = 5 * 0.2 * 5 / np.sqrt(len(stream))
    assert np.max(np.abs(sampled.r - exact.r)) < tolerance
    assert np.max(np.abs(sampled.c - exact.c)) < tolerance
    assert sampled.sigma_m2 == pytest.approx(1e-3, rel=0.05)

    with pytest.raises(raise_if.StructureError):
        ilms.signals.sample_second_order_stats(
            ilms.signals.synthesize_stream(sysid_improper, 20, seed=5)
        )


def test_replace_validates(sysid_proper, proper_input):
    with pytest.raises(TypeError):
        sysid_proper.replace(bogus=1)
    with pytest.raises(raise_if.StructureError):
        proper_input.replace(rho_uv=1.5)
    assert proper_input.replace(r_vv=0.3).r_uu == proper_input.r_uu
