import numpy as np
import pytest

import improlms as ilms
from improlms.helpers import raise_if


def test_sysid_proper_wiener(stats_proper, wiener_proper, f1):
    assert stats_proper.sigma_d2 == pytest.approx(0.95)
    assert stats_proper.sigma_m2 == pytest.approx(1e-3)
    assert np.allclose(stats_proper.r, 0.2 * np.eye(4))
    assert np.allclose(stats_proper.c, 0.0)

    assert np.allclose(wiener_proper.w_inf, f1)
    assert wiener_proper.j_min == pytest.approx(0.151, abs=1e-12)
    assert wiener_proper.k_norm2 == pytest.approx(0.030, abs=1e-6)


def test_sysid_improper_k(stats_improper, wiener_improper, g2):
    assert wiener_improper.k_norm2 == pytest.approx(0.003007, abs=1e-5)
    # k = r_x (1 - |rho_x|^2) g^*
    assert np.allclose(wiener_improper.k, 0.2 * 0.36 * g2.conj())
    assert np.allclose(
        ilms.statistics.k_sysid_closed_form(stats_improper, g2),
        wiener_improper.k,
    )


def test_k_vanishes_for_maximally_improper_sysid(f2, g2):
    scenario = ilms.SystemIdentification(
        f2, g2, ilms.ImproperWhiteSpec(0.1, 0.1, 1.0), noise_var=1e-3
    )
    wiener = ilms.wiener_solution(ilms.statistics.stats_of(scenario))

    assert wiener.k_norm2 < 1e-20


def test_k_vanishes_for_proper_equalization(equalization):
    proper = equalization.replace(
        input_spec=ilms.ImproperWhiteSpec(0.1, 0.1, 0.0)
    )
    wiener = ilms.wiener_solution(ilms.statistics.stats_of(proper))

    assert wiener.k_norm2 == pytest.approx(0.0, abs=1e-10)


def test_equalization_k(stats_equalization):
    wiener = ilms.wiener_solution(stats_equalization)
    assert wiener.k_norm2 == pytest.approx(0.022273, abs=5e-4)


def test_equalization_impulse_response(equalization, channel_taps):
    assert np.array_equal(
        equalization.impulse_response, [1, -0.7j, -0.5, 0.3]
    )
    flipped = equalization.replace(channel_taps=channel_taps[::-1])
    # a different channel, so different statistics
    assert not np.allclose(
        ilms.statistics.stats_of(flipped).p,
        ilms.statistics.stats_of(equalization).p,
    )


def test_equalization_entries(stats_equalization):
    assert stats_equalization.r[0, 0] == pytest.approx(0.376)
    assert stats_equalization.c[0, 0] == pytest.approx(0.17j)
    assert np.allclose(
        stats_equalization.p, 0.2 * np.array([0, 0.3, -0.5, -0.7j, 1])
    )
    assert np.allclose(stats_equalization.q, 1j * stats_equalization.p)
    assert stats_equalization.sigma_d2 == pytest.approx(0.2)
    assert stats_equalization.sigma_m2 == 0.0
    # toeplitz
    assert np.allclose(
        np.diag(stats_equalization.r, 1), stats_equalization.r[0, 1]
    )


@pytest.mark.parametrize(
    "name", ["sysid_proper", "sysid_improper", "equalization"]
)
def test_analytic_against_sampled(request, name):
    scenario = request.getfixturevalue(name)
    exact = ilms.statistics.stats_of(scenario)
    stream = ilms.signals.synthesize_stream(scenario, 200_000, seed=21)
    sampled = ilms.signals.sample_second_order_stats(stream)

    # generous bound for sample averages of second order products
    scale = max(exact.trace_r(), exact.sigma_d2)
    tolerance = 10 * scale / np.sqrt(len(stream))
    for attr in ("r", "c", "p", "q"):
        difference = getattr(sampled, attr) - getattr(exact, attr)
        deviation = np.max(np.abs(difference))
        assert deviation < tolerance, attr
    assert sampled.sigma_d2 == pytest.approx(exact.sigma_d2, rel=0.05)


@pytest.mark.parametrize("name", ["sysid_proper", "sysid_improper"])
def test_orthogonality(request, name):
    scenario = request.getfixturevalue(name)
    stats = ilms.statistics.stats_of(scenario)
    wiener = ilms.wiener_solution(stats)
    stream = ilms.signals.synthesize_stream(scenario, 200_000, seed=9)

    r1, r2 = ilms.statistics.orthogonality_residual(stats, wiener, stream)
    assert r1 <= 0.01
    assert r2 <= 0.01


def test_orthogonality_needs_samples(stats_proper, wiener_proper):
    stream = ilms.signals.synthesize_stream(
        ilms.SystemIdentification(
            [1, 0, 0, 0], [0, 0, 0, 0], ilms.ImproperWhiteSpec()
        ),
        100,
        seed=0,
    )
    with pytest.raises(raise_if.StructureError):
        ilms.statistics.orthogonality_residual(
            stats_proper, wiener_proper, stream
        )


def test_schur_complement(stats_improper):
    schur = ilms.statistics.schur_complement(stats_improper)
    assert np.allclose(schur, 0.2 * (1 - 0.64) * np.eye(4))


def test_augmented_covariance(stats_improper):
    augmented = ilms.statistics.augmented_covariance(stats_improper)

    assert augmented.shape == (8, 8)
    assert np.allclose(augmented, augmented.conj().T)
    assert stats_improper.smallest_augmented_eigenvalue() == pytest.approx(
        0.2 * (1 - 0.8)
    )


def test_cached_factorizations(stats_improper):
    assert stats_improper.eig() is stats_improper.eig()
    assert stats_improper.trace_r() == pytest.approx(0.8)
    assert np.allclose(stats_improper.takagi().sigma, 0.16)


def test_scaled_desired(stats_improper, wiener_improper):
    scaled = ilms.wiener_solution(stats_improper.scaled_desired(2.0))

    assert scaled.j_min == pytest.approx(4.0 * wiener_improper.j_min)
    assert np.allclose(scaled.k, 2.0 * wiener_improper.k)


def test_rejects_indefinite():
    eye = np.eye(2)
    with pytest.raises(raise_if.RankError):
        ilms.SecondOrderStats(
            np.diag([1.0, -1.0]), 0 * eye, [0, 0], [0, 0], 1.0, 0.0
        )
    # |C| > R is not a valid augmented covariance
    with pytest.raises(raise_if.RankError):
        ilms.SecondOrderStats(eye, 2 * eye, [0, 0], [0, 0], 1.0, 0.0)


def test_rejects_invalid_structure():
    eye = np.eye(2)
    with pytest.raises(raise_if.StructureError):
        ilms.SecondOrderStats(
            [[1.0, 1.0], [0.0, 1.0]], 0 * eye, [0, 0], [0, 0], 1.0, 0.0
        )
    with pytest.raises(raise_if.StructureError):
        ilms.SecondOrderStats(eye, 0 * eye, [0, 0, 0], [0, 0], 1.0, 0.0)
    with pytest.raises(raise_if.StructureError):
        ilms.SecondOrderStats(eye, 0 * eye, [0, 0], [0, 0], -1.0, 0.0)


def test_wiener_singular():
    with pytest.raises(raise_if.RankError):
        ilms.wiener_solution(
            ilms.SecondOrderStats(
                np.diag([1.0, 0.0]), np.zeros((2, 2)), [1, 0], [0, 0], 1, 0
            )
        )
