import numpy as np
import pytest

import improlms as ilms
from improlms import settings, simulator
from improlms.helpers import raise_if


@pytest.fixture
def small_chunks(monkeypatch):
    monkeypatch.setattr(settings, "MC_CHUNK_SIZE", 16)


def test_lms_run_shapes(sysid_proper):
    result = simulator.lms_run(sysid_proper, 1.0, 50, seed=3)

    assert len(result) == 50
    assert result.final_weights.shape == (4,)
    assert not result.diverged
    assert result.diverged_at is None


def test_lms_run_matches_plain_loop(sysid_improper):
    stream = ilms.signals.synthesize_stream(sysid_improper, 30, seed=8)
    w = np.zeros(4, dtype=complex)
    expected = []
    for x, d, m in zip(stream.x_vectors, stream.d, stream.m):
        e = d + m - np.vdot(w, x)
        w = w + 0.5 * np.conj(e) * x
        expected.append(abs(e) ** 2)

    result = simulator.lms_run(sysid_improper, 0.5, 30, seed=8)
    assert np.allclose(result.sq_error, expected)
    assert np.allclose(result.final_weights, w)


def test_lms_run_with_initial_weights(sysid_proper, f1):
    # starting at the plant's linear part leaves only the widely linear
    # residual and the noise
    result = simulator.lms_run(sysid_proper, 1e-6, 20, seed=0, w0=f1)
    assert np.mean(result.sq_error) < 0.951


def test_lms_run_diverges(sysid_proper):
    result = simulator.lms_run(sysid_proper, 50.0, 400, seed=1)

    assert result.diverged
    assert 0 <= result.diverged_at < 400


def test_monte_carlo_initial_value(sysid_proper):
    curve = simulator.monte_carlo_mse(sysid_proper, 1.0, 5, 2000, 1)

    # E|e(0)|^2 = sigma_d2 + sigma_m2 with zero initial weights
    assert curve.at(0) == pytest.approx(0.951, abs=6 * curve.stderr[0])
    assert curve.runs == 2000
    assert curve.diverged_runs == 0


def test_monte_carlo_steady_state(sysid_proper):
    curve = simulator.monte_carlo_mse(sysid_proper, 1.0, 150, 400, 2)
    tail = simulator.tail_estimate(curve, 100)

    assert tail.mean == pytest.approx(0.3041, rel=0.1)
    assert tail.stderr > 0
    assert np.isnan(curve.at(150))


def test_monte_carlo_is_deterministic(sysid_improper, small_chunks):
    a = simulator.monte_carlo_mse(sysid_improper, 1.0, 40, 50, 7)
    b = simulator.monte_carlo_mse(sysid_improper, 1.0, 40, 50, 7)
    c = simulator.monte_carlo_mse(sysid_improper, 1.0, 40, 50, 8)

    assert np.array_equal(a.mean_sq_error, b.mean_sq_error)
    assert np.array_equal(a.stderr, b.stderr)
    assert not np.array_equal(a.mean_sq_error, c.mean_sq_error)


def test_monte_carlo_thread_independent(
    sysid_improper, small_chunks, monkeypatch
):
    single = simulator.monte_carlo_mse(sysid_improper, 1.0, 40, 70, 3)
    monkeypatch.setattr(settings, "NTHREADS", 3)
    threaded = simulator.monte_carlo_mse(sysid_improper, 1.0, 40, 70, 3)

    assert np.array_equal(single.mean_sq_error, threaded.mean_sq_error)
    assert np.array_equal(single.stderr, threaded.stderr)
    assert np.array_equal(
        single.mean_final_weights, threaded.mean_final_weights
    )


def test_monte_carlo_chunk_merge(sysid_improper, monkeypatch):
    whole = simulator.monte_carlo_mse(sysid_improper, 1.0, 20, 40, 5)
    monkeypatch.setattr(settings, "MC_CHUNK_SIZE", 7)
    chunked = simulator.monte_carlo_mse(sysid_improper, 1.0, 20, 40, 5)

    # same runs, different summation order
    assert np.allclose(whole.mean_sq_error, chunked.mean_sq_error)
    assert np.allclose(whole.stderr, chunked.stderr)


def test_monte_carlo_matches_single_runs(sysid_proper):
    curve = simulator.monte_carlo_mse(sysid_proper, 1.0, 10, 3, 4)
    runs = [
        simulator.lms_run(
            sysid_proper, 1.0, 10, ilms.signals.run_seed(4, r)
        ).sq_error
        for r in range(3)
    ]

    assert np.allclose(curve.mean_sq_error, np.mean(runs, axis=0))
    assert np.allclose(
        curve.stderr, np.std(runs, axis=0, ddof=1) / np.sqrt(3)
    )


def test_mean_weights_approach_wiener(sysid_proper, wiener_proper):
    curve = simulator.monte_carlo_mse(sysid_proper, 0.2, 300, 300, 6)
    deviation = np.abs(curve.mean_final_weights - wiener_proper.w_inf)

    assert np.all(deviation <= 5 * curve.final_weights_stderr + 1e-3)


def test_all_runs_diverge(sysid_proper):
    with pytest.raises(raise_if.AggregateError):
        simulator.monte_carlo_mse(sysid_proper, 50.0, 400, 4, 0)


def test_tail_estimate():
    curve = simulator.MseCurve([4.0, 2.0, 1.0, 3.0], [0.0] * 4, runs=1)
    tail = simulator.tail_estimate(curve, 2)

    assert tail.mean == pytest.approx(2.0)
    assert tail.stderr == pytest.approx(np.std([1.0, 3.0], ddof=1) / 2**0.5)
    assert simulator.tail_estimate(curve, 3).stderr == 0.0
    with pytest.raises(raise_if.StructureError):
        simulator.tail_estimate(curve, 4)


def test_invalid_arguments(sysid_proper):
    with pytest.raises(raise_if.StructureError):
        simulator.lms_run(sysid_proper, 0.0, 10, seed=0)
    with pytest.raises(raise_if.StructureError):
        simulator.monte_carlo_mse(sysid_proper, 1.0, 10, 0)
    with pytest.raises(raise_if.StructureError):
        simulator.lms_run(sysid_proper, 1.0, 10, seed=0, w0=[0, 0])
    with pytest.raises(raise_if.StructureError):
        simulator.MseCurve([1.0, -1.0], [0.0, 0.0], runs=1)
