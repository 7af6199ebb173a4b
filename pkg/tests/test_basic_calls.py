import unittest

import pytest

import improlms as ilms


@pytest.mark.usefixtures("provide_data_to_unittest")
class BasicCallsTest(unittest.TestCase):
    """
    Checks basic calls - calls without specific arguments + without further
    dependencies.
    """

    def test_input_spec_basics(self):
        """
        Call available properties/methods-without-args of ImproperWhiteSpec.
        """
        spec = self.S2.input
        spec.r_uu
        spec.r_vv
        spec.rho_uv
        spec.moments()
        spec.covariance_matrix()
        spec.to_dict()
        repr(spec)

    def test_scenario_basics(self):
        for scenario in (self.S1, self.S2, self.EQ):
            scenario.input
            scenario.noise_var
            scenario.filter_len
            scenario.kind
            scenario.variant
            scenario.to_dict()
            scenario.replace()
            scenario.second_order_stats()
            repr(scenario)

        self.S1.f
        self.S1.g
        self.EQ.channel_taps
        self.EQ.impulse_response
        self.EQ.delay

    def test_stats_basics(self):
        for scenario in (self.S1, self.S2, self.EQ):
            stats = ilms.statistics.stats_of(scenario)
            stats.r
            stats.c
            stats.p
            stats.q
            stats.sigma_d2
            stats.sigma_m2
            stats.filter_len
            stats.eig()
            stats.takagi()
            stats.trace_r()
            stats.augmented_covariance()
            stats.smallest_augmented_eigenvalue()

            wiener = ilms.wiener_solution(stats)
            wiener.w_inf
            wiener.j_min
            wiener.k
            wiener.k_norm2

            ilms.statistics.schur_complement(stats)
            ilms.theory.step_bounds(stats)
            ilms.theory.mean_error_modes(stats, 0.1)

    def test_theory_basics(self):
        stats = ilms.statistics.stats_of(self.S2)
        wiener = ilms.wiener_solution(stats)
        trajectory = ilms.theory.model_trajectory(stats, wiener, 0.5, steps=5)
        trajectory.j
        trajectory.j_ex
        trajectory.vbar
        trajectory.v
        trajectory.variant
        trajectory.j_min
        trajectory.mu
        trajectory.trace_r
        trajectory.k_norm2
        trajectory.diverged
        trajectory.last_finite
        trajectory.tail_mean(0)
        len(trajectory)

        ilms.theory.mean_weight_trajectory(stats, 0.5, steps=5)
        ilms.theory.steady_state_general(stats, wiener, 0.5)
        ilms.theory.misadjustment(stats, wiener, 0.5)
        ilms.theory.case_a_report(stats, wiener, 0.5)
        ilms.theory.case_b_report(stats, wiener, 0.5)

    def test_simulator_basics(self):
        run = ilms.simulator.lms_run(self.EQ, 0.1, 10, seed=0)
        run.sq_error
        run.final_weights
        run.diverged
        run.diverged_at
        len(run)

        curve = ilms.simulator.monte_carlo_mse(self.EQ, 0.1, 10, 3)
        curve.mean_sq_error
        curve.stderr
        curve.runs
        curve.diverged_runs
        curve.mean_final_weights
        curve.final_weights_stderr
        curve.at(3)
        repr(curve)
