import math
import warnings

import numpy as np
import pytest

from magicforge.bloch import MAGIC_BASIS
from magicforge.densmat import NoiseParams
from magicforge.ideal_map import ON_AXIS_THRESHOLD
from magicforge.noisy_distill import (InvalidRegimeError, NoDistillationError,
                                      analytic_round, apply_pi12_gate,
                                      fidelity_curve, iterate_error,
                                      lambda_phase, noisy_fixed_points,
                                      simulated_gate_fidelity,
                                      simulated_round,
                                      universal_gate_fidelity)

NMR_NOISE = NoiseParams.from_gate_errors(1.3e-4, 4.7e-3)

#: Frozen off-axis bound constants: the off-diagonal magic-basis weight per
#: unit p2, fitted once over eps in [0, 0.5] with margin.
K_OFFDIAG_SIMULATED = 0.02
K_OFFDIAG_ANALYTIC = 0.03


def noiseless_eps_out(eps):
    num = eps ** 5 + 5 * eps ** 2 * (1 - eps) ** 3
    den = num + (1 - eps) ** 5 + 5 * eps ** 3 * (1 - eps) ** 2
    return num / den


class TestAnalyticRound:
    def test_perfect_input_no_noise(self):
        res = analytic_round(0.0, NoiseParams.zero())
        assert res.eps_out == 0.0
        assert res.p_accept == pytest.approx(1 / 6, abs=1e-15)
        assert res.coeffs.c01 == 0.0

    def test_reduces_to_noiseless_recursion(self):
        for eps in (0.05, 0.1, 0.3):
            res = analytic_round(eps, NoiseParams.zero())
            assert res.eps_out == pytest.approx(noiseless_eps_out(eps), abs=1e-14)

    def test_small_parameter_approximation(self):
        # eps_out ~ 5 eps^2 + p1/2 + 13 p2/9 up to higher-order terms
        for eps, p1, p2 in ((0.01, 1e-4, 1e-4), (0.02, 3e-4, 1e-3),
                            (0.005, 0.0, 3e-4), (0.03, 1e-3, 0.0)):
            res = analytic_round(eps, NoiseParams(p1=p1, p2=p2))
            approx = 5 * eps ** 2 + p1 / 2 + 13 * p2 / 9
            budget = 40 * (eps ** 3 + eps * (p1 + p2) + (p1 + p2) ** 2
                           + eps ** 2 * (p1 + p2))
            assert abs(res.eps_out - approx) <= budget

    def test_flags_large_noise(self):
        with pytest.warns(UserWarning):
            analytic_round(0.1, NoiseParams(p1=0.06, p2=0.0))

    def test_invalid_regime_raises(self):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            with pytest.raises(InvalidRegimeError):
                analytic_round(0.0, NoiseParams(p1=0.9, p2=0.0))

    def test_offdiagonal_linear_in_p2_only(self):
        res = analytic_round(0.2, NoiseParams(p1=0.01, p2=0.0))
        assert res.coeffs.c01 == 0.0
        for p2 in (1e-4, 1e-3, 1e-2):
            res = analytic_round(0.2, NoiseParams(p1=0.0, p2=p2))
            assert abs(res.coeffs.c01) <= K_OFFDIAG_ANALYTIC * p2

    def test_rejects_bad_eps(self):
        with pytest.raises(ValueError):
            analytic_round(1.2, NoiseParams.zero())


class TestSimulatedRound:
    def test_exact_agreement_at_zero_noise(self):
        for eps in (0.0, 0.04, 0.11, 0.3):
            sim = simulated_round(eps, NoiseParams.zero())
            ana = analytic_round(eps, NoiseParams.zero())
            assert abs(sim.eps_out - ana.eps_out) < 1e-12
            assert abs(sim.p_accept - ana.p_accept) < 1e-12
            assert sim.axis_deviation < 1e-12

    def test_first_order_agreement_at_benchmark_noise(self):
        p1, p2 = NMR_NOISE.p1, NMR_NOISE.p2
        bound = 10 * (p1 ** 2 + p2 ** 2)
        for eps in np.linspace(0.0, 0.17, 12):
            sim = simulated_round(float(eps), NMR_NOISE)
            ana = analytic_round(float(eps), NMR_NOISE)
            assert abs(sim.eps_out - ana.eps_out) <= bound

    def test_disagreement_scales_quadratically(self):
        ps = np.array([1e-4, 3e-4, 1e-3, 3e-3])
        diffs = []
        for p in ps:
            noise = NoiseParams(p1=float(p), p2=float(p))
            diffs.append(abs(simulated_round(0.1, noise).eps_out
                             - analytic_round(0.1, noise).eps_out))
        slope = np.polyfit(np.log(ps), np.log(diffs), 1)[0]
        assert 1.8 <= slope <= 2.2

    def test_axis_deviation_bounded_by_p2(self):
        for eps in (0.0, 0.1, 0.3):
            for p2 in (1e-4, 1e-3, 5e-3):
                sim = simulated_round(eps, NoiseParams(p1=0.0, p2=p2))
                assert sim.axis_deviation <= K_OFFDIAG_SIMULATED * p2
        # one-qubit noise alone pushes the state off the axis only at
        # second order (measured coefficient ~0.0091 * p1^2)
        for p1 in (1e-3, 4e-3):
            sim = simulated_round(0.1, NoiseParams(p1=p1, p2=0.0))
            assert sim.axis_deviation < 0.05 * p1 ** 2

    def test_monotone_in_noise(self):
        for eps in (0.0, 0.05, 0.1, 0.15):
            base = analytic_round(eps, NoiseParams.zero()).eps_out
            prev = base
            for p in (0.005, 0.01, 0.02):
                cur = analytic_round(eps, NoiseParams(p1=p, p2=0.0)).eps_out
                assert cur > prev - 1e-15
                prev = cur
            prev = base
            for p in (0.005, 0.01, 0.02):
                cur = analytic_round(eps, NoiseParams(p1=0.0, p2=p)).eps_out
                assert cur > prev - 1e-15
                prev = cur


class TestNoisyFixedPoints:
    def test_benchmark_noise_threshold_and_ceiling(self):
        fp = noisy_fixed_points(NMR_NOISE)
        assert fp.threshold_f == pytest.approx(0.842, abs=1e-3)
        assert fp.f_ceiling == pytest.approx(0.9895, abs=1e-3)
        assert fp.epsilon_star == pytest.approx(1 - fp.f_ceiling, abs=1e-15)

    def test_zero_noise_limits(self):
        fp = noisy_fixed_points(NoiseParams.zero())
        assert fp.epsilon_star == 0.0
        assert fp.f_ceiling == 1.0
        assert abs(fp.threshold_f - ON_AXIS_THRESHOLD) < 1e-9

    def test_small_noise_ceiling_linear_in_noise(self):
        # linear to 20% while the predicted floor stays <= 0.01; beyond that
        # the 5*eps^2 feedback makes the deviation grow (measured 38.6%
        # at p1 = p2 = 0.01)
        for p1 in (2e-3, 5e-3, 1e-2):
            for p2 in (2e-3, 5e-3, 1e-2):
                approx = p1 / 2 + 13 * p2 / 9
                if approx > 0.01:
                    continue
                fp = noisy_fixed_points(NoiseParams(p1=p1, p2=p2))
                assert abs(fp.epsilon_star - approx) <= 0.2 * approx

    def test_too_much_noise_raises(self):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            with pytest.raises(NoDistillationError):
                noisy_fixed_points(NoiseParams(p1=0.06, p2=0.06))

    def test_iteration_converges_below_threshold_and_diverges_above(self):
        fp = noisy_fixed_points(NMR_NOISE)
        eps_th = 1 - fp.threshold_f
        below = iterate_error(eps_th - 0.02, NMR_NOISE, 60)
        assert abs(below[-1] - fp.epsilon_star) < 1e-9
        above = iterate_error(eps_th + 0.02, NMR_NOISE, 60)
        assert above[-1] > 0.4


class TestFidelityCurve:
    def test_orderings_across_noise_settings(self):
        grid = np.linspace(0.55, 0.999, 40)
        noiseless = fidelity_curve(NoiseParams.zero(), grid)
        both_small = fidelity_curve(NoiseParams.from_gate_errors(1.3e-4, 1.3e-4), grid)
        benchmark = fidelity_curve(NMR_NOISE, grid)
        both_large = fidelity_curve(NoiseParams.from_gate_errors(4.7e-3, 4.7e-3), grid)
        for noisy in (both_small, benchmark, both_large):
            assert np.all(noiseless.f_out_one_round >= noisy.f_out_one_round - 1e-12)
        # nearly coincides with noiseless when both errors are ~1e-4
        assert np.abs(noiseless.f_out_one_round
                      - both_small.f_out_one_round).max() < 1e-3
        # raising the one-qubit error at fixed two-qubit error lowers the curve
        assert np.all(both_large.f_out_one_round
                      <= benchmark.f_out_one_round + 1e-12)

    def test_limit_column_reaches_ceiling(self):
        fp = noisy_fixed_points(NMR_NOISE)
        curve = fidelity_curve(NMR_NOISE, [0.93])
        assert curve.f_out_limit[0] == pytest.approx(fp.f_ceiling, abs=1e-9)

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            fidelity_curve(NoiseParams.zero(), [0.4])


class TestUniversalGateFidelity:
    def test_perfect_resources(self):
        for a in (0.0, 0.3, 1 / math.sqrt(2), 1.0):
            assert universal_gate_fidelity(a, 0.0) == 1.0

    def test_zero_amplitude(self):
        assert universal_gate_fidelity(0.0, 0.05) == 1.0

    def test_lower_bound_on_dense_grid(self):
        for a in np.linspace(0, 1, 50):
            for ep in np.linspace(0, 0.45, 50):
                assert universal_gate_fidelity(float(a), float(ep)) >= 1 - ep - 1e-12
                assert universal_gate_fidelity(float(a), float(ep),
                                               corrected=True) >= 1 - ep - 1e-12

    def test_printed_and_corrected_variants_differ(self):
        a, ep = 0.3, 0.02
        printed = universal_gate_fidelity(a, ep)
        corrected = universal_gate_fidelity(a, ep, corrected=True)
        assert printed != corrected
        assert printed == pytest.approx(
            1 - 12 * ep * a ** 2 * (1 - a) ** 2 / (3 + (1 - 2 * ep) ** 2))
        assert corrected == pytest.approx(
            1 - 12 * ep * a ** 2 * (1 - a ** 2) / (3 + (1 - 2 * ep) ** 2))

    def test_validation(self):
        with pytest.raises(ValueError):
            universal_gate_fidelity(1.3, 0.0)
        with pytest.raises(ValueError):
            universal_gate_fidelity(0.5, 0.7)


class TestPiGateCircuit:
    def test_ideal_resources_realize_exact_rotation(self):
        rng = np.random.default_rng(61)
        for _ in range(4):
            psi = rng.normal(size=2) + 1j * rng.normal(size=2)
            psi = psi / np.linalg.norm(psi)
            res = apply_pi12_gate(psi, MAGIC_BASIS.t0)
            for br in res.branches:
                target = lambda_phase(br.gate_sign * math.pi / 12) @ psi
                fid = float((target.conj() @ br.state @ target).real)
                assert fid == pytest.approx(1.0, abs=1e-12)

    def test_ground_state_input(self):
        res = apply_pi12_gate(np.array([1.0, 0.0]), MAGIC_BASIS.t0)
        target = lambda_phase(math.pi / 12) @ np.array([1.0, 0.0])
        fid = float((target.conj() @ res.out_state @ target).real)
        assert fid == pytest.approx(1.0, abs=1e-12)

    def test_acceptance_probability_ideal(self):
        res = apply_pi12_gate(np.array([0.6, 0.8]), MAGIC_BASIS.t0)
        assert res.p_accept == pytest.approx(2 / 3, abs=1e-12)
        probs = sorted(br.probability for br in res.branches)
        assert probs == pytest.approx([0.5, 0.5], abs=1e-12)

    def test_noisy_resources_keep_lower_bound(self):
        for ep in (0.01, 0.05, 0.2):
            assert simulated_gate_fidelity(0.7, ep) >= 1 - ep - 1e-12

    def test_simulation_matches_corrected_formula(self):
        # adjudicates the closed form: the circuit reproduces the
        # (1 - |a|^2) variant, not the (1 - |a|)^2 one
        for a in (0.0, 0.25, 0.5, 1 / math.sqrt(2), 0.9, 1.0):
            for ep in (0.01, 0.05, 0.2):
                sim = simulated_gate_fidelity(a, ep)
                assert abs(sim - universal_gate_fidelity(a, ep, corrected=True)) < 1e-12

    def test_branch_fidelities_agree(self):
        psi = np.array([0.6, 0.8])
        magic = 0.97 * MAGIC_BASIS.t0 + 0.03 * MAGIC_BASIS.t1
        res = apply_pi12_gate(psi, magic)
        fids = []
        for br in res.branches:
            target = lambda_phase(br.gate_sign * math.pi / 12) @ psi
            fids.append(float((target.conj() @ br.state @ target).real))
        assert fids[0] == pytest.approx(fids[1], abs=1e-12)

    def test_worst_case_amplitude_matches_corrected_variant(self):
        amps = np.linspace(0.01, 0.99, 197)
        sims = [simulated_gate_fidelity(float(a), 0.05) for a in amps]
        worst = amps[int(np.argmin(sims))]
        # |a|^2 (1 - |a|^2) peaks at 1/sqrt(2); the printed variant would
        # peak at 1/2 instead
        assert abs(worst - 1 / math.sqrt(2)) < 0.01

    def test_rejects_zero_state(self):
        with pytest.raises(ValueError):
            apply_pi12_gate(np.zeros(2), MAGIC_BASIS.t0)
