"""Tests for the overlap integrals and the negativity gamma."""

import cmath
import itertools
import math
import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from schemas.gates import DelayGate, GateSpec, IdentityGate, LinearPhaseGate
from schemas.levels import CascadeParams
from schemas.overlap import QuadratureSpec
from services.analytic_service import analytic_service
from services.gate_service import gate_service
from services.level_service import level_service
from services.overlap_service import overlap_service

QUAD = QuadratureSpec(abs_tol=1e-7)


def optimal_gate(params: CascadeParams, convention=None):
    return gate_service.build_gate(GateSpec(kind="optimal"), level_service.frame(params, convention))


class TestReducedForm:
    """Test F(s) and the 1D reduction of the optimal-gate overlap."""

    def test_f_at_origin(self):
        """Test F(0) = pi."""
        assert overlap_service.f_direct(0.0) == pytest.approx(math.pi, abs=1e-10)

    @pytest.mark.parametrize("s", [0.5, 3.0, 20.0, 200.0])
    def test_table_matches_direct(self, s):
        """Test the cached table against direct quadrature."""
        assert overlap_service.f_table(s) == pytest.approx(overlap_service.f_direct(s), rel=1e-6)
        assert overlap_service.f_table(-s) == overlap_service.f_table(s)

    def test_f_decreases(self):
        """Test F falls off with |s|."""
        values = [overlap_service.f_direct(s) for s in (0.0, 1.0, 5.0, 50.0)]
        assert values == sorted(values, reverse=True)

    def test_gamma_opt_reference_values(self, sample_gamma_opt):
        """Test the optimal-gate gamma at beta = 0 for several width ratios."""
        for g, expected in sample_gamma_opt.items():
            params = CascadeParams(delta=0.0, beta=0.0, g=g)
            y1 = overlap_service.y1_reduced(params, QUAD, convention="kernel")
            assert y1.converged
            assert abs(y1.value) / 4.0 == pytest.approx(expected, abs=2e-6)

    def test_kernel_center_profile(self, sample_kernel_profile):
        """Test the optimal-gate gamma at g = 2 as the kernel moves off resonance."""
        for s0, expected in sample_kernel_profile.items():
            params = CascadeParams(delta=0.0, beta=s0, g=2.0)
            y1 = overlap_service.y1_reduced(params, QUAD, convention="kernel")
            assert abs(y1.value) / 4.0 == pytest.approx(expected, abs=2e-6)

    def test_reduced_form_even_in_center(self):
        """Test the reduction depends on |S0| only."""
        plus = overlap_service.y1_reduced(CascadeParams(delta=0.0, beta=3.0, g=1.0), QUAD, convention="kernel")
        minus = overlap_service.y1_reduced(CascadeParams(delta=0.0, beta=-3.0, g=1.0), QUAD, convention="kernel")
        assert plus.value == pytest.approx(minus.value, abs=1e-9)

    def test_level_convention_doubles_center(self):
        """Test beta under the level convention places the kernel at 2*beta."""
        level = overlap_service.y1_reduced(CascadeParams(delta=0.0, beta=1.0, g=1.0), QUAD, convention="level")
        kernel = overlap_service.y1_reduced(CascadeParams(delta=0.0, beta=2.0, g=1.0), QUAD, convention="kernel")
        assert level.value == pytest.approx(kernel.value, abs=1e-12)

    def test_y2_bound(self):
        """Test the y2 bound is 2 at delta = 0 and dominates the ungated |y2|."""
        assert overlap_service.y2_bound(0.0) == pytest.approx(2.0, abs=1e-8)
        for delta in (0.5, 2.0, 10.0):
            assert overlap_service.y2_bound(delta) >= abs(analytic_service.y2_raw(delta).value)


class TestLeadingIntegrals:
    """Test y1 and y2 by 2D quadrature."""

    @pytest.mark.parametrize("delta,beta,g", [(0.0, 0.0, 2.0), (2.0, 1.0, 0.5), (10.0, -3.0, 1.0)])
    def test_ungated_state(self, delta, beta, g):
        """Test y1 = 0 and y2 = -2i/(delta - i) without a gate."""
        params = CascadeParams(delta=delta, beta=beta, g=g)
        result = overlap_service.gamma_leading(params, IdentityGate(), QUAD)
        assert result.converged
        assert abs(result.y1) < 1e-5
        assert abs(result.y2 - analytic_service.y2_raw(delta).value) < 1e-5
        assert result.gamma == pytest.approx(analytic_service.gamma_raw(delta).value, abs=1e-5)

    def test_optimal_gate_matches_reduction(self):
        """Test the 2D optimal-gate overlap equals minus the 1D reduction, for any delta."""
        params = CascadeParams(delta=3.0, beta=2.0, g=1.0)
        two_d = overlap_service.y1_integral(params, optimal_gate(params), QUAD)
        one_d = overlap_service.y1_reduced(params, QUAD)
        assert two_d.converged
        assert two_d.value == pytest.approx(-one_d.value, abs=1e-5)

    def test_headline_value(self, sample_params):
        """Test gamma of the optimal gate at delta = 10, beta = 0, g = 2 with y2 dropped."""
        result = overlap_service.gamma_leading(
            sample_params, optimal_gate(sample_params, "kernel"), QUAD, drop_y2=True, convention="kernel"
        )
        assert result.gamma == pytest.approx(0.371227, abs=1e-5)
        assert result.y2 == 0
        assert result.y2_dropped
        assert result.error_estimate >= overlap_service.y2_bound(10.0) / 4.0

    def test_optimal_gate_with_y2(self, sample_params):
        """Test keeping y2 at delta = 10 moves gamma by less than the y2 bound."""
        w = optimal_gate(sample_params)
        kept = overlap_service.gamma_leading(sample_params, w, QUAD)
        dropped = overlap_service.gamma_leading(sample_params, w, QUAD, drop_y2=True)
        assert abs(kept.gamma - dropped.gamma) <= overlap_service.y2_bound(10.0) / 4.0

    @hypothesis_settings(max_examples=5, deadline=None)
    @given(phase=st.floats(min_value=0.0, max_value=2.0 * math.pi))
    def test_constant_phase_invariance(self, phase):
        """Test multiplying W by a constant phase leaves gamma unchanged."""
        params = CascadeParams(delta=1.0, beta=0.5, g=1.5)
        w = optimal_gate(params)
        base = overlap_service.gamma_leading(params, w, QUAD)
        shifted = overlap_service.gamma_leading(params, gate_service.with_phase(w, phase), QUAD)
        assert shifted.gamma == pytest.approx(base.gamma, abs=1e-8)
        assert shifted.y1 == pytest.approx(base.y1 * cmath.exp(1j * phase), abs=1e-8)

    def test_symmetrize_constant_gate(self):
        """Test symmetrizing an exchange-symmetric gate changes nothing."""
        params = CascadeParams(delta=1.0, beta=0.0, g=1.0)
        w = LinearPhaseGate(phase0=0.7)
        plain = overlap_service.gamma_leading(params, w, QUAD)
        symmetric = overlap_service.gamma_leading(params, w, QUAD, symmetrize=True)
        assert symmetric.y1 == pytest.approx(plain.y1, abs=1e-9)
        assert symmetric.y2 == pytest.approx(plain.y2, abs=1e-9)

    def test_symmetrized_optimal_gate_is_not_better(self):
        """Test symmetrizing W_opt cannot raise |y1| above its phase-matched value."""
        params = CascadeParams(delta=0.5, beta=0.0, g=1.0)
        w = optimal_gate(params)
        plain = overlap_service.y1_integral(params, w, QUAD)
        symmetric = overlap_service.y1_integral(params, w, QUAD, symmetrize=True)
        assert abs(symmetric.value) <= abs(plain.value) + 1e-6

    def test_physical_overlap_matches_canonical(self):
        """Test the physical-energy integral against the canonical frame under the level convention."""
        params = CascadeParams(delta=2.0, beta=1.0, g=1.5)
        diagram = level_service.diagram_for(params, gamma=0.5, center=40.0, convention="level")
        physical = overlap_service.physical_y1(
            diagram, gate_service.build_physical_gate(GateSpec(kind="optimal"), diagram), QUAD
        )
        canonical = overlap_service.y1_integral(params, optimal_gate(params, "level"), QUAD, convention="level")
        assert physical.value == pytest.approx(canonical.value, abs=1e-5)

    @pytest.mark.slow
    @pytest.mark.parametrize("tau1,tau2,s0,g", [(1.0, 1.0, 0.0, 2.0), (0.5, 0.2, 1.0, 1.0)])
    def test_delay_gate_matches_closed_form(self, tau1, tau2, s0, g):
        """Test the oscillatory delay-gate quadrature against the closed form at delta = 0."""
        params = CascadeParams(delta=0.0, beta=s0, g=g)
        numeric = overlap_service.y1_integral(
            params, DelayGate(tau1=tau1, tau2=tau2), QuadratureSpec(abs_tol=1e-6), convention="kernel"
        )
        exact = analytic_service.y1_delay(tau1, tau2, s0, g).value
        assert abs(numeric.value - exact) < 1e-3

    @pytest.mark.slow
    def test_delay_gate_phase_off_resonance(self):
        """Test the delay gate picks up exp(-i (tau1 + tau2) delta) away from degeneracy."""
        params = CascadeParams(delta=1.0, beta=1.0, g=1.0)
        numeric = overlap_service.y1_integral(
            params, DelayGate(tau1=0.5, tau2=0.2), QuadratureSpec(abs_tol=1e-6), convention="kernel"
        )
        exact = cmath.exp(-0.7j) * analytic_service.y1_delay(0.5, 0.2, 1.0, 1.0).value
        assert abs(numeric.value - exact) < 1e-3


class TestParameterGrids:
    """Test closed forms and identities across parameter grids."""

    @pytest.mark.parametrize("delta", [0.0, 0.5, 1.0, 2.0, 5.0, 10.0])
    def test_raw_state_independent_of_beta_and_g(self, delta):
        """Test the ungated gamma is 1/(2 sqrt(delta^2 + 1)) for every beta and g, with y1 = 0."""
        expected = analytic_service.gamma_raw(delta).value
        gammas = []
        for beta, g in itertools.product((0.0, 1.0, 5.0), (1.0, 2.0)):
            result = overlap_service.gamma_leading(CascadeParams(delta=delta, beta=beta, g=g), IdentityGate(), QUAD)
            assert abs(result.y1) < 1e-5
            assert abs(result.gamma - expected) < 1e-3
            gammas.append(result.gamma)
        assert max(gammas) - min(gammas) < 1e-3

    @pytest.mark.slow
    def test_reduction_on_beta_g_grid(self):
        """Test the 2D optimal-gate overlap against the 1D reduction on a 5x5 (beta, g) grid."""
        for beta, g in itertools.product(np.linspace(0.0, 4.0, 5), np.linspace(0.5, 4.0, 5)):
            params = CascadeParams(delta=0.0, beta=float(beta), g=float(g))
            two_d = overlap_service.y1_integral(params, optimal_gate(params), QUAD)
            one_d = overlap_service.y1_reduced(params, QUAD)
            assert abs(two_d.value + one_d.value) < 1e-4

    def test_optimal_gamma_nonincreasing_in_beta(self):
        """Test the optimal-gate gamma at g = 2 is even in beta and falls off from beta = 0."""
        betas = np.linspace(0.0, 8.0, 17)
        gamma = []
        for beta in betas:
            plus = overlap_service.y1_reduced(CascadeParams(delta=0.0, beta=float(beta), g=2.0), QUAD)
            minus = overlap_service.y1_reduced(CascadeParams(delta=0.0, beta=-float(beta), g=2.0), QUAD)
            assert abs(plus.value - minus.value) < 1e-4
            gamma.append(abs(plus.value) / 4.0)
        assert gamma[0] == pytest.approx(0.371227, abs=1e-5)
        assert all(a >= b for a, b in zip(gamma, gamma[1:]))

    @pytest.mark.parametrize("gate", ["identity", "optimal"])
    def test_halving_tolerance_stays_within_error(self, gate):
        """Test halving abs_tol moves gamma by less than the coarse error estimate."""
        params = CascadeParams(delta=2.0, beta=0.5, g=1.5)
        w = gate_service.build_gate(GateSpec(kind=gate), level_service.frame(params))
        coarse = overlap_service.gamma_leading(params, w, QuadratureSpec(abs_tol=1e-5))
        fine = overlap_service.gamma_leading(params, w, QuadratureSpec(abs_tol=5e-6))
        assert coarse.converged and fine.converged
        assert abs(fine.gamma - coarse.gamma) <= coarse.error_estimate


@pytest.mark.slow
class TestFullPipeline:
    """Test gamma of a physical diagram with numerical norms."""

    def test_full_optimal_gate(self, sample_diagram):
        """Test the full optimal-gate gamma at delta = 10 stays within 0.01 of the leading value with y2."""
        w = gate_service.build_physical_gate(GateSpec(kind="optimal"), sample_diagram)
        result = overlap_service.gamma_full(sample_diagram, w, QuadratureSpec(abs_tol=1e-6))
        params = level_service.to_params(sample_diagram)
        leading = overlap_service.gamma_leading(params, optimal_gate(params, "level"), QUAD, convention="level")
        assert result.mode == "full"
        assert result.norm_x == pytest.approx(2.0, abs=1e-4)
        assert result.norm_y == pytest.approx(2.0, abs=1e-4)
        assert result.gamma == pytest.approx(0.35971, abs=1e-3)
        assert abs(result.gamma - leading.gamma) < 0.01

    def test_full_ungated_matches_raw(self):
        """Test the ungated full pipeline reproduces 1/(2 sqrt(delta^2 + 1))."""
        params = CascadeParams(delta=1.0, beta=0.0, g=2.0)
        diagram = level_service.diagram_for(params, gamma=1.0, center=200.0)
        result = overlap_service.gamma_full(diagram, IdentityGate(), QuadratureSpec(abs_tol=1e-6))
        assert result.gamma == pytest.approx(analytic_service.gamma_raw(1.0).value, abs=1e-3)
