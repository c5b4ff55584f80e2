"""Tests for level diagrams and the dimensionless parameters."""

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st
from pydantic import ValidationError

from schemas.levels import CascadeParams, ComplexEnergy, LevelDiagram
from services.level_service import level_service
from utils.exceptions import InvalidDiagramError


class TestToParams:
    """Test conversion of diagrams to (delta, beta, g)."""

    def test_sample_diagram(self, sample_diagram: LevelDiagram):
        """Test the sample diagram maps to delta = 10, beta = 0, g = 2."""
        params = level_service.to_params(sample_diagram)
        assert params.delta == pytest.approx(10.0)
        assert params.beta == pytest.approx(0.0)
        assert params.g == pytest.approx(2.0)

    def test_beta_counts_cross_generation_mismatch(self):
        """Test beta = (E_u - E_0 - E_x - E_y) / 2 gamma."""
        diagram = LevelDiagram(e_u=2003.0, e_x=990.0, e_y=1010.0, e_0=1.0, gamma=0.5, gamma_u=0.25)
        params = level_service.to_params(diagram)
        assert params.beta == pytest.approx((2003.0 - 1.0 - 989.0 - 1009.0) / 1.0)
        assert params.delta == pytest.approx(20.0)
        assert params.g == pytest.approx(0.5)

    @hyp_settings(max_examples=50, deadline=None)
    @given(
        factor=st.floats(min_value=1e-3, max_value=1e3),
        offset=st.floats(min_value=-1e3, max_value=1e3),
    )
    def test_invariant_under_rescaling_and_shift(self, factor: float, offset: float):
        """Test params are unchanged when all energies are scaled or shifted together."""
        diagram = LevelDiagram(e_u=2001.0, e_x=990.0, e_y=1010.0, e_0=0.0, gamma=1.0, gamma_u=2.0)
        reference = level_service.to_params(diagram)
        for other in (diagram.scaled(factor), diagram.shifted(offset)):
            params = level_service.to_params(other)
            assert params.delta == pytest.approx(reference.delta, rel=1e-9, abs=1e-9)
            assert params.beta == pytest.approx(reference.beta, rel=1e-9, abs=1e-6)
            assert params.g == pytest.approx(reference.g, rel=1e-9)


class TestValidate:
    """Test diagram invariants."""

    def test_zero_width_rejected(self, sample_diagram: LevelDiagram):
        """Test a vanishing intermediate width is an invalid diagram."""
        with pytest.raises(InvalidDiagramError, match="gamma must be > 0"):
            level_service.to_params(sample_diagram.model_copy(update={"gamma": 0.0}))

    def test_negative_top_width_rejected(self, sample_diagram: LevelDiagram):
        """Test a negative top-level width is an invalid diagram."""
        with pytest.raises(InvalidDiagramError, match="gamma_u"):
            level_service.validate(sample_diagram.model_copy(update={"gamma_u": -1.0}))

    def test_non_positive_color_rejected(self, sample_diagram: LevelDiagram):
        """Test an intermediate level above the top level is rejected."""
        with pytest.raises(InvalidDiagramError, match="e_u - e_y"):
            level_service.validate(sample_diagram.model_copy(update={"e_y": 2500.0}))

    def test_invalid_diagram_is_value_error(self, sample_diagram: LevelDiagram):
        """Test the domain error is also a ValueError."""
        with pytest.raises(ValueError):
            level_service.validate(sample_diagram.model_copy(update={"e_x": -5.0}))

    def test_params_require_positive_g(self):
        """Test g must be positive."""
        with pytest.raises(ValidationError):
            CascadeParams(delta=0.0, beta=0.0, g=0.0)


class TestComplexEnergies:
    """Test complex energies and photon poles."""

    def test_complex_energies(self, sample_diagram: LevelDiagram):
        """Test Z = E - i * half_width for the three radiating levels."""
        z_u, z_x, z_y = level_service.complex_energies(sample_diagram)
        assert z_u.value == complex(2000.0, -2.0)
        assert z_x.value == complex(990.0, -1.0)
        assert z_y.value == complex(1010.0, -1.0)

    def test_photon_poles_measured_from_ground(self, sample_diagram: LevelDiagram):
        """Test poles are shifted by E_0."""
        shifted = sample_diagram.shifted(7.0)
        assert level_service.photon_poles(shifted) == pytest.approx(level_service.photon_poles(sample_diagram))

    def test_conjugate(self):
        """Test the conjugate energy."""
        z = ComplexEnergy(real_part=3.0, half_width=0.5)
        assert z.conjugate() == complex(3.0, 0.5)
        assert ComplexEnergy.from_complex(z.value) == z


class TestConventions:
    """Test the two readings of beta."""

    def test_sum_detuning(self):
        """Test S0 = beta (kernel) and S0 = 2 beta (level)."""
        params = CascadeParams(delta=1.0, beta=1.5, g=2.0)
        assert level_service.sum_detuning(params, "kernel") == 1.5
        assert level_service.sum_detuning(params, "level") == 3.0

    def test_unknown_convention(self):
        """Test an unknown convention name is rejected."""
        with pytest.raises(ValueError):
            level_service.sum_detuning(CascadeParams(delta=0.0, beta=1.0, g=1.0), "other")

    def test_frame(self):
        """Test the canonical frame places the excitons at -delta and +delta."""
        frame = level_service.frame(CascadeParams(delta=3.0, beta=1.0, g=2.0), "kernel")
        assert frame.z_x == complex(-3.0, -1.0)
        assert frame.z_y == complex(3.0, -1.0)
        assert frame.z_u == complex(1.0, -2.0)
        assert frame.delta == 3.0

    @pytest.mark.parametrize("convention", ["kernel", "level"])
    def test_diagram_for_realizes_kernel_center(self, convention: str):
        """Test the constructed diagram has the requested kernel center."""
        params = CascadeParams(delta=2.0, beta=1.25, g=0.5)
        diagram = level_service.diagram_for(params, gamma=0.5, center=40.0, convention=convention)
        s0 = (diagram.e_u + diagram.e_0 - diagram.e_x - diagram.e_y) / diagram.gamma
        assert s0 == pytest.approx(level_service.sum_detuning(params, convention))
        round_trip = level_service.to_params(diagram)
        assert round_trip.delta == pytest.approx(2.0)
        assert round_trip.g == pytest.approx(0.5)

    def test_diagram_for_level_round_trip(self):
        """Test the level convention round-trips beta."""
        params = CascadeParams(delta=2.0, beta=1.25, g=0.5)
        diagram = level_service.diagram_for(params, gamma=2.0, center=100.0, convention="level")
        assert level_service.to_params(diagram).beta == pytest.approx(1.25)

    def test_color_separation(self, sample_diagram: LevelDiagram):
        """Test the color difference of each channel in units of gamma."""
        assert level_service.color_separation(sample_diagram, "x") == pytest.approx(20.0)
        assert level_service.color_separation(sample_diagram, "y") == pytest.approx(20.0)
