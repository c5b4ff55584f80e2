"""Pytest configuration and fixtures for testing."""

import pytest
from pathlib import Path

from schemas.levels import CascadeParams, LevelDiagram
from schemas.overlap import QuadratureSpec
from services.level_service import level_service
from utils.log_setup import configure_logging


@pytest.fixture(scope="session", autouse=True)
def quiet_logging():
    """Keep test output readable; warnings and errors still reach stderr."""
    configure_logging("WARNING")


@pytest.fixture
def sample_params() -> CascadeParams:
    """Large-detuning operating point used by the sweeps and the optimizer."""
    return CascadeParams(delta=10.0, beta=0.0, g=2.0)


@pytest.fixture
def sample_diagram() -> LevelDiagram:
    """Quantum-dot-like diagram: colors near 1000 gamma, detuning 10, g = 2."""
    return LevelDiagram(e_u=2000.0, e_x=990.0, e_y=1010.0, e_0=0.0, gamma=1.0, gamma_u=2.0)


@pytest.fixture
def sample_quad() -> QuadratureSpec:
    """Tight quadrature for non-oscillatory integrals."""
    return QuadratureSpec(abs_tol=1e-7)


@pytest.fixture
def sample_fast_quad() -> QuadratureSpec:
    """Loose quadrature for oscillatory gates and optimizer runs."""
    return QuadratureSpec(abs_tol=1e-6, truncation_factor=20.0)


@pytest.fixture
def sample_gamma_opt():
    """Optimal-gate gamma at beta = 0 with y2 dropped, by width ratio g."""
    return {
        0.01: 0.4990059,
        0.1: 0.4901721,
        0.5: 0.4559736,
        1.0: 0.4217974,
        1.5: 0.394186,
        2.0: 0.371227,
        4.0: 0.3070039,
    }


@pytest.fixture
def sample_kernel_profile():
    """Optimal-gate gamma at g = 2 by kernel center S0."""
    return {
        0.5: 0.3695331,
        1.0: 0.3646304,
        2.0: 0.3473065,
        4.0: 0.3002295,
        8.0: 0.221689,
        12.0: 0.173661,
        20.0: 0.121970,
    }


@pytest.fixture
def sample_config_text() -> str:
    """Complete INI run configuration."""
    return (
        "[params]\n"
        "delta = 10\n"
        "beta = 0\n"
        "g = 2\n"
        "\n"
        "[gate]\n"
        "gate = \"optimal\"\n"
        "\n"
        "[quadrature]\n"
        "abs_tol = 1e-6\n"
        "K = 400\n"
        "\n"
        "[sweep]\n"
        "range = -6 6\n"
        "points = 5\n"
        "drop_y2 = true\n"
        "\n"
        "[output]\n"
        "format = json\n"
    )


@pytest.fixture
def sample_config_file(tmp_path: Path, sample_config_text: str) -> Path:
    """The sample configuration written to a temporary file."""
    path = tmp_path / "run.ini"
    path.write_text(sample_config_text, encoding="utf-8")
    return path


@pytest.fixture
def sample_ladder():
    """Diagrams with the same (delta, beta, g) and growing colors, in units of gamma."""
    params = CascadeParams(delta=1.0, beta=0.0, g=2.0)
    return [level_service.diagram_for(params, gamma=1.0, center=center) for center in (20.0, 80.0, 320.0)]
