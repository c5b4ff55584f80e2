"""Service converting physical level diagrams to dimensionless cascade parameters."""

from typing import Literal, Optional, Tuple
from loguru import logger

from config.settings import settings
from schemas.levels import CascadeParams, ComplexEnergy, DimensionlessFrame, LevelDiagram
from utils.exceptions import InvalidDiagramError

BetaConvention = Literal["kernel", "level"]


class LevelService:
    """Validates level diagrams and derives (delta, beta, g) and complex energies."""

    def validate(self, d: LevelDiagram) -> LevelDiagram:
        """
        Check the diagram invariants.

        Args:
            d: Level diagram

        Returns:
            The same diagram

        Raises:
            InvalidDiagramError: If a width is not positive or a color is not positive
        """
        problems = []
        if not d.gamma > 0:
            problems.append(f"gamma must be > 0 (got {d.gamma})")
        if not d.gamma_u > 0:
            problems.append(f"gamma_u must be > 0 (got {d.gamma_u})")
        colors = {
            "e_u - e_x": d.e_u - d.e_x,
            "e_x - e_0": d.e_x - d.e_0,
            "e_u - e_y": d.e_u - d.e_y,
            "e_y - e_0": d.e_y - d.e_0,
        }
        for name, color in colors.items():
            if not color > 0:
                problems.append(f"emitted color {name} must be > 0 (got {color})")
        if problems:
            raise InvalidDiagramError("invalid level diagram: " + "; ".join(problems))
        return d

    def to_params(self, d: LevelDiagram) -> CascadeParams:
        """
        Dimensionless detuning, color mismatch and width ratio of a diagram.

        Args:
            d: Level diagram

        Returns:
            CascadeParams with delta = (e_y - e_x)/2gamma,
            beta = (e_u - e_0 - e_x - e_y)/2gamma and g = gamma_u/gamma
        """
        self.validate(d)
        two_gamma = 2.0 * d.gamma
        params = CascadeParams(
            delta=(d.e_y - d.e_x) / two_gamma,
            beta=((d.e_u - d.e_0) - (d.e_x - d.e_0) - (d.e_y - d.e_0)) / two_gamma,
            g=d.gamma_u / d.gamma,
        )
        logger.debug(f"Diagram converted to params: {params}")
        return params

    def complex_energies(self, d: LevelDiagram) -> Tuple[ComplexEnergy, ComplexEnergy, ComplexEnergy]:
        """Return (Z_u, Z_x, Z_y) with Z = E - i*half_width."""
        self.validate(d)
        return (
            ComplexEnergy(real_part=d.e_u, half_width=d.gamma_u),
            ComplexEnergy(real_part=d.e_x, half_width=d.gamma),
            ComplexEnergy(real_part=d.e_y, half_width=d.gamma),
        )

    def photon_poles(self, d: LevelDiagram) -> Tuple[complex, complex, complex]:
        """Complex energies measured from the ground level (photon-energy frame)."""
        z_u, z_x, z_y = self.complex_energies(d)
        return z_u.value - d.e_0, z_x.value - d.e_0, z_y.value - d.e_0

    def sum_detuning(self, params: CascadeParams, convention: Optional[BetaConvention] = None) -> float:
        """
        Center S0 of the pair kernel in the canonical frame.

        Args:
            params: Cascade parameters
            convention: "kernel" reads the kernel as |s - beta - ig|; "level"
                follows the diagram and places it at 2*beta

        Returns:
            S0 in units of gamma
        """
        convention = convention or settings.beta_convention
        if convention == "kernel":
            return params.beta
        if convention == "level":
            return 2.0 * params.beta
        raise ValueError(f"unknown beta convention: {convention}")

    def frame(self, params: CascadeParams, convention: Optional[BetaConvention] = None) -> DimensionlessFrame:
        """Canonical frame with gamma = 1, e_x = -delta, e_y = +delta."""
        return DimensionlessFrame(
            e_x=-params.delta,
            e_y=params.delta,
            s0=self.sum_detuning(params, convention),
            g=params.g,
        )

    def diagram_for(
        self,
        params: CascadeParams,
        gamma: float = 1.0,
        center: float = 1.0,
        e_0: float = 0.0,
        convention: Optional[BetaConvention] = None,
    ) -> LevelDiagram:
        """
        A physical diagram realizing the given parameters.

        Args:
            params: Target parameters
            gamma: Intermediate half-width
            center: Mean exciton energy above e_0
            e_0: Ground level energy
            convention: Convention under which params.beta is read

        Returns:
            LevelDiagram whose sum detuning matches the requested convention
        """
        s0 = self.sum_detuning(params, convention)
        e_x = e_0 + center - params.delta * gamma
        e_y = e_0 + center + params.delta * gamma
        diagram = LevelDiagram(
            e_u=e_x + e_y - e_0 + s0 * gamma,
            e_x=e_x,
            e_y=e_y,
            e_0=e_0,
            gamma=gamma,
            gamma_u=params.g * gamma,
        )
        return self.validate(diagram)

    def color_separation(self, d: LevelDiagram, channel: str) -> float:
        """|(e_u - e_j) - (e_j - e_0)| in units of gamma."""
        e_j = d.e_x if channel == "x" else d.e_y
        return abs((d.e_u - e_j) - (e_j - d.e_0)) / d.gamma


# Global level service instance
level_service = LevelService()
