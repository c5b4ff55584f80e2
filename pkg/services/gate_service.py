"""Service evaluating, composing and building spectral phase gates."""

import math
from typing import List, Optional, Tuple, Union
import numpy as np
from loguru import logger

from schemas.amplitude import WavevectorPair
from schemas.gates import (
    ChannelUnitary,
    CustomProfileGate,
    DelayGate,
    DelayGeometry,
    GateSpec,
    IdentityGate,
    LinearPhaseGate,
    OptimalGate,
    PhaseGate,
    SlotPhase,
)
from schemas.levels import ComplexEnergy, DimensionlessFrame, LevelDiagram
from services.level_service import level_service

ArrayLike = Union[float, np.ndarray]
TWO_PI = 2.0 * math.pi


def _slot_phase(slot: SlotPhase, k: np.ndarray) -> np.ndarray:
    phase = slot.offset + slot.slope * k
    if slot.tabulated:
        phase = phase + np.interp(k, slot.knots, slot.values)
    return phase


def _slot_difference(minuend: SlotPhase, subtrahend: SlotPhase) -> SlotPhase:
    """Exact phase difference of two slots; tables are differenced on the union of knots."""
    knots = np.union1d(np.asarray(minuend.knots, dtype=float), np.asarray(subtrahend.knots, dtype=float))
    values: Tuple[float, ...] = ()
    if knots.size:
        ahead = np.interp(knots, minuend.knots, minuend.values) if minuend.tabulated else np.zeros_like(knots)
        behind = np.interp(knots, subtrahend.knots, subtrahend.values) if subtrahend.tabulated else np.zeros_like(knots)
        values = tuple(float(v) for v in ahead - behind)
    return SlotPhase(
        slope=minuend.slope - subtrahend.slope,
        offset=minuend.offset - subtrahend.offset,
        knots=tuple(float(k) for k in knots),
        values=values,
    )


class GateService:
    """Evaluates unit-modulus gates W(k1, k2) and builds them from configs and geometry."""

    def eval_gate(
        self,
        w: PhaseGate,
        k1: Union[ArrayLike, WavevectorPair],
        k2: Optional[ArrayLike] = None,
    ) -> ArrayLike:
        """
        Evaluate the gate phase factor.

        Args:
            w: Gate
            k1: First photon energy, or a WavevectorPair
            k2: Second photon energy when k1 is not a pair

        Returns:
            Complex value(s) of unit modulus
        """
        if isinstance(k1, WavevectorPair):
            k1, k2 = k1.k1, k1.k2
        k1 = np.asarray(k1, dtype=float)
        k2 = np.asarray(k2, dtype=float)

        if isinstance(w, IdentityGate):
            value = np.ones(np.broadcast(k1, k2).shape, dtype=complex)
        elif isinstance(w, OptimalGate):
            product = (k1 - w.z_x.conjugate()) * (k2 - w.z_y.value)
            value = -np.exp(1j * w.phase0) * product / np.abs(product)
        elif isinstance(w, DelayGate):
            value = np.exp(1j * (w.phase0 + w.tau1 * k1 - w.tau2 * k2))
        elif isinstance(w, LinearPhaseGate):
            value = np.exp(1j * (w.phase0 + w.slope1 * k1 + w.slope2 * k2))
        elif isinstance(w, CustomProfileGate):
            value = np.exp(1j * (_slot_phase(w.slot1, k1) + _slot_phase(w.slot2, k2)))
        else:
            raise TypeError(f"unsupported gate: {type(w).__name__}")
        return complex(value) if np.ndim(value) == 0 else value

    def eval_symmetrized(self, w: PhaseGate, k1: ArrayLike, k2: ArrayLike) -> ArrayLike:
        """(W(k1, k2) + W(k2, k1)) / 2."""
        return 0.5 * (self.eval_gate(w, k1, k2) + self.eval_gate(w, k2, k1))

    def phase_rates(self, w: PhaseGate) -> Tuple[float, float]:
        """Asymptotic phase rates |d arg W / dk| per photon slot."""
        if isinstance(w, DelayGate):
            return abs(w.tau1), abs(w.tau2)
        if isinstance(w, LinearPhaseGate):
            return abs(w.slope1), abs(w.slope2)
        if isinstance(w, CustomProfileGate):
            return abs(w.slot1.slope), abs(w.slot2.slope)
        return 0.0, 0.0

    def with_phase(self, w: PhaseGate, phase: float) -> PhaseGate:
        """The same gate multiplied by exp(i*phase)."""
        if isinstance(w, (OptimalGate, DelayGate, LinearPhaseGate)):
            return w.model_copy(update={"phase0": w.phase0 + phase})
        if isinstance(w, CustomProfileGate):
            slot1 = w.slot1.model_copy(update={"offset": w.slot1.offset + phase})
            return w.model_copy(update={"slot1": slot1})
        if isinstance(w, IdentityGate):
            return LinearPhaseGate(phase0=phase)
        raise TypeError(f"unsupported gate: {type(w).__name__}")

    def arg_wopt_profile(
        self,
        z_x: ComplexEnergy,
        z_y: ComplexEnergy,
        k1_fixed: float,
        k2_grid: ArrayLike,
    ) -> List[Tuple[float, float]]:
        """
        Continuous argument of W_opt along k2 at fixed k1.

        Args:
            z_x: Complex energy of the x exciton
            z_y: Complex energy of the y exciton
            k1_fixed: First photon energy
            k2_grid: Second photon energies

        Returns:
            List of (kappa2, phase) with kappa2 = (k2 - E_y)/gamma_y; the branch
            is unwrapped along the grid and anchored in (0, 2*pi] at the point
            nearest resonance
        """
        k2 = np.asarray(k2_grid, dtype=float)
        if k2.ndim != 1 or k2.size == 0 or not np.all(np.isfinite(k2)):
            raise ValueError("k2_grid must be a non-empty finite 1D grid")
        w = OptimalGate(z_x=z_x, z_y=z_y)
        kappa2 = (k2 - z_y.real_part) / z_y.half_width
        phase = np.unwrap(np.angle(self.eval_gate(w, np.full_like(k2, k1_fixed), k2)))

        anchor = int(np.argmin(np.abs(kappa2)))
        phase = phase - TWO_PI * math.ceil(phase[anchor] / TWO_PI - 1.0)
        return [(float(k), float(p)) for k, p in zip(kappa2, phase)]

    def delay_gate_from_geometry(
        self,
        geo: DelayGeometry,
        e_x: float,
        e_y: float,
        anchored: bool = False,
    ) -> DelayGate:
        """
        Delay gate W = exp(i k1/gamma) exp(-i k2/gamma) of the path geometry.

        Args:
            geo: Common path length and the half-width setting the delay
            e_x: Energy of the x exciton
            e_y: Energy of the y exciton
            anchored: Add the constant pi + (e_y - e_x)/gamma so the gate equals
                W_opt = -1 at resonance

        Returns:
            DelayGate with tau1 = tau2 = 1/gamma and ell recorded as metadata
        """
        tau = 1.0 / geo.gamma
        phase0 = 0.0
        if anchored:
            phase0 = (math.pi + (e_y - e_x) / geo.gamma) % TWO_PI
        return DelayGate(tau1=tau, tau2=tau, phase0=phase0, ell=geo.ell)

    def channel_unitaries_for_geometry(self, geo: DelayGeometry) -> Tuple[ChannelUnitary, ChannelUnitary]:
        """Per-photon path delays (U_x, U_y) of the two polarization arms."""
        tau = 1.0 / geo.gamma
        u_x = ChannelUnitary(slot1=SlotPhase(slope=geo.ell), slot2=SlotPhase(slope=geo.ell + tau))
        u_y = ChannelUnitary(slot1=SlotPhase(slope=geo.ell + tau), slot2=SlotPhase(slope=geo.ell))
        return u_x, u_y

    def compose(self, u_x: ChannelUnitary, u_y: ChannelUnitary) -> PhaseGate:
        """
        Gate W = conj(U_x) U_y of two factorized channel unitaries.

        Args:
            u_x: Unitary applied to the x channel
            u_y: Unitary applied to the y channel

        Returns:
            IdentityGate when the phases cancel. Without tables, DelayGate when
            photon 1 is delayed and photon 2 advanced (slope1 > 0 > slope2),
            LinearPhaseGate otherwise. CustomProfileGate when tables remain.
        """
        slot1 = _slot_difference(u_y.slot1, u_x.slot1)
        slot2 = _slot_difference(u_y.slot2, u_x.slot2)

        def flat(slot: SlotPhase) -> bool:
            return not slot.tabulated or not any(slot.values)

        if flat(slot1) and flat(slot2):
            if slot1.slope == 0 and slot2.slope == 0 and slot1.offset + slot2.offset == 0:
                return IdentityGate()
            phase0 = slot1.offset + slot2.offset
            if slot1.slope > 0 > slot2.slope:
                return DelayGate(tau1=slot1.slope, tau2=-slot2.slope, phase0=phase0)
            return LinearPhaseGate(slope1=slot1.slope, slope2=slot2.slope, phase0=phase0)
        return CustomProfileGate(slot1=slot1, slot2=slot2)

    def build_gate(self, spec: GateSpec, frame: DimensionlessFrame) -> PhaseGate:
        """Gate of a run configuration in the canonical dimensionless frame."""
        if spec.kind == "identity":
            return IdentityGate()
        if spec.kind == "optimal":
            return OptimalGate(
                z_x=ComplexEnergy.from_complex(frame.z_x),
                z_y=ComplexEnergy.from_complex(frame.z_y),
                phase0=spec.phase0,
            )
        if spec.kind == "delay":
            return DelayGate(tau1=spec.tau1, tau2=spec.tau2, phase0=spec.phase0)
        return LinearPhaseGate(slope1=spec.slope1, slope2=spec.slope2, phase0=spec.phase0)

    def build_physical_gate(self, spec: GateSpec, diagram: LevelDiagram) -> PhaseGate:
        """
        Gate of a run configuration in photon energies measured from e_0.

        Args:
            spec: Gate configuration; delays and slopes in units of 1/gamma
            diagram: Level diagram

        Returns:
            PhaseGate acting on physical photon energies
        """
        gamma = diagram.gamma
        if spec.kind == "identity":
            return IdentityGate()
        if spec.kind == "optimal":
            _, z_x, z_y = level_service.photon_poles(diagram)
            return OptimalGate(
                z_x=ComplexEnergy.from_complex(z_x),
                z_y=ComplexEnergy.from_complex(z_y),
                phase0=spec.phase0,
            )
        if spec.kind == "delay":
            return DelayGate(tau1=spec.tau1 / gamma, tau2=spec.tau2 / gamma, phase0=spec.phase0)
        logger.debug(f"Linear gate scaled to physical units with gamma={gamma}")
        return LinearPhaseGate(slope1=spec.slope1 / gamma, slope2=spec.slope2 / gamma, phase0=spec.phase0)


# Global gate service instance
gate_service = GateService()
