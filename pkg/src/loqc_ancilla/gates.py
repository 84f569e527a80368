"""Interferometric transfer gadget and logical-level controlled gates.

The transfer gadget is a Mach-Zehnder pair of identical beamsplitters with
an internal phase of 0 or pi.  With phi = pi the photon stays in the source
path (amplitude -1); with phi = 0 it moves to the destination with
amplitude 2iRT and stays with amplitude -(1-2T^2).  A deterministic phase
fixup after the gadget turns both branch amplitudes real non-negative
(+sqrt(1-P) stay, +sqrt(P) go), which is what lets the register builders
produce superpositions with literal real weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ModeOutOfRange, NonBinaryTarget, OutOfRange
from .fock import Occupation, SparseState

PHASE_OFF = math.pi  # inhibits the transfer: photon stays in the source


@dataclass(frozen=True)
class TransferSetting:
    """Beamsplitter coefficients and internal phase of one gadget.

    R and T are both real with R^2 + T^2 = 1; phi is 0 (transfer enabled)
    or pi (transfer inhibited).
    """

    t: float
    r: float
    phi: float = 0.0

    def __post_init__(self):
        if abs(self.r**2 + self.t**2 - 1.0) > 1e-12:
            raise OutOfRange(f"R^2 + T^2 = {self.r**2 + self.t**2} != 1")
        if self.phi not in (0.0, math.pi):
            raise OutOfRange(f"phi must be exactly 0 or pi, got {self.phi}")

    @property
    def transfer_probability(self) -> float:
        """4 R^2 T^2, the single-photon transfer probability at phi = 0."""
        return 4.0 * self.r**2 * self.t**2


def transmission_for_probability(p: float) -> TransferSetting:
    """Solve 4 T^2 (1 - T^2) = p for the transmission coefficient.

    Uses the smaller root T^2 = (1 - sqrt(1-p))/2, so T grows continuously
    from 0 at p = 0 up to 1/sqrt(2) at p = 1.
    """
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"probability {p} outside [0, 1]")
    t_sq = 0.5 * (1.0 - math.sqrt(max(0.0, 1.0 - p)))
    t = math.sqrt(t_sq)
    r = math.sqrt(1.0 - t_sq)
    return TransferSetting(t=t, r=r, phi=0.0)


def transfer_gadget(
    state: SparseState, src: int, dst: int, setting: TransferSetting
) -> SparseState:
    """Raw gadget: beamsplitter(T) -> phase(phi on src) -> beamsplitter(T).

    For one photon in src this reproduces the closed forms
    -(1-2T^2) stay + 2iRT go at phi = 0 and -1 stay at phi = pi.
    """
    if src == dst:
        raise ModeOutOfRange("transfer needs distinct source and destination")
    out = state.apply_beamsplitter(src, dst, setting.t)
    out = out.apply_phase(src, setting.phi)
    return out.apply_beamsplitter(src, dst, setting.t)


def _fixup(state: SparseState, src: int, dst: int) -> SparseState:
    # Canonical phases: pi per src photon cancels the gadget's -1 signs,
    # -pi/2 per dst photon rotates 2iRT onto the positive real axis.
    return state.apply_phase(src, math.pi).apply_phase(dst, -math.pi / 2)


def conditional_transfer(
    state: SparseState,
    src: int,
    dst: int,
    setting: TransferSetting,
    control: int | None = None,
) -> SparseState:
    """Gadget plus canonical fixup, optionally gated by a control mode.

    With ``control`` set, terms whose control mode is occupied get the full
    phi = 0 transfer while the rest see the phi = pi (inhibited) branch --
    the state-vector realization of steering the internal phase with a
    controlled sign gate.  After the fixup the inhibited branch is exactly
    the identity on src, so single-photon transfers leave real non-negative
    amplitudes: +sqrt(1-P) stay and +sqrt(P) go.
    """
    if control is None:
        return _fixup(transfer_gadget(state, src, dst, setting), src, dst)

    state._check_mode(control)
    if control in (src, dst):
        raise ModeOutOfRange("control mode must differ from source and destination")
    on = {occ: a for occ, a in state.terms.items() if occ[control] >= 1}
    off = {occ: a for occ, a in state.terms.items() if occ[control] == 0}
    merged: dict[Occupation, complex] = {}
    if on:
        part = transfer_gadget(
            SparseState(state.modes, on, state.tolerance),
            src,
            dst,
            TransferSetting(t=setting.t, r=setting.r, phi=0.0),
        )
        merged.update(part.terms)
    if off:
        part = transfer_gadget(
            SparseState(state.modes, off, state.tolerance),
            src,
            dst,
            TransferSetting(t=setting.t, r=setting.r, phi=PHASE_OFF),
        )
        for occ, a in part.terms.items():
            merged[occ] = merged.get(occ, 0j) + a
    return _fixup(SparseState(state.modes, merged, state.tolerance), src, dst)


def controlled_sign(
    state: SparseState, control_modes: set[int] | frozenset[int], target_mode: int
) -> SparseState:
    """Flip the sign of terms where every control and the target are occupied."""
    controls = sorted(int(m) for m in control_modes)
    for m in controls + [target_mode]:
        state._check_mode(m)
    if target_mode in controls:
        raise ModeOutOfRange("target must be disjoint from the controls")

    def phase(occ: Occupation) -> float:
        if occ[target_mode] >= 1 and all(occ[m] >= 1 for m in controls):
            return math.pi
        return 0.0

    return state.apply_basis_phase(phase)


def cnot_logical(state: SparseState, control_mode: int, target_mode: int) -> SparseState:
    """Flip the target's occupancy (0 <-> 1) on terms with the control occupied.

    Logical-level gate on a single-rail qubit mode; raises if any term
    holds more than one photon in the target.
    """
    state._check_mode(control_mode)
    state._check_mode(target_mode)
    if control_mode == target_mode:
        raise ModeOutOfRange("control and target must differ")
    terms: dict[Occupation, complex] = {}
    for occ, a in state.terms.items():
        if occ[target_mode] > 1:
            raise NonBinaryTarget(
                f"target mode {target_mode} holds {occ[target_mode]} photons"
            )
        if occ[control_mode] >= 1:
            new = list(occ)
            new[target_mode] = 1 - new[target_mode]
            occ = tuple(new)
        terms[occ] = terms.get(occ, 0j) + a
    return SparseState(state.modes, terms, state.tolerance)


def toffoli_logical(
    state: SparseState, control_a: int, control_b: int, target_mode: int
) -> SparseState:
    """Two-control occupancy flip of a logical qubit mode."""
    for m in (control_a, control_b, target_mode):
        state._check_mode(m)
    if len({control_a, control_b, target_mode}) != 3:
        raise ModeOutOfRange("controls and target must be three distinct modes")
    terms: dict[Occupation, complex] = {}
    for occ, a in state.terms.items():
        if occ[target_mode] > 1:
            raise NonBinaryTarget(
                f"target mode {target_mode} holds {occ[target_mode]} photons"
            )
        if occ[control_a] >= 1 and occ[control_b] >= 1:
            new = list(occ)
            new[target_mode] = 1 - new[target_mode]
            occ = tuple(new)
        terms[occ] = terms.get(occ, 0j) + a
    return SparseState(state.modes, terms, state.tolerance)
