"""Charge-register preparation in a tunnel-coupled quantum-dot array.

Each register pair lives on 2n dots holding 0 or 1 excited electrons:
dots 0..n-1 are the rotated x register (occupied sites accumulate at the
high end), dots n..2n-1 the rotated y register (occupied sites at the low
end), so the electrons form one contiguous block around the boundary.

The compiled schedule is: reset, fill the y side from the reservoir, then n
rounds of [one partial Rabi pulse at the moving block edge, n-1 complete
Rabi pulses walking the freed hole to the far end].  The partial pulses
need no conditioning: branches that already stopped present an empty dot
pair to them, and the round's no-transfer branch is shielded from the hole
walk, which only runs on branches where the transfer happened (its pulses
carry the condition explicitly; on a branch-blind device the same pulses
would be stopped by double-occupancy blockade on the no-transfer branch but
would disturb branches frozen in earlier rounds).

Double occupancy is forbidden throughout; execution checks it after every
pulse.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import BlockadeViolation, DotOutOfRange, ShapeMismatch
from .fock import Occupation, RegisterLayout, SparseState
from .profiles import AmplitudeProfile, schedule_from_profile


# ----------------------------------------------------------------------
# pulse grammar
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Thermalize:
    """Reset: couple every dot to the reservoir and drain it to 0."""

    def to_json_dict(self) -> dict:
        return {"op": "thermalize", "args": []}


@dataclass(frozen=True)
class LoadFromReservoir:
    """Deterministic 0 -> 1 fill of one dot; a second electron cannot enter."""

    dot: int

    def to_json_dict(self) -> dict:
        return {"op": "load", "args": [self.dot]}


@dataclass(frozen=True)
class RabiPulse:
    """Tunnel coupling between two dots for a pulse angle theta.

    theta = pi/2 is a complete oscillation (swap); smaller angles transfer
    with probability sin(theta)^2.  ``only_if`` names a dot whose occupancy
    gates the pulse at the state-vector level.
    """

    src: int
    dst: int
    theta: float
    only_if: int | None = None

    def __post_init__(self):
        if self.src == self.dst:
            raise DotOutOfRange("Rabi pulse needs two distinct dots")
        if not 0.0 <= self.theta <= math.pi / 2 + 1e-12:
            raise DotOutOfRange(f"pulse angle {self.theta} outside [0, pi/2]")

    def to_json_dict(self) -> dict:
        d = {"op": "rabi", "args": [self.src, self.dst, self.theta]}
        if self.only_if is not None:
            d["only_if"] = self.only_if
        return d


@dataclass(frozen=True)
class InteractionPhase:
    """Charge-charge phase between the two x-side registers.

    Applies exp(i * [coupling_angle * j * j' + intra_coefficient *
    (j(j-1)/2 + j'(j'-1)/2)]) per term, with j, j' the occupied x-side
    counts of the two register pairs.  The y sides are shielded and do not
    contribute.
    """

    coupling_angle: float
    intra_coefficient: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "op": "interaction_phase",
            "args": [self.coupling_angle, self.intra_coefficient],
        }


@dataclass(frozen=True)
class UGateCorrection:
    """Per-occupancy phase table cancelling the intra-register charging term."""

    phases: tuple[float, ...]

    def to_json_dict(self) -> dict:
        return {"op": "u_gate_correction", "args": [list(self.phases)]}


Pulse = Union[Thermalize, LoadFromReservoir, RabiPulse, InteractionPhase, UGateCorrection]


def pulse_from_json_dict(data: dict) -> Pulse:
    op = data["op"]
    args = data.get("args", [])
    if op == "thermalize":
        return Thermalize()
    if op == "load":
        return LoadFromReservoir(int(args[0]))
    if op == "rabi":
        return RabiPulse(int(args[0]), int(args[1]), float(args[2]), data.get("only_if"))
    if op == "interaction_phase":
        return InteractionPhase(float(args[0]), float(args[1]))
    if op == "u_gate_correction":
        return UGateCorrection(tuple(float(v) for v in args[0]))
    raise ValueError(f"unknown pulse op {op!r}")


@dataclass(frozen=True)
class PulseSchedule:
    """Ordered pulse list over ``pairs`` register pairs of n dots each side."""

    n: int
    pairs: int
    pulses: tuple[Pulse, ...]

    @property
    def dots(self) -> int:
        return 2 * self.n * self.pairs

    def to_jsonl(self) -> str:
        return "\n".join(json.dumps(p.to_json_dict()) for p in self.pulses) + "\n"

    @classmethod
    def from_jsonl(cls, text: str, n: int, pairs: int) -> "PulseSchedule":
        pulses = tuple(
            pulse_from_json_dict(json.loads(line))
            for line in text.splitlines()
            if line.strip()
        )
        return cls(n, pairs, pulses)


# ----------------------------------------------------------------------
# elementary dynamics
# ----------------------------------------------------------------------


def _check_binary(state: SparseState) -> None:
    for occ in state.terms:
        if any(c > 1 for c in occ):
            raise BlockadeViolation(f"double occupancy in term {occ}")


def rabi(state: SparseState, dot_i: int, dot_j: int, theta: float) -> SparseState:
    """Two-level mixing of dots (i, j) with blockade.

    On the single-electron subspace the pulse acts as the rotation
    | i occupied >  ->  cos(theta) |i> + sin(theta) |j>
    | j occupied >  -> -sin(theta) |i> + cos(theta) |j>
    (phase convention fixed so transfers in the i -> j direction come out
    real non-negative); doubly occupied and empty pairs are untouched.
    """
    if dot_i == dot_j:
        raise DotOutOfRange("Rabi coupling needs two distinct dots")
    for d in (dot_i, dot_j):
        if not 0 <= d < state.modes:
            raise DotOutOfRange(f"dot {d} not in 0..{state.modes - 1}")
    c, s = math.cos(theta), math.sin(theta)
    terms: dict[Occupation, complex] = {}

    def add(key: Occupation, amp: complex) -> None:
        terms[key] = terms.get(key, 0j) + amp

    for occ, a in state.terms.items():
        ci, cj = occ[dot_i], occ[dot_j]
        if ci > 1 or cj > 1:
            raise BlockadeViolation(f"double occupancy in term {occ}")
        if ci + cj != 1:
            add(occ, a)
            continue
        swapped = list(occ)
        swapped[dot_i], swapped[dot_j] = cj, ci
        swapped = tuple(swapped)
        if ci == 1:
            add(occ, a * c)
            add(swapped, a * s)
        else:
            add(occ, a * c)
            add(swapped, -a * s)
    return SparseState(state.modes, terms, state.tolerance)


def load_from_reservoir(state: SparseState, dot: int) -> SparseState:
    """Set one dot to occupied; terms already holding an electron are unchanged.

    Refuses to load into a dot that is occupied on some branches but empty
    on others: the branches would collide onto one pattern even though the
    reservoir record keeps them physically distinguishable, so the classical
    reservoir model cannot represent that situation.
    """
    if not 0 <= dot < state.modes:
        raise DotOutOfRange(f"dot {dot} not in 0..{state.modes - 1}")
    occupancies = {occ[dot] for occ in state.terms}
    if occupancies == {0, 1}:
        raise BlockadeViolation(
            f"dot {dot} is occupied on some branches only; a reservoir load "
            "would merge distinguishable branches"
        )
    terms: dict[Occupation, complex] = {}
    for occ, a in state.terms.items():
        if occ[dot] == 0:
            new = list(occ)
            new[dot] = 1
            occ = tuple(new)
        terms[occ] = terms.get(occ, 0j) + a
    return SparseState(state.modes, terms, state.tolerance)


def _x_side_counts(occ: Occupation, n: int) -> tuple[int, int]:
    j = sum(1 for d in range(0, n) if occ[d])
    jp = sum(1 for d in range(2 * n, 3 * n) if occ[d])
    return j, jp


def interaction_phase(
    state: SparseState,
    coupling_angle: float,
    intra_coefficient: float,
    corrections: Sequence[float] | None = None,
    n: int | None = None,
) -> SparseState:
    """Charge-interaction phase between the two register pairs.

    With coupling_angle = pi and corrections = -intra_coefficient*j(j-1)/2
    the net factor per term is exactly (-1)^(j j').
    """
    if n is None:
        if state.modes % 4 != 0:
            raise ShapeMismatch(f"{state.modes} dots is not a two-register-pair shape")
        n = state.modes // 4
    if state.modes != 4 * n:
        raise ShapeMismatch(f"expected {4 * n} dots for n={n}, got {state.modes}")

    def phase(occ: Occupation) -> float:
        j, jp = _x_side_counts(occ, n)
        total = coupling_angle * j * jp
        total += intra_coefficient * (j * (j - 1) / 2 + jp * (jp - 1) / 2)
        if corrections is not None:
            total += corrections[j] + corrections[jp]
        return total

    return state.apply_basis_phase(phase)


def u_gate_corrections(n: int, intra_coefficient: float) -> tuple[float, ...]:
    """Phase table cancelling the intra-register charging term."""
    return tuple(-intra_coefficient * j * (j - 1) / 2 for j in range(n + 1))


# ----------------------------------------------------------------------
# compilation and execution
# ----------------------------------------------------------------------


def dot_layout(n: int, pairs: int = 1) -> RegisterLayout:
    names = [("x~", n), ("y~", n)]
    if pairs == 2:
        names += [("x~'", n), ("y~'", n)]
    elif pairs != 1:
        raise ShapeMismatch("only 1 or 2 register pairs are supported")
    return RegisterLayout(names)


def _register_pulses(n: int, probabilities: Sequence[float], offset: int) -> list[Pulse]:
    """Loads plus n transfer rounds for one register pair at a dot offset."""
    pulses: list[Pulse] = [
        LoadFromReservoir(offset + d) for d in range(n, 2 * n)
    ]
    for k, p in enumerate(probabilities, start=1):
        theta = math.asin(math.sqrt(min(1.0, max(0.0, p))))
        dst = offset + n - k  # edge dot the block grows into this round
        src = dst + 1
        pulses.append(RabiPulse(src, dst, theta))
        # Walk the hole left by the transfer to the far end of the block;
        # gated on the transfer having happened (dst occupied).
        for i in range(n - k + 1, 2 * n - k):
            pulses.append(
                RabiPulse(offset + i + 1, offset + i, math.pi / 2, only_if=dst)
            )
    return pulses


def compile_schedule(n: int, profile: AmplitudeProfile) -> PulseSchedule:
    """Pulse program preparing one register pair; n^2 + n + 1 pulses."""
    schedule = schedule_from_profile(profile)
    pulses: list[Pulse] = [Thermalize()]
    pulses += _register_pulses(n, schedule.probabilities, 0)
    return PulseSchedule(n, 1, tuple(pulses))


def compile_pair_schedule(
    n: int,
    profile: AmplitudeProfile,
    coupling_angle: float = math.pi,
    intra_coefficient: float = 0.0,
) -> PulseSchedule:
    """Pulse program for both register pairs plus the entangling interaction."""
    schedule = schedule_from_profile(profile)
    pulses: list[Pulse] = [Thermalize()]
    pulses += _register_pulses(n, schedule.probabilities, 0)
    pulses += _register_pulses(n, schedule.probabilities, 2 * n)
    pulses.append(InteractionPhase(coupling_angle, intra_coefficient))
    pulses.append(UGateCorrection(u_gate_corrections(n, intra_coefficient)))
    return PulseSchedule(n, 2, tuple(pulses))


def scheduled_pulse_count(n: int, pairs: int = 1) -> int:
    """Closed-form pulse count of the compiled schedules."""
    per_pair = n * n + n  # n loads + n rounds of (1 partial + n-1 walks)
    return 1 + pairs * per_pair + (2 if pairs == 2 else 0)


def execute(schedule: PulseSchedule, state: SparseState | None = None) -> SparseState:
    """Run a schedule, checking the occupancy invariant after every pulse."""
    if state is None:
        state = SparseState.vacuum(schedule.dots)
    if state.modes != schedule.dots:
        raise ShapeMismatch(
            f"state has {state.modes} dots, schedule needs {schedule.dots}"
        )
    for pulse in schedule.pulses:
        if isinstance(pulse, Thermalize):
            state = SparseState.vacuum(state.modes, state.tolerance)
        elif isinstance(pulse, LoadFromReservoir):
            state = load_from_reservoir(state, pulse.dot)
        elif isinstance(pulse, RabiPulse):
            state = _apply_rabi_pulse(state, pulse)
        elif isinstance(pulse, InteractionPhase):
            state = interaction_phase(
                state, pulse.coupling_angle, pulse.intra_coefficient, n=schedule.n
            )
        elif isinstance(pulse, UGateCorrection):
            state = interaction_phase(
                state, 0.0, 0.0, corrections=pulse.phases, n=schedule.n
            )
        else:
            raise ValueError(f"unknown pulse {pulse!r}")
        _check_binary(state)
    return state


def _apply_rabi_pulse(state: SparseState, pulse: RabiPulse) -> SparseState:
    if pulse.only_if is None:
        return rabi(state, pulse.src, pulse.dst, pulse.theta)
    gate = pulse.only_if
    if not 0 <= gate < state.modes:
        raise DotOutOfRange(f"condition dot {gate} not in 0..{state.modes - 1}")
    on = {occ: a for occ, a in state.terms.items() if occ[gate] >= 1}
    off = {occ: a for occ, a in state.terms.items() if occ[gate] == 0}
    merged = dict(off)
    if on:
        part = rabi(
            SparseState(state.modes, on, state.tolerance),
            pulse.src,
            pulse.dst,
            pulse.theta,
        )
        for occ, a in part.terms.items():
            merged[occ] = merged.get(occ, 0j) + a
    return SparseState(state.modes, merged, state.tolerance)


def emit_photons(state: SparseState, layout: RegisterLayout) -> SparseState:
    """Map dot occupancies to fiber-mode photons, undoing the 180 degree
    register rotation (each register's mode order is reversed)."""
    if layout.total != state.modes:
        raise ShapeMismatch(
            f"layout covers {layout.total} dots, state has {state.modes}"
        )
    perm: list[int] = []
    for name in layout.names():
        perm.extend(reversed(layout.modes(name)))
    return state.permute_modes(perm)


def prepare_pair(
    n: int,
    profile: AmplitudeProfile,
    intra_coefficient: float = 0.0,
) -> tuple[SparseState, PulseSchedule]:
    """Compile and run the full pair preparation; returns the photonic state."""
    schedule = compile_pair_schedule(
        n, profile, coupling_angle=math.pi, intra_coefficient=intra_coefficient
    )
    final = execute(schedule)
    photonic = emit_photons(final, dot_layout(n, pairs=2))
    return photonic, schedule
