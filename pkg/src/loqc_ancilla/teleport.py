"""Probabilistic teleportation through the prepared register states.

A single-rail qubit (0 or 1 photons in one mode) is teleported by mixing it
with the x register through a multimode discrete Fourier transform, counting
photons on those modes, and reading the output out of one y mode selected by
the measured total k.  Totals k = 0 and k = n+1 project the qubit onto a
basis state and are classified as failures; every other k succeeds after an
outcome-dependent phase correction.

The correction table is built once per n: for every outcome the phase that
realigns the output with a reference qubit is solved numerically, checked to
be sufficient (a pure phase must do the whole job), and frozen.  Outcomes
where a pure phase is *not* sufficient are recorded and surfaced, never
silently reclassified; for the register shapes produced here none occur.
"""

from __future__ import annotations

import cmath
import enum
import functools
import math
from dataclasses import dataclass

from .errors import OutOfRange, ShapeMismatch
from .fock import Occupation, SparseState, fidelity
from .pipeline import direct_oracle_single
from .profiles import AmplitudeProfile


@dataclass(frozen=True)
class InputQubit:
    """Single-rail qubit amplitudes: alpha |0 photons> + beta |1 photon>."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise OutOfRange(f"|alpha|^2 + |beta|^2 = {norm}, expected 1")

    @classmethod
    def of(cls, alpha: complex, beta: complex) -> "InputQubit":
        norm = math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
        if norm == 0.0:
            raise OutOfRange("qubit amplitudes cannot both be zero")
        return cls(alpha / norm, beta / norm)

    @classmethod
    def zero(cls) -> "InputQubit":
        return cls(1.0 + 0j, 0j)

    @classmethod
    def one(cls) -> "InputQubit":
        return cls(0j, 1.0 + 0j)

    @classmethod
    def plus(cls) -> "InputQubit":
        s = 1.0 / math.sqrt(2.0)
        return cls(complex(s), complex(s))

    def state(self) -> SparseState:
        return SparseState(1, {(0,): self.alpha, (1,): self.beta})


class Classification(enum.Enum):
    SUCCESS = "success"
    FAILURE = "failure"


@dataclass(frozen=True)
class TeleportOutcome:
    """One enumerated measurement branch of a teleport run."""

    counts: Occupation
    k: int
    probability: float
    classification: Classification
    output_register: int | None  # 1-based index of the y mode holding the qubit
    output_state: SparseState | None  # corrected residual over the y modes
    fidelity: float | None  # vs the ideal teleported residual


def qft_matrix(size: int) -> list[list[complex]]:
    """size x size discrete Fourier transform, unitary normalization."""
    if size < 1:
        raise OutOfRange("transform needs at least one mode")
    scale = 1.0 / math.sqrt(size)
    return [
        [cmath.exp(2j * math.pi * l * m / size) * scale for m in range(size)]
        for l in range(size)
    ]


def apply_qft(state: SparseState, modes: list[int]) -> SparseState:
    """Exact multimode Fourier mixing of the listed modes."""
    return state.apply_linear_transform(modes, qft_matrix(len(modes)))


def _output_patterns(n: int, k: int) -> tuple[Occupation, Occupation]:
    """y-register patterns carrying the teleported 0/1 at slot k (1-based)."""
    base = [0] * (k - 1) + [0] + [1] * (n - k)
    zero = tuple(base)
    base[k - 1] = 1
    one = tuple(base)
    return zero, one


def _ideal_residual(qubit: InputQubit, n: int, k: int) -> SparseState:
    zero, one = _output_patterns(n, k)
    return SparseState(n, {zero: qubit.alpha, one: qubit.beta})


@dataclass(frozen=True)
class FeedforwardTable:
    """Per-outcome phase corrections, frozen from a reference run."""

    n: int
    phases: dict[Occupation, float]
    non_phase_outcomes: frozenset[Occupation]


@functools.lru_cache(maxsize=None)
def feedforward_table(n: int) -> FeedforwardTable:
    """Solve the output phase for every success outcome at this n.

    Uses the constant profile and an unbiased reference qubit; the solved
    phases depend only on the Fourier overlaps of the outcome patterns, so
    the same table applies to any profile.
    """
    ancilla = direct_oracle_single(n, AmplitudeProfile.constant(n))
    reference = InputQubit.plus()
    state = reference.state().tensor(ancilla)
    state = apply_qft(state, list(range(n + 1)))

    phases: dict[Occupation, float] = {}
    flagged: set[Occupation] = set()
    for mo in state.measure(range(n + 1)):
        k = sum(mo.counts)
        if not 1 <= k <= n:
            continue
        zero, one = _output_patterns(n, k)
        c0 = mo.residual.amplitude(zero)
        c1 = mo.residual.amplitude(one)
        if abs(c0) < 1e-14 or abs(c1) < 1e-14:
            phases[mo.counts] = 0.0
            flagged.add(mo.counts)
            continue
        if abs(abs(c0) - abs(c1)) > 1e-10:
            flagged.add(mo.counts)
        phases[mo.counts] = cmath.phase(c0) - cmath.phase(c1)
    return FeedforwardTable(n, phases, frozenset(flagged))


def teleport(qubit: InputQubit, ancilla: SparseState, n: int) -> list[TeleportOutcome]:
    """Enumerate every measurement branch of one teleport exactly."""
    if ancilla.modes != 2 * n:
        raise ShapeMismatch(
            f"ancilla has {ancilla.modes} modes, expected {2 * n} for n={n}"
        )
    state = qubit.state().tensor(ancilla)
    state = apply_qft(state, list(range(n + 1)))
    table = feedforward_table(n)

    outcomes: list[TeleportOutcome] = []
    for mo in state.measure(range(n + 1)):
        k = sum(mo.counts)
        if 1 <= k <= n:
            corrected = mo.residual.apply_phase(k - 1, table.phases.get(mo.counts, 0.0))
            fid = fidelity(corrected, _ideal_residual(qubit, n, k))
            outcomes.append(
                TeleportOutcome(
                    mo.counts, k, mo.probability, Classification.SUCCESS, k, corrected, fid
                )
            )
        else:
            outcomes.append(
                TeleportOutcome(
                    mo.counts, k, mo.probability, Classification.FAILURE, None, None, None
                )
            )
    return outcomes


def failure_probability(outcomes: list[TeleportOutcome]) -> float:
    return sum(o.probability for o in outcomes if o.classification is Classification.FAILURE)


def success_probability(outcomes: list[TeleportOutcome]) -> float:
    return sum(o.probability for o in outcomes if o.classification is Classification.SUCCESS)


# ----------------------------------------------------------------------
# controlled sign gate through two simultaneous teleports
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class CzBranch:
    counts: Occupation  # side-1 then side-2 measured counts
    k: int
    kp: int
    probability: float
    fidelity: float


@dataclass(frozen=True)
class CzGateResult:
    """Post-selected controlled-sign gate statistics and output."""

    success_probability: float
    failure_probability: float
    min_fidelity: float | None
    output_qubits: SparseState | None  # reduced 2-mode post-selected output
    branches: tuple[CzBranch, ...]


def _ideal_cz_residual(
    q: InputQubit, qp: InputQubit, n: int, k: int, kp: int
) -> SparseState:
    y0, y1 = _output_patterns(n, k)
    yp0, yp1 = _output_patterns(n, kp)
    amp = {0: (q.alpha, qp.alpha), 1: (q.beta, qp.beta)}
    terms: dict[Occupation, complex] = {}
    for a, ya in ((0, y0), (1, y1)):
        for b, yb in ((0, yp0), (1, yp1)):
            sign = -1.0 if a == 1 and b == 1 else 1.0
            terms[ya + yb] = amp[a][0] * amp[b][1] * sign
    return SparseState(2 * n, terms)


def cz_via_double_teleportation(
    q: InputQubit, qp: InputQubit, ancilla_pair: SparseState, n: int
) -> CzGateResult:
    """Teleport both qubits through the entangled pair ancilla.

    Jointly successful branches (both photon totals in 1..n) receive the
    per-side phase corrections plus the cross corrections pi*k' on the
    unprimed output and pi*k on the primed output; the post-selected result
    is the controlled-sign image of the input product state.
    """
    if ancilla_pair.modes != 4 * n:
        raise ShapeMismatch(
            f"pair ancilla has {ancilla_pair.modes} modes, expected {4 * n} for n={n}"
        )
    # Assemble [q, x, y, q', x', y'] from q (x) q' (x) [x, y, x', y'].
    full = q.state().tensor(qp.state()).tensor(ancilla_pair)
    perm = (
        [0]
        + list(range(2, 2 + 2 * n))
        + [1]
        + list(range(2 + 2 * n, 2 + 4 * n))
    )
    full = full.permute_modes(perm)

    side1 = list(range(0, n + 1))
    side2 = [2 * n + 1 + i for i in range(n + 1)]
    full = apply_qft(full, side1)
    full = apply_qft(full, side2)
    table = feedforward_table(n)

    total_success = 0.0
    branches: list[CzBranch] = []
    best: tuple[float, SparseState, int, int] | None = None
    for mo in full.measure(side1 + side2):
        c1 = mo.counts[: n + 1]
        c2 = mo.counts[n + 1 :]
        k, kp = sum(c1), sum(c2)
        if not (1 <= k <= n and 1 <= kp <= n):
            continue
        # Cross corrections are signs, so reduce them mod 2 and keep the
        # pi phase exact.
        phi1 = table.phases.get(c1, 0.0) + math.pi * (kp % 2)
        phi2 = table.phases.get(c2, 0.0) + math.pi * (k % 2)
        corrected = mo.residual.apply_phase(k - 1, phi1).apply_phase(n + kp - 1, phi2)
        fid = fidelity(corrected, _ideal_cz_residual(q, qp, n, k, kp))
        total_success += mo.probability
        branches.append(CzBranch(mo.counts, k, kp, mo.probability, fid))
        if best is None or mo.probability > best[0]:
            best = (mo.probability, corrected, k, kp)

    output = None
    if best is not None:
        _, corrected, k, kp = best
        y0, y1 = _output_patterns(n, k)
        yp0, yp1 = _output_patterns(n, kp)
        reduced: dict[Occupation, complex] = {}
        for a, ya in ((0, y0), (1, y1)):
            for b, yb in ((0, yp0), (1, yp1)):
                amp = corrected.amplitude(ya + yb)
                if amp != 0j:
                    reduced[(a, b)] = amp
        output = SparseState(2, reduced).normalized()

    return CzGateResult(
        success_probability=total_success,
        failure_probability=1.0 - total_success,
        min_fidelity=min((b.fidelity for b in branches), default=None),
        output_qubits=output,
        branches=tuple(branches),
    )
