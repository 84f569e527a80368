"""Transfer gadget law, fixup convention, and logical controlled gates."""

import math
import random

import pytest

from loqc_ancilla import (
    ModeOutOfRange,
    NonBinaryTarget,
    OutOfRange,
    SparseState,
    TransferSetting,
    cnot_logical,
    conditional_transfer,
    controlled_sign,
    fidelity,
    toffoli_logical,
    transfer_gadget,
    transmission_for_probability,
)
from conftest import random_state

INV_SQRT2 = 1.0 / math.sqrt(2.0)


# ----------------------------------------------------------------------
# transmission solving
# ----------------------------------------------------------------------


def test_transmission_for_zero_probability():
    setting = transmission_for_probability(0.0)
    assert setting.t == 0.0
    assert setting.r == 1.0


def test_transmission_for_unit_probability():
    setting = transmission_for_probability(1.0)
    assert setting.t == pytest.approx(INV_SQRT2, abs=1e-15)


def test_transmission_three_quarters_smaller_root():
    setting = transmission_for_probability(0.75)
    assert setting.t == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("p", [i / 10 for i in range(11)])
def test_transmission_solves_quartic(p):
    setting = transmission_for_probability(p)
    assert 4 * setting.t**2 * (1 - setting.t**2) == pytest.approx(p, abs=1e-12)
    assert setting.t <= INV_SQRT2 + 1e-15


def test_transmission_out_of_range():
    with pytest.raises(OutOfRange):
        transmission_for_probability(-0.1)
    with pytest.raises(OutOfRange):
        transmission_for_probability(1.1)


def test_setting_validation():
    with pytest.raises(OutOfRange):
        TransferSetting(t=0.5, r=0.5)
    with pytest.raises(OutOfRange):
        TransferSetting(t=0.0, r=1.0, phi=0.3)


# ----------------------------------------------------------------------
# raw gadget amplitudes (before fixup)
# ----------------------------------------------------------------------


def test_gadget_phase_pi_keeps_photon_with_minus_sign():
    for t in (0.2, 0.5, INV_SQRT2, 0.9):
        setting = TransferSetting(t=t, r=math.sqrt(1 - t * t), phi=math.pi)
        out = transfer_gadget(SparseState.basis((1, 0)), 0, 1, setting)
        assert out.amplitude((1, 0)) == pytest.approx(-1.0, abs=1e-12)
        assert abs(out.amplitude((0, 1))) < 1e-12


def test_gadget_balanced_full_transfer():
    setting = TransferSetting(t=INV_SQRT2, r=INV_SQRT2, phi=0.0)
    out = transfer_gadget(SparseState.basis((1, 0)), 0, 1, setting)
    assert abs(out.amplitude((1, 0))) < 1e-12
    assert out.amplitude((0, 1)) == pytest.approx(1j, abs=1e-12)


def test_gadget_half_transmission_amplitudes():
    # T = 1/2: stay -(1-2T^2) = -1/2, go 2iRT = i sqrt(3)/2.
    r = math.sqrt(3.0) / 2.0
    setting = TransferSetting(t=0.5, r=r, phi=0.0)
    out = transfer_gadget(SparseState.basis((1, 0)), 0, 1, setting)
    assert out.amplitude((1, 0)) == pytest.approx(-0.5, abs=1e-12)
    assert out.amplitude((0, 1)) == pytest.approx(1j * r, abs=1e-12)


# ----------------------------------------------------------------------
# conditional transfer (gadget + fixup)
# ----------------------------------------------------------------------


@pytest.mark.parametrize("p", [i / 10 for i in range(11)])
def test_transfer_probability_law(p):
    setting = transmission_for_probability(p)
    out = conditional_transfer(SparseState.basis((1, 0)), 0, 1, setting)
    assert out.amplitude((0, 1)) == pytest.approx(math.sqrt(p), abs=1e-12)
    assert out.amplitude((1, 0)) == pytest.approx(math.sqrt(1 - p), abs=1e-12)
    outcomes = {o.counts: o.probability for o in out.measure([1])}
    assert outcomes.get((1,), 0.0) == pytest.approx(p, abs=1e-12)


def test_inhibited_transfer_is_identity_on_occupation():
    setting = TransferSetting(t=0.6, r=0.8, phi=math.pi)
    out = conditional_transfer(SparseState.basis((1, 0)), 0, 1, setting)
    assert out.amplitude((1, 0)) == pytest.approx(1.0, abs=1e-12)
    outcomes = {o.counts: o.probability for o in out.measure([1])}
    assert outcomes == {(0,): pytest.approx(1.0)}


def test_controlled_transfer_splits_only_on_occupied_control():
    # Modes: 0 control, 1 src, 2 dst.  Control in superposition.
    s = SparseState(3, {(1, 1, 0): INV_SQRT2, (0, 1, 0): INV_SQRT2})
    setting = transmission_for_probability(0.75)
    out = conditional_transfer(s, 1, 2, setting, control=0)
    assert out.amplitude((1, 1, 0)) == pytest.approx(INV_SQRT2 * 0.5, abs=1e-12)
    assert out.amplitude((1, 0, 1)) == pytest.approx(INV_SQRT2 * math.sqrt(0.75), abs=1e-12)
    # Unconditioned branch passes through unchanged, amplitude +1.
    assert out.amplitude((0, 1, 0)) == pytest.approx(INV_SQRT2, abs=1e-12)


def test_conditional_transfer_conserves_photons_and_norm():
    rng = random.Random(17)
    for _ in range(100):
        s = random_state(rng, 3, 3)
        setting = transmission_for_probability(rng.random())
        out = conditional_transfer(s, 0, 2, setting)
        assert out.norm_squared() == pytest.approx(1.0, abs=1e-12)
        totals_in = {sum(occ) for occ in s.terms}
        assert {sum(occ) for occ in out.terms} <= totals_in


# ----------------------------------------------------------------------
# logical gates
# ----------------------------------------------------------------------


def test_controlled_sign_truth_table():
    assert controlled_sign(SparseState.basis((1, 1)), {0}, 1).amplitude((1, 1)) == -1.0
    assert controlled_sign(SparseState.basis((1, 0)), {0}, 1).amplitude((1, 0)) == 1.0
    assert controlled_sign(SparseState.basis((0, 1)), {0}, 1).amplitude((0, 1)) == 1.0


def test_controlled_sign_two_controls():
    assert controlled_sign(SparseState.basis((1, 1, 1)), {0, 1}, 2).amplitude((1, 1, 1)) == -1.0
    assert controlled_sign(SparseState.basis((0, 1, 1)), {0, 1}, 2).amplitude((0, 1, 1)) == 1.0


def test_controlled_sign_involution():
    rng = random.Random(3)
    s = random_state(rng, 3, 1)
    twice = controlled_sign(controlled_sign(s, {0}, 2), {0}, 2)
    assert fidelity(twice, s) == pytest.approx(1.0, abs=1e-12)
    for occ in s.terms:
        assert twice.amplitude(occ) == pytest.approx(s.amplitude(occ), abs=1e-12)


def test_controlled_sign_rejects_overlap():
    with pytest.raises(ModeOutOfRange):
        controlled_sign(SparseState.basis((1, 1)), {0}, 0)


def test_cnot_truth_table():
    assert cnot_logical(SparseState.basis((1, 0)), 0, 1).amplitude((1, 1)) == 1.0
    assert cnot_logical(SparseState.basis((0, 1)), 0, 1).amplitude((0, 1)) == 1.0
    assert cnot_logical(SparseState.basis((1, 1)), 0, 1).amplitude((1, 0)) == 1.0


def test_cnot_twice_is_identity():
    s = SparseState(2, {(1, 0): 0.6, (0, 1): 0.8})
    twice = cnot_logical(cnot_logical(s, 0, 1), 0, 1)
    for occ in s.terms:
        assert twice.amplitude(occ) == pytest.approx(s.amplitude(occ))


def test_cnot_non_binary_target():
    with pytest.raises(NonBinaryTarget):
        cnot_logical(SparseState.basis((1, 2)), 0, 1)


def test_cnot_folds_to_parity():
    # CNOT from each occupied register mode onto a fresh helper computes
    # the occupancy parity.
    for pattern in [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)]:
        s = SparseState.basis(pattern + (0,))
        for mode in range(3):
            s = cnot_logical(s, mode, 3)
        ((occ, amp),) = s.items_sorted()
        assert occ[3] == sum(pattern) % 2
        assert amp == 1.0


def test_toffoli_truth_table():
    assert toffoli_logical(SparseState.basis((1, 1, 0)), 0, 1, 2).amplitude((1, 1, 1)) == 1.0
    assert toffoli_logical(SparseState.basis((1, 0, 0)), 0, 1, 2).amplitude((1, 0, 0)) == 1.0
    assert toffoli_logical(SparseState.basis((1, 1, 1)), 0, 1, 2).amplitude((1, 1, 0)) == 1.0


def test_conditional_transfer_control_must_be_distinct():
    s = SparseState.basis((1, 1, 0))
    setting = transmission_for_probability(0.5)
    with pytest.raises(ModeOutOfRange):
        conditional_transfer(s, 1, 2, setting, control=1)
    with pytest.raises(ModeOutOfRange):
        conditional_transfer(s, 1, 2, setting, control=2)
