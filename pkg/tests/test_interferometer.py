import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

import numpy as np

from emzi.errors import DomainError
from emzi.fock import FieldState
from emzi.interferometer import (OverlapTriple, branch_states, evaluate,
                                 fringe, overlap_via_branches,
                                 overlap_via_products, signal)
from emzi.pulses import FINITE_N, IDEAL_LIMIT, PulseTriple
from emzi.selftest import random_pulse, random_state


def ideal_triple(phases=(0.0, 0.0, 0.0)):
    return PulseTriple.mach_zehnder((5.0, 5.0, 5.0), coupling_phases=phases,
                                    eval_mode=IDEAL_LIMIT)


def test_branch_actions_on_fock_ideal():
    # upper: absorb mode 0, emit mode 1; lower: absorb mode 1, emit mode 2
    psi = FieldState.fock(3, 4, 5)
    phases = (0.2, 0.5, 0.9)
    lower, upper = branch_states(psi, ideal_triple(phases))
    amp_u = upper.amplitude((2, 5, 5))
    amp_l = lower.amplitude((3, 3, 6))
    assert amp_u == pytest.approx(-0.5 * cmath.exp(1j * (phases[0] - phases[1])))
    assert amp_l == pytest.approx(-0.5 * cmath.exp(1j * (phases[1] - phases[2])))
    assert len(upper) == 1 and len(lower) == 1


def test_branch_vacuum_blocking():
    # no photon in mode 0: the upper branch cannot start
    psi = FieldState.fock(0, 4, 5)
    lower, upper = branch_states(psi, ideal_triple())
    assert len(upper) == 0
    assert lower.norm_squared() == pytest.approx(0.25)


def test_overlap_ghz_like_pair():
    # (|3,4,5> + |2,6,4>)/sqrt(2): the shift (-1,+2,-1) connects the labels
    r = 1 / math.sqrt(2)
    psi = FieldState({(3, 4, 5): r, (2, 6, 4): r})
    ov = overlap_via_branches(psi, ideal_triple())
    assert ov.o_ll == pytest.approx(0.25, abs=1e-12)
    assert ov.o_uu == pytest.approx(0.25, abs=1e-12)
    assert ov.o_lu == pytest.approx(0.125, abs=1e-12)
    res = signal(ov)
    assert res.visibility == pytest.approx(0.5, abs=1e-12)
    assert res.amplitude == pytest.approx(1.0, abs=1e-12)


def test_signal_phase_from_pulse_phases():
    r = 1 / math.sqrt(2)
    psi = FieldState({(3, 4, 5): r, (2, 6, 4): r})
    phases = (0.3, -0.2, 1.0)
    res = evaluate(psi, ideal_triple(phases))
    assert res.phase == pytest.approx(0.3 + 0.4 + 1.0, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_backend_equivalence(seed):
    rng = np.random.default_rng(seed)
    psi = random_state(rng)
    for eval_mode in (FINITE_N, IDEAL_LIMIT):
        pulses = PulseTriple(pulses=tuple(random_pulse(rng, m) for m in range(3)),
                             eval_mode=eval_mode)
        a = overlap_via_branches(psi, pulses)
        b = overlap_via_products(psi, pulses)
        assert a.o_ll == pytest.approx(b.o_ll, abs=1e-12)
        assert a.o_uu == pytest.approx(b.o_uu, abs=1e-12)
        assert abs(a.o_lu - b.o_lu) < 1e-12


def test_overlap_triple_validation():
    with pytest.raises(DomainError):
        OverlapTriple(o_ll=-0.1, o_uu=0.1, o_lu=0.0)
    with pytest.raises(DomainError):
        OverlapTriple(o_ll=0.01, o_uu=0.01, o_lu=0.5)  # Cauchy-Schwarz


def test_signal_extinguished_raises():
    with pytest.raises(DomainError):
        signal(OverlapTriple(o_ll=0.0, o_uu=0.0, o_lu=0.0))


def test_evaluate_requires_normalized_state():
    psi = FieldState.fock(3, 4, 5, amplitude=2.0)
    with pytest.raises(DomainError):
        evaluate(psi, ideal_triple())


def test_fringe_values():
    res = evaluate(FieldState({(3, 4, 5): 1 / math.sqrt(2), (2, 6, 4): 1 / math.sqrt(2)}),
                   ideal_triple())
    rows = fringe(res, [0.0, math.pi / 2, math.pi])
    assert rows[0][1] == pytest.approx(0.75, abs=1e-12)
    assert rows[1][1] == pytest.approx(0.5, abs=1e-12)
    assert rows[2][1] == pytest.approx(0.25, abs=1e-12)
    with pytest.raises(DomainError):
        fringe(res, [])


def test_separable_fock_no_fringe():
    res = evaluate(FieldState.fock(3, 4, 5), ideal_triple())
    assert res.visibility == 0.0
    assert res.amplitude == pytest.approx(1.0, abs=1e-12)
