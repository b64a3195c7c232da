import cmath
import math
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

import numpy as np

from emzi.errors import ConfigurationError, DomainError
from emzi.states import (CLASS_EXTRA_COMPONENTS, ClassCoefficients, ModeSubset,
                         PRESET_NAMES, class_coefficients, expand_state,
                         ghz_coefficients, preset, tau3, tau3_class,
                         w_coefficients)

COMPONENTS = list(product((0, 1), repeat=3))


def hyperdet_tau3(a):
    """Independent oracle: Cayley hyperdeterminant form 4 |d1 - 2 d2 + 4 d3|."""
    def g(i, j, k):
        return a.get((i, j, k), 0.0 + 0.0j)
    d1 = (g(0, 0, 0) ** 2 * g(1, 1, 1) ** 2 + g(0, 0, 1) ** 2 * g(1, 1, 0) ** 2
          + g(0, 1, 0) ** 2 * g(1, 0, 1) ** 2 + g(1, 0, 0) ** 2 * g(0, 1, 1) ** 2)
    d2 = (g(0, 0, 0) * g(1, 1, 1) * g(0, 1, 1) * g(1, 0, 0)
          + g(0, 0, 0) * g(1, 1, 1) * g(1, 0, 1) * g(0, 1, 0)
          + g(0, 0, 0) * g(1, 1, 1) * g(1, 1, 0) * g(0, 0, 1)
          + g(0, 1, 1) * g(1, 0, 0) * g(1, 0, 1) * g(0, 1, 0)
          + g(0, 1, 1) * g(1, 0, 0) * g(1, 1, 0) * g(0, 0, 1)
          + g(1, 0, 1) * g(0, 1, 0) * g(1, 1, 0) * g(0, 0, 1))
    d3 = (g(0, 0, 0) * g(1, 1, 0) * g(1, 0, 1) * g(0, 1, 1)
          + g(1, 1, 1) * g(0, 0, 1) * g(0, 1, 0) * g(1, 0, 0))
    return 4.0 * abs(d1 - 2.0 * d2 + 4.0 * d3)


def random_amplitudes(rng, support=COMPONENTS):
    amps = {c: complex(rng.normal(), rng.normal()) for c in support}
    norm = math.sqrt(sum(abs(v) ** 2 for v in amps.values()))
    return {c: v / norm for c, v in amps.items()}


def test_tau3_ghz_and_w():
    r = 1 / math.sqrt(2)
    assert tau3({(0, 0, 0): r, (1, 1, 1): r}) == pytest.approx(1.0, abs=1e-12)
    assert tau3(w_coefficients()) == pytest.approx(0.0, abs=1e-12)
    assert tau3({(0, 0, 0): 1.0}) == 0.0


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_tau3_matches_hyperdeterminant(seed):
    rng = np.random.default_rng(seed)
    amps = random_amplitudes(rng)
    assert tau3(amps) == pytest.approx(hyperdet_tau3(amps), abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1),
       st.floats(-math.pi, math.pi), st.floats(-math.pi, math.pi), st.floats(-math.pi, math.pi))
def test_tau3_local_phase_invariance(seed, p0, p1, p2):
    rng = np.random.default_rng(seed)
    amps = random_amplitudes(rng)
    rotated = {c: a * cmath.exp(1j * (p0 * c[0] + p1 * c[1] + p2 * c[2]))
               for c, a in amps.items()}
    assert tau3(rotated) == pytest.approx(tau3(amps), abs=1e-12)


def test_tau3_class_law_on_class_states():
    rng = np.random.default_rng(7)
    for tag in ("2-0", "2-1", "2-2", "2-3"):
        for _ in range(20):
            k = len(CLASS_EXTRA_COMPONENTS[tag])
            raw = np.abs(rng.normal(size=k + 2)) + 1e-3
            raw /= np.linalg.norm(raw)
            alpha, beta, extras = raw[0], raw[1], raw[2:]
            # equal extras, as in the scan path
            e = float(extras[0]) if k else 0.0
            if k:
                raw = np.array([alpha, beta] + [e] * k)
                raw /= np.linalg.norm(raw)
                alpha, beta, e = raw[0], raw[1], raw[2]
            coeffs = class_coefficients(tag, float(alpha), float(beta), float(e),
                                        vartheta=float(rng.uniform(-3, 3)))
            assert tau3(coeffs) == pytest.approx(tau3_class(alpha, beta), abs=1e-12)
            assert 0.0 <= tau3(coeffs) <= 1.0


def test_full_five_component_state_breaks_class_law():
    # with all five coefficients nonzero the contraction picks up the
    # cross term 4 a111 a100 a010 a001 and no longer equals 4 |alpha beta|^2
    w = 1 / math.sqrt(5)
    amps = {c: w + 0j for c in
            ((0, 0, 0), (1, 1, 1), (1, 0, 0), (0, 1, 0), (0, 0, 1))}
    contraction = tau3(amps)
    assert contraction == pytest.approx(hyperdet_tau3(amps), abs=1e-12)
    assert abs(contraction - tau3_class(w, w)) > 0.01


def test_class_coefficients_support_enforced():
    r = 1 / math.sqrt(2)
    with pytest.raises(ConfigurationError):
        ClassCoefficients({(0, 0, 0): r, (0, 1, 1): r}, class_tag="2-0")
    with pytest.raises(ConfigurationError):
        ClassCoefficients({(0, 0, 0): 1.0}, class_tag="2-9")
    with pytest.raises(ConfigurationError):
        ClassCoefficients({(0, 0, 0): 0.5}, class_tag="2-0")  # not normalized


def test_mode_subset_validation():
    with pytest.raises(ConfigurationError):
        ModeSubset(down={3: 0.5}, up={4: 1.0})  # down not normalized
    with pytest.raises(ConfigurationError):
        r = 1 / math.sqrt(2)
        ModeSubset(down={3: r, 4: r}, up={4: 1.0})  # not orthogonal
    with pytest.raises(DomainError):
        ModeSubset(down={-1: 1.0}, up={0: 1.0})


def test_expand_state_normalized_and_correct():
    coeffs, subsets = preset("ghz_fock", n=(5, 5, 5), vartheta=0.4)
    psi = expand_state(coeffs, subsets)
    assert psi.is_normalized
    r = 1 / math.sqrt(2)
    assert psi.amplitude((5, 5, 5)) == pytest.approx(r * cmath.exp(0.2j))
    assert psi.amplitude((4, 7, 4)) == pytest.approx(r * cmath.exp(-0.2j))


def test_presets_all_construct_normalized_states():
    for name in PRESET_NAMES:
        coeffs, subsets = preset(name)
        psi = expand_state(coeffs, subsets)
        assert psi.is_normalized, name


def test_preset_preconditions():
    with pytest.raises(DomainError):
        preset("ghz_fock", n=(0, 5, 5))
    with pytest.raises(DomainError):
        preset("ghz_superposed", n=(5, 3, 5))  # mode 1 needs >= 4
    with pytest.raises(DomainError):
        preset("w_superposed", n=(1, 5, 5))
    with pytest.raises(ConfigurationError):
        preset("no_such_preset")


def test_preset_alpha_beta():
    coeffs, _ = preset("ghz_fock", alpha=0.6)
    assert abs(coeffs.amplitude((0, 0, 0))) == pytest.approx(0.6)
    assert abs(coeffs.amplitude((1, 1, 1))) == pytest.approx(0.8)
    assert tau3(coeffs) == pytest.approx(tau3_class(0.6, 0.8), abs=1e-12)


def test_class_2_3_keeps_up_down_down_empty():
    # the scan family leaves the (1,0,0) slot at zero, so the specialized
    # three-tangle expression stays exact
    coeffs, _ = preset("class_2_3")
    assert coeffs.amplitude((1, 0, 0)) == 0.0
    alpha = abs(coeffs.amplitude((0, 0, 0)))
    beta = abs(coeffs.amplitude((1, 1, 1)))
    assert tau3(coeffs) == pytest.approx(tau3_class(alpha, beta), abs=1e-12)


def test_tau3_class_domain():
    with pytest.raises(ConfigurationError):
        tau3_class(1.0, 1.0)
