"""Randomized consistency suites shared by the CLI selftest and the test suite.

Two families of checks over seeded random field states:

* unitarity of the per-pulse scattering elements (column sums of S^dagger S),
* equality of the branch-composition and operator-product overlap backends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .fock import FieldState, inner_product
from .interferometer import overlap_via_branches, overlap_via_products
from .pulses import (EVAL_MODES, FINITE_N, PulseParams, PulseTriple,
                     scattering_element)

UNITARITY_TOL = 1e-12
BACKEND_TOL = 1e-12


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    worst: float
    passed: bool


def random_state(rng: np.random.Generator, max_photons: int = 12,
                 max_terms: int = 6) -> FieldState:
    """Normalized random superposition with bounded photon numbers."""
    n_terms = int(rng.integers(1, max_terms + 1))
    terms = {}
    while len(terms) < n_terms:
        label = tuple(int(x) for x in rng.integers(0, max_photons + 1, size=3))
        terms[label] = complex(rng.normal(), rng.normal())
    return FieldState(terms).normalized()


def random_pulse(rng: np.random.Generator, mode: int) -> PulseParams:
    areas = (math.pi / 2, math.pi, math.pi / 2)
    return PulseParams(mode=mode, pulse_area=areas[mode],
                       nbar=float(rng.uniform(0.5, 20.0)),
                       coupling_phase=float(rng.uniform(-math.pi, math.pi)))


def unitarity_suite(cases: int = 1000, seed: int = 0) -> SuiteResult:
    """|gg psi|^2 + |eg psi|^2 = |psi|^2, |ee psi|^2 + |ge psi|^2 = |psi|^2,
    and the mixed column <gg psi|ge phi> + <eg psi|ee phi> = 0."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(cases):
        mode = int(rng.integers(0, 3))
        p = random_pulse(rng, mode)
        psi = random_state(rng)
        phi = random_state(rng)
        gg = scattering_element("gg", p, psi, FINITE_N)
        eg = scattering_element("eg", p, psi, FINITE_N)
        ge = scattering_element("ge", p, psi, FINITE_N)
        ee = scattering_element("ee", p, psi, FINITE_N)
        worst = max(worst, abs(gg.norm_squared() + eg.norm_squared() - 1.0))
        worst = max(worst, abs(ee.norm_squared() + ge.norm_squared() - 1.0))
        cross = (inner_product(scattering_element("gg", p, phi, FINITE_N),
                               scattering_element("ge", p, phi, FINITE_N))
                 + inner_product(scattering_element("eg", p, phi, FINITE_N),
                                 scattering_element("ee", p, phi, FINITE_N)))
        worst = max(worst, abs(cross))
    return SuiteResult("unitarity", cases, worst, worst <= UNITARITY_TOL)


def backend_suite(cases: int = 1000, seed: int = 1, max_photons: int = 12) -> SuiteResult:
    """overlap_via_branches and overlap_via_products agree componentwise."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for i in range(cases):
        psi = random_state(rng, max_photons=max_photons)
        eval_mode = EVAL_MODES[i % len(EVAL_MODES)]
        pulses = PulseTriple(
            pulses=tuple(random_pulse(rng, m) for m in range(3)),
            eval_mode=eval_mode)
        a = overlap_via_branches(psi, pulses)
        b = overlap_via_products(psi, pulses)
        worst = max(worst, abs(a.o_ll - b.o_ll), abs(a.o_uu - b.o_uu),
                    abs(a.o_lu - b.o_lu))
    return SuiteResult("backend_equivalence", cases, worst, worst <= BACKEND_TOL)


def run_all(cases: int = 1000, seed: int = 0) -> List[SuiteResult]:
    return [unitarity_suite(cases=cases, seed=seed),
            backend_suite(cases=cases, seed=seed + 1)]
