"""Scattering-operator matrix elements of the three atom-optical pulses.

Each pulse drives resonant single-photon Rabi oscillations on its own field
mode.  In field space the four internal-state matrix elements act as

    gg: |n> -> c_n |n>                  ee: |n> -> c_{n+1} |n>
    eg: |n> -> -i e^{+i theta} s_n |n-1>    (vacuum term vanishes)
    ge: |n> -> -i e^{-i theta} s_{n+1} |n+1>

with c_n = cos((Theta/2) sqrt(n/nbar)) and s_n the matching sine.  The
spatial displacement factor is not applied here; for a closed interferometer
it collapses to the single phase delta_theta handled downstream.

Two evaluation modes exist: "finite_n" uses the trigonometric factors above,
"ideal_limit" replaces them by their high-photon-number constants (1/sqrt(2)
for a pi/2 pulse, 0 and 1 for a pi pulse).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .errors import ConfigurationError, DomainError
from .fock import FieldState, FockLabel

FINITE_N = "finite_n"
IDEAL_LIMIT = "ideal_limit"
EVAL_MODES = (FINITE_N, IDEAL_LIMIT)

BEAM_SPLITTER_AREA = math.pi / 2
MIRROR_AREA = math.pi

_AREA_TOL = 1e-9


@dataclass(frozen=True)
class PulseParams:
    """One pulse: acts on `mode`, with pulse area, reference photon number
    and coupling phase."""

    mode: int
    pulse_area: float
    nbar: float
    coupling_phase: float = 0.0

    def __post_init__(self):
        if self.mode not in (0, 1, 2):
            raise ConfigurationError(f"pulse mode must be 0, 1 or 2, got {self.mode}")
        if not self.pulse_area > 0:
            raise ConfigurationError(f"pulse_area must be > 0, got {self.pulse_area}")
        if not self.nbar > 0:
            raise ConfigurationError(f"nbar must be > 0, got {self.nbar}")


@dataclass(frozen=True)
class PulseTriple:
    """The beam splitter / mirror / beam splitter sequence (modes 0, 1, 2)."""

    pulses: Tuple[PulseParams, PulseParams, PulseParams]
    eval_mode: str = FINITE_N

    def __post_init__(self):
        if self.eval_mode not in EVAL_MODES:
            raise ConfigurationError(f"eval_mode must be one of {EVAL_MODES}, got {self.eval_mode!r}")
        modes = tuple(p.mode for p in self.pulses)
        if modes != (0, 1, 2):
            raise ConfigurationError(f"pulses must cover modes (0, 1, 2) in order, got {modes}")

    @property
    def delta_theta(self) -> float:
        """Closed-interferometer phase theta_0 - 2 theta_1 + theta_2."""
        t0, t1, t2 = (p.coupling_phase for p in self.pulses)
        return t0 - 2.0 * t1 + t2

    @classmethod
    def mach_zehnder(cls, nbars: Sequence[float], coupling_phases: Sequence[float] = (0.0, 0.0, 0.0),
                     eval_mode: str = FINITE_N) -> "PulseTriple":
        """pi/2, pi, pi/2 sequence with per-mode nbar and coupling phases."""
        areas = (BEAM_SPLITTER_AREA, MIRROR_AREA, BEAM_SPLITTER_AREA)
        pulses = tuple(
            PulseParams(mode=m, pulse_area=areas[m], nbar=float(nbars[m]),
                        coupling_phase=float(coupling_phases[m]))
            for m in range(3)
        )
        return cls(pulses=pulses, eval_mode=eval_mode)

    @classmethod
    def for_state(cls, psi: FieldState, coupling_phases: Sequence[float] = (0.0, 0.0, 0.0),
                  eval_mode: str = FINITE_N,
                  nbar_override: Optional[Sequence[float]] = None) -> "PulseTriple":
        """Default binding: nbar_l = mean photon number of mode l in `psi`."""
        if nbar_override is not None:
            nbars = [float(x) for x in nbar_override]
        else:
            nbars = [psi.mean_photon(m) for m in range(3)]
            for m, nb in enumerate(nbars):
                if not nb > 0:
                    raise ConfigurationError(
                        f"mode {m} of the initial state has zero mean photon number; "
                        "pass an explicit nbar")
        return cls.mach_zehnder(nbars, coupling_phases, eval_mode)


def _ideal_constants(pulse_area: float) -> Tuple[float, float]:
    if abs(pulse_area - BEAM_SPLITTER_AREA) < _AREA_TOL:
        r = 1.0 / math.sqrt(2.0)
        return r, r
    if abs(pulse_area - MIRROR_AREA) < _AREA_TOL:
        return 0.0, 1.0
    raise ConfigurationError(
        f"ideal_limit is only defined for pulse areas pi/2 and pi, got {pulse_area}")


def trig_factor(kind: str, n: int, p: PulseParams, eval_mode: str) -> float:
    """c_n or s_n for one pulse; `kind` is "c" or "s"."""
    if kind not in ("c", "s"):
        raise ConfigurationError(f"kind must be 'c' or 's', got {kind!r}")
    if n < 0:
        raise DomainError(f"photon count must be >= 0, got {n}")
    if eval_mode == IDEAL_LIMIT:
        c, s = _ideal_constants(p.pulse_area)
        return c if kind == "c" else s
    if eval_mode != FINITE_N:
        raise ConfigurationError(f"unknown eval_mode {eval_mode!r}")
    arg = 0.5 * p.pulse_area * math.sqrt(n / p.nbar)
    return math.cos(arg) if kind == "c" else math.sin(arg)


def scattering_element(elem: str, p: PulseParams, state: FieldState,
                       eval_mode: str = FINITE_N) -> FieldState:
    """Apply the field part of one scattering-matrix element on the pulse's mode.

    `elem` is one of "gg", "ge", "eg", "ee".  The s/sqrt(n) operator at n=0
    never contributes: it only appears next to an annihilation operator, whose
    vacuum term is dropped here explicitly.
    """
    if elem not in ("gg", "ge", "eg", "ee"):
        raise ConfigurationError(f"element must be gg/ge/eg/ee, got {elem!r}")
    mode = p.mode
    out: Dict[FockLabel, complex] = {}
    for label, amp in state.terms.items():
        n = label[mode]
        if elem == "gg":
            out[label] = out.get(label, 0.0) + trig_factor("c", n, p, eval_mode) * amp
        elif elem == "ee":
            out[label] = out.get(label, 0.0) + trig_factor("c", n + 1, p, eval_mode) * amp
        elif elem == "eg":
            if n == 0:
                continue  # no photon to absorb
            factor = -1j * complex(math.cos(p.coupling_phase), math.sin(p.coupling_phase))
            new = _shifted(label, mode, -1)
            out[new] = out.get(new, 0.0) + factor * trig_factor("s", n, p, eval_mode) * amp
        else:  # ge, emission
            factor = -1j * complex(math.cos(-p.coupling_phase), math.sin(-p.coupling_phase))
            new = _shifted(label, mode, +1)
            out[new] = out.get(new, 0.0) + factor * trig_factor("s", n + 1, p, eval_mode) * amp
    return FieldState(out)


def _shifted(label: FockLabel, mode: int, delta: int) -> FockLabel:
    parts = list(label)
    parts[mode] += delta
    return (parts[0], parts[1], parts[2])
