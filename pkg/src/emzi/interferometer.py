"""Branch composition, overlap expectations and the interference signal.

Two independent routes to the same three overlaps:

* `overlap_via_branches` composes the lower branch gg -> eg -> ge and the
  upper branch eg -> ge -> gg from the per-pulse scattering elements and takes
  inner products of the two branch states.
* `overlap_via_products` evaluates the reduced operator products directly on
  the initial state (diagonal in the photon numbers for <Ol+ Ol> and
  <Ou+ Ou>, a single (-1, +2, -1) photon shift for <Ol+ Ou>).

Free evolution between pulses is the identity here: on resonance the phases
accumulated on both interfering paths cancel in every overlap.  The
closed-interferometer displacement phase enters <Ol+ Ou> only through
delta_theta = theta_0 - 2 theta_1 + theta_2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import DomainError
from .fock import FieldState, inner_product
from .pulses import PulseTriple, scattering_element, trig_factor

_HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class OverlapTriple:
    """<Ol+ Ol>, <Ou+ Ou> (real, non-negative) and the cross overlap <Ol+ Ou>."""

    o_ll: float
    o_uu: float
    o_lu: complex

    def __post_init__(self):
        if self.o_ll < -_HERMITICITY_TOL or self.o_uu < -_HERMITICITY_TOL:
            raise DomainError("branch populations must be non-negative")
        bound = math.sqrt(max(self.o_ll, 0.0) * max(self.o_uu, 0.0))
        if abs(self.o_lu) > bound + 1e-12:
            raise DomainError("Cauchy-Schwarz violated in overlap triple")


@dataclass(frozen=True)
class SignalResult:
    """Visibility, phase (in (-pi, pi]), amplitude and the pulse-phase part."""

    visibility: float
    phase: float
    amplitude: float
    delta_theta: float


def branch_states(psi: FieldState, pulses: PulseTriple) -> Tuple[FieldState, FieldState]:
    """Field states after propagation along the lower and upper branch.

    lower = S2_ge S1_eg S0_gg psi,  upper = S2_gg S1_ge S0_eg psi.
    The two spatially separated (discarded) paths are never built.
    """
    p0, p1, p2 = pulses.pulses
    mode = pulses.eval_mode
    lower = scattering_element("ge", p2,
            scattering_element("eg", p1,
            scattering_element("gg", p0, psi, mode), mode), mode)
    upper = scattering_element("gg", p2,
            scattering_element("ge", p1,
            scattering_element("eg", p0, psi, mode), mode), mode)
    return lower, upper


def overlap_via_branches(psi: FieldState, pulses: PulseTriple) -> OverlapTriple:
    lower, upper = branch_states(psi, pulses)
    o_ll = lower.norm_squared()
    o_uu = upper.norm_squared()
    o_lu = inner_product(lower, upper)
    return OverlapTriple(o_ll=o_ll, o_uu=o_uu, o_lu=o_lu)


def overlap_via_products(psi: FieldState, pulses: PulseTriple) -> OverlapTriple:
    """Same contract as `overlap_via_branches`, via the operator products.

    Factors that originate from s/sqrt(n) adjacent to an annihilation
    operator keep the explicit vacuum truncation, so both backends agree
    exactly in either evaluation mode.
    """
    p0, p1, p2 = pulses.pulses
    em = pulses.eval_mode

    def c(pp, n):
        return trig_factor("c", n, pp, em)

    def s(pp, n):
        return trig_factor("s", n, pp, em)

    o_uu = 0.0
    o_ll = 0.0
    for label, amp in psi.terms.items():
        n0, n1, n2 = label
        w = amp.real**2 + amp.imag**2
        # <Ou+ Ou> = c^2(n2) s^2(n1+1) s^2(n0), zero when the first absorption is impossible
        if n0 >= 1:
            o_uu += w * c(p2, n2) ** 2 * s(p1, n1 + 1) ** 2 * s(p0, n0) ** 2
        # <Ol+ Ol> = s^2(n2+1) s^2(n1) c^2(n0), zero when the mirror absorption is impossible
        if n1 >= 1:
            o_ll += w * s(p2, n2 + 1) ** 2 * s(p1, n1) ** 2 * c(p0, n0) ** 2

    # <Ol+ Ou>: shift (-1, +2, -1) with weight
    #   s(n0) c(n0-1)  x  s(n1+1) s(n1+2)  x  s(n2) c(n2)
    terms = psi.terms
    acc = 0.0 + 0.0j
    for label, amp in terms.items():
        n0, n1, n2 = label
        if n0 < 1 or n2 < 1:
            continue
        target = (n0 - 1, n1 + 2, n2 - 1)
        bra = terms.get(target)
        if bra is None:
            continue
        weight = (s(p0, n0) * c(p0, n0 - 1)
                  * s(p1, n1 + 1) * s(p1, n1 + 2)
                  * s(p2, n2) * c(p2, n2))
        acc += bra.conjugate() * amp * weight
    o_lu = cmath.exp(1j * pulses.delta_theta) * acc
    return OverlapTriple(o_ll=o_ll, o_uu=o_uu, o_lu=o_lu)


def signal(ov: OverlapTriple, delta_theta: float = 0.0) -> SignalResult:
    """Visibility, phase and amplitude from the overlap triple.

    The visibility is reported as a magnitude; any sign of the trigonometric
    product is folded into the phase.
    """
    total = ov.o_ll + ov.o_uu
    if total <= 0.0:
        raise DomainError("no surviving population: both branches extinguished")
    visibility = 2.0 * abs(ov.o_lu) / total
    if visibility > 1.0 + 1e-12:
        raise DomainError(f"visibility {visibility} exceeds 1")
    visibility = min(visibility, 1.0)
    phase = cmath.phase(ov.o_lu) if ov.o_lu != 0 else 0.0
    amplitude = 2.0 * total
    return SignalResult(visibility=visibility, phase=phase,
                        amplitude=amplitude, delta_theta=delta_theta)


def evaluate(psi: FieldState, pulses: PulseTriple, backend: str = "branches") -> SignalResult:
    """Run the interferometer on `psi` and extract the signal parameters."""
    if not psi.is_normalized:
        n2 = psi.norm_squared()
        if abs(n2 - 1.0) > 1e-9:
            raise DomainError(f"initial state must be normalized, got |psi|^2 = {n2}")
    if backend == "branches":
        ov = overlap_via_branches(psi, pulses)
    elif backend == "products":
        ov = overlap_via_products(psi, pulses)
    else:
        raise DomainError(f"unknown backend {backend!r}")
    return signal(ov, delta_theta=pulses.delta_theta)


def fringe(res: SignalResult, theta_grid: Sequence[float]) -> List[Tuple[float, float]]:
    """Interference fringe I(vartheta) = (A/2) (1 + V cos(Phi_0 + vartheta))."""
    if len(theta_grid) == 0:
        raise DomainError("fringe grid must be non-empty")
    half = 0.5 * res.amplitude
    return [(float(t), half * (1.0 + res.visibility * math.cos(res.phase + t)))
            for t in theta_grid]
