"""Two-state subsets, entanglement-class states and the residual entanglement.

Each field mode is restricted to a pair of orthonormal states {down, up}, so a
three-field state is fixed by eight amplitudes a_ijk with i, j, k in
{down, up}.  The entanglement classes are labelled 2-j by how many modes can
be traced out while a pairwise-entangled rest remains; class states are built
from the GHZ pair (down,down,down)/(up,up,up) by adding single-flip
components.

Residual (GHZ-type) entanglement is measured by the three-tangle, computed as
the full Levi-Civita contraction of the amplitudes.  For the class states used
here it reduces to 4 |alpha beta|^2 with alpha, beta the amplitudes of the
(down,down,down) and (up,up,up) components; this requires the product
a_111 a_100 a_010 a_001 to vanish, which all presets below guarantee by
keeping the (up,down,down) coefficient at zero whenever the class-2-3
component is present.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Optional, Sequence, Tuple

from .errors import ConfigurationError, DomainError
from .fock import FieldState, FockLabel

Component = Tuple[int, int, int]  # 0 = down, 1 = up, per mode

SUBSET_TOL = 1e-12

CLASS_SUPPORT: Dict[str, Tuple[Component, ...]] = {
    "separable": ((0, 0, 0),),
    "2-0": ((0, 0, 0), (1, 1, 1)),
    "2-1": ((0, 0, 0), (1, 1, 1), (1, 0, 0)),
    "2-2": ((0, 0, 0), (1, 1, 1), (1, 0, 0), (0, 1, 0)),
    "2-3": ((0, 0, 0), (1, 1, 1), (1, 0, 0), (0, 1, 0), (0, 0, 1)),
}

PRESET_NAMES = (
    "separable_fock",
    "separable_superposed",
    "ghz_fock",
    "w_fock",
    "ghz_superposed",
    "ghz_superposed_matched",
    "w_superposed",
    "class_2_1",
    "class_2_2",
    "class_2_3",
)

# photon shifts of the up-component relative to the down-component that make
# the cross overlap survive: (n0 - 1, n1 + 2, n2 - 1)
FOCK_UP_OFFSETS = (-1, +2, -1)


@dataclass(frozen=True)
class ModeSubset:
    """Orthonormal pair {down, up} of single-mode Fock superpositions."""

    down: Dict[int, complex]
    up: Dict[int, complex]

    def __post_init__(self):
        for name, vec in (("down", self.down), ("up", self.up)):
            if any(k < 0 for k in vec):
                raise DomainError(f"photon-number underflow in subset state {name}: {sorted(vec)}")
            norm2 = sum(abs(a) ** 2 for a in vec.values())
            if abs(norm2 - 1.0) > SUBSET_TOL:
                raise ConfigurationError(f"subset state {name} not normalized: |.|^2 = {norm2}")
        overlap = sum(self.down[k].conjugate() * self.up[k] for k in self.down if k in self.up)
        if abs(overlap) > SUBSET_TOL:
            raise ConfigurationError(f"subset states not orthogonal: <down|up> = {overlap}")

    def state(self, which: int) -> Dict[int, complex]:
        return self.down if which == 0 else self.up


@dataclass(frozen=True)
class ClassCoefficients:
    """Eight amplitudes a_ijk restricted to the support of one class."""

    amplitudes: Dict[Component, complex]
    class_tag: str

    def __post_init__(self):
        if self.class_tag not in CLASS_SUPPORT:
            raise ConfigurationError(f"unknown class tag {self.class_tag!r}")
        support = CLASS_SUPPORT[self.class_tag]
        for comp, amp in self.amplitudes.items():
            if amp != 0 and comp not in support:
                raise ConfigurationError(
                    f"component {comp} not allowed in class {self.class_tag}")
        norm2 = sum(abs(a) ** 2 for a in self.amplitudes.values())
        if abs(norm2 - 1.0) > SUBSET_TOL:
            raise ConfigurationError(f"class coefficients not normalized: sum |a|^2 = {norm2}")

    def amplitude(self, comp: Component) -> complex:
        return self.amplitudes.get(comp, 0.0 + 0.0j)


def expand_state(coeffs: ClassCoefficients, subsets: Sequence[ModeSubset]) -> FieldState:
    """Sum over a_ijk |i_0> x |j_1> x |k_2> as a normalized FieldState."""
    if len(subsets) != 3:
        raise ConfigurationError(f"need one subset per mode, got {len(subsets)}")
    terms: Dict[FockLabel, complex] = {}
    for comp, amp in coeffs.amplitudes.items():
        if amp == 0:
            continue
        for (p0, a0), (p1, a1), (p2, a2) in product(
                subsets[0].state(comp[0]).items(),
                subsets[1].state(comp[1]).items(),
                subsets[2].state(comp[2]).items()):
            label = (p0, p1, p2)
            terms[label] = terms.get(label, 0.0) + amp * a0 * a1 * a2
    state = FieldState(terms)
    if abs(state.norm_squared() - 1.0) > 1e-10:
        raise ConfigurationError("expanded state is not normalized; inputs violate their invariants")
    return state


_EPS_PAIRS = (((0, 1), 1.0), ((1, 0), -1.0))


def tau3(coeffs) -> float:
    """Three-tangle from the full Levi-Civita contraction of the amplitudes.

    Accepts ClassCoefficients or any mapping from (i, j, k) bit tuples to
    amplitudes.  Only index pairs with opposite values contribute, so the
    twelve-index sum collapses to 2^6 terms.
    """
    if isinstance(coeffs, ClassCoefficients):
        a = coeffs.amplitude
    else:
        a = lambda comp: coeffs.get(comp, 0.0 + 0.0j)
    total = 0.0 + 0.0j
    for (i, i_), s1 in _EPS_PAIRS:
        for (j, j_), s2 in _EPS_PAIRS:
            for (k, k_), s3 in _EPS_PAIRS:
                for (m, m_), s4 in _EPS_PAIRS:
                    for (n, n_), s5 in _EPS_PAIRS:
                        for (p, p_), s6 in _EPS_PAIRS:
                            total += (s1 * s2 * s3 * s4 * s5 * s6
                                      * a((i, j, k)) * a((i_, j_, m))
                                      * a((n, p, k_)) * a((n_, p_, m_)))
    value = 2.0 * abs(total)
    return min(max(value, 0.0), 1.0) if value <= 1.0 + 1e-9 else value


def tau3_class(alpha: float, beta: float) -> float:
    """Specialized residual entanglement 4 |alpha beta|^2 of the class states."""
    if alpha**2 + beta**2 > 1.0 + 1e-9:
        raise ConfigurationError("alpha^2 + beta^2 must not exceed 1")
    return 4.0 * abs(alpha * beta) ** 2


# ---------------------------------------------------------------------------
# subset constructors
# ---------------------------------------------------------------------------

def fock_subset(n_down: int, n_up: int) -> ModeSubset:
    if n_down == n_up:
        raise ConfigurationError("down and up Fock numbers must differ")
    return ModeSubset(down={n_down: 1.0 + 0.0j}, up={n_up: 1.0 + 0.0j})


def _pair(amp_a: complex, n_a: int, amp_b: complex, n_b: int) -> Dict[int, complex]:
    r = 1.0 / math.sqrt(2.0)
    return {n_a: r * amp_a, n_b: r * amp_b}


def ghz_table_subsets(n: Sequence[int], varthetas: Sequence[float]) -> Tuple[ModeSubset, ...]:
    """Superposed-Fock subsets for the GHZ configuration (gap-2/4 structure).

    The up state of every mode is the down state shifted by the overlap's
    photon shift, so the GHZ cross term survives with full weight.
    """
    n0, n1, n2 = n
    _require(n0 >= 1 and n1 >= 4 and n2 >= 1, n)
    e0, e1, e2 = (cmath.exp(2j * v) for v in varthetas)
    s0 = ModeSubset(down=_pair(1.0, n0, e0, n0 + 2), up=_pair(1.0, n0 - 1, e0, n0 + 1))
    s1 = ModeSubset(down=_pair(1.0, n1, e1, n1 - 4), up=_pair(1.0, n1 + 2, e1, n1 - 2))
    s2 = ModeSubset(down=_pair(1.0, n2, e2, n2 + 2), up=_pair(1.0, n2 - 1, e2, n2 + 1))
    return (s0, s1, s2)


def w_table_subsets(n: Sequence[int], varthetas: Sequence[float]) -> Tuple[ModeSubset, ...]:
    """Superposed-Fock subsets for the W configuration (gap-matched structure).

    Every down state is an even superposition whose internal photon gap
    matches the overlap shift of its mode, so each mode contributes half of
    its population to the interference.
    """
    n0, n1, n2 = n
    _require(n0 >= 2 and n1 >= 2 and n2 >= 2, n)
    v0, v1, v2 = varthetas
    s0 = ModeSubset(down=_pair(cmath.exp(0.5j * v0), n0, cmath.exp(-0.5j * v0), n0 - 1),
                    up=_pair(cmath.exp(1.5j * v0), n0 + 1, cmath.exp(-1.5j * v0), n0 - 2))
    s1 = ModeSubset(down=_pair(cmath.exp(0.5j * v1), n1, cmath.exp(-0.5j * v1), n1 + 2),
                    up=_pair(cmath.exp(1.5j * v1), n1 - 2, cmath.exp(-1.5j * v1), n1 + 4))
    s2 = ModeSubset(down=_pair(cmath.exp(0.5j * v2), n2, cmath.exp(-0.5j * v2), n2 - 1),
                    up=_pair(cmath.exp(1.5j * v2), n2 + 1, cmath.exp(-1.5j * v2), n2 - 2))
    return (s0, s1, s2)


def fock_table_subsets(n: Sequence[int]) -> Tuple[ModeSubset, ...]:
    n0, n1, n2 = n
    _require(n0 >= 1 and n2 >= 1, n)
    return tuple(fock_subset(n[m], n[m] + FOCK_UP_OFFSETS[m]) for m in range(3))


def _require(ok: bool, n) -> None:
    if not ok:
        raise DomainError(f"base photon numbers {tuple(n)} too small for this preset")


# ---------------------------------------------------------------------------
# coefficient constructors
# ---------------------------------------------------------------------------

def ghz_coefficients(alpha: float, beta: float, vartheta: float,
                     extras: Optional[Dict[Component, float]] = None,
                     class_tag: str = "2-0") -> ClassCoefficients:
    """alpha e^{+i vartheta/2} on (down,down,down), beta e^{-i vartheta/2} on
    (up,up,up), plus optional real single-flip amplitudes."""
    amps: Dict[Component, complex] = {
        (0, 0, 0): alpha * cmath.exp(0.5j * vartheta),
        (1, 1, 1): beta * cmath.exp(-0.5j * vartheta),
    }
    for comp, w in (extras or {}).items():
        if w != 0.0:
            amps[comp] = complex(w)
    return ClassCoefficients(amplitudes=amps, class_tag=class_tag)


def w_coefficients(weights: Sequence[float] = None,
                   phases: Sequence[float] = (0.0, 0.0, 0.0)) -> ClassCoefficients:
    """W arrangement: the three single-up-flip components."""
    if weights is None:
        r = 1.0 / math.sqrt(3.0)
        weights = (r, r, r)
    comps = ((0, 0, 1), (0, 1, 0), (1, 0, 0))
    amps = {c: w * cmath.exp(1j * ph) for c, w, ph in zip(comps, weights, phases)}
    return ClassCoefficients(amplitudes=amps, class_tag="2-3")


# extra single-flip components per class scan family; the 2-3 family keeps the
# (1,0,0) coefficient at zero so the three-tangle stays 4 |alpha beta|^2
CLASS_EXTRA_COMPONENTS: Dict[str, Tuple[Component, ...]] = {
    "2-0": (),
    "2-1": ((1, 0, 0),),
    "2-2": ((1, 0, 0), (0, 1, 0)),
    "2-3": ((0, 1, 0), (0, 0, 1)),
}


def class_coefficients(tag: str, alpha: float, beta: float, extra: float,
                       vartheta: float = 0.0) -> ClassCoefficients:
    extras = {c: extra for c in CLASS_EXTRA_COMPONENTS[tag]}
    return ghz_coefficients(alpha, beta, vartheta, extras=extras, class_tag=tag)


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

def preset(name: str, n: Sequence[int] = (20, 20, 20), vartheta: float = 0.0,
           varthetas: Optional[Sequence[float]] = None,
           alpha: Optional[float] = None, beta: Optional[float] = None,
           extra: Optional[float] = None
           ) -> Tuple[ClassCoefficients, Tuple[ModeSubset, ...]]:
    """Named field configurations.

    `varthetas` are the per-mode superposition phases; when omitted the total
    relative phase `vartheta` is placed on mode 0.  For the GHZ-type presets
    the effective signal phase is vartheta (= sum of varthetas).
    """
    n = tuple(int(x) for x in n)
    if varthetas is None:
        varthetas = (vartheta, 0.0, 0.0)
    else:
        varthetas = tuple(float(v) for v in varthetas)
        vartheta = sum(varthetas)

    if name == "separable_fock":
        coeffs = ClassCoefficients({(0, 0, 0): 1.0 + 0.0j}, class_tag="separable")
        return coeffs, fock_table_subsets(n)

    if name == "separable_superposed":
        coeffs = ClassCoefficients({(0, 0, 0): 1.0 + 0.0j}, class_tag="separable")
        return coeffs, w_table_subsets(n, varthetas)

    if name == "ghz_fock":
        a, b = _alpha_beta(alpha, beta)
        return ghz_coefficients(a, b, vartheta), fock_table_subsets(n)

    if name == "w_fock":
        return w_coefficients(phases=varthetas), fock_table_subsets(n)

    if name == "ghz_superposed":
        a, b = _alpha_beta(alpha, beta)
        return ghz_coefficients(a, b, vartheta), ghz_table_subsets(n, varthetas)

    if name == "ghz_superposed_matched":
        a, b = _alpha_beta(alpha, beta)
        return ghz_coefficients(a, b, vartheta), w_table_subsets(n, varthetas)

    if name == "w_superposed":
        return w_coefficients(), w_table_subsets(n, varthetas)

    if name in ("class_2_1", "class_2_2", "class_2_3"):
        tag = name.replace("class_", "").replace("_", "-")
        k = len(CLASS_EXTRA_COMPONENTS[tag])
        if alpha is None and beta is None and extra is None:
            # equal superposition over all nonzero components
            w = 1.0 / math.sqrt(k + 2.0)
            a = b = e = w
        else:
            a, b = _alpha_beta(alpha, beta, norm=False)
            e = 0.0 if extra is None else float(extra)
            total = a * a + b * b + k * e * e
            if abs(total - 1.0) > 1e-9:
                raise ConfigurationError(f"class coefficients not normalized: {total}")
        return class_coefficients(tag, a, b, e, vartheta), fock_table_subsets(n)

    raise ConfigurationError(f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}")


def _alpha_beta(alpha, beta, norm=True):
    if alpha is None and beta is None:
        r = 1.0 / math.sqrt(2.0)
        return r, r
    if alpha is None:
        beta = float(beta)
        return math.sqrt(max(1.0 - beta * beta, 0.0)), beta
    if beta is None:
        alpha = float(alpha)
        if norm:
            return alpha, math.sqrt(max(1.0 - alpha * alpha, 0.0))
        return alpha, 0.0
    return float(alpha), float(beta)
