"""Parameter scans over the residual entanglement, offset optimization, fringes.

`tau3_scan` walks a family of states along a documented coefficient path that
realizes each requested three-tangle value, runs the interferometer and
records the signal.  `optimize_offsets` exhaustively shifts the Fock labels of
a preset's subset states on a bounded integer lattice and returns the
configuration of maximal visibility in the high-photon-number limit.
`fringe_scan` sweeps the state phase and records the exit-port intensity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ConfigurationError, DomainError
from .interferometer import evaluate, overlap_via_products, signal
from .pulses import FINITE_N, IDEAL_LIMIT, PulseTriple
from .states import (CLASS_EXTRA_COMPONENTS, ClassCoefficients, ModeSubset,
                     class_coefficients, expand_state, ghz_coefficients,
                     preset, tau3_class, w_coefficients)

# photon shift per mode that the cross overlap <Ol+ Ou> imposes on the bra
OVERLAP_SHIFTS = (-1, +2, -1)

# families whose coefficients can be driven continuously through tau3
SCAN_FAMILIES: Dict[str, str] = {
    "ghz_fock": "2-0",
    "ghz_superposed": "2-0",
    "ghz_superposed_matched": "2-0",
    "class_2_1": "2-1",
    "class_2_2": "2-2",
    "class_2_3": "2-3",
}

COEFFICIENT_PATH = (
    "alpha = sqrt(1 - M beta^2), beta = sqrt((1 - sqrt(1 - M tau3)) / (2 M)), "
    "extras all equal to (1 - tau3) beta, M = 1 + k (1 - tau3)^2 with k the "
    "number of extra components; tau3 = 4 alpha^2 beta^2 holds exactly along "
    "the path")


@dataclass(frozen=True)
class ScanSpec:
    """One tau3 scan: which family, which grid, which phases."""

    family: str
    tau3_values: Tuple[float, ...]
    n: Tuple[int, int, int] = (20, 20, 20)
    vartheta: float = 0.0
    coupling_phases: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    eval_mode: str = IDEAL_LIMIT
    backend: str = "branches"

    def __post_init__(self):
        if self.family not in SCAN_FAMILIES:
            raise ConfigurationError(
                f"family {self.family!r} does not support tau3 scans; "
                f"choose one of {sorted(SCAN_FAMILIES)}")
        if len(self.tau3_values) == 0:
            raise ConfigurationError("tau3 grid must be non-empty")
        prev = None
        for t in self.tau3_values:
            if not (0.0 <= t <= 1.0):
                raise DomainError(f"tau3 = {t} outside [0, 1]")
            if prev is not None and t <= prev:
                raise ConfigurationError("tau3 grid must be strictly increasing")
            prev = t


@dataclass(frozen=True)
class ScanPoint:
    tau3: float
    visibility: float
    phase: float
    amplitude: float


@dataclass(frozen=True)
class OptResult:
    """Best visibility and the per-label offsets that realize it."""

    tau3: float
    best_visibility: float
    best_offsets: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]  # per mode: (down, up)
    evaluations: int


def coefficients_for_tau3(family: str, tau3: float, vartheta: float = 0.0) -> ClassCoefficients:
    """Invert tau3 = 4 |alpha beta|^2 along the scan path (see COEFFICIENT_PATH)."""
    tag = SCAN_FAMILIES[family]
    if not (0.0 <= tau3 <= 1.0):
        raise DomainError(f"tau3 = {tau3} outside [0, 1]")
    k = len(CLASS_EXTRA_COMPONENTS.get(tag, ()))
    lam = 1.0 - tau3
    m = 1.0 + k * lam * lam
    disc = 1.0 - m * tau3
    if disc < -1e-12:
        raise DomainError(f"tau3 = {tau3} unreachable along the scan path of {family}")
    beta = math.sqrt(max(0.0, (1.0 - math.sqrt(max(disc, 0.0))) / (2.0 * m)))
    alpha = math.sqrt(max(0.0, 1.0 - m * beta * beta))
    if k == 0:
        return ghz_coefficients(alpha, beta, vartheta)
    return class_coefficients(tag, alpha, beta, lam * beta, vartheta)


def _family_state(family: str, tau3: float, n, vartheta: float):
    coeffs = coefficients_for_tau3(family, tau3, vartheta)
    alpha = abs(coeffs.amplitude((0, 0, 0)))
    beta = abs(coeffs.amplitude((1, 1, 1)))
    extra = abs(coeffs.amplitude(CLASS_EXTRA_COMPONENTS[coeffs.class_tag][0])) \
        if CLASS_EXTRA_COMPONENTS.get(coeffs.class_tag) else None
    if coeffs.class_tag == "2-0":
        _, subsets = preset(family, n=n, vartheta=vartheta, alpha=alpha, beta=beta)
        return coeffs, subsets
    _, subsets = preset(family, n=n, vartheta=vartheta, alpha=alpha, beta=beta, extra=extra)
    return coeffs, subsets


def tau3_scan(spec: ScanSpec) -> Tuple[List[ScanPoint], Dict[str, object]]:
    """Signal parameters along a tau3 grid; returns (points, metadata)."""
    points: List[ScanPoint] = []
    for t in spec.tau3_values:
        coeffs, subsets = _family_state(spec.family, t, spec.n, spec.vartheta)
        psi = expand_state(coeffs, subsets)
        pulses = PulseTriple.for_state(psi, coupling_phases=spec.coupling_phases,
                                       eval_mode=spec.eval_mode)
        res = evaluate(psi, pulses, backend=spec.backend)
        points.append(ScanPoint(tau3=t, visibility=res.visibility,
                                phase=res.phase, amplitude=res.amplitude))
    meta = {
        "family": spec.family,
        "class_tag": SCAN_FAMILIES[spec.family],
        "coefficient_path": COEFFICIENT_PATH,
        "eval_mode": spec.eval_mode,
        "backend": spec.backend,
        "n": list(spec.n),
        "vartheta": spec.vartheta,
        "coupling_phases": list(spec.coupling_phases),
    }
    return points, meta


# ---------------------------------------------------------------------------
# offset optimization
# ---------------------------------------------------------------------------

def _preset_label_sets(family: str, n) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Per-mode (down labels, up labels) of the unshifted preset, zero phases."""
    if family in SCAN_FAMILIES:
        _, subsets = _family_state(family, 0.5, n, 0.0)  # subsets do not depend on tau3
    elif family == "w_superposed":
        _, subsets = preset("w_superposed", n=n)
    else:
        raise ConfigurationError(f"family {family!r} is not optimizable")
    return [(tuple(sorted(s.down)), tuple(sorted(s.up))) for s in subsets]


def _overlap_matrix(down: Sequence[int], up: Sequence[int], shift: int) -> Tuple[float, ...]:
    """2x2 cross-overlap factors E(bra, ket) for one mode, flattened row-major.

    E(b, k) = sum over label pairs (x in bra set, y in ket set) with
    x = y + shift of the equal-weight amplitudes 1/sqrt(|bra|) 1/sqrt(|ket|).
    """
    sets = (tuple(down), tuple(up))
    out = []
    for bra in sets:
        for ket in sets:
            matches = sum(1 for y in ket if (y + shift) in bra)
            out.append(matches / math.sqrt(len(bra) * len(ket)))
    return tuple(out)


def _mode_catalog(base: Tuple[Tuple[int, ...], Tuple[int, ...]], shift: int,
                  bound: int) -> Tuple[List[Tuple[float, ...]], List[Tuple[Tuple[int, ...], Tuple[int, ...]]], int]:
    """All distinct overlap matrices reachable by shifting each label by <= bound.

    Returns (matrices, representative label sets, raw enumeration count).
    The representative of each matrix is the lexicographically smallest offset
    assignment, which the sorted enumeration order guarantees.
    """
    down0, up0 = base
    labels0 = down0 + up0
    nd = len(down0)
    offsets = range(-bound, bound + 1)
    seen: Dict[Tuple[float, ...], Tuple[Tuple[int, ...], Tuple[int, ...]]] = {}
    order: List[Tuple[float, ...]] = []
    count = 0
    for combo in product(offsets, repeat=len(labels0)):
        labels = tuple(l + o for l, o in zip(labels0, combo))
        down, up = labels[:nd], labels[nd:]
        if len(set(down)) != nd or len(set(up)) != len(up0):
            continue  # coincident labels inside a subset state
        if set(down) & set(up):
            continue  # zero-phase subsets must have disjoint supports
        if min(labels) < 0:
            continue
        count += 1
        mat = _overlap_matrix(down, up, shift)
        if mat not in seen:
            seen[mat] = (down, up)
            order.append(mat)
    if not seen:
        raise DomainError("no admissible subset offsets within the given bounds")
    return order, [seen[m] for m in order], count


def optimize_offsets(family: str, tau3: float, bound: int = 4,
                     eval_mode: str = IDEAL_LIMIT,
                     n: Tuple[int, int, int] = (20, 20, 20)) -> OptResult:
    """Exhaustive search over integer shifts of every subset Fock label.

    The objective is the ideal-limit visibility; with zero phases both branch
    populations equal 1/4, so V = |sum over component pairs of
    conj(a') a prod_m E_m| with the per-mode cross-overlap factors E_m.
    """
    if eval_mode != IDEAL_LIMIT:
        raise ConfigurationError("offset optimization is defined in the ideal limit")
    if family == "w_superposed":
        coeffs = w_coefficients()
        if tau3 != 0.0:
            raise DomainError("the W arrangement has tau3 = 0 identically")
    else:
        coeffs = coefficients_for_tau3(family, tau3, vartheta=0.0)

    bases = _preset_label_sets(family, n)
    catalogs = []
    reps = []
    evaluations = 0
    for mode in range(3):
        mats, rep, count = _mode_catalog(bases[mode], OVERLAP_SHIFTS[mode], bound)
        catalogs.append(np.array(mats))  # (k, 4), row-major 2x2
        reps.append(rep)
        evaluations += count

    comps = [c for c, a in coeffs.amplitudes.items() if a != 0]
    amps = np.array([coeffs.amplitude(c) for c in comps])
    weights = np.real(np.outer(amps.conj(), amps))  # zero-phase: real

    # visibility of every cross-mode combination in one shot
    k0, k1, k2 = (len(c) for c in catalogs)
    total = np.zeros((k0, k1, k2))
    for i, ci in enumerate(comps):
        for j, cj in enumerate(comps):
            e0 = catalogs[0][:, 2 * ci[0] + cj[0]]
            e1 = catalogs[1][:, 2 * ci[1] + cj[1]]
            e2 = catalogs[2][:, 2 * ci[2] + cj[2]]
            total += weights[i, j] * (e0[:, None, None] * e1[None, :, None] * e2[None, None, :])
    evaluations += total.size
    flat = np.abs(total.reshape(-1))
    best = int(np.argmax(flat))  # first occurrence = lexicographically smallest
    i0, rem = divmod(best, k1 * k2)
    i1, i2 = divmod(rem, k2)
    choice = (reps[0][i0], reps[1][i1], reps[2][i2])
    return OptResult(tau3=float(tau3), best_visibility=float(flat[best]),
                     best_offsets=choice, evaluations=evaluations)


def realize_optimum(result: OptResult, family: str, n: Tuple[int, int, int] = (20, 20, 20)
                    ) -> Tuple[ClassCoefficients, Tuple[ModeSubset, ...]]:
    """Materialize an optimizer result as (coefficients, subsets) around base n."""
    if family == "w_superposed":
        coeffs = w_coefficients()
    else:
        coeffs = coefficients_for_tau3(family, result.tau3, vartheta=0.0)
    subsets = []
    for mode, (down, up) in enumerate(result.best_offsets):
        subsets.append(ModeSubset(
            down={p: 1.0 / math.sqrt(len(down)) for p in down},
            up={p: 1.0 / math.sqrt(len(up)) for p in up}))
    return coeffs, tuple(subsets)


def optimize_curve(family: str, tau3_values: Sequence[float], bound: int = 4,
                   n: Tuple[int, int, int] = (20, 20, 20)) -> List[OptResult]:
    return [optimize_offsets(family, t, bound=bound, n=n) for t in tau3_values]


# ---------------------------------------------------------------------------
# fringes
# ---------------------------------------------------------------------------

def fringe_scan(family: str, vartheta_values: Sequence[float],
                n: Tuple[int, int, int] = (20, 20, 20),
                coupling_phases: Tuple[float, float, float] = (0.0, 0.0, 0.0),
                eval_mode: str = IDEAL_LIMIT, backend: str = "branches",
                alpha: Optional[float] = None, beta: Optional[float] = None
                ) -> List[Tuple[float, float]]:
    """Exit-port intensity against the state phase, one engine run per point.

    I(vartheta) = o_ll + o_uu + 2 Re o_lu, which for the GHZ-type presets is
    (A/2) (1 + V cos(delta_theta + vartheta)).
    """
    if len(vartheta_values) == 0:
        raise DomainError("fringe grid must be non-empty")
    rows = []
    for v in vartheta_values:
        coeffs, subsets = preset(family, n=n, vartheta=float(v), alpha=alpha, beta=beta)
        psi = expand_state(coeffs, subsets)
        pulses = PulseTriple.for_state(psi, coupling_phases=coupling_phases,
                                       eval_mode=eval_mode)
        if backend == "products":
            ov = overlap_via_products(psi, pulses)
        else:
            from .interferometer import overlap_via_branches
            ov = overlap_via_branches(psi, pulses)
        intensity = ov.o_ll + ov.o_uu + 2.0 * ov.o_lu.real
        rows.append((float(v), float(intensity)))
    return rows
