"""Exact sparse linear algebra over finite superpositions of three-mode Fock states.

A state is a finite map from photon-number labels ``(n0, n1, n2)`` to complex
amplitudes.  Everything here is exact up to double precision: the support of a
finite superposition stays finite under all operations, so there is no
truncation cutoff anywhere.
"""

from __future__ import annotations

import math
from typing import Callable, Dict, Iterable, Mapping, Tuple

from .errors import DomainError

FockLabel = Tuple[int, int, int]

NORMALIZATION_TOL = 1e-12


class FieldState:
    """Finite superposition of three-mode Fock states.

    Treated as an immutable value: all operations return new instances.
    Amplitudes with magnitude <= ``prune_threshold`` are dropped on
    construction (default keeps everything except exact zeros).
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[FockLabel, complex], prune_threshold: float = 0.0):
        kept: Dict[FockLabel, complex] = {}
        for label, amp in terms.items():
            n0, n1, n2 = label
            if n0 < 0 or n1 < 0 or n2 < 0:
                raise DomainError(f"negative photon count in label {label}")
            amp = complex(amp)
            if abs(amp) > prune_threshold or (prune_threshold == 0.0 and amp != 0):
                kept[(int(n0), int(n1), int(n2))] = amp
        self._terms = kept

    @classmethod
    def zero(cls) -> "FieldState":
        return cls({})

    @classmethod
    def fock(cls, n0: int, n1: int, n2: int, amplitude: complex = 1.0) -> "FieldState":
        return cls({(n0, n1, n2): amplitude})

    @property
    def terms(self) -> Dict[FockLabel, complex]:
        return dict(self._terms)

    def labels(self) -> Iterable[FockLabel]:
        # canonical lexicographic order, for deterministic iteration/output
        return sorted(self._terms)

    def amplitude(self, label: FockLabel) -> complex:
        return self._terms.get(label, 0.0 + 0.0j)

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        inner = ", ".join(f"{l}: {self._terms[l]:.6g}" for l in self.labels())
        return f"FieldState({{{inner}}})"

    def norm_squared(self) -> float:
        return sum((amp.real**2 + amp.imag**2) for amp in self._terms.values())

    def norm(self) -> float:
        return math.sqrt(self.norm_squared())

    @property
    def is_normalized(self) -> bool:
        return abs(self.norm_squared() - 1.0) <= NORMALIZATION_TOL

    def normalized(self) -> "FieldState":
        n = self.norm()
        if n == 0.0:
            raise DomainError("cannot normalize the zero state")
        return self.scale(1.0 / n)

    def scale(self, factor: complex) -> "FieldState":
        return FieldState({l: factor * a for l, a in self._terms.items()})

    def add(self, other: "FieldState") -> "FieldState":
        out = dict(self._terms)
        for l, a in other._terms.items():
            out[l] = out.get(l, 0.0) + a
        return FieldState(out)

    def mean_photon(self, mode: int) -> float:
        """<n_mode> for this state (not normalized by the state's norm)."""
        return sum(l[mode] * (a.real**2 + a.imag**2) for l, a in self._terms.items())


def inner_product(a: FieldState, b: FieldState) -> complex:
    """<a|b> = sum over shared labels of conj(a) * b."""
    # iterate over the smaller support
    if len(b._terms) < len(a._terms):
        return complex(sum(a._terms[l].conjugate() * amp
                           for l, amp in b._terms.items() if l in a._terms))
    return complex(sum(amp.conjugate() * b._terms[l]
                       for l, amp in a._terms.items() if l in b._terms))


def apply_ladder(state: FieldState, mode: int, direction: str) -> FieldState:
    """Annihilation ("lower") or creation ("raise") operator on one mode."""
    if mode not in (0, 1, 2):
        raise DomainError(f"mode must be 0, 1 or 2, got {mode}")
    out: Dict[FockLabel, complex] = {}
    for label, amp in state._terms.items():
        n = label[mode]
        if direction == "lower":
            if n == 0:
                continue
            new = _with_mode(label, mode, n - 1)
            factor = math.sqrt(n)
        elif direction == "raise":
            new = _with_mode(label, mode, n + 1)
            factor = math.sqrt(n + 1)
        else:
            raise DomainError(f"direction must be 'lower' or 'raise', got {direction!r}")
        out[new] = out.get(new, 0.0) + factor * amp
    return FieldState(out)


def apply_number_diagonal(state: FieldState, mode: int,
                          f: Callable[[int], complex]) -> FieldState:
    """Multiply each amplitude by f(n_mode); f must be defined on the support."""
    if mode not in (0, 1, 2):
        raise DomainError(f"mode must be 0, 1 or 2, got {mode}")
    out: Dict[FockLabel, complex] = {}
    for label, amp in state._terms.items():
        try:
            value = f(label[mode])
        except Exception as exc:  # undefined f on a present photon count
            raise DomainError(f"diagonal function undefined at n={label[mode]}") from exc
        out[label] = value * amp
    return FieldState(out)


def _with_mode(label: FockLabel, mode: int, value: int) -> FockLabel:
    parts = list(label)
    parts[mode] = value
    return (parts[0], parts[1], parts[2])
