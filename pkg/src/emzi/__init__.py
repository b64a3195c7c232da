"""Mach-Zehnder atom interferometer with quantized, possibly entangled light pulses."""

__version__ = "0.1.0"

from .errors import ConfigurationError, DomainError
from .fock import FieldState, inner_product, apply_ladder, apply_number_diagonal
from .pulses import PulseParams, PulseTriple, trig_factor, scattering_element
from .interferometer import (
    OverlapTriple,
    SignalResult,
    branch_states,
    overlap_via_branches,
    overlap_via_products,
    signal,
    fringe,
    evaluate,
)
from .states import ModeSubset, ClassCoefficients, expand_state, tau3, tau3_class, preset
from .sweeps import (
    ScanSpec,
    ScanPoint,
    OptResult,
    coefficients_for_tau3,
    tau3_scan,
    optimize_offsets,
    realize_optimum,
    fringe_scan,
)
