"""Spectra of discrete phase-space point operators, Wigner-function extrema
and random access codes built from complete sets of mutually unbiased bases."""

__version__ = "0.1.0"

from .census import (  # noqa: E402
    CensusReport,
    SpectrumClass,
    census_equal,
    extremal_eigenvalues,
    geometric_point_operator,
    point_operator,
)
from .dwf import QuantumNet, dwf_extrema, evaluate, line_sums, nonnegativity_check, reconstruct  # noqa: E402
from .field import FieldElement, FieldSpec, enumerate_field, field_make  # noqa: E402
from .geometry import PhaseSpace, build_phase_space, lines_through, verify_axioms  # noqa: E402
from .linalg import Spectrum, hermitian_eig, projector, rayleigh, trace_product  # noqa: E402
from .mub import MubSet, default_mub, mub_from_pauli_table, mub_prime, mub_qubit, verify_mub  # noqa: E402
from .pauli import CommutingSet, PauliString, enumerate_pauli_partitions  # noqa: E402
from .qrac import QracCode, QracReport, classical_3to1_optimum, qrac_rate, simulate  # noqa: E402
