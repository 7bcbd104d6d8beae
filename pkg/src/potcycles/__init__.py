"""Degree sequences whose realizations contain cycles of every length 3..l."""

from .builder import BuildResult, BuildTrace, build_all_cycles
from .errors import (
    CapExceeded,
    ClaimViolation,
    LemmaContradiction,
    PotCyclesError,
    PreconditionError,
    SearchExhausted,
    SequenceFormatError,
)
from .extremal import extremal_non_3cl_sequence, extremal_non_cl_sequences, sigma_potential, sum_bound
from .graphcore import SimpleGraph, cycle_lengths, cycle_spectrum, degree_sequence
from .seqcore import DegreeSequence, check_dirac, check_posa, is_graphic, lay_off, parse_sequence

__version__ = "0.1.0"
