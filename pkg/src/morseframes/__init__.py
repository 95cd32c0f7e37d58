"""Morse sequences and Morse frames on simplicial complexes, over Z2."""
from .annotation import Annotator, annotate
from .betti import is_perfect, perfect_frame
from .complex import Complex, boundary, boundary_map, closure
from .frames import Frame, check_duality, coreference, count_gradient_paths, reference
from .kernels import BACKEND
from .morse_complex import build_dual_morse_complex, build_morse_complex, check_chain_map, morse_betti
from .sequence import (
    Critical,
    MorseSequence,
    Regular,
    critical_simplexes,
    decreasing_scheme,
    increasing_scheme,
    validate,
)
from .z2 import betti_numbers as betti_oracle, homologous

__version__ = "0.1.0"
