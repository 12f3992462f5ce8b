"""aqg: exact-arithmetic verification engine for *-algebraic quantum groups.

Layers (bottom-up): ``scalar`` (two-tier scalars), ``hopf`` (presentations and
elements), ``modular`` (σ, σ′, δ, eigen-theory, one-parameter groups),
``duality`` (Fourier transform and the dual B), ``gns`` (Λ, T, T̂, ∇, ∇̂, J, Ĵ),
``munitary`` (the multiplicative unitary V), ``examples`` and ``cli``.
"""
from .duality import DualElement, Duality, duality
from .examples import (builtin_examples, make_function_algebra, make_group_algebra, make_suq2,
                       parse_example)
from .fileformat import dump_presentation, load_presentation, parse_presentation
from .gns import Gns, GnsSpace, SpanOperator
from .hopf import Element, FinitePresentation, Presentation, TensorElement
from .modular import modular_maps
from .munitary import MultiplicativeUnitary
from .report import VerificationReport
from .scalar import Gauss, PositiveEigenvalue, parse_scalar, format_scalar, scalar_pow_it, scalar_pow_z
from .suites import PAPER_MAP, run_suites

__all__ = [
    "DualElement", "Duality", "duality", "builtin_examples", "make_function_algebra",
    "make_group_algebra", "make_suq2", "parse_example", "dump_presentation", "load_presentation",
    "parse_presentation", "Gns", "GnsSpace", "SpanOperator", "Element", "FinitePresentation",
    "Presentation", "TensorElement", "modular_maps", "MultiplicativeUnitary", "VerificationReport",
    "Gauss", "PositiveEigenvalue", "parse_scalar", "format_scalar", "scalar_pow_it",
    "scalar_pow_z", "PAPER_MAP", "run_suites",
]
