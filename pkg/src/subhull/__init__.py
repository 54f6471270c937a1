"""Periodic approximation of substitution subshifts.

Decide from the defect graph whether iterating a substitution on a periodic
seed converges to the substitution subshift, measure the convergence rate
against the Perron eigenvalue prediction, and track band spectra of the
associated discrete Schrodinger operators along the way.
"""

from .approximation import (
    ApproximationRun,
    ApproximationStep,
    BoundsCheck,
    ConvergenceBounds,
    RateFit,
    bounds,
    check_bounds,
    complexity_cap,
    iterate_periods,
    run_approximation,
    run_to_csv,
    run_to_json,
)
from .defect_graph import (
    Classification,
    DefectGraph,
    SeedCensus,
    build_defect_graph,
    classify,
    classify_by_walk_length,
    defect_paths,
    self_correcting,
    to_dot,
    walk_frontier,
)
from .dictionary import (
    Dictionary,
    DistanceReport,
    HullSource,
    LegalSource,
    RepetitivityEstimate,
    complexity,
    distance,
    hull_words,
    illegal_words,
    legal_words,
    repetitivity_constant,
)
from .errors import (
    NotPrimitiveError,
    NumericError,
    ParseError,
    ResourceBudgetError,
    SubhullError,
)
from .spectral import (
    PotentialMap,
    SpectralBands,
    SpectralRun,
    bands,
    floquet_matrix,
    spectral_distance,
    spectral_run,
    spectral_run_to_csv,
    spectral_run_to_json,
    transfer_spectrum_mask,
)
from .specfile import SubstitutionSpec, bundled_names, load_bundled, load_spec, parse_spec
from .substitution import PerronData, Substitution
from .words import Alphabet, CyclicWord, Word, cyclic_subwords, subwords

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "ApproximationRun",
    "ApproximationStep",
    "BoundsCheck",
    "Classification",
    "ConvergenceBounds",
    "CyclicWord",
    "DefectGraph",
    "Dictionary",
    "DistanceReport",
    "HullSource",
    "LegalSource",
    "NotPrimitiveError",
    "NumericError",
    "ParseError",
    "PerronData",
    "PotentialMap",
    "RateFit",
    "RepetitivityEstimate",
    "ResourceBudgetError",
    "SeedCensus",
    "SpectralBands",
    "SpectralRun",
    "SubhullError",
    "Substitution",
    "SubstitutionSpec",
    "Word",
    "bands",
    "bounds",
    "build_defect_graph",
    "bundled_names",
    "check_bounds",
    "classify",
    "classify_by_walk_length",
    "complexity",
    "complexity_cap",
    "cyclic_subwords",
    "defect_paths",
    "distance",
    "floquet_matrix",
    "hull_words",
    "illegal_words",
    "iterate_periods",
    "legal_words",
    "load_bundled",
    "load_spec",
    "parse_spec",
    "repetitivity_constant",
    "run_approximation",
    "run_to_csv",
    "run_to_json",
    "self_correcting",
    "spectral_distance",
    "spectral_run",
    "spectral_run_to_csv",
    "spectral_run_to_json",
    "subwords",
    "to_dot",
    "transfer_spectrum_mask",
    "walk_frontier",
]
