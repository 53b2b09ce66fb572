"""Certified cyclicity checks for rim-surgered surface complements."""

from .abelian import AbelianInvariants, abelian_invariants, smith_normal_form
from .batch import batch_json, expand_config, run_batch
from .braids import BraidWord, KNOT_TABLE, builtin_knot, parse_braid, resolve_knot
from .certify import CyclicityVerdict, certify_cyclic
from .diagrams import (
    Crossing,
    KnotDiagram,
    TangleDiagram,
    band_double,
    braid_closure_diagram,
)
from .enumeration import (
    DEFAULT_MAX_COSETS,
    EnumerationOverflow,
    EnumerationResult,
    SubgroupPresentation,
    reidemeister_schreier,
    todd_coxeter,
)
from .groups import (
    GroupPresentation,
    Word,
    collapse_presentation,
    commutator,
    format_word,
    parse_word,
    quotient,
    tietze_simplify,
)
from .invariants import (
    NormalInvariantReport,
    TangleGroup,
    alexander_polynomial,
    arf_invariant,
    fox_derivative,
    knot_determinant,
    normal_invariant_report,
    tangle_wirtinger,
    wirtinger,
)
from .laurent import LaurentPolynomial, poly_determinant
from .report import (
    CertificationReport,
    certify,
    companion_diagram,
    conclusions_for,
    invariant_block,
    render_text,
)
from .surgery import (
    GluingMatrix,
    PlotnickMatrix,
    SurgerySpec,
    annulus_rim_surgery_group,
    branched_cover_surgered_group,
    gluing_matrix,
    meridian_kernel_words,
    plotnick_matrix,
    rim_surgery_group,
    spec_from_json,
    surgered_group,
    twist_roll_conjugator,
    unbranched_cover_group,
    validate_gluing,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianInvariants",
    "BraidWord",
    "Crossing",
    "CyclicityVerdict",
    "DEFAULT_MAX_COSETS",
    "EnumerationOverflow",
    "EnumerationResult",
    "GluingMatrix",
    "GroupPresentation",
    "KNOT_TABLE",
    "KnotDiagram",
    "LaurentPolynomial",
    "NormalInvariantReport",
    "PlotnickMatrix",
    "SubgroupPresentation",
    "SurgerySpec",
    "TangleDiagram",
    "TangleGroup",
    "Word",
    "abelian_invariants",
    "alexander_polynomial",
    "annulus_rim_surgery_group",
    "arf_invariant",
    "CertificationReport",
    "band_double",
    "batch_json",
    "braid_closure_diagram",
    "branched_cover_surgered_group",
    "builtin_knot",
    "certify",
    "certify_cyclic",
    "collapse_presentation",
    "commutator",
    "companion_diagram",
    "conclusions_for",
    "expand_config",
    "format_word",
    "fox_derivative",
    "gluing_matrix",
    "invariant_block",
    "knot_determinant",
    "meridian_kernel_words",
    "normal_invariant_report",
    "parse_braid",
    "parse_word",
    "plotnick_matrix",
    "poly_determinant",
    "quotient",
    "reidemeister_schreier",
    "render_text",
    "resolve_knot",
    "rim_surgery_group",
    "run_batch",
    "smith_normal_form",
    "spec_from_json",
    "surgered_group",
    "tangle_wirtinger",
    "tietze_simplify",
    "todd_coxeter",
    "twist_roll_conjugator",
    "unbranched_cover_group",
    "validate_gluing",
    "wirtinger",
    "__version__",
]
