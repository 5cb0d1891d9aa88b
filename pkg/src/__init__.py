"""
Left-Orderability Toolkit

Decides, one-sidedly, whether a finitely presented group is left-orderable
by searching for a positive cone on a finite ball of its Cayley graph, and
composes that test into an obstruction to faithful circle actions.
"""

from .errors import (
    OrderabilityError,
    PresentationParseError,
    NonConfluentError,
    ResourceExceeded,
    CosetOverflow,
    IncompleteTableError,
    CertificateFormatError,
    ConfigError,
)

from .words import (
    Presentation,
    GeneratorMap,
    parse_presentation,
    parse_word,
    free_reduce,
    cyclic_reduce,
    invert,
)

from .rewriting import (
    RewritingSystem,
    CompletionStatus,
    knuth_bendix,
    rewrite,
    word_equal,
)

from .enumeration import (
    Ball,
    CosetTable,
    build_ball,
    build_mul_table,
    todd_coxeter,
    low_index_subgroups,
)

from .orderability import (
    Certificate,
    OrderVerdict,
    VerdictKind,
    InconclusiveReason,
    construct_positive_cone,
    test_left_orderability,
    certificate_from_cases,
    check_certificate,
)

from .abelian import (
    AbelianInvariants,
    CyclicEpi,
    smith_normal_form,
    h1,
    epimorphisms_to_cyclic,
)

from .subgroups import (
    SubgroupPresentation,
    subgroup_presentation,
    tietze_simplify,
)

from .obstruction import (
    ObstructionReport,
    ConclusionKind,
    circle_obstruction,
    verify_identity_corpus,
    check_quotients_cyclic,
)

from .config import RunConfig

from .report_generator import (
    ReportFormatter,
    ProgressDisplay
)

__version__ = "1.0.0"
__all__ = [
    "OrderabilityError",
    "PresentationParseError",
    "NonConfluentError",
    "ResourceExceeded",
    "CosetOverflow",
    "IncompleteTableError",
    "CertificateFormatError",
    "ConfigError",
    "Presentation",
    "GeneratorMap",
    "parse_presentation",
    "parse_word",
    "free_reduce",
    "cyclic_reduce",
    "invert",
    "RewritingSystem",
    "CompletionStatus",
    "knuth_bendix",
    "rewrite",
    "word_equal",
    "Ball",
    "CosetTable",
    "build_ball",
    "build_mul_table",
    "todd_coxeter",
    "low_index_subgroups",
    "Certificate",
    "OrderVerdict",
    "VerdictKind",
    "InconclusiveReason",
    "construct_positive_cone",
    "test_left_orderability",
    "certificate_from_cases",
    "check_certificate",
    "AbelianInvariants",
    "CyclicEpi",
    "smith_normal_form",
    "h1",
    "epimorphisms_to_cyclic",
    "SubgroupPresentation",
    "subgroup_presentation",
    "tietze_simplify",
    "ObstructionReport",
    "ConclusionKind",
    "circle_obstruction",
    "verify_identity_corpus",
    "check_quotients_cyclic",
    "RunConfig",
    "ReportFormatter",
    "ProgressDisplay",
]
