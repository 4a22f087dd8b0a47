"""Semantic-affective coupling over emotionally annotated corpora.

Stimulus documents carry descriptor tags (resolved against an is-a
taxonomy) and valence/arousal ratings on the 1-9 scale. This package
measures distances in both spaces, detects coupled document pairs and
clusters, estimates ranked candidate emotions for unannotated stimuli,
runs expert feedback sessions, and serves it all over HTTP and a CLI.
"""

from .affect import (
    MAX_EMOTION_DISTANCE,
    RATING_MAX,
    RATING_MIN,
    AffectiveRating,
    EmotionNeighborhood,
    EmotionPoint,
    emotion_distance,
    emotion_similarity,
    within_neighborhood,
)
from .analysis import (
    StimulusGroup,
    build_groups,
    group_outliers,
    group_report_csv,
    parse_group_queries,
    point_coverage,
    scatter_csv,
    scatter_rows,
)
from .corpus import (
    Corpus,
    Provenance,
    StimulusDocument,
    commit_rating,
    fmt_num,
    load_corpus,
    load_folder_convention,
    load_manifest,
    save_corpus,
    save_manifest,
    validate_corpus,
)
from .coupling import (
    CouplingMatrix,
    CouplingThresholds,
    CouplingVerdict,
    couple,
    coupled_clusters,
    coupling_matrix,
)
from .errors import (
    AffectCoupleError,
    ConflictError,
    DuplicateIdError,
    FormatError,
    NoReferenceAnnotationsError,
    RangeError,
    SessionClosedError,
    UnannotatedDocumentError,
    UnknownIdError,
    UnknownTermError,
    ValidationError,
    VersionError,
)
from .estimator import (
    AnnotationSession,
    CandidateAnnotation,
    EstimationConfig,
    EstimationResult,
    Feedback,
    LooRecord,
    LooReport,
    SessionState,
    apply_feedback,
    estimate,
    leave_one_out,
    open_session,
)
from .semantics import (
    SemanticNeighborhood,
    SemanticProfile,
    Taxonomy,
    normalize_term,
    profile_similarity,
    semantic_distance,
    term_similarity,
    within_semantic_neighborhood,
)
from .synthetic import (
    SyntheticGroup,
    SyntheticResult,
    SyntheticSpec,
    generate_synthetic,
    load_spec,
    load_truth,
    save_truth,
)

__version__ = "0.1.0"

__all__ = [
    "AffectCoupleError",
    "AffectiveRating",
    "AnnotationSession",
    "CandidateAnnotation",
    "ConflictError",
    "Corpus",
    "CouplingMatrix",
    "CouplingThresholds",
    "CouplingVerdict",
    "DuplicateIdError",
    "EmotionNeighborhood",
    "EmotionPoint",
    "EstimationConfig",
    "EstimationResult",
    "Feedback",
    "FormatError",
    "LooRecord",
    "LooReport",
    "MAX_EMOTION_DISTANCE",
    "NoReferenceAnnotationsError",
    "Provenance",
    "RangeError",
    "RATING_MAX",
    "RATING_MIN",
    "SemanticNeighborhood",
    "SemanticProfile",
    "SessionClosedError",
    "SessionState",
    "StimulusDocument",
    "StimulusGroup",
    "SyntheticGroup",
    "SyntheticResult",
    "SyntheticSpec",
    "Taxonomy",
    "UnannotatedDocumentError",
    "UnknownIdError",
    "UnknownTermError",
    "ValidationError",
    "VersionError",
    "apply_feedback",
    "build_groups",
    "commit_rating",
    "couple",
    "coupled_clusters",
    "coupling_matrix",
    "emotion_distance",
    "emotion_similarity",
    "estimate",
    "fmt_num",
    "generate_synthetic",
    "group_outliers",
    "group_report_csv",
    "leave_one_out",
    "load_corpus",
    "load_folder_convention",
    "load_manifest",
    "load_spec",
    "load_truth",
    "normalize_term",
    "open_session",
    "parse_group_queries",
    "point_coverage",
    "profile_similarity",
    "save_corpus",
    "save_manifest",
    "save_truth",
    "scatter_csv",
    "scatter_rows",
    "semantic_distance",
    "term_similarity",
    "validate_corpus",
    "within_neighborhood",
    "within_semantic_neighborhood",
]
