"""Decision support for fiber-reinforced polymer composite design.

Fuzzy cosine-amplitude retrieval over material property databases,
fiber classification by critical length, and a rule-of-mixtures
stiffness engine for N-plane laminates, fronted by a CLI and a JSON
HTTP service.
"""

__version__ = "0.1.0"

from .fiberclass import (
    CriticalLengthInput,
    EmptyClassError,
    FiberClass,
    classify,
    critical_length,
    select_fiber,
)
from .fuzzysim import (
    FeatureVector,
    RequirementError,
    RequirementVector,
    SimilarityError,
    SimilarityResult,
    cosine_amplitude,
    linguistic_to_crisp,
    rank_by_similarity,
    requirement_from_dict,
    requirement_from_json,
    select_best,
    to_feature_vector,
)
from .laminate import (
    LaminateSpec,
    LaminateSpecError,
    PlaneSpec,
    StiffnessReport,
    analyze,
    laminate_spec_from_dict,
    laminate_spec_from_json,
    longitudinal_modulus,
    mean_clme_fixed_theta,
    mean_clme_per_plane_theta,
    mean_ctme_fixed_theta,
    mean_ctme_per_plane_theta,
    oriented_longitudinal,
    oriented_transverse,
    plane_accounting,
    plane_clme,
    plane_ctme,
    sweep_orientations,
    transverse_modulus,
)
from .matdb import (
    FiberRecord,
    IngestError,
    LinguisticTerm,
    MaterialDb,
    PolymerRecord,
    SchemaError,
    ingest_fibers,
    ingest_polymers,
    load_db,
    parse_term,
    save_db,
)

__all__ = [
    "__version__",
    "CriticalLengthInput", "EmptyClassError", "FiberClass", "classify",
    "critical_length", "select_fiber",
    "FeatureVector", "RequirementError", "RequirementVector",
    "SimilarityError", "SimilarityResult", "cosine_amplitude",
    "linguistic_to_crisp", "rank_by_similarity", "requirement_from_dict",
    "requirement_from_json", "select_best", "to_feature_vector",
    "LaminateSpec", "LaminateSpecError", "PlaneSpec", "StiffnessReport",
    "analyze", "laminate_spec_from_dict", "laminate_spec_from_json",
    "longitudinal_modulus", "mean_clme_fixed_theta",
    "mean_clme_per_plane_theta", "mean_ctme_fixed_theta",
    "mean_ctme_per_plane_theta", "oriented_longitudinal",
    "oriented_transverse", "plane_accounting", "plane_clme", "plane_ctme",
    "sweep_orientations", "transverse_modulus",
    "FiberRecord", "IngestError", "LinguisticTerm", "MaterialDb",
    "PolymerRecord", "SchemaError", "ingest_fibers", "ingest_polymers",
    "load_db", "parse_term", "save_db",
]
