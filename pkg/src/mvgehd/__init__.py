"""Auto-weighted multi-view graph embedding with hub detection.

Fits one orthonormal node embedding across several affinity views of the
same node set, adaptively weighting the views while driving the rows of
boundary-spanning nodes (hubs) toward zero. Includes the downstream
pipeline: hub scoring and selection, node clustering, subject-level
clustering from embedding distances, ACC/NMI evaluation, and a seeded
synthetic generator with planted modules and hubs.
"""

from .graph import (
    GraphValidationError,
    IsolatedNodeError,
    MultiViewGraph,
    degree,
    load_matrix_csv,
    load_multiview,
    random_walk_matrix,
    save_matrix_csv,
    save_multiview,
    validate_affinity,
)
from .linalg import SymEigenResult, l21_norm, smallest_eigenpairs, trace_form
from .solver import (
    EmbedConfig,
    SolveTrace,
    auto_view_weights,
    combined_laplacian,
    embedding_objective,
    residual_row_weights,
    solve,
    solve_single_view,
    view_laplacian,
    walk_residual,
)
from .hubs import (
    HubReport,
    betweenness,
    hub_report,
    hub_scores,
    remove_hub_edges,
    select_hubs,
)
from .clustering import (
    KMeansConfig,
    cluster_subjects,
    kmeans,
    node_clusters,
    pairwise_similarity,
)
from .metrics import EvalResult, accuracy, evaluate, hungarian, nmi
from .synth import (
    PlantedSpec,
    PlantedTruth,
    generate_cohort,
    generate_multiview,
    load_truth,
    planted_layout,
    save_truth,
)

__version__ = "0.1.0"

__all__ = [
    "EmbedConfig", "EvalResult", "GraphValidationError", "HubReport",
    "IsolatedNodeError", "KMeansConfig", "MultiViewGraph", "PlantedSpec",
    "PlantedTruth", "SolveTrace", "SymEigenResult", "accuracy",
    "auto_view_weights", "betweenness", "cluster_subjects",
    "combined_laplacian", "degree", "embedding_objective", "evaluate",
    "generate_cohort", "generate_multiview", "hub_report", "hub_scores",
    "hungarian", "kmeans", "l21_norm", "load_matrix_csv", "load_multiview",
    "load_truth", "nmi", "node_clusters", "pairwise_similarity",
    "planted_layout", "random_walk_matrix", "remove_hub_edges",
    "residual_row_weights", "save_matrix_csv", "save_multiview",
    "save_truth", "select_hubs", "smallest_eigenpairs", "solve",
    "solve_single_view", "trace_form", "validate_affinity",
    "view_laplacian", "walk_residual",
]
