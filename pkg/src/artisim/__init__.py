"""Perspective-weighted similarity analysis for artifact attribute networks."""

from .errors import ArtisimError, ConfigError, DataError, ParseError
from .model import (Artifact, AttributeNode, ConceptualStructure, Perspective,
                    ValidationReport, Violation, effective_attributes,
                    full_perspective, restrict, validate_artifact,
                    validate_perspective, validate_structure, with_closure)
from .metrics import (DEFAULT_FORMULA, SIMILARITY_FORMULAS, PairMetrics,
                      PerspectiveSet, SimilarityMatrix, WeightVector,
                      as_fraction, divergence, overlap, pair_metrics,
                      reliability, similarity, similarity_matrix,
                      weights_implied, weights_uniform)
from .graphs import (EdgeDiff, GraphEdge, GraphNode, GraphRule,
                     SimilarityGraph, SweepReport, WeightRegion, build_graph,
                     compare_graphs, knn_graph, maximal_similarity_graph,
                     simplex_grid, sweep, threshold_graph)
from .formats import (Dataset, DatasetValidationError, export_graph,
                      export_matrix, export_sweep_report, graph_payload,
                      import_matrix, load_dataset, resolve_shapes,
                      save_dataset, sweep_payload)
from .synth import SyntheticSpec, gen_synthetic

__version__ = "0.1.0"
