"""Learning probabilistic graph prototypes from attributed graphs.

The package covers the full loop: synthesising a function-described graph
from a labelled set of attributed graphs, measuring AG-to-FDG distances with
optimal and sub-optimal error-tolerant matching, clustering unlabelled
collections, and running classification experiments on synthetic data.
"""

from .core import (
    PHI,
    AttrTuple,
    AttributedGraph,
    CostWeights,
    Fdg,
    Labelling,
    Pdf,
    arc_index,
    arc_number,
    attr,
    co_occurrence,
    extend_ag,
    extend_fdg,
    induced_arc_map,
    null_pdf,
    remap_fdg,
    slot_pairs,
    unconditional_arc_prob,
    verify_identities,
)
from .synthesis import (
    CommonLabelling,
    ag_to_fdg,
    synth_from_labelled_ags,
    synth_from_labelled_fdgs,
    update_fdg_with_ag,
)
from .forg import (
    forg_distance,
    forg_entropy,
    forg_synthesize,
    outcome_probability,
)
from .matching import (
    MatchResult,
    SearchNode,
    arc_cost,
    bnb_distance,
    check_constraints,
    count_labellings,
    count_search_nodes,
    exhaustive_oracle,
    labelling_cost,
    second_order_cost,
    vertex_cost,
)
from .efficient import (
    ExpandedVertex,
    expanded_max_distance,
    expanded_vertex_distance,
    forbid_matrix,
    relax_probabilities,
    split_into_expanded_vertices,
    suboptimal_distance,
)
from .baseline import (
    EditCosts,
    abs_threshold,
    edit_distance,
    knn_classify,
    squared_threshold,
)
from .clustering import (
    extend_labelling,
    hierarchical_clustering,
    incremental_clustering,
)
from .fileio import (
    ParseError,
    format_dist_record,
    parse_dist_record,
    read_ag,
    read_fdg,
    read_forg,
    read_labelling,
    write_ag,
    write_fdg,
    write_forg,
    write_labelling,
)
from .harness import (
    ExperimentReport,
    GeneratorConfig,
    compact_ag,
    fdg_classify,
    generate_models,
    perturb,
    run_experiment,
    smooth_pdf,
)

__all__ = [
    "PHI",
    "AttrTuple",
    "AttributedGraph",
    "CommonLabelling",
    "CostWeights",
    "EditCosts",
    "ExpandedVertex",
    "ExperimentReport",
    "Fdg",
    "GeneratorConfig",
    "Labelling",
    "MatchResult",
    "ParseError",
    "Pdf",
    "SearchNode",
    "abs_threshold",
    "ag_to_fdg",
    "arc_cost",
    "arc_index",
    "arc_number",
    "attr",
    "bnb_distance",
    "check_constraints",
    "co_occurrence",
    "compact_ag",
    "count_labellings",
    "count_search_nodes",
    "edit_distance",
    "exhaustive_oracle",
    "expanded_max_distance",
    "expanded_vertex_distance",
    "extend_ag",
    "extend_fdg",
    "extend_labelling",
    "fdg_classify",
    "forbid_matrix",
    "forg_distance",
    "forg_entropy",
    "forg_synthesize",
    "format_dist_record",
    "generate_models",
    "hierarchical_clustering",
    "incremental_clustering",
    "induced_arc_map",
    "knn_classify",
    "labelling_cost",
    "null_pdf",
    "outcome_probability",
    "parse_dist_record",
    "perturb",
    "read_ag",
    "read_fdg",
    "read_forg",
    "read_labelling",
    "relax_probabilities",
    "remap_fdg",
    "run_experiment",
    "second_order_cost",
    "slot_pairs",
    "smooth_pdf",
    "split_into_expanded_vertices",
    "squared_threshold",
    "suboptimal_distance",
    "synth_from_labelled_ags",
    "synth_from_labelled_fdgs",
    "unconditional_arc_prob",
    "update_fdg_with_ag",
    "verify_identities",
    "vertex_cost",
    "write_ag",
    "write_fdg",
    "write_forg",
    "write_labelling",
]
