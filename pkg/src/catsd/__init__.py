"""
Nominal multi-criteria classification by similarity and dissimilarity.

catsd assigns actions to non-ordered categories by comparing them,
criterion by criterion, against each category's reference actions. Each
criterion carries a piecewise similarity-dissimilarity function mapping
a performance difference to [-1, 1]; positive values feed a weighted,
interaction-adjusted similarity, negative values feed a multiplicative
dissimilarity, and their combination is a likeness degree that is held
against the category's threshold. An action alike to no category lands
in the dummy category.

The usual entry points:

    * `read_model` / `write_bundle` move a whole decision model in and
      out of a directory or zip of CSV/JSON data modules.
    * `validate_model` reports every structural problem in a model
      without raising; `classify` runs the assignment and keeps all
      intermediate figures for audit.
    * `srf_weights`, `fit_affine_threshold`, `deck_intensities` and
      `assemble_sd` cover the computational side of the elicitation
      protocols (revised Simos weighting, threshold probing, deck-of-
      cards intensity placement).
    * `catsd.casestudy.load()` returns the bundled recruitment example,
      a complete ready-to-classify model.

The command line (`catsd classify ...`) and the HTTP workspace
(`catsd.service.create_app`) are thin layers over the same functions.
"""

from .errors import CatsdError
from .model import (
    Action,
    Cardinal,
    CategoryModel,
    Criterion,
    DecisionModel,
    Direction,
    InteractionCoefficient,
    InteractionKind,
    Issue,
    Ordinal,
    PerformanceTable,
    ReferenceAction,
    ValidationReport,
    check_in_scale,
    check_non_negativity,
    validate_model,
    validate_performance_table,
)
from .sdfunc import (
    TOLERANCE,
    Affine,
    Constant,
    DeckRanking,
    DomainKind,
    Piece,
    SDComponent,
    SDFunction,
    ThresholdSet,
    assemble_sd,
    check_sd_function,
    deck_intensities,
    eval_sd,
    fit_affine_threshold,
    format_sd_rows,
    interpolate_linear,
    parse_sd_rows,
    split_sd,
    threshold_at,
)
from .engine import (
    ActionAssignment,
    AssignmentReport,
    CategoryOutcome,
    ComparisonTrace,
    accepts,
    classify,
    comprehensive_dissimilarity,
    comprehensive_similarity,
    delta_j,
    format_trace,
    likeness,
)
from .srf import WeightElicitation, display_weights, format_weight, srf_weights
from .bundle import (
    LoadedProject,
    MODULE_NAMES,
    bundle_files,
    read_model,
    read_ranking,
    read_threshold_points,
    results_files,
    write_bundle,
    write_results,
)
