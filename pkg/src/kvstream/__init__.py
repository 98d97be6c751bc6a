"""Knowledge value stream analytics.

Model who approaches whom for knowledge (per area, tacit vs explicit),
measure flow and flux against the decisions being made, track learning
cycle consequences, classify gap and perception scenarios, score
Create/Validate/Store/Share/Use maturity, and emit analysis reports
and charts.
"""

from .config import Config, DEFAULT_CONFIG, load_config
from .dataset import Violation, load_dataset, save_dataset, validate_dataset
from .flow import (
    ApproachRank,
    FlowSummary,
    Quadrant,
    cut_points,
    density,
    flow_summary,
    most_approached,
    mutual_cliques,
    quadrant_of,
    reciprocity,
    tacit_explicit_split,
)
from .flux import (
    EncodedDecisions,
    FluxAssessment,
    FluxVerdict,
    LccDistribution,
    ProjectionPoint,
    encode_decision_matrix,
    favorable_lcc_rate,
    first_principal_component,
    flux_assessment,
    knowledge_flux,
    lcc_distribution,
    project_decisions_1d,
    uncertainty_from_lcc,
)
from .maturity import (
    Band,
    DimensionScore,
    MaturityResult,
    PhaseRule,
    PhaseStatus,
    WasteFlag,
    band_of,
    cvss_assessment,
    dimension_score,
    phase_status,
    waste_diagnostics,
)
from .model import (
    ActorKind,
    Consequence,
    Dataset,
    DecisionRecord,
    Dimension,
    Duration,
    FlowGraph,
    GapAssessment,
    KnowledgeActor,
    KnowledgeArea,
    KnowledgeTie,
    LccOutcome,
    Rating,
    Scorecard,
    ScorecardItem,
    UncertaintyScale,
    UVScenario,
)
from .report import (
    FlowFluxRow,
    Health,
    ReportBundle,
    build_flow_flux_report,
    build_report_bundle,
    health_of,
    render_report,
)
from .scenarios import (
    Alignment,
    Comparison,
    GapKind,
    GapScenario,
    PerceptionCell,
    Stage,
    WasteKind,
    builtin_scale,
    classify_gap_scenario,
    classify_uv,
    expected_uv_for_stage,
    perception_reality_cell,
    poset_compare,
    recommend_approach,
)

__version__ = "0.1.0"
