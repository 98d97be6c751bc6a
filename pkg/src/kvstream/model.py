"""Domain model: actors, ties, flow graphs, decisions, gaps, scorecards.

Everything here is an immutable value object. Datasets are built once by
``kvstream.dataset.load_dataset`` and analysis modules treat them as
read-only, so per-area computations can run concurrently without locks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum, IntEnum
from typing import Mapping, Union

AttributeValue = Union[int, float, str]


class ActorKind(str, Enum):
    PERSON = "person"
    REPOSITORY = "repository"


class Consequence(str, Enum):
    """Outcome of a decision once its implications surfaced.

    LC1 is optimal, LC2 livable, LC3 needs minor correction, LC4 needs a
    significant rework loop back to the decision point.
    """

    LC1 = "LC1"
    LC2 = "LC2"
    LC3 = "LC3"
    LC4 = "LC4"


FAVORABLE_CONSEQUENCES = frozenset({Consequence.LC1, Consequence.LC2})


class Duration(str, Enum):
    SHORT = "short"
    MEDIUM = "medium"
    LONG = "long"


class Rating(str, Enum):
    SA = "SA"
    A = "A"
    D = "D"
    SD = "SD"


class Dimension(str, Enum):
    CREATE = "Create"
    VALIDATE = "Validate"
    STORE = "Store"
    SHARE = "Share"
    USE = "Use"


class UVScenario(IntEnum):
    """Uncertainty-variability situations, ordered by increasing uncertainty.

    UV1: needs and solution both well understood. UV2: solution space
    uncertain. UV3: both needs and solution uncertain.
    """

    UV1 = 1
    UV2 = 2
    UV3 = 3


@dataclass(frozen=True)
class KnowledgeActor:
    """A source of knowledge: a person (tacit) or a repository (explicit)."""

    id: str
    name: str
    kind: ActorKind


@dataclass(frozen=True)
class KnowledgeArea:
    """A domain of knowledge relevant to design decisions."""

    id: str
    name: str


@dataclass(frozen=True)
class KnowledgeTie:
    """Directed "who approaches whom" edge within one knowledge area.

    weight expresses preference among a person's outgoing ties (higher is
    approached first) and must be a positive integer.
    """

    area: str
    source: str
    target: str
    weight: int = 1


@dataclass(frozen=True)
class LccOutcome:
    """Learning cycle consequence plus how long the feedback took."""

    consequence: Consequence
    duration: Duration

    @property
    def favorable(self) -> bool:
        return self.consequence in FAVORABLE_CONSEQUENCES


@dataclass(frozen=True)
class DecisionRecord:
    """One codified design decision.

    attributes holds the decision's codification: numeric values pass into
    analysis as-is, string values are categorical codes resolved through the
    dataset codebook. lcc and uncertainty stay None until the outcome or
    level has actually been recorded.
    """

    id: str
    product: str
    area: str
    attributes: Mapping[str, AttributeValue] = field(default_factory=dict)
    actors: frozenset[str] = frozenset()
    lcc: LccOutcome | None = None
    uncertainty: str | None = None


@dataclass(frozen=True)
class GapAssessment:
    """Actual versus perceived knowledge gaps behind one decision."""

    decision: str
    actual: frozenset[str] = frozenset()
    perceived: frozenset[str] = frozenset()


@dataclass(frozen=True)
class ScorecardItem:
    dimension: Dimension
    statement: str
    rating: Rating


@dataclass(frozen=True)
class Scorecard:
    """One team's maturity survey at one point in time.

    timestamp is kept as the original ISO-8601 string so datasets round-trip
    byte-exactly; use parsed_timestamp for ordering.
    """

    team: str
    timestamp: str
    items: tuple[ScorecardItem, ...] = ()

    def parsed_timestamp(self) -> datetime:
        return datetime.fromisoformat(self.timestamp.replace("Z", "+00:00"))

    def ratings_for(self, dimension: Dimension) -> list[Rating]:
        return [i.rating for i in self.items if i.dimension is dimension]

    def assessed_dimensions(self) -> list[Dimension]:
        return [d for d in Dimension if any(i.dimension is d for i in self.items)]


@dataclass(frozen=True)
class UncertaintyScale:
    """Partially ordered set of uncertainty levels.

    order lists the covering pairs (lower, higher); the full relation is the
    reflexive-transitive closure of those pairs.
    """

    levels: frozenset[str]
    order: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class FlowGraph:
    """Directed weighted knowledge-flow graph for one knowledge area.

    actors maps actor id to the full actor record so flow measures can tell
    persons from repositories without reaching back into the dataset.
    """

    area: str
    actors: Mapping[str, KnowledgeActor]
    ties: tuple[KnowledgeTie, ...] = ()

    def __post_init__(self) -> None:
        for tie in self.ties:
            if tie.source not in self.actors or tie.target not in self.actors:
                raise ValueError(
                    f"tie {tie.source}->{tie.target} has an endpoint outside the graph's actors"
                )

    def person_ids(self) -> set[str]:
        return {a.id for a in self.actors.values() if a.kind is ActorKind.PERSON}

    def person_ties(self) -> list[KnowledgeTie]:
        persons = self.person_ids()
        return [t for t in self.ties if t.source in persons and t.target in persons]

    def tie_pairs(self) -> set[tuple[str, str]]:
        return {(t.source, t.target) for t in self.ties}


@dataclass(frozen=True)
class Dataset:
    """Everything loaded from one dataset directory.

    actors, ties, decisions, gaps and scorecards preserve file order so that
    saving and reloading reproduces the dataset exactly. areas and products
    are registries reconstructed from the ids referenced by ties and
    decisions.
    """

    actors: tuple[KnowledgeActor, ...] = ()
    ties: tuple[KnowledgeTie, ...] = ()
    decisions: tuple[DecisionRecord, ...] = ()
    gaps: tuple[GapAssessment, ...] = ()
    scorecards: tuple[Scorecard, ...] = ()
    codebook: Mapping[str, Mapping[str, AttributeValue]] = field(default_factory=dict)
    uncertainty: UncertaintyScale | None = None

    def actor_index(self) -> dict[str, KnowledgeActor]:
        # Later duplicate rows win; duplicates are reported by validate_dataset.
        return {a.id: a for a in self.actors}

    def area_ids(self) -> list[str]:
        seen = {t.area for t in self.ties} | {d.area for d in self.decisions}
        return sorted(seen)

    def areas(self) -> dict[str, KnowledgeArea]:
        return {aid: KnowledgeArea(id=aid, name=aid) for aid in self.area_ids()}

    def product_ids(self) -> list[str]:
        return sorted({d.product for d in self.decisions})

    def decisions_for(self, area: str) -> list[DecisionRecord]:
        return [d for d in self.decisions if d.area == area]

    def flow_graph(self, area: str) -> FlowGraph:
        """Per-area graph over the actors participating in that area's ties."""
        ties = tuple(t for t in self.ties if t.area == area)
        index = self.actor_index()
        participants: dict[str, KnowledgeActor] = {}
        for tie in ties:
            for endpoint in (tie.source, tie.target):
                if endpoint in index:
                    participants[endpoint] = index[endpoint]
        return FlowGraph(area=area, actors=participants, ties=ties)

    def flow_graphs(self) -> dict[str, FlowGraph]:
        return {aid: self.flow_graph(aid) for aid in self.area_ids()}
