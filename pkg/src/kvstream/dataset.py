"""Dataset directory loading, saving and validation.

A dataset is a directory of UTF-8 files:

    actors.csv        id,name,kind            kind: person | repository
    ties.csv          area,source,target,weight   weight optional, default 1
    decisions.json    [{id, product, area, attributes, actors,
                        lcc: {consequence, duration}?, uncertainty?}]
    gaps.json         [{decision, actual: [..], perceived: [..]}]
    scorecards.json   [{team, timestamp, items: [{dimension, statement, rating}]}]
    codebook.json     {attribute: {category: ordinal}}          (optional)
    uncertainty.json  {levels: [..], order: [[lower, higher]]}  (optional)

Loading performs file-level checks only (missing files, malformed rows,
unknown enum values) and raises MissingFile/ParseError for those. Semantic
rules - unique ids, resolvable references, person-only tie sources - are
checked by validate_dataset, which reports violations as data rather than
raising, so invalid datasets can still be inspected.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Any, Iterable

from .errors import MissingFile, ParseError
from .model import (
    ActorKind,
    Consequence,
    Dataset,
    DecisionRecord,
    Dimension,
    Duration,
    GapAssessment,
    KnowledgeActor,
    KnowledgeTie,
    LccOutcome,
    Rating,
    Scorecard,
    ScorecardItem,
    UncertaintyScale,
)

REQUIRED_FILES = ("actors.csv", "ties.csv", "decisions.json", "gaps.json", "scorecards.json")
OPTIONAL_FILES = ("codebook.json", "uncertainty.json")


@dataclass(frozen=True)
class Violation:
    """One broken dataset rule, attached to the entity that broke it."""

    entity: str
    rule: str
    detail: str

    def __str__(self) -> str:
        return f"{self.entity}: {self.rule} ({self.detail})"


# ---------------------------------------------------------------------------
# Loading
# ---------------------------------------------------------------------------


def load_dataset(path: str | Path) -> Dataset:
    """Load a dataset directory into an immutable Dataset.

    Raises MissingFile if the directory or a required file is absent and
    ParseError (with file and line) for malformed records. Optional files
    that are absent yield empty collections.
    """
    root = Path(path)
    if not root.is_dir():
        raise MissingFile(root)
    for name in REQUIRED_FILES:
        if not (root / name).is_file():
            raise MissingFile(root / name)

    actors = _load_actors(root / "actors.csv")
    ties = _load_ties(root / "ties.csv")
    decisions = _load_decisions(root / "decisions.json")
    gaps = _load_gaps(root / "gaps.json")
    scorecards = _load_scorecards(root / "scorecards.json")
    codebook = _load_codebook(root / "codebook.json")
    uncertainty = _load_uncertainty(root / "uncertainty.json")

    return Dataset(
        actors=actors,
        ties=ties,
        decisions=decisions,
        gaps=gaps,
        scorecards=scorecards,
        codebook=codebook,
        uncertainty=uncertainty,
    )


def _load_actors(path: Path) -> tuple[KnowledgeActor, ...]:
    actors = []
    for line_no, row in _csv_rows(path, ("id", "name", "kind")):
        kind = _enum_value(ActorKind, row["kind"], path, line_no, "kind")
        actor_id = _require(row["id"], path, line_no, "id")
        actors.append(KnowledgeActor(id=actor_id, name=row["name"], kind=kind))
    return tuple(actors)


def _load_ties(path: Path) -> tuple[KnowledgeTie, ...]:
    ties = []
    for line_no, row in _csv_rows(path, ("area", "source", "target"), optional=("weight",)):
        raw_weight = (row.get("weight") or "").strip()
        if raw_weight:
            try:
                weight = int(raw_weight)
            except ValueError:
                raise ParseError(path, line_no, f"weight must be an integer, got {raw_weight!r}") from None
            if weight < 1:
                raise ParseError(path, line_no, f"weight must be >= 1, got {weight}")
        else:
            weight = 1
        ties.append(
            KnowledgeTie(
                area=_require(row["area"], path, line_no, "area"),
                source=_require(row["source"], path, line_no, "source"),
                target=_require(row["target"], path, line_no, "target"),
                weight=weight,
            )
        )
    return tuple(ties)


def _load_decisions(path: Path) -> tuple[DecisionRecord, ...]:
    records = []
    for i, obj in enumerate(_json_array(path)):
        where = f"decision #{i + 1}"
        if not isinstance(obj, dict):
            raise ParseError(path, None, f"{where}: expected an object")
        attributes = obj.get("attributes", {})
        if not isinstance(attributes, dict):
            raise ParseError(path, None, f"{where}: attributes must be an object")
        for name, value in attributes.items():
            if not name:
                raise ParseError(path, None, f"{where}: attribute names must be non-empty")
            if isinstance(value, bool) or not isinstance(value, (int, float, str)):
                raise ParseError(
                    path, None, f"{where}: attribute {name!r} must be a number or a string"
                )
        lcc = None
        if obj.get("lcc") is not None:
            raw = obj["lcc"]
            if not isinstance(raw, dict):
                raise ParseError(path, None, f"{where}: lcc must be an object")
            lcc = LccOutcome(
                consequence=_enum_value(Consequence, raw.get("consequence"), path, None, f"{where} lcc consequence"),
                duration=_enum_value(Duration, raw.get("duration"), path, None, f"{where} lcc duration"),
            )
        actor_ids = obj.get("actors", [])
        if not isinstance(actor_ids, list) or not all(isinstance(a, str) for a in actor_ids):
            raise ParseError(path, None, f"{where}: actors must be a list of ids")
        uncertainty = obj.get("uncertainty")
        if uncertainty is not None and not isinstance(uncertainty, str):
            raise ParseError(path, None, f"{where}: uncertainty must be a level id string")
        records.append(
            DecisionRecord(
                id=_json_str(obj, "id", path, where),
                product=_json_str(obj, "product", path, where),
                area=_json_str(obj, "area", path, where),
                attributes=dict(attributes),
                actors=frozenset(actor_ids),
                lcc=lcc,
                uncertainty=uncertainty,
            )
        )
    return tuple(records)


def _load_gaps(path: Path) -> tuple[GapAssessment, ...]:
    gaps = []
    for i, obj in enumerate(_json_array(path)):
        where = f"gap assessment #{i + 1}"
        if not isinstance(obj, dict):
            raise ParseError(path, None, f"{where}: expected an object")
        actual = obj.get("actual", [])
        perceived = obj.get("perceived", [])
        for label, values in (("actual", actual), ("perceived", perceived)):
            if not isinstance(values, list) or not all(isinstance(g, str) and g for g in values):
                raise ParseError(path, None, f"{where}: {label} must be a list of non-empty gap ids")
        gaps.append(
            GapAssessment(
                decision=_json_str(obj, "decision", path, where),
                actual=frozenset(actual),
                perceived=frozenset(perceived),
            )
        )
    return tuple(gaps)


def _load_scorecards(path: Path) -> tuple[Scorecard, ...]:
    cards = []
    for i, obj in enumerate(_json_array(path)):
        where = f"scorecard #{i + 1}"
        if not isinstance(obj, dict):
            raise ParseError(path, None, f"{where}: expected an object")
        timestamp = _json_str(obj, "timestamp", path, where)
        try:
            _parse_iso(timestamp)
        except ValueError:
            raise ParseError(path, None, f"{where}: timestamp is not ISO-8601: {timestamp!r}") from None
        raw_items = obj.get("items", [])
        if not isinstance(raw_items, list):
            raise ParseError(path, None, f"{where}: items must be a list")
        items = []
        for j, item in enumerate(raw_items):
            if not isinstance(item, dict):
                raise ParseError(path, None, f"{where} item #{j + 1}: expected an object")
            items.append(
                ScorecardItem(
                    dimension=_dimension_value(item.get("dimension"), path, f"{where} item #{j + 1}"),
                    statement=str(item.get("statement", "")),
                    rating=_enum_value(Rating, item.get("rating"), path, None, f"{where} item #{j + 1} rating"),
                )
            )
        cards.append(Scorecard(team=_json_str(obj, "team", path, where), timestamp=timestamp, items=tuple(items)))
    return tuple(cards)


def _load_codebook(path: Path) -> dict[str, dict[str, Any]]:
    if not path.is_file():
        return {}
    raw = _json_root(path)
    if not isinstance(raw, dict):
        raise ParseError(path, None, "codebook root must be an object")
    codebook: dict[str, dict[str, Any]] = {}
    for attr, mapping in raw.items():
        if not isinstance(mapping, dict):
            raise ParseError(path, None, f"codebook entry {attr!r} must map categories to numbers")
        for category, ordinal in mapping.items():
            if isinstance(ordinal, bool) or not isinstance(ordinal, (int, float)):
                raise ParseError(
                    path, None, f"codebook {attr!r}/{category!r}: ordinal must be a number"
                )
        codebook[attr] = dict(mapping)
    return codebook


def _load_uncertainty(path: Path) -> UncertaintyScale | None:
    if not path.is_file():
        return None
    raw = _json_root(path)
    if not isinstance(raw, dict):
        raise ParseError(path, None, "uncertainty root must be an object")
    levels = raw.get("levels", [])
    order = raw.get("order", [])
    if not isinstance(levels, list) or not all(isinstance(l, str) and l for l in levels):
        raise ParseError(path, None, "levels must be a list of non-empty level ids")
    if not isinstance(order, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p) for p in order
    ):
        raise ParseError(path, None, "order must be a list of [lower, higher] pairs")
    return UncertaintyScale(levels=frozenset(levels), order=tuple((a, b) for a, b in order))


# ---------------------------------------------------------------------------
# Saving
# ---------------------------------------------------------------------------


def save_dataset(dataset: Dataset, path: str | Path) -> None:
    """Write a dataset directory that load_dataset reads back exactly."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)

    with (root / "actors.csv").open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["id", "name", "kind"])
        for actor in dataset.actors:
            writer.writerow([actor.id, actor.name, actor.kind.value])

    with (root / "ties.csv").open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["area", "source", "target", "weight"])
        for tie in dataset.ties:
            writer.writerow([tie.area, tie.source, tie.target, tie.weight])

    decisions = []
    for record in dataset.decisions:
        obj: dict[str, Any] = {
            "id": record.id,
            "product": record.product,
            "area": record.area,
            "attributes": dict(record.attributes),
            "actors": sorted(record.actors),
        }
        if record.lcc is not None:
            obj["lcc"] = {
                "consequence": record.lcc.consequence.value,
                "duration": record.lcc.duration.value,
            }
        if record.uncertainty is not None:
            obj["uncertainty"] = record.uncertainty
        decisions.append(obj)
    _write_json(root / "decisions.json", decisions)

    _write_json(
        root / "gaps.json",
        [
            {"decision": g.decision, "actual": sorted(g.actual), "perceived": sorted(g.perceived)}
            for g in dataset.gaps
        ],
    )
    _write_json(
        root / "scorecards.json",
        [
            {
                "team": card.team,
                "timestamp": card.timestamp,
                "items": [
                    {
                        "dimension": item.dimension.value,
                        "statement": item.statement,
                        "rating": item.rating.value,
                    }
                    for item in card.items
                ],
            }
            for card in dataset.scorecards
        ],
    )
    if dataset.codebook:
        _write_json(root / "codebook.json", {a: dict(m) for a, m in dataset.codebook.items()})
    if dataset.uncertainty is not None:
        _write_json(
            root / "uncertainty.json",
            {
                "levels": sorted(dataset.uncertainty.levels),
                "order": [list(pair) for pair in dataset.uncertainty.order],
            },
        )


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_dataset(dataset: Dataset) -> list[Violation]:
    """Check every dataset rule; an empty report means the dataset is valid.

    The report is deterministic and independent of input row order: the same
    violations come back sorted by (rule, entity) no matter how the files
    were permuted.
    """
    violations: list[Violation] = []
    add = violations.append

    seen_actor_ids: set[str] = set()
    for actor in dataset.actors:
        if actor.id in seen_actor_ids:
            add(Violation(actor.id, "id unique", "duplicate actor id"))
        seen_actor_ids.add(actor.id)

    index = dataset.actor_index()
    seen_tie_keys: set[tuple[str, str, str]] = set()
    for tie in dataset.ties:
        label = f"{tie.area}:{tie.source}->{tie.target}"
        missing = [e for e in (tie.source, tie.target) if e not in index]
        if missing:
            add(Violation(label, "every tie endpoint is in actors", f"unknown actor {', '.join(missing)}"))
        elif index[tie.source].kind is ActorKind.REPOSITORY:
            add(
                Violation(
                    label,
                    "repository actors never originate ties",
                    f"source {tie.source} is a repository",
                )
            )
        if tie.source == tie.target:
            add(Violation(label, "source != target", "tie loops back to its source"))
        key = (tie.area, tie.source, tie.target)
        if key in seen_tie_keys:
            add(Violation(label, "(area, source, target) unique", "duplicate tie row"))
        seen_tie_keys.add(key)
        if tie.weight < 1:
            add(Violation(label, "weight >= 1", f"weight is {tie.weight}"))

    seen_decision_ids: set[str] = set()
    scale = dataset.uncertainty
    for record in dataset.decisions:
        if record.id in seen_decision_ids:
            add(Violation(record.id, "id unique", "duplicate decision id"))
        seen_decision_ids.add(record.id)
        unknown = sorted(a for a in record.actors if a not in index)
        if unknown:
            add(Violation(record.id, "actor ids resolve", f"unknown actor {', '.join(unknown)}"))
        for name in record.attributes:
            if not name:
                add(Violation(record.id, "attribute names non-empty", "empty attribute name"))
        if scale is not None and record.uncertainty is not None and record.uncertainty not in scale.levels:
            add(
                Violation(
                    record.id,
                    "uncertainty level is declared",
                    f"level {record.uncertainty!r} is not in the scale",
                )
            )

    for gap in dataset.gaps:
        if gap.decision not in seen_decision_ids:
            add(Violation(gap.decision, "decision id resolves", "gap assessment for unknown decision"))
        for gap_id in list(gap.actual) + list(gap.perceived):
            if not gap_id:
                add(Violation(gap.decision, "gap ids are non-empty strings", "empty gap id"))

    if scale is not None:
        declared = scale.levels
        for lower, higher in scale.order:
            for endpoint in (lower, higher):
                if endpoint not in declared:
                    add(
                        Violation(
                            f"{lower}->{higher}",
                            "every order endpoint is a declared level",
                            f"unknown level {endpoint!r}",
                        )
                    )
        if _has_cycle(scale.levels, scale.order):
            add(
                Violation(
                    "uncertainty scale",
                    "closure is antisymmetric (no cycles)",
                    "the order relation contains a cycle",
                )
            )

    return sorted(violations, key=lambda v: (v.rule, v.entity, v.detail))


def _has_cycle(levels: Iterable[str], order: Iterable[tuple[str, str]]) -> bool:
    successors: dict[str, list[str]] = {level: [] for level in levels}
    for lower, higher in order:
        successors.setdefault(lower, []).append(higher)
        successors.setdefault(higher, [])
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {node: WHITE for node in successors}

    def visit(node: str) -> bool:
        color[node] = GRAY
        for nxt in successors[node]:
            if color[nxt] == GRAY:
                return True
            if color[nxt] == WHITE and visit(nxt):
                return True
        color[node] = BLACK
        return False

    return any(color[node] == WHITE and visit(node) for node in successors)


# ---------------------------------------------------------------------------
# Parsing helpers
# ---------------------------------------------------------------------------


def _csv_rows(path: Path, required: tuple[str, ...], optional: tuple[str, ...] = ()):
    with path.open("r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        missing = [c for c in required if c not in header]
        if missing:
            raise ParseError(path, 1, f"missing column(s): {', '.join(missing)}")
        unknown = [c for c in header if c not in required + optional]
        if unknown:
            raise ParseError(path, 1, f"unknown column(s): {', '.join(unknown)}")
        for row in reader:
            if any(row.get(c) is None for c in required):
                raise ParseError(path, reader.line_num, "row has fewer fields than the header")
            if row.get(None):
                raise ParseError(path, reader.line_num, "row has more fields than the header")
            yield reader.line_num, row


def _require(value: str, path: Path, line: int, column: str) -> str:
    value = value.strip()
    if not value:
        raise ParseError(path, line, f"{column} must be non-empty")
    return value


def _enum_value(enum_cls, raw, path: Path, line: int | None, what: str):
    try:
        return enum_cls(raw)
    except ValueError:
        allowed = ", ".join(e.value for e in enum_cls)
        raise ParseError(path, line, f"{what} must be one of {allowed}; got {raw!r}") from None


def _dimension_value(raw, path: Path, where: str) -> Dimension:
    if isinstance(raw, str):
        for dim in Dimension:
            if raw.lower() == dim.value.lower():
                return dim
    allowed = ", ".join(d.value for d in Dimension)
    raise ParseError(path, None, f"{where}: dimension must be one of {allowed}; got {raw!r}")


def _json_root(path: Path):
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(path, exc.lineno, f"invalid JSON: {exc.msg}") from None


def _json_array(path: Path) -> list:
    raw = _json_root(path)
    if not isinstance(raw, list):
        raise ParseError(path, None, "root must be a JSON array")
    return raw


def _json_str(obj: dict, key: str, path: Path, where: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str) or not value:
        raise ParseError(path, None, f"{where}: {key} must be a non-empty string")
    return value


def _parse_iso(timestamp: str) -> datetime:
    return datetime.fromisoformat(timestamp.replace("Z", "+00:00"))


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=False) + "\n", encoding="utf-8")
