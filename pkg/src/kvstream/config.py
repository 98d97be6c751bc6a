"""Tunable thresholds for every rule in the toolkit.

Defaults reproduce the published worked examples; a JSON config file given
to the CLI via --config may override any subset. The two learning-cycle
weight tables are nested objects, everything else is a flat number.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Mapping

from .errors import ParseError
from .model import Consequence, Duration


def _default_consequence_weights() -> dict[Consequence, float]:
    return {
        Consequence.LC1: 0.0,
        Consequence.LC2: 0.25,
        Consequence.LC3: 0.6,
        Consequence.LC4: 1.0,
    }


def _default_duration_weights() -> dict[Duration, float]:
    return {Duration.SHORT: 0.5, Duration.MEDIUM: 0.75, Duration.LONG: 1.0}


@dataclass(frozen=True)
class Config:
    # Density-reciprocity quadrant cutoffs (density ratio, reciprocity %).
    density_hi: float = 0.5
    reciprocity_hi: float = 40.0

    # Share of favorable learning cycle consequences that makes flux optimal.
    favorable_threshold: float = 0.70

    # Health rule for the flow-flux report.
    health_red_density: float = 0.35
    health_red_reciprocity: float = 20.0
    health_red_tacit: float = 50.0
    health_green_density: float = 0.60
    health_green_reciprocity: float = 50.0

    # Maturity bands: Weak [0, weak), Marginal [weak, marginal],
    # Effective (marginal, effective], Robust (effective, 100].
    band_weak_below: float = 25.0
    band_marginal_max: float = 50.0
    band_effective_max: float = 80.0

    # Waste diagnostics.
    waste_creation_tacit: float = 80.0
    waste_validation_unrecorded: float = 0.30
    waste_sharing_reciprocity: float = 20.0
    waste_learning_uncertainty: float = 0.60

    # Phase ladder exits.
    phase_optimal_share: float = 0.70
    phase_efficient_share: float = 0.80

    # Learning-cycle uncertainty score tables (consequence and duration).
    consequence_weights: Mapping[Consequence, float] = field(
        default_factory=_default_consequence_weights
    )
    duration_weights: Mapping[Duration, float] = field(
        default_factory=_default_duration_weights
    )

    def with_overrides(self, overrides: Mapping[str, Any]) -> "Config":
        known = {f.name for f in fields(self)}
        updates: dict[str, Any] = {}
        for name, value in overrides.items():
            if name not in known:
                raise ParseError("config", None, f"unknown threshold name: {name!r}")
            if name == "consequence_weights":
                updates[name] = {
                    **_default_consequence_weights(),
                    **{Consequence(k): float(v) for k, v in value.items()},
                }
            elif name == "duration_weights":
                updates[name] = {
                    **_default_duration_weights(),
                    **{Duration(k): float(v) for k, v in value.items()},
                }
            else:
                updates[name] = float(value)
        return replace(self, **updates)


DEFAULT_CONFIG = Config()


def load_config(path: str | Path | None) -> Config:
    """Read threshold overrides from a JSON file; None means pure defaults."""
    if path is None:
        return DEFAULT_CONFIG
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ParseError(path, None, "config file not found") from None
    except json.JSONDecodeError as exc:
        raise ParseError(path, exc.lineno, f"invalid JSON: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise ParseError(path, None, "config root must be a JSON object")
    try:
        return DEFAULT_CONFIG.with_overrides(raw)
    except (TypeError, ValueError) as exc:
        raise ParseError(path, None, f"bad config value: {exc}") from None
