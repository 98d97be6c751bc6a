"""Chart emission for the analysis report.

Two SVG charts accompany the report: a density-vs-reciprocity scatter with
the quadrant cutoffs drawn in, and a per-area knowledge-flux chart with
favorable-rate annotations and an arrow on every area that needs its flux
enhanced. Figures use a fixed 8x6 inch canvas with an explicit axes
rectangle so emitted coordinates are reproducible, and every data element
carries an id so charts can be inspected programmatically.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib
from matplotlib.figure import Figure

from .config import DEFAULT_CONFIG, Config
from .errors import IoError
from .flux import FluxVerdict
from .report import ReportBundle

FIG_SIZE = (8.0, 6.0)  # inches; 72 pt/inch -> 576 x 432 pt viewport
AXES_RECT = (0.12, 0.12, 0.78, 0.78)  # left, bottom, width, height fractions

_SAVE_OPTS = {"format": "svg", "metadata": {"Date": None}}


def _new_axes(title: str):
    figure = Figure(figsize=FIG_SIZE, dpi=100)
    axes = figure.add_axes(AXES_RECT)
    axes.set_title(title)
    return figure, axes


def _save(figure: Figure, path: Path) -> None:
    try:
        with matplotlib.rc_context({"svg.hashsalt": "kvstream"}):
            figure.savefig(path, **_SAVE_OPTS)
    except OSError as exc:
        raise IoError(f"could not write {path}: {exc}") from exc


def density_reciprocity_svg(bundle: ReportBundle, path: Path, config: Config = DEFAULT_CONFIG) -> None:
    """Scatter of every area's (density, reciprocity) with quadrant cutoffs."""
    figure, axes = _new_axes("Density - reciprocity analysis")
    axes.set_xlim(0.0, 1.0)
    axes.set_ylim(0.0, 100.0)
    axes.set_xlabel("Density")
    axes.set_ylabel("Reciprocity (%)")

    vline = axes.axvline(config.density_hi, color="gray", linestyle="--", linewidth=1)
    vline.set_gid("density-threshold")
    hline = axes.axhline(config.reciprocity_hi, color="gray", linestyle="--", linewidth=1)
    hline.set_gid("reciprocity-threshold")

    x_lo, x_hi = config.density_hi / 2, (config.density_hi + 1.0) / 2
    y_lo, y_hi = config.reciprocity_hi / 2, (config.reciprocity_hi + 100.0) / 2
    for label, x, y in (
        ("Foundational", x_lo, y_lo),
        ("Quick win", x_hi, y_lo),
        ("Expand network", x_lo, y_hi),
        ("CoP ready", x_hi, y_hi),
    ):
        text = axes.text(x, y, label, ha="center", va="center", color="dimgray", fontsize=9)
        text.set_gid(f"quadrant-label-{label.lower().replace(' ', '-')}")

    for row in bundle.rows:
        if row.density is None or row.reciprocity_pct is None:
            continue
        (point,) = axes.plot(row.density, row.reciprocity_pct, "o", color="tab:blue")
        point.set_gid(f"area-point-{row.area}")
        axes.annotate(row.area, (row.density, row.reciprocity_pct), textcoords="offset points",
                      xytext=(5, 5), fontsize=8)
    _save(figure, path)


def flux_svg(bundle: ReportBundle, path: Path, config: Config = DEFAULT_CONFIG) -> None:
    """Per-area knowledge flux with favorable rates and enhancement arrows."""
    figure, axes = _new_axes("Knowledge flux analysis")
    assessments = list(bundle.flux)
    top = max([a.flux for a in assessments] + [1.0]) * 1.25
    axes.set_xlim(-0.5, max(len(assessments) - 0.5, 0.5))
    axes.set_ylim(0.0, top)
    axes.set_ylabel("Knowledge flux (ties per decision)")
    axes.set_xticks(range(len(assessments)))
    axes.set_xticklabels([a.area for a in assessments], rotation=20, ha="right", fontsize=8)

    for i, assessment in enumerate(assessments):
        (point,) = axes.plot(i, assessment.flux, "s", color="tab:purple")
        point.set_gid(f"flux-point-{assessment.area}")
        if assessment.favorable_rate is not None:
            note = f"{assessment.favorable_rate:.0%} favorable"
        else:
            note = "no outcomes"
        axes.annotate(note, (i, assessment.flux), textcoords="offset points",
                      xytext=(6, -12), fontsize=8)
        if assessment.verdict is FluxVerdict.ENHANCE_FLUX:
            arrow = axes.annotate(
                "",
                xy=(i, min(assessment.flux + top * 0.18, top * 0.98)),
                xytext=(i, assessment.flux),
                arrowprops={"arrowstyle": "->", "color": "tab:red", "linewidth": 1.5},
            )
            arrow.arrow_patch.set_gid(f"flux-arrow-{assessment.area}")
    _save(figure, path)


def emit_svg_plots(bundle: ReportBundle, out_dir: str | Path, config: Config = DEFAULT_CONFIG) -> list[Path]:
    """Write both charts into out_dir and return their paths."""
    root = Path(out_dir)
    try:
        root.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"could not create {root}: {exc}") from exc
    scatter = root / "density_reciprocity.svg"
    flux_chart = root / "knowledge_flux.svg"
    density_reciprocity_svg(bundle, scatter, config)
    flux_svg(bundle, flux_chart, config)
    return [scatter, flux_chart]
