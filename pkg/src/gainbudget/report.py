"""Rendering evaluation results: tables, a JSON document, and an SVG chart.

Renderers are pure functions of the report value; identical inputs produce
byte-identical output.  The chart is standalone SVG with no fonts or scripts
embedded, so it can be archived and diffed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction
from typing import Any, Sequence
from xml.sax.saxutils import escape, quoteattr

from .budget import BudgetPlan, CostRule, MarginalReport, TargetPlan
from .metrics import ClassMetrics, ConfusionMatrix, GainProfile, ideal_profile
from .ranking import TiePolicy

_CENT = Decimal("0.01")

_SERIES_COLORS = (
    "#d62728",  # red
    "#2ca02c",  # green
    "#1f77b4",  # blue
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
)


@dataclass(frozen=True)
class InputDigest:
    name: str
    path: str
    sha256: str


@dataclass(frozen=True)
class ModelResult:
    """Everything computed for one model; optional sections stay None."""

    profile: GainProfile
    confusion: ConfusionMatrix | None = None
    class_metrics: ClassMetrics | None = None
    budget_plan: BudgetPlan | None = None
    target_plan: TargetPlan | None = None
    marginal: MarginalReport | None = None
    supplied_fscore: float | None = None

    @property
    def name(self) -> str:
        return self.profile.model_name


@dataclass(frozen=True)
class EvaluationReport:
    """Per-model results plus the run metadata that produced them."""

    models: tuple[ModelResult, ...]
    quantile_count: int
    tie_policy: TiePolicy
    cost_rule: CostRule | None = None
    currency_label: str | None = None
    inputs: tuple[InputDigest, ...] = ()

    def __post_init__(self) -> None:
        if not self.models:
            raise ValueError("report needs at least one model")

    def cost_ordering(self) -> tuple[str, ...] | None:
        """Model names cheapest-first by cost to target; ties keep run order."""
        ranked = [
            (m.target_plan.cost, i, m.name)
            for i, m in enumerate(self.models)
            if m.target_plan is not None
        ]
        if len(ranked) < 2:
            return None
        return tuple(name for _, _, name in sorted(ranked))

    def fscore_source(self) -> str | None:
        if any(m.supplied_fscore is not None for m in self.models):
            return "supplied"
        if any(m.class_metrics is not None for m in self.models):
            return "weighted_f1"
        return None

    def fscore_ordering(self) -> tuple[str, ...] | None:
        """Model names best-first by supplied F-score, else by weighted F1."""
        source = self.fscore_source()
        if source == "supplied":
            scored = [
                (m.supplied_fscore, m.name)
                for m in self.models
                if m.supplied_fscore is not None
            ]
        elif source == "weighted_f1":
            scored = [
                (m.class_metrics.weighted_f1, m.name)
                for m in self.models
                if m.class_metrics is not None
            ]
        else:
            return None
        if len(scored) < 2:
            return None
        indexed = [(score, i, name) for i, (score, name) in enumerate(scored)]
        return tuple(name for _, _, name in sorted(indexed, key=lambda t: (-t[0], t[1])))


def _fmt_money(value: Decimal) -> str:
    return str(value.quantize(_CENT, rounding=ROUND_HALF_UP))


def _fmt_ratio(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.2f}"


def _sig12(f: Fraction) -> str:
    """Exact rational rendered as a decimal string, 12 significant digits."""
    with localcontext() as ctx:
        ctx.prec = 12
        return str(Decimal(f.numerator) / Decimal(f.denominator))


def _text_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> list[str]:
    widths = [
        max(len(headers[i]), *(len(row[i]) for row in rows)) if rows else len(headers[i])
        for i in range(len(headers))
    ]

    def fmt(cells: Sequence[str]) -> str:
        parts = [cells[0].ljust(widths[0])]
        parts += [cells[i].rjust(widths[i]) for i in range(1, len(cells))]
        return "  ".join(parts).rstrip()

    return [fmt(headers)] + [fmt(row) for row in rows]


def _md_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> list[str]:
    lines = ["| " + " | ".join(headers) + " |"]
    lines.append("|" + "|".join(" --- " for _ in headers) + "|")
    lines += ["| " + " | ".join(row) + " |" for row in rows]
    return lines


def render_table(r: EvaluationReport, style: str = "text") -> str:
    """Render the report as fixed-layout text or markdown tables."""
    if style not in ("text", "md"):
        raise ValueError(f"unknown table style {style!r}")
    md = style == "md"
    table = _md_table if md else _text_table

    meta = [f"quantiles={r.quantile_count}", f"tie-policy={r.tie_policy.value}"]
    if r.cost_rule is not None:
        meta.append(f"cost-rule={r.cost_rule.value}")
    if r.currency_label is not None:
        meta.append(f"currency={r.currency_label}")

    lines: list[str] = []
    if md:
        lines += ["# gainbudget report", "", " | ".join(meta)]
    else:
        lines.append("gainbudget report | " + " | ".join(meta))

    def section(title: str, headers: Sequence[str], rows: list[Sequence[str]]) -> None:
        lines.append("")
        lines.append(f"## {title}" if md else title)
        if md:
            lines.append("")
        lines.extend(table(headers, rows))

    qcols = [f"Q{q + 1}" for q in range(r.quantile_count)]

    section(
        "Models",
        ["Model", "Instances", "Positives"],
        [[m.name, str(m.profile.size), str(m.profile.positive_total)] for m in r.models],
    )
    section(
        "Gain",
        ["Model"] + qcols,
        [[m.name] + [f"{g:.2f}" for g in m.profile.gain] for m in r.models],
    )
    section(
        "Cumulative gain",
        ["Model"] + qcols,
        [[m.name] + [f"{c:.2f}" for c in m.profile.cumulative] for m in r.models],
    )
    section(
        "Cumulative positives",
        ["Model"] + qcols,
        [
            [m.name] + [str(c) for c in m.profile.cumulative_positive_count]
            for m in r.models
        ],
    )

    classified = [m for m in r.models if m.class_metrics is not None]
    if classified:
        rows = []
        for m in classified:
            cm = m.class_metrics
            rows.append(
                [m.name, str(m.confusion.cutoff_k if m.confusion else "")]
                + [
                    f"{v:.2f}"
                    for v in (
                        cm.accuracy,
                        cm.positive_precision,
                        cm.positive_recall,
                        cm.positive_f1,
                        cm.negative_precision,
                        cm.negative_recall,
                        cm.negative_f1,
                        cm.weighted_precision,
                        cm.weighted_recall,
                        cm.weighted_f1,
                    )
                ]
            )
        section(
            "Classification at cutoff",
            ["Model", "k", "Acc", "P+", "R+", "F1+", "P-", "R-", "F1-", "wP", "wR", "wF1"],
            rows,
        )
        flagged = [
            f"{m.name}: {', '.join(m.class_metrics.conventions)}"
            for m in classified
            if m.class_metrics.conventions
        ]
        if flagged:
            lines.append("zero-denominator convention (value set to 0): " + "; ".join(flagged))

    supplied = [m for m in r.models if m.supplied_fscore is not None]
    if supplied:
        section(
            "Supplied F-scores",
            ["Model", "F-score"],
            [[m.name, f"{m.supplied_fscore:.2f}"] for m in supplied],
        )

    budgeted = [m for m in r.models if m.budget_plan is not None]
    if budgeted:
        section(
            "Fixed budget plan",
            ["Model", "Budget", "Quantiles", "ExpectedTP", "Spend", "Leftover", "TPPerUnit"],
            [
                [
                    m.name,
                    _fmt_money(p.budget),
                    str(p.affordable_quantiles),
                    str(p.expected_tp),
                    _fmt_money(p.spend),
                    _fmt_money(p.leftover),
                    _fmt_ratio(p.profit),
                ]
                for m in budgeted
                for p in [m.budget_plan]
            ],
        )

    targeted = [m for m in r.models if m.target_plan is not None]
    if targeted:
        section(
            "Cost to target",
            ["Model", "TargetTP", "Quantiles", "Cost", "Achievable"],
            [
                [
                    m.name,
                    str(p.target_tp),
                    str(p.quantiles_needed),
                    _fmt_money(p.cost),
                    "yes" if p.achievable else "no",
                ]
                for m in targeted
                for p in [m.target_plan]
            ],
        )

    marginal = [m for m in r.models if m.marginal is not None]
    if marginal:
        section(
            "Marginal analysis",
            ["Model", "Annotated", "NextTP", "NextCost", "TPPerUnit", "Exhausted"],
            [
                [
                    m.name,
                    str(p.annotated_quantiles),
                    str(p.next_quantile_tp),
                    _fmt_money(p.next_quantile_cost),
                    _fmt_ratio(p.tp_per_cost),
                    "yes" if p.exhausted else "no",
                ]
                for m in marginal
                for p in [m.marginal]
            ],
        )

    by_cost = r.cost_ordering()
    by_fscore = r.fscore_ordering()
    if by_cost or by_fscore:
        lines.append("")
        lines.append("## Rankings" if md else "Rankings")
        if md:
            lines.append("")
        if by_cost:
            lines.append("by cost to target (cheapest first): " + " < ".join(by_cost))
        if by_fscore:
            source = "supplied F-score" if r.fscore_source() == "supplied" else "weighted F1"
            lines.append(f"by {source} (highest first): " + " > ".join(by_fscore))

    return "\n".join(lines) + "\n"


def _money_doc(value: Decimal, currency: str | None) -> dict[str, Any]:
    minor = int(value.quantize(_CENT, rounding=ROUND_HALF_UP).scaleb(2))
    return {"minor_units": minor, "currency": currency}


def _ratio_doc(value: float) -> float | str:
    return value if math.isfinite(value) else "inf"


def render_json(r: EvaluationReport) -> str:
    """Render the report as a stable, versioned JSON document.

    Counts are integers, gains are decimal strings with 12 significant
    digits, money is minor-unit integers with the currency label.  Optional
    sections are always present, null when not requested.
    """
    currency = r.currency_label
    models: list[dict[str, Any]] = []
    for m in r.models:
        profile = m.profile
        classification: dict[str, Any] | None = None
        if m.class_metrics is not None:
            cm = m.class_metrics
            classification = {
                "cutoff_k": m.confusion.cutoff_k if m.confusion else None,
                "tp": m.confusion.tp if m.confusion else None,
                "fp": m.confusion.fp if m.confusion else None,
                "tn": m.confusion.tn if m.confusion else None,
                "fn": m.confusion.fn if m.confusion else None,
                "accuracy": cm.accuracy,
                "positive": {
                    "precision": cm.positive_precision,
                    "recall": cm.positive_recall,
                    "f1": cm.positive_f1,
                },
                "negative": {
                    "precision": cm.negative_precision,
                    "recall": cm.negative_recall,
                    "f1": cm.negative_f1,
                },
                "weighted": {
                    "precision": cm.weighted_precision,
                    "recall": cm.weighted_recall,
                    "f1": cm.weighted_f1,
                },
                "conventions": list(cm.conventions),
            }
        budget_plan: dict[str, Any] | None = None
        if m.budget_plan is not None:
            p = m.budget_plan
            budget_plan = {
                "budget": _money_doc(p.budget, currency),
                "affordable_quantiles": p.affordable_quantiles,
                "expected_tp": p.expected_tp,
                "spend": _money_doc(p.spend, currency),
                "leftover": _money_doc(p.leftover, currency),
                "profit": _ratio_doc(p.profit),
            }
        target_plan: dict[str, Any] | None = None
        if m.target_plan is not None:
            p = m.target_plan
            target_plan = {
                "target_tp": p.target_tp,
                "achievable": p.achievable,
                "quantiles_needed": p.quantiles_needed,
                "cost": _money_doc(p.cost, currency),
            }
        marginal: dict[str, Any] | None = None
        if m.marginal is not None:
            p = m.marginal
            marginal = {
                "annotated_quantiles": p.annotated_quantiles,
                "next_quantile_tp": p.next_quantile_tp,
                "next_quantile_cost": _money_doc(p.next_quantile_cost, currency),
                "tp_per_cost": _ratio_doc(p.tp_per_cost),
                "exhausted": p.exhausted,
            }
        models.append(
            {
                "name": m.name,
                "instances": profile.size,
                "positive_total": profile.positive_total,
                "per_quantile_positive": list(profile.per_quantile_positive),
                "cumulative_positive_count": list(profile.cumulative_positive_count),
                "gain": [_sig12(g) for g in profile.gain_exact],
                "cumulative": [_sig12(c) for c in profile.cumulative_exact],
                "classification": classification,
                "supplied_fscore": m.supplied_fscore,
                "budget_plan": budget_plan,
                "target_plan": target_plan,
                "marginal": marginal,
            }
        )

    doc = {
        "schema_version": 1,
        "run": {
            "quantiles": r.quantile_count,
            "tie_policy": r.tie_policy.value,
            "cost_rule": r.cost_rule.value if r.cost_rule is not None else None,
            "currency": currency,
            "inputs": [
                {"name": d.name, "path": d.path, "sha256": d.sha256} for d in r.inputs
            ],
        },
        "models": models,
        "rankings": {
            "by_cost_to_target": list(r.cost_ordering()) if r.cost_ordering() else None,
            "by_fscore": list(r.fscore_ordering()) if r.fscore_ordering() else None,
            "fscore_source": r.fscore_source() if r.fscore_ordering() else None,
        },
    }
    return json.dumps(doc, indent=2) + "\n"


@dataclass(frozen=True)
class ChartSpec:
    """A cumulative-gain chart: one curve per profile, optional references."""

    series: tuple[GainProfile, ...]
    include_baseline: bool = False
    include_ideal: bool = False
    width: int = 640
    height: int = 480
    x_label: str = "% of candidates annotated"
    y_label: str = "% of positives found"

    def __post_init__(self) -> None:
        if not self.series:
            raise ValueError("chart needs at least one series")
        counts = {p.quantile_count for p in self.series}
        if len(counts) > 1:
            raise ValueError(f"mismatched quantile counts across series: {sorted(counts)}")
        if self.width < 160 or self.height < 120:
            raise ValueError("chart dimensions too small")


def render_chart(spec: ChartSpec) -> str:
    """Render the cumulative-gain chart as a standalone SVG document.

    Curves plot cumulative gain at quantile right edges with a (0, 0) origin
    point prepended; the x axis is the fraction of the ranked list reviewed.
    """
    quantile_count = spec.series[0].quantile_count
    width, height = spec.width, spec.height
    left, right, top, bottom = 62, 18, 18, 50
    x0, y0 = left, top
    x1, y1 = width - right, height - bottom
    pw, ph = x1 - x0, y1 - y0

    def px(frac: float) -> float:
        return x0 + frac * pw

    def py(frac: float) -> float:
        return y0 + (1.0 - frac) * ph

    out: list[str] = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">'
    )
    out.append(f'<rect width="{width}" height="{height}" fill="#ffffff"/>')

    # Gridlines: vertical at every quantile boundary, horizontal every 25%.
    for q in range(quantile_count + 1):
        x = px(q / quantile_count)
        out.append(
            f'<line class="xgrid" x1="{x:.2f}" y1="{y0:.2f}" x2="{x:.2f}" y2="{y1:.2f}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
    for i in range(5):
        y = py(i / 4)
        out.append(
            f'<line class="ygrid" x1="{x0:.2f}" y1="{y:.2f}" x2="{x1:.2f}" y2="{y:.2f}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )

    # Axes.
    out.append(
        f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x0:.2f}" y2="{y1:.2f}" '
        f'stroke="#333333" stroke-width="1"/>'
    )
    out.append(
        f'<line x1="{x0:.2f}" y1="{y1:.2f}" x2="{x1:.2f}" y2="{y1:.2f}" '
        f'stroke="#333333" stroke-width="1"/>'
    )

    # Tick labels.
    step = 1 if quantile_count <= 12 else -(-quantile_count // 10)
    for q in range(quantile_count + 1):
        if q % step and q != quantile_count:
            continue
        x = px(q / quantile_count)
        label = f"{100 * q / quantile_count:g}"
        out.append(
            f'<text class="xtick" x="{x:.2f}" y="{y1 + 16:.2f}" '
            f'text-anchor="middle" fill="#333333">{label}</text>'
        )
    for i in range(5):
        y = py(i / 4)
        out.append(
            f'<text class="ytick" x="{x0 - 6:.2f}" y="{y + 4:.2f}" '
            f'text-anchor="end" fill="#333333">{25 * i}</text>'
        )
    out.append(
        f'<text class="xlabel" x="{(x0 + x1) / 2:.2f}" y="{height - 12:.2f}" '
        f'text-anchor="middle" fill="#333333">{escape(spec.x_label)}</text>'
    )
    out.append(
        f'<text class="ylabel" x="14" y="{(y0 + y1) / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 14 {(y0 + y1) / 2:.2f})" fill="#333333">'
        f"{escape(spec.y_label)}</text>"
    )

    def polyline_points(profile: GainProfile) -> str:
        points = [(0.0, 0.0)]
        points += [
            ((q + 1) / quantile_count, c) for q, c in enumerate(profile.cumulative)
        ]
        return " ".join(f"{px(fx):.2f},{py(fy):.2f}" for fx, fy in points)

    legend: list[tuple[str, str, str]] = []  # (name, color, dasharray or "")

    if spec.include_baseline:
        out.append(
            f'<polyline class="series" data-name="random baseline" fill="none" '
            f'stroke="#999999" stroke-width="1.5" stroke-dasharray="6 4" '
            f'points="{px(0):.2f},{py(0):.2f} {px(1):.2f},{py(1):.2f}"/>'
        )
        legend.append(("random baseline", "#999999", "6 4"))

    if spec.include_ideal:
        first = spec.series[0]
        ideal = ideal_profile(first.size, first.positive_total, quantile_count)
        out.append(
            f'<polyline class="series" data-name="ideal" fill="none" '
            f'stroke="#333333" stroke-width="1.5" stroke-dasharray="2 3" '
            f'points="{polyline_points(ideal)}"/>'
        )
        legend.append(("ideal", "#333333", "2 3"))

    for i, profile in enumerate(spec.series):
        color = _SERIES_COLORS[i % len(_SERIES_COLORS)]
        out.append(
            f'<polyline class="series" data-name={quoteattr(profile.model_name)} '
            f'fill="none" stroke="{color}" stroke-width="2" '
            f'points="{polyline_points(profile)}"/>'
        )
        legend.append((profile.model_name, color, ""))

    for i, (name, color, dash) in enumerate(legend):
        y = y0 + 14 + i * 16
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(
            f'<line x1="{x0 + 12:.2f}" y1="{y - 4:.2f}" x2="{x0 + 34:.2f}" '
            f'y2="{y - 4:.2f}" stroke="{color}" stroke-width="2"{dash_attr}/>'
        )
        out.append(
            f'<text class="legend" x="{x0 + 40:.2f}" y="{y:.2f}" '
            f'fill="#333333">{escape(name)}</text>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"
