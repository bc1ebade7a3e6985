"""Command-line front end.

Subcommands: eval (one model), compare (many models side by side), budget
(fixed-budget and cost-to-target plans), stop (marginal next-quantile
analysis), chart (cumulative-gain SVG).  Exit codes: 0 success, 1 input or
validation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

from .budget import (
    FULL_RECALL,
    CostModel,
    CostRule,
    cost_to_target,
    fixed_budget_plan,
    marginal_analysis,
)
from .dataset import ColumnSchema, DatasetError, LabeledDataset, read_dataset_file
from .metrics import GainProfile, class_metrics, confusion_at_cutoff, gain_profile
from .ranking import RankedList, TiePolicy, partition_quantiles, rank_instances
from .report import ChartSpec, EvaluationReport, InputDigest, ModelResult, render_chart, render_json, render_table


def _decimal(text: str) -> Decimal:
    try:
        return Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a decimal number: {text!r}")


def _add_io_flags(p: argparse.ArgumentParser, many: bool) -> None:
    p.add_argument("inputs", nargs="+" if many else 1, metavar="FILE",
                   help="delimited prediction file(s) with a header row")
    p.add_argument("--name", action="append", default=None, metavar="NAME",
                   help="model name for the matching input (repeatable; default: file stem)")
    p.add_argument("--quantiles", type=int, default=10, metavar="Q",
                   help="number of quantiles (default: 10, i.e. deciles)")
    p.add_argument("--tie-policy", choices=[t.value for t in TiePolicy],
                   default=TiePolicy.STABLE.value,
                   help="ordering of equal scores (default: stable)")
    p.add_argument("--id-col", default="id", help="id column name (default: id)")
    p.add_argument("--score-col", default="score", help="score column name (default: score)")
    p.add_argument("--label-col", default="label", help="label column name (default: label)")
    p.add_argument("--positive-token", default=None, metavar="TOKEN",
                   help="label token for the positive class (default: 1 or true)")
    p.add_argument("--negative-token", default=None, metavar="TOKEN",
                   help="label token for the negative class (default: 0 or false)")
    p.add_argument("--delimiter", default=",", metavar="CHAR",
                   help="field delimiter; use 'tab' or '\\t' for tabs (default: ,)")


def _add_format_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["text", "md", "json"], default="text",
                   help="output format (default: text)")
    p.add_argument("--out", default=None, metavar="PATH",
                   help="write the report to PATH instead of standard output")


def _add_cutoff_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--cutoff-k", type=int, default=None, metavar="K",
                       help="treat the top K ranked instances as positive predictions")
    group.add_argument("--cutoff-frac", type=float, default=None, metavar="F",
                       help="cutoff as a fraction of the dataset (k = round(F*N))")


def _add_cost_flags(p: argparse.ArgumentParser, with_plans: bool) -> None:
    p.add_argument("--unit-cost", type=_decimal, default=None, metavar="MONEY",
                   help="annotation cost per candidate")
    p.add_argument("--currency", default="$", metavar="LABEL",
                   help="currency label for display (default: $)")
    p.add_argument("--cost-rule", choices=[c.value for c in CostRule],
                   default=CostRule.FRACTIONAL.value,
                   help="price quantiles by N*q/Q (fractional) or actual sizes (integer)")
    if with_plans:
        p.add_argument("--budget", type=_decimal, default=None, metavar="MONEY",
                       help="fixed budget to plan annotation around")
        target = p.add_mutually_exclusive_group()
        target.add_argument("--target", type=int, default=None, metavar="TP",
                            help="positive-instance target to price")
        target.add_argument("--full-recall", action="store_true",
                            help="target every positive instance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gainbudget",
        description="Budget-aware evaluation of ranking models via gain and "
                    "cumulative gain.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="gain profile (and cutoff metrics) for one model")
    _add_io_flags(p_eval, many=False)
    _add_cutoff_flags(p_eval)
    _add_format_flags(p_eval)

    p_cmp = sub.add_parser("compare", help="side-by-side profiles for several models")
    _add_io_flags(p_cmp, many=True)
    _add_cutoff_flags(p_cmp)
    _add_cost_flags(p_cmp, with_plans=True)
    p_cmp.add_argument("--fscore", action="append", default=None, metavar="NAME=VALUE",
                       help="externally supplied F-score for a model (repeatable)")
    _add_format_flags(p_cmp)

    p_budget = sub.add_parser("budget", help="fixed-budget and cost-to-target plans")
    _add_io_flags(p_budget, many=True)
    _add_cost_flags(p_budget, with_plans=True)
    _add_format_flags(p_budget)

    p_stop = sub.add_parser("stop", help="is one more quantile of annotation worth it?")
    _add_io_flags(p_stop, many=True)
    _add_cost_flags(p_stop, with_plans=False)
    p_stop.add_argument("--annotated-quantiles", type=int, default=None, metavar="Q",
                        help="quantiles already annotated")
    _add_format_flags(p_stop)

    p_chart = sub.add_parser("chart", help="cumulative-gain chart as standalone SVG")
    _add_io_flags(p_chart, many=True)
    p_chart.add_argument("--svg-out", default=None, metavar="PATH",
                         help="write the SVG to PATH instead of standard output")
    p_chart.add_argument("--width", type=int, default=640, help="chart width in pixels")
    p_chart.add_argument("--height", type=int, default=480, help="chart height in pixels")
    p_chart.add_argument("--baseline", action="store_true",
                         help="draw the diagonal random baseline")
    p_chart.add_argument("--ideal", action="store_true",
                         help="draw the ideal (perfect ranker) curve")
    return parser


def _schema(args: argparse.Namespace, parser: argparse.ArgumentParser) -> ColumnSchema:
    delimiter = args.delimiter
    if delimiter in ("tab", "\\t"):
        delimiter = "\t"
    if len(delimiter) != 1:
        parser.error(f"--delimiter must be a single character, got {args.delimiter!r}")
    kwargs = dict(
        id_col=args.id_col,
        score_col=args.score_col,
        label_col=args.label_col,
        delimiter=delimiter,
    )
    if args.positive_token is not None:
        kwargs["positive_tokens"] = frozenset({args.positive_token})
    if args.negative_token is not None:
        kwargs["negative_tokens"] = frozenset({args.negative_token})
    return ColumnSchema(**kwargs)


def _load(
    args: argparse.Namespace, parser: argparse.ArgumentParser
) -> tuple[list[LabeledDataset], tuple[InputDigest, ...]]:
    names = args.name or []
    if len(names) > len(args.inputs):
        parser.error(f"{len(names)} --name values for {len(args.inputs)} input file(s)")
    schema = _schema(args, parser)
    datasets = []
    digests = []
    for i, path in enumerate(args.inputs):
        name = names[i] if i < len(names) else None
        dataset, sha = read_dataset_file(path, schema, name=name)
        datasets.append(dataset)
        digests.append(InputDigest(name=dataset.name, path=str(path), sha256=sha))
    return datasets, tuple(digests)


def _evaluate(
    datasets: list[LabeledDataset], quantiles: int, policy: TiePolicy
) -> list[tuple[RankedList, GainProfile]]:
    results = []
    for d in datasets:
        ranked = rank_instances(d, policy)
        profile = gain_profile(partition_quantiles(ranked, quantiles))
        results.append((ranked, profile))
    return results


def _cutoff_for(args: argparse.Namespace, ranked: RankedList) -> int | None:
    if args.cutoff_k is not None:
        return args.cutoff_k
    if args.cutoff_frac is not None:
        return math.floor(args.cutoff_frac * ranked.size + 0.5)
    return None


def _parse_fscores(
    args: argparse.Namespace, parser: argparse.ArgumentParser, names: list[str]
) -> dict[str, float]:
    scores: dict[str, float] = {}
    for entry in args.fscore or []:
        name, sep, value = entry.partition("=")
        if not sep:
            parser.error(f"--fscore expects NAME=VALUE, got {entry!r}")
        if name not in names:
            parser.error(f"--fscore for unknown model {name!r} (models: {', '.join(names)})")
        try:
            scores[name] = float(value)
        except ValueError:
            parser.error(f"--fscore value for {name!r} is not a number: {value!r}")
    return scores


def _emit(content: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(content)
    else:
        Path(out).write_bytes(content.encode("utf-8"))


def _render(report: EvaluationReport, args: argparse.Namespace) -> None:
    if args.format == "json":
        content = render_json(report)
    else:
        content = render_table(report, style=args.format)
    _emit(content, args.out)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2

    try:
        return _dispatch(args, parser)
    except SystemExit as exc:  # parser.error inside dispatch
        code = exc.code
        return code if isinstance(code, int) else 2
    except (DatasetError, ValueError) as exc:
        print(f"gainbudget: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"gainbudget: {exc}", file=sys.stderr)
        return 1


def _dispatch(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    policy = TiePolicy(args.tie_policy)

    if args.command == "chart":
        datasets, _ = _load(args, parser)
        evaluated = _evaluate(datasets, args.quantiles, policy)
        spec = ChartSpec(
            series=tuple(profile for _, profile in evaluated),
            include_baseline=args.baseline,
            include_ideal=args.ideal,
            width=args.width,
            height=args.height,
        )
        _emit(render_chart(spec), args.svg_out)
        return 0

    wants_cost = args.command in ("compare", "budget")
    wants_plan = wants_cost and (
        args.budget is not None or args.target is not None or args.full_recall
    )
    if args.command == "budget" and args.unit_cost is None:
        parser.error("budget requires --unit-cost")
    if args.command == "budget" and not wants_plan:
        parser.error("budget requires --budget, --target, or --full-recall")
    if wants_plan and args.unit_cost is None:
        parser.error("--budget/--target/--full-recall require --unit-cost")
    if args.command == "stop":
        if args.unit_cost is None:
            parser.error("stop requires --unit-cost")
        if args.annotated_quantiles is None:
            parser.error("stop requires --annotated-quantiles")

    datasets, digests = _load(args, parser)
    evaluated = _evaluate(datasets, args.quantiles, policy)

    cost_model = None
    if args.command in ("compare", "budget", "stop") and args.unit_cost is not None:
        cost_model = CostModel(
            unit_cost=args.unit_cost,
            currency_label=args.currency,
            cost_rule=CostRule(args.cost_rule),
        )

    fscores: dict[str, float] = {}
    if args.command == "compare":
        fscores = _parse_fscores(args, parser, [d.name for d in datasets])

    results = []
    for ranked, profile in evaluated:
        confusion = None
        metrics = None
        if args.command in ("eval", "compare"):
            k = _cutoff_for(args, ranked)
            if k is not None:
                confusion = confusion_at_cutoff(ranked, k)
                metrics = class_metrics(
                    confusion, confusion.positive_support, confusion.negative_support
                )
        budget_plan = None
        target_plan = None
        marginal = None
        if cost_model is not None and args.command in ("compare", "budget"):
            if args.budget is not None:
                budget_plan = fixed_budget_plan(profile, cost_model, args.budget)
            if args.full_recall:
                target_plan = cost_to_target(profile, cost_model, FULL_RECALL)
            elif args.target is not None:
                target_plan = cost_to_target(profile, cost_model, args.target)
        if cost_model is not None and args.command == "stop":
            marginal = marginal_analysis(profile, cost_model, args.annotated_quantiles)
        results.append(
            ModelResult(
                profile=profile,
                confusion=confusion,
                class_metrics=metrics,
                budget_plan=budget_plan,
                target_plan=target_plan,
                marginal=marginal,
                supplied_fscore=fscores.get(profile.model_name),
            )
        )

    report = EvaluationReport(
        models=tuple(results),
        quantile_count=args.quantiles,
        tie_policy=policy,
        cost_rule=cost_model.cost_rule if cost_model else None,
        currency_label=cost_model.currency_label if cost_model else None,
        inputs=digests,
    )
    _render(report, args)
    return 0


def main() -> int:
    return run()


if __name__ == "__main__":
    sys.exit(main())
