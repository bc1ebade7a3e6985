"""Parsing, validation, and serialization of labeled prediction files.

The input format is delimited text (comma by default, tab supported) with a
header row.  Each data row carries an opaque identifier, a finite confidence
score, and a binary gold label.  Parsing is strict: every malformed row is
reported with its 1-based line number, and nothing is silently coerced.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

DEFAULT_POSITIVE_TOKENS = frozenset({"1", "true"})
DEFAULT_NEGATIVE_TOKENS = frozenset({"0", "false"})


@dataclass(frozen=True)
class ColumnSchema:
    """Maps file columns onto the (id, score, label) triple.

    Label tokens are matched case-insensitively.  Any token outside the two
    configured sets is a parse error, never a silent negative.
    """

    id_col: str = "id"
    score_col: str = "score"
    label_col: str = "label"
    positive_tokens: frozenset[str] = DEFAULT_POSITIVE_TOKENS
    negative_tokens: frozenset[str] = DEFAULT_NEGATIVE_TOKENS
    delimiter: str = ","


@dataclass(frozen=True)
class LabeledInstance:
    """One prediction: identifier, model confidence, and gold class."""

    id: str
    score: float
    positive: bool


@dataclass(frozen=True)
class LabeledDataset:
    """Instances of one model's output file, in input-file order.

    The class itself is permissive (so reports can describe broken data);
    `validate_dataset` checks the uniqueness and non-emptiness invariants.
    """

    name: str
    instances: tuple[LabeledInstance, ...]

    @property
    def size(self) -> int:
        return len(self.instances)

    @property
    def positive_total(self) -> int:
        return sum(1 for inst in self.instances if inst.positive)


@dataclass(frozen=True)
class ValidationReport:
    instance_count: int
    positive_count: int
    duplicate_ids: tuple[str, ...]
    bad_rows: tuple[tuple[int, str], ...] = ()


class DatasetError(ValueError):
    """A file could not be turned into a valid dataset.

    `issues` lists (1-based line number, reason) pairs; line 0 marks
    file-level problems such as a missing column.
    """

    def __init__(self, message: str, issues: Sequence[tuple[int, str]] = ()):
        self.issues = tuple(issues)
        lines = [message]
        lines += [f"  line {line}: {reason}" for line, reason in self.issues]
        super().__init__("\n".join(lines))


def parse_dataset(
    source: Iterable[str],
    schema: ColumnSchema = ColumnSchema(),
    name: str = "dataset",
) -> LabeledDataset:
    """Parse delimited text into a dataset, preserving row order.

    Raises DatasetError listing every bad row (non-numeric or non-finite
    score, unrecognized label token, empty or duplicate id, short row).
    Blank lines are skipped.
    """
    reader = csv.reader(source, delimiter=schema.delimiter)
    try:
        header = next(reader)
    except StopIteration:
        raise DatasetError(f"{name}: empty input, expected a header row") from None

    columns = {col.strip(): idx for idx, col in enumerate(header)}
    missing = [
        col
        for col in (schema.id_col, schema.score_col, schema.label_col)
        if col not in columns
    ]
    if missing:
        raise DatasetError(
            f"{name}: missing configured column(s) {', '.join(missing)}",
            [(1, f"header is {header!r}")],
        )
    id_idx = columns[schema.id_col]
    score_idx = columns[schema.score_col]
    label_idx = columns[schema.label_col]
    width = max(id_idx, score_idx, label_idx) + 1

    positive = {tok.lower() for tok in schema.positive_tokens}
    negative = {tok.lower() for tok in schema.negative_tokens}

    instances: list[LabeledInstance] = []
    seen: set[str] = set()
    issues: list[tuple[int, str]] = []
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) < width:
            issues.append((line, f"row has {len(row)} fields, expected at least {width}"))
            continue

        uid = row[id_idx].strip()
        if not uid:
            issues.append((line, "empty id"))
            continue
        if uid in seen:
            issues.append((line, f"duplicate id {uid!r}"))
            continue

        try:
            score = float(row[score_idx])
        except ValueError:
            issues.append((line, f"non-numeric score {row[score_idx]!r}"))
            continue
        if not math.isfinite(score):
            issues.append((line, f"non-finite score {row[score_idx]!r}"))
            continue

        token = row[label_idx].strip().lower()
        if token in positive:
            label = True
        elif token in negative:
            label = False
        else:
            issues.append((line, f"unrecognized label token {row[label_idx]!r}"))
            continue

        seen.add(uid)
        instances.append(LabeledInstance(id=uid, score=score, positive=label))

    if issues:
        raise DatasetError(f"{name}: {len(issues)} invalid row(s)", issues)
    if not instances:
        raise DatasetError(f"{name}: dataset has zero instances")
    return LabeledDataset(name=name, instances=tuple(instances))


def validate_dataset(d: LabeledDataset) -> ValidationReport:
    """Report counts and invariant violations; never raises."""
    seen: set[str] = set()
    duplicates: list[str] = []
    for inst in d.instances:
        if inst.id in seen and inst.id not in duplicates:
            duplicates.append(inst.id)
        seen.add(inst.id)
    return ValidationReport(
        instance_count=d.size,
        positive_count=d.positive_total,
        duplicate_ids=tuple(duplicates),
        bad_rows=(),
    )


def render_dataset(d: LabeledDataset) -> str:
    """Serialize to the canonical file format (comma, id/score/label, 1/0).

    Scores are written with repr so parse(render(d)) == d exactly.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["id", "score", "label"])
    for inst in d.instances:
        writer.writerow([inst.id, repr(inst.score), "1" if inst.positive else "0"])
    return out.getvalue()


def read_dataset_file(
    path: str | Path,
    schema: ColumnSchema = ColumnSchema(),
    name: str | None = None,
) -> tuple[LabeledDataset, str]:
    """Load a dataset from disk; returns (dataset, sha256 of the raw bytes).

    The digest feeds report metadata so runs are traceable to exact inputs.
    """
    path = Path(path)
    if name is None:
        name = path.stem
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise DatasetError(f"{name}: cannot read {path}: {exc.strerror or exc}") from exc
    digest = hashlib.sha256(raw).hexdigest()
    text = raw.decode("utf-8")
    dataset = parse_dataset(io.StringIO(text, newline=""), schema, name=name)
    return dataset, digest
