"""Exact-match evaluation over composite language tags.

Composite tags are atomic classes: {en,zu} is one class, distinct from
{en} and {zu}, and equality ignores order. On top of the confusion matrix
this module provides accuracy, support-weighted precision/recall, the
majority-class baseline, and a chi-square goodness-of-fit test whose
p-value comes from the local survival function (no statistics package).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .corpus import OTHER_CLASS
from .detector import LanguageTag
from .errors import (
    DimensionMismatch,
    DomainError,
    EmptyInput,
    EmptyMatrix,
    InvalidConfig,
    LengthMismatch,
    ZeroExpected,
)
from .special import chi2_sf

__all__ = [
    "ConfusionMatrix",
    "ClassMetrics",
    "EvalReport",
    "ChiSquareResult",
    "confusion",
    "metrics",
    "majority_class",
    "majority_baseline",
    "chi_square_gof",
    "chi2_sf",
    "format_p_value",
    "report_document",
    "render_report",
    "render_chi_square",
]

#: Human-readable reports never print a p-value smaller than this; they
#: print "< 2.2e-16" instead. Machine output keeps the raw float.
P_REPORT_FLOOR = 2.2e-16


@dataclass(frozen=True)
class ConfusionMatrix:
    """counts[g][p] = documents with gold class g and predicted class p."""

    classes: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    support: int


@dataclass(frozen=True)
class EvalReport:
    accuracy: float
    weighted_precision: float
    weighted_recall: float
    per_class: dict[str, ClassMetrics]


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    df: int
    p_value: float


def _class_of(tag: LanguageTag, scheme: set[str] | None) -> str:
    label = tag.class_label()
    if scheme is not None and label not in scheme:
        return OTHER_CLASS
    return label


def _declared_classes(class_scheme: Sequence[str]) -> list[str]:
    """Canonicalize a declared class list; "other" is reserved for the bucket."""
    declared = [LanguageTag.parse(c).class_label() for c in class_scheme]
    if OTHER_CLASS in declared:
        raise InvalidConfig(f"{OTHER_CLASS!r} is the bucket class and cannot be declared")
    if len(set(declared)) != len(declared):
        raise InvalidConfig(f"duplicate classes in scheme: {list(class_scheme)}")
    return declared


def confusion(
    gold: Sequence[LanguageTag],
    pred: Sequence[LanguageTag],
    class_scheme: Sequence[str] | None = None,
) -> ConfusionMatrix:
    """Tally exact set-matches of gold vs predicted composite tags.

    With a class scheme, tags outside the declared classes collapse into
    "other" and the matrix rows/columns are the declared classes plus
    "other"; without one, the classes are all observed labels, sorted.
    """
    if len(gold) != len(pred):
        raise LengthMismatch(f"gold has {len(gold)} items, pred has {len(pred)}")
    if not gold:
        raise EmptyInput("nothing to evaluate")

    if class_scheme is not None:
        declared = _declared_classes(class_scheme)
        scheme = set(declared)
        classes = [*declared, OTHER_CLASS]
    else:
        scheme = None
        classes = sorted(
            {t.class_label() for t in gold} | {t.class_label() for t in pred}
        )

    index = {label: i for i, label in enumerate(classes)}
    counts = [[0] * len(classes) for _ in classes]
    for g, p in zip(gold, pred):
        counts[index[_class_of(g, scheme)]][index[_class_of(p, scheme)]] += 1
    return ConfusionMatrix(
        classes=tuple(classes), counts=tuple(tuple(row) for row in counts)
    )


def metrics(m: ConfusionMatrix) -> EvalReport:
    """Accuracy plus per-class and support-weighted precision/recall.

    Precision of a class nobody predicted is 0 by convention; classes with
    zero gold support carry weight 0. Weighted recall always equals
    accuracy (both are trace/total), mirroring exact-match evaluation.
    """
    total = m.total
    if total == 0:
        raise EmptyMatrix("confusion matrix has no observations")

    k = len(m.classes)
    per_class: dict[str, ClassMetrics] = {}
    weighted_p = 0.0
    weighted_r = 0.0
    trace = 0
    for i, label in enumerate(m.classes):
        support = sum(m.counts[i])
        column = sum(m.counts[g][i] for g in range(k))
        hit = m.counts[i][i]
        trace += hit
        precision = hit / column if column else 0.0
        recall = hit / support if support else 0.0
        per_class[label] = ClassMetrics(precision=precision, recall=recall, support=support)
        weight = support / total
        weighted_p += weight * precision
        weighted_r += weight * recall

    return EvalReport(
        accuracy=trace / total,
        weighted_precision=weighted_p,
        weighted_recall=weighted_r,
        per_class=per_class,
    )


def majority_class(gold: Sequence[LanguageTag]) -> tuple[str, float]:
    """The most frequent gold class and its frequency (ties: first label)."""
    if not gold:
        raise EmptyInput("no gold tags")
    counts = Counter(tag.class_label() for tag in gold)
    label = min(counts, key=lambda c: (-counts[c], c))
    return label, counts[label] / len(gold)


def majority_baseline(gold: Sequence[LanguageTag]) -> float:
    """Accuracy of always predicting the most common gold class."""
    return majority_class(gold)[1]


def chi_square_gof(
    observed: Sequence[int],
    expected_props: Sequence[float],
) -> ChiSquareResult:
    """Goodness-of-fit of observed counts against expected proportions.

    Expected proportions are renormalized to sum to 1 (published tables
    often round), then E_i = N * p_i and the statistic is
    sum((O_i - E_i)^2 / E_i) with df = categories - 1.
    """
    if len(observed) != len(expected_props):
        raise DimensionMismatch(
            f"{len(observed)} observed counts vs {len(expected_props)} expected proportions"
        )
    if len(observed) < 2:
        raise DimensionMismatch("need at least two categories")
    if any(o < 0 for o in observed):
        raise DomainError(f"observed counts must be non-negative: {list(observed)}")
    if any(p <= 0 for p in expected_props):
        raise ZeroExpected(f"expected proportions must be positive: {list(expected_props)}")
    n = sum(observed)
    if n <= 0:
        raise EmptyInput("observed counts sum to zero")

    scale = sum(expected_props)
    statistic = 0.0
    for o, prop in zip(observed, expected_props):
        e = n * (prop / scale)
        statistic += (o - e) ** 2 / e
    df = len(observed) - 1
    return ChiSquareResult(statistic=statistic, df=df, p_value=chi2_sf(statistic, df))


def format_p_value(p: float) -> str:
    """R-style display: values below 2.2e-16 print as "< 2.2e-16"."""
    if p < P_REPORT_FLOOR:
        return "< 2.2e-16"
    return f"{p:.6g}"


# --- report serialization and text rendering ---


def report_document(
    matrix: ConfusionMatrix,
    report: EvalReport,
    baseline: tuple[str, float] | None = None,
    chi_square: ChiSquareResult | None = None,
) -> dict:
    """Single machine-readable document with every evaluation artifact."""
    doc: dict = {
        "classes": list(matrix.classes),
        "matrix": [list(row) for row in matrix.counts],
        "total": matrix.total,
        "accuracy": report.accuracy,
        "weighted_precision": report.weighted_precision,
        "weighted_recall": report.weighted_recall,
        "per_class": {
            label: {"precision": c.precision, "recall": c.recall, "support": c.support}
            for label, c in report.per_class.items()
        },
    }
    if baseline is not None:
        doc["majority_class"] = baseline[0]
        doc["majority_baseline"] = baseline[1]
    if chi_square is not None:
        doc["chi_square"] = {
            "statistic": chi_square.statistic,
            "df": chi_square.df,
            "p_value": chi_square.p_value,
            "p_display": format_p_value(chi_square.p_value),
        }
    return doc


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = []
    for row in rows:
        cells = [cell.ljust(widths[i]) for i, cell in enumerate(row)]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)


def render_report(
    matrix: ConfusionMatrix,
    report: EvalReport,
    baseline: tuple[str, float] | None = None,
    chi_square: ChiSquareResult | None = None,
) -> str:
    """Aligned text tables: confusion matrix, per-class and summary metrics."""
    rows = [["gold \\ pred", *matrix.classes]]
    for i, label in enumerate(matrix.classes):
        rows.append([label, *(str(c) for c in matrix.counts[i])])
    out = ["confusion matrix", _table(rows), ""]

    rows = [["class", "precision", "recall", "support"]]
    for label, c in report.per_class.items():
        rows.append([label, f"{c.precision:.4f}", f"{c.recall:.4f}", str(c.support)])
    out += ["per-class metrics", _table(rows), ""]

    summary = [
        ["documents", str(matrix.total)],
        ["accuracy", f"{report.accuracy:.4f}"],
        ["weighted precision", f"{report.weighted_precision:.4f}"],
        ["weighted recall", f"{report.weighted_recall:.4f}"],
    ]
    if baseline is not None:
        summary.append(["majority baseline", f"{baseline[1]:.4f} ({baseline[0]})"])
    out.append(_table(summary))
    if chi_square is not None:
        out += ["", render_chi_square(chi_square)]
    return "\n".join(out)


def render_chi_square(result: ChiSquareResult) -> str:
    rows = [
        ["statistic", f"{result.statistic:.6g}"],
        ["df", str(result.df)],
        ["p-value", format_p_value(result.p_value)],
    ]
    return _table(rows)
