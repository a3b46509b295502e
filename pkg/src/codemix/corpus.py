"""Corpus ingestion, deduplication, seeded sampling and label distributions.

The interchange format is JSONL: one UTF-8 object per line with fields
``id``, ``text`` and optional ``tags`` (comma-joined lowercase language
codes). CSV with configurable column names is accepted on input.
"""
from __future__ import annotations

import csv
import json
import random
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, IO, Iterable, Sequence

from . import textnorm
from .detector import LanguageTag
from .errors import (
    EmptyInput,
    InsufficientPopulation,
    InvalidConfig,
    MissingField,
    ParseError,
)

OTHER_CLASS = "other"

TagPredicate = Callable[[LanguageTag | None], bool]


@dataclass
class Document:
    """One text unit with optional gold and predicted composite tags."""

    id: str
    text: str
    gold_tag: LanguageTag | None = None
    pred_tag: LanguageTag | None = None


@dataclass(frozen=True)
class SampleSpec:
    """How to draw one evaluation dataset: size, seed, optional stratum."""

    n: int
    seed: int
    stratum: TagPredicate | None = None

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise InvalidConfig(f"sample size must be positive, got {self.n}")
        if self.seed < 0:
            raise InvalidConfig(f"seed must be an unsigned integer, got {self.seed}")


def _parse_tag(value: object, line: int) -> LanguageTag | None:
    if value is None:
        return None
    text = str(value).strip()
    if not text:
        return None
    try:
        return LanguageTag.parse(text)
    except InvalidConfig as exc:
        raise ParseError(str(exc), line) from exc


def _make_document(
    record: dict,
    index: int,
    line: int,
    text_field: str,
    id_field: str | None,
    tag_field: str | None,
    tag_role: str,
) -> Document:
    if text_field not in record or record[text_field] is None:
        raise MissingField(f"line {line}: record has no {text_field!r} field")
    text = record[text_field]
    if not isinstance(text, str):
        raise ParseError(f"field {text_field!r} is not a string", line)

    if id_field is not None:
        if id_field not in record or record[id_field] in (None, ""):
            raise MissingField(f"line {line}: record has no {id_field!r} field")
        doc_id = str(record[id_field])
    else:
        fallback = record.get("id")
        doc_id = str(fallback) if fallback not in (None, "") else str(index)

    tag = _parse_tag(record.get(tag_field), line) if tag_field else None
    if tag_role == "pred":
        return Document(id=doc_id, text=text, pred_tag=tag)
    return Document(id=doc_id, text=text, gold_tag=tag)


def load(
    source: str | Path | IO[str],
    format: str = "jsonl",
    text_field: str = "text",
    id_field: str | None = None,
    tag_field: str | None = "tags",
    tag_role: str = "gold",
) -> list[Document]:
    """Read a corpus file into Documents.

    Records without an id get the 0-based record index rendered in decimal.
    ``tag_role`` says whether the tag column holds gold or predicted labels
    ("gold" or "pred"). Raises ParseError (with line number), MissingField,
    or InvalidConfig for an unknown format/role.
    """
    if format not in ("jsonl", "csv"):
        raise InvalidConfig(f"unknown corpus format {format!r}")
    if tag_role not in ("gold", "pred"):
        raise InvalidConfig(f"unknown tag role {tag_role!r}")

    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return load(fh, format, text_field, id_field, tag_field, tag_role)

    docs = (
        _load_jsonl(source, text_field, id_field, tag_field, tag_role)
        if format == "jsonl"
        else _load_csv(source, text_field, id_field, tag_field, tag_role)
    )
    seen: set[str] = set()
    for doc in docs:
        if doc.id in seen:
            raise ParseError(f"duplicate document id {doc.id!r}")
        seen.add(doc.id)
    return docs


def _load_jsonl(fh, text_field, id_field, tag_field, tag_role) -> list[Document]:
    docs: list[Document] = []
    index = 0
    for line_no, line in enumerate(fh, 1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line_no) from exc
        if not isinstance(record, dict):
            raise ParseError("record is not a JSON object", line_no)
        docs.append(
            _make_document(record, index, line_no, text_field, id_field, tag_field, tag_role)
        )
        index += 1
    return docs


def _load_csv(fh, text_field, id_field, tag_field, tag_role) -> list[Document]:
    try:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return []
        if text_field not in reader.fieldnames:
            raise MissingField(f"CSV header has no {text_field!r} column")
        if id_field is not None and id_field not in reader.fieldnames:
            raise MissingField(f"CSV header has no {id_field!r} column")
        docs: list[Document] = []
        for index, row in enumerate(reader):
            docs.append(
                _make_document(
                    row, index, reader.line_num, text_field, id_field, tag_field, tag_role
                )
            )
        return docs
    except csv.Error as exc:
        raise ParseError(f"invalid CSV: {exc}") from exc


def document_record(doc: Document) -> dict:
    """JSONL record for a Document; the set tag (gold first) lands in "tags"."""
    record: dict = {"id": doc.id, "text": doc.text}
    tag = doc.gold_tag or doc.pred_tag
    if tag is not None:
        record["tags"] = tag.render()
    return record


def save_jsonl(docs: Iterable[Document], sink: str | Path | IO[str]) -> None:
    """Write Documents in the interchange JSONL format."""
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="\n") as fh:
            save_jsonl(docs, fh)
        return
    for doc in docs:
        sink.write(json.dumps(document_record(doc), ensure_ascii=False) + "\n")


def dedupe(docs: Sequence[Document]) -> list[Document]:
    """Keep the first document of each normalized-text equivalence class."""
    seen: set[str] = set()
    kept: list[Document] = []
    for doc in docs:
        key = textnorm.normalize(doc.text)
        if key not in seen:
            seen.add(key)
            kept.append(doc)
    return kept


def sample(docs: Sequence[Document], spec: SampleSpec) -> list[Document]:
    """Draw a uniform sample without replacement from the stratum.

    Selection sampling (Knuth's Algorithm S) driven purely by
    ``random.Random(seed).random()``: scanning the filtered population in
    corpus order, item t is kept with probability needed/remaining. Only
    ``Random.random()`` is consumed, whose sequence Python guarantees
    stable across versions, so a (docs, spec) pair is reproducible across
    runs, processes and platforms. Output stays in corpus order.
    """
    if spec.stratum is None:
        population = list(docs)
    else:
        population = [doc for doc in docs if spec.stratum(doc.pred_tag)]
    if spec.n > len(population):
        raise InsufficientPopulation(
            f"requested {spec.n} documents from a population of {len(population)}"
        )
    rng = random.Random(spec.seed)
    needed = spec.n
    remaining = len(population)
    chosen: list[Document] = []
    for doc in population:
        if needed == 0:
            break
        if rng.random() * remaining < needed:
            chosen.append(doc)
            needed -= 1
        remaining -= 1
    return chosen


def exact_tag_stratum(tag_text: str) -> TagPredicate:
    """Predicate matching documents whose predicted tag set-equals ``tag_text``."""
    wanted = LanguageTag.parse(tag_text)
    return lambda tag: tag is not None and tag == wanted


def pair_stratum(langs: Iterable[str]) -> TagPredicate:
    """Predicate matching two-language tags drawn from ``langs``.

    With ("en", "zu", "xh") this selects exactly the code-switched strata
    {en,zu}, {en,xh} and {zu,xh}.
    """
    allowed = frozenset(langs)
    if len(allowed) < 2:
        raise InvalidConfig("pair stratum needs at least two language codes")
    return lambda tag: (
        tag is not None and len(tag.langs) == 2 and frozenset(tag.langs) <= allowed
    )


def label_distribution(
    tags: Sequence[LanguageTag],
    classes: Sequence[str] | None = None,
) -> dict[str, float]:
    """Proportion of each composite class among ``tags``.

    Every distinct tag set is a class, labelled by its sorted comma-joined
    codes. When ``classes`` is declared, tags outside it are bucketed into
    "other" and every declared class appears in the result (possibly 0.0).
    Proportions sum to 1.
    """
    if not tags:
        raise EmptyInput("no tags to summarize")
    counts: Counter[str] = Counter(tag.class_label() for tag in tags)
    total = len(tags)

    if classes is None:
        return {label: counts[label] / total for label in sorted(counts)}

    declared = [LanguageTag.parse(c).class_label() for c in classes]
    if OTHER_CLASS in declared:
        raise InvalidConfig(f"{OTHER_CLASS!r} is the bucket class and cannot be declared")
    if len(set(declared)) != len(declared):
        raise InvalidConfig(f"duplicate classes in scheme: {list(classes)}")
    result = {label: counts.get(label, 0) / total for label in declared}
    bucketed = sum(c for label, c in counts.items() if label not in result)
    result[OTHER_CLASS] = bucketed / total
    return result
