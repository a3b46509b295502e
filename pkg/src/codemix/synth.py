"""Seeded generator of gold-tagged monolingual and code-mixed documents.

Real code-switched corpora are rarely shareable, so end-to-end pipeline
tests build their own: two disjoint token pools stand in for two languages,
and each generated document either stays in one pool or switches from one
to the other at a single uniform point. Pool disjointness is enforced, so
gold tags are unambiguous by construction.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Sequence

from .corpus import Document
from .detector import LanguageTag
from .errors import InvalidSpec

_CODE_RE = re.compile(r"^[a-z]{2,8}$")


@dataclass(frozen=True)
class MixSpec:
    """Recipe for one synthetic corpus."""

    lang_a: str
    lang_b: str
    source_a: tuple[str, ...]
    source_b: tuple[str, ...]
    n_docs: int
    mix_rate: float
    tokens_per_doc: int
    seed: int

    def __post_init__(self) -> None:
        for code in (self.lang_a, self.lang_b):
            if not _CODE_RE.match(code) or code == "und":
                raise InvalidSpec(f"bad language code {code!r}")
        if self.lang_a == self.lang_b:
            raise InvalidSpec("the two languages must differ")
        for name, pool in (("source_a", self.source_a), ("source_b", self.source_b)):
            if not pool:
                raise InvalidSpec(f"{name} is empty")
            for word in pool:
                if not word or any(ch.isspace() for ch in word):
                    raise InvalidSpec(f"{name} contains a non-word entry: {word!r}")
        if set(self.source_a) & set(self.source_b):
            overlap = sorted(set(self.source_a) & set(self.source_b))[:5]
            raise InvalidSpec(f"token pools overlap: {overlap}")
        if self.n_docs <= 0:
            raise InvalidSpec(f"n_docs must be positive, got {self.n_docs}")
        if not 0.0 <= self.mix_rate <= 1.0:
            raise InvalidSpec(f"mix_rate must be in [0, 1], got {self.mix_rate}")
        if self.tokens_per_doc < 4:
            raise InvalidSpec(f"tokens_per_doc must be at least 4, got {self.tokens_per_doc}")
        if self.seed < 0:
            raise InvalidSpec(f"seed must be an unsigned integer, got {self.seed}")


def _pick(rng: random.Random, pool: Sequence[str]) -> str:
    return pool[int(rng.random() * len(pool))]


def generate(spec: MixSpec) -> list[Document]:
    """Generate the corpus described by ``spec``, gold tags included.

    With probability mix_rate a document is a non-empty prefix of lang_a
    tokens followed by a non-empty suffix of lang_b tokens (switch point
    uniform) and carries the two-language gold tag; otherwise a fair coin
    picks one pool and the tag is a singleton. All randomness flows through
    ``random.Random(seed).random()``, so equal specs give identical corpora
    on any platform or Python version.
    """
    rng = random.Random(spec.seed)
    tag_a = LanguageTag((spec.lang_a,))
    tag_b = LanguageTag((spec.lang_b,))
    tag_mixed = LanguageTag((spec.lang_a, spec.lang_b))

    docs: list[Document] = []
    for i in range(spec.n_docs):
        if rng.random() < spec.mix_rate:
            switch = 1 + int(rng.random() * (spec.tokens_per_doc - 1))
            tokens = [_pick(rng, spec.source_a) for _ in range(switch)]
            tokens += [_pick(rng, spec.source_b) for _ in range(spec.tokens_per_doc - switch)]
            tag = tag_mixed
        else:
            if rng.random() < 0.5:
                pool, tag = spec.source_a, tag_a
            else:
                pool, tag = spec.source_b, tag_b
            tokens = [_pick(rng, pool) for _ in range(spec.tokens_per_doc)]
        docs.append(Document(id=f"synth-{i}", text=" ".join(tokens), gold_tag=tag))
    return docs
