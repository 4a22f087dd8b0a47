"""Deterministic synthetic corpora with known group structure.

Real emotionally annotated picture sets are license-restricted, so tests
and demos run on generated stand-ins: each group owns a taxonomy subtree
and a 2D emotion centroid, and its documents draw 1-4 tags from that
subtree plus an emotion from a range-truncated Gaussian around the
centroid. The generator records which group produced each document, so
group recovery can be scored against exact ground truth.

Spec files are JSON:

    {"groups": [{"name": "food", "subtree": "food", "count": 35,
                 "val": 7.0, "ar": 3.0, "sd": 0.0}]}
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from .affect import RATING_MAX, RATING_MIN, AffectiveRating, EmotionPoint
from .corpus import DEFAULT_THRESHOLDS, Corpus, Provenance, StimulusDocument
from .coupling import CouplingThresholds
from .errors import FormatError, ValidationError
from .semantics import SemanticProfile, Taxonomy

_MAX_TAGS = 4
_MAX_REDRAWS = 100

TRUTH_HEADER = "doc_id,group"


@dataclass(frozen=True, slots=True)
class SyntheticGroup:
    """One generated cluster: a tag subtree, an emotion centroid, a size."""

    name: str
    subtree: str
    count: int
    centroid: EmotionPoint
    sd: float = 0.0

    def __post_init__(self) -> None:
        if not self.name:
            raise ValidationError("group name must be non-empty")
        if self.count < 1:
            raise ValidationError(f"group {self.name!r}: count must be >= 1")
        if self.sd < 0:
            raise ValidationError(f"group {self.name!r}: sd must be >= 0")


@dataclass(frozen=True, slots=True)
class SyntheticSpec:
    groups: tuple[SyntheticGroup, ...]

    def __post_init__(self) -> None:
        if not self.groups:
            raise ValidationError("synthetic spec needs at least one group")
        names = [g.name for g in self.groups]
        if len(set(names)) != len(names):
            raise ValidationError("duplicate group names in synthetic spec")


@dataclass(frozen=True, slots=True)
class SyntheticResult:
    corpus: Corpus
    membership: dict[str, str]  # doc id -> group name

    def group_members(self) -> dict[str, list[str]]:
        members: dict[str, list[str]] = {}
        for doc_id in sorted(self.membership):
            members.setdefault(self.membership[doc_id], []).append(doc_id)
        return members


def load_spec(path: str | Path) -> SyntheticSpec:
    """Parse a JSON group-spec file."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise FormatError(f"invalid JSON in {path}: {err}") from None
    if not isinstance(raw, dict) or not isinstance(raw.get("groups"), list):
        raise FormatError(f"{path}: expected an object with a 'groups' list")
    groups = []
    for i, entry in enumerate(raw["groups"]):
        if not isinstance(entry, dict):
            raise FormatError(f"groups[{i}]: expected an object")
        missing = {"name", "subtree", "count", "val", "ar"} - entry.keys()
        if missing:
            raise FormatError(f"groups[{i}]: missing keys {sorted(missing)}")
        groups.append(
            SyntheticGroup(
                name=str(entry["name"]),
                subtree=str(entry["subtree"]),
                count=int(entry["count"]),
                centroid=EmotionPoint(float(entry["val"]), float(entry["ar"])),
                sd=float(entry.get("sd", 0.0)),
            )
        )
    return SyntheticSpec(groups=tuple(groups))


def _draw_truncated(rng: random.Random, mu: float, sd: float) -> float:
    """Gaussian draw re-sampled into [1,9], clamped after 100 misses."""
    x = mu
    for _ in range(_MAX_REDRAWS):
        x = rng.gauss(mu, sd)
        if RATING_MIN <= x <= RATING_MAX:
            return x
    return min(max(x, RATING_MIN), RATING_MAX)


def generate_synthetic(
    spec: SyntheticSpec,
    taxonomy: Taxonomy,
    seed: int,
    defaults: CouplingThresholds | None = None,
) -> SyntheticResult:
    """Generate a corpus from ``spec``; equal (spec, seed) give equal output.

    Raises:
        UnknownTermError: a group subtree root missing from the taxonomy.
        ValidationError: a subtree with no descendants to draw tags from.
    """
    rng = random.Random(seed)
    documents: dict[str, StimulusDocument] = {}
    membership: dict[str, str] = {}
    for group in spec.groups:
        terms = sorted(taxonomy.descendants(group.subtree))
        if not terms:
            raise ValidationError(
                f"group {group.name!r}: no tags below {group.subtree!r}"
            )
        for i in range(group.count):
            doc_id = f"{group.name}-{i + 1:04d}"
            k = rng.randint(1, min(_MAX_TAGS, len(terms)))
            tags = rng.sample(terms, k)
            val = round(_draw_truncated(rng, group.centroid.val, group.sd), 6)
            ar = round(_draw_truncated(rng, group.centroid.ar, group.sd), 6)
            documents[doc_id] = StimulusDocument(
                id=doc_id,
                uri=f"synthetic/{group.name}/{doc_id}",
                profile=SemanticProfile.of(*tags),
                rating=AffectiveRating(val, group.sd, ar, group.sd),
                provenance=Provenance.SYNTHETIC,
            )
            membership[doc_id] = group.name
    corpus = Corpus(
        taxonomy=taxonomy,
        documents=documents,
        defaults=defaults if defaults is not None else DEFAULT_THRESHOLDS,
    )
    return SyntheticResult(corpus=corpus, membership=membership)


def save_truth(result: SyntheticResult, path: str | Path) -> None:
    lines = [TRUTH_HEADER]
    lines += [f"{doc_id},{result.membership[doc_id]}" for doc_id in sorted(result.membership)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_truth(path: str | Path) -> dict[str, str]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != TRUTH_HEADER:
        raise FormatError(f"{path}: expected header {TRUTH_HEADER!r}")
    membership: dict[str, str] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        doc_id, sep, group = line.partition(",")
        if not sep or not doc_id or not group:
            raise FormatError("expected doc_id,group", line=lineno)
        membership[doc_id] = group
    return membership
