"""Group statistics over the valence-arousal plane.

Queries (name + tag set) carve an annotated corpus into possibly
overlapping stimulus groups; per group we report the emotion centroid,
per-axis dispersion, members whose emotion sits unusually far from the
centroid, and which groups can elicit a given target emotion.
"""

from __future__ import annotations

import io
import csv
import math
from dataclasses import dataclass

from .affect import EmotionPoint, emotion_distance
from .corpus import Corpus, StimulusDocument, fmt_num
from .errors import FormatError, ValidationError
from .semantics import SemanticProfile, Taxonomy, term_similarity

GROUP_REPORT_HEADER = "group,name_count,centroid_val,centroid_ar,sd_val,sd_ar,outlier_count"
SCATTER_HEADER = "doc_id,group,val,ar"

DEFAULT_MATCH_THRESHOLD = 1.0  # exact-term match
DEFAULT_OUTLIER_FACTOR = 2.0


@dataclass(frozen=True, slots=True)
class StimulusGroup:
    """Annotated documents matching one tag query, with emotion statistics."""

    name: str
    query_tags: SemanticProfile
    member_ids: tuple[str, ...]
    member_emotions: tuple[EmotionPoint, ...]
    centroid: EmotionPoint | None
    sd_val: float
    sd_ar: float

    @property
    def empty(self) -> bool:
        return not self.member_ids

    @property
    def sigma(self) -> float:
        """Scalar dispersion: per-axis SDs combined in quadrature."""
        return math.hypot(self.sd_val, self.sd_ar)


def _matches(
    doc: StimulusDocument,
    query: SemanticProfile,
    taxonomy: Taxonomy,
    threshold: float,
) -> bool:
    return any(
        term_similarity(term, tag, taxonomy) >= threshold
        for term in doc.profile
        for tag in query
    )


def _group_stats(
    emotions: list[EmotionPoint],
) -> tuple[EmotionPoint | None, float, float]:
    if not emotions:
        return None, 0.0, 0.0
    n = len(emotions)
    c_val = math.fsum(p.val for p in emotions) / n
    c_ar = math.fsum(p.ar for p in emotions) / n
    sd_val = math.sqrt(max(math.fsum((p.val - c_val) ** 2 for p in emotions) / n, 0.0))
    sd_ar = math.sqrt(max(math.fsum((p.ar - c_ar) ** 2 for p in emotions) / n, 0.0))
    return EmotionPoint(c_val, c_ar), sd_val, sd_ar


def parse_group_queries(text: str) -> list[tuple[str, SemanticProfile]]:
    """Parse ``name:tag1;tag2,other:tag3`` into named tag queries."""
    queries: list[tuple[str, SemanticProfile]] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, sep, tags = chunk.partition(":")
        name = name.strip()
        if not sep or not name:
            raise FormatError(f"expected name:tag1;tag2, got {chunk!r}")
        terms = [t for t in (p.strip() for p in tags.split(";")) if t]
        if not terms:
            raise FormatError(f"group {name!r} has no tags")
        queries.append((name, SemanticProfile.of(*terms)))
    if not queries:
        raise FormatError("empty group query list")
    return queries


def build_groups(
    corpus: Corpus,
    taxonomy: Taxonomy,
    queries: list[tuple[str, SemanticProfile]],
    match_threshold: float = DEFAULT_MATCH_THRESHOLD,
) -> list[StimulusGroup]:
    """Materialize one group per query over the annotated documents.

    A document joins a group when any of its terms reaches
    ``match_threshold`` term similarity with any query tag (1.0 = the
    exact same term). Documents may join several groups; queries that
    match nothing yield an empty group rather than being dropped.

    Raises:
        UnknownTermError: a query tag missing from the taxonomy.
        ValidationError: no queries given.
    """
    if not queries:
        raise ValidationError("build_groups needs at least one query")
    for _, tags in queries:
        for tag in tags:
            taxonomy.resolve(tag)
    annotated = corpus.annotated_documents()
    groups: list[StimulusGroup] = []
    for name, tags in queries:
        members = [d for d in annotated if _matches(d, tags, taxonomy, match_threshold)]
        emotions = [d.rating.point for d in members]
        centroid, sd_val, sd_ar = _group_stats(emotions)
        groups.append(
            StimulusGroup(
                name=name,
                query_tags=tags,
                member_ids=tuple(d.id for d in members),
                member_emotions=tuple(emotions),
                centroid=centroid,
                sd_val=sd_val,
                sd_ar=sd_ar,
            )
        )
    return groups


def point_coverage(
    point: EmotionPoint, groups: list[StimulusGroup], eps_emo: float
) -> list[str]:
    """Names of all groups with a member emotion within ``eps_emo`` of ``point``."""
    return [
        g.name
        for g in groups
        if any(emotion_distance(point, e) <= eps_emo for e in g.member_emotions)
    ]


def group_outliers(
    group: StimulusGroup, c: float = DEFAULT_OUTLIER_FACTOR
) -> list[tuple[str, float, float]]:
    """Members farther than ``c`` group dispersions from the centroid.

    Returns (doc_id, distance, score) triples sorted by distance
    descending, where score = distance / dispersion.

    Raises:
        ValidationError: fewer than 3 members, or c <= 0.
    """
    if c <= 0:
        raise ValidationError(f"outlier factor must be positive, got {c!r}")
    if len(group.member_ids) < 3:
        raise ValidationError(
            f"group {group.name!r}: insufficient members for outlier detection"
        )
    sigma = group.sigma
    if sigma == 0.0:
        return []
    flagged = []
    for doc_id, emotion in zip(group.member_ids, group.member_emotions):
        distance = emotion_distance(emotion, group.centroid)
        if distance > c * sigma:
            flagged.append((doc_id, distance, distance / sigma))
    flagged.sort(key=lambda item: (-item[1], item[0]))
    return flagged


def group_report_csv(
    groups: list[StimulusGroup], c: float = DEFAULT_OUTLIER_FACTOR
) -> str:
    """Per-group summary CSV; the count column tallies group members."""
    lines = [GROUP_REPORT_HEADER]
    for g in groups:
        if g.empty:
            lines.append(f"{g.name},0,,,,,0")
            continue
        outliers = group_outliers(g, c) if len(g.member_ids) >= 3 else []
        lines.append(
            ",".join(
                [
                    g.name,
                    str(len(g.member_ids)),
                    fmt_num(g.centroid.val),
                    fmt_num(g.centroid.ar),
                    fmt_num(g.sd_val),
                    fmt_num(g.sd_ar),
                    str(len(outliers)),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def scatter_rows(
    corpus: Corpus, groups: list[StimulusGroup] | None = None
) -> list[tuple[str, str, float, float]]:
    """(doc_id, group, val, ar) rows for every annotated document.

    A document appears once per group membership; documents outside all
    groups (or when no groups are given) appear once with group ''.
    Rows are sorted by (doc_id, group).
    """
    membership: dict[str, list[str]] = {}
    for g in groups or []:
        for doc_id in g.member_ids:
            membership.setdefault(doc_id, []).append(g.name)
    rows: list[tuple[str, str, float, float]] = []
    for doc in corpus.annotated_documents():
        point = doc.rating.point
        for group_name in sorted(membership.get(doc.id, [""])):
            rows.append((doc.id, group_name, point.val, point.ar))
    return rows


def scatter_csv(corpus: Corpus, groups: list[StimulusGroup] | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCATTER_HEADER.split(","))
    for doc_id, group, val, ar in scatter_rows(corpus, groups):
        writer.writerow([doc_id, group, fmt_num(val), fmt_num(ar)])
    return buf.getvalue()
