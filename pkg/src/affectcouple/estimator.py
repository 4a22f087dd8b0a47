"""Candidate-emotion estimation and expert feedback sessions.

Given an unannotated stimulus, the estimator proposes ranked emotion
annotations built from semantically similar annotated documents:

1. semantic distance from the target profile to every annotated document,
2. neighbor set: documents within ``eps_sem`` (nearest ``k_fallback``
   when nothing is that close — the result is flagged),
3. single-linkage clustering of the neighbors' emotions at threshold
   ``eps_emo`` (similar semantics may map to several distinct emotions,
   so each emotion cluster is a separate hypothesis),
4. per cluster: similarity-weighted emotion centroid, likelihood
   proportional to the cluster's share of total similarity mass,
5. deterministic order: likelihood descending, then smaller mean
   semantic distance, then smallest support id.

A human expert then steers an :class:`AnnotationSession` through
accept / reject / adjust / abandon events until the target is committed
or handed over for manual annotation. ``leave_one_out`` scores the
estimator against a corpus's existing annotations.

All mass/centroid sums use ``math.fsum`` over support documents in id
order, which fixes the floating-point result exactly.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field, replace
from typing import Iterator, Sequence

from .affect import AffectiveRating, EmotionPoint, emotion_distance
from .corpus import Corpus, Provenance, StimulusDocument, fmt_num
from .errors import (
    ConflictError,
    NoReferenceAnnotationsError,
    SessionClosedError,
    ValidationError,
)
from .semantics import (
    SemanticProfile,
    Taxonomy,
    profile_similarity,
    semantic_distance,
)

LOO_CSV_HEADER = "doc_id,true_val,true_ar,pred_val,pred_ar,top1_error,hit_at_1,hit_at_3"


@dataclass(frozen=True, slots=True)
class EstimationConfig:
    """Neighborhood and clustering knobs for the estimation pipeline."""

    eps_sem: float = 2.0
    eps_emo: float = 1.5
    k_fallback: int = 5
    min_support: int = 1
    include_estimated: bool = True

    def __post_init__(self) -> None:
        if self.eps_sem <= 0:
            raise ValidationError(f"eps_sem must be positive, got {self.eps_sem!r}")
        if self.eps_emo <= 0:
            raise ValidationError(f"eps_emo must be positive, got {self.eps_emo!r}")
        if self.k_fallback < 1:
            raise ValidationError(f"k_fallback must be >= 1, got {self.k_fallback!r}")
        if self.min_support < 1:
            raise ValidationError(f"min_support must be >= 1, got {self.min_support!r}")


@dataclass(frozen=True, slots=True)
class CandidateAnnotation:
    """One hypothesized emotion for the target, with its evidence."""

    emotion: EmotionPoint
    likelihood: float
    support: tuple[str, ...]
    mean_semantic_distance: float
    sd_val: float = 0.0
    sd_ar: float = 0.0

    def __post_init__(self) -> None:
        if not self.support:
            raise ValidationError("candidate needs at least one support document")
        if not 0.0 < self.likelihood <= 1.0 + 1e-9:
            raise ValidationError(f"likelihood out of (0,1]: {self.likelihood!r}")


@dataclass(frozen=True, slots=True)
class EstimationResult(Sequence):
    """Ranked candidates plus a flag for the empty-neighborhood fallback."""

    candidates: tuple[CandidateAnnotation, ...]
    used_fallback: bool = False

    def __len__(self) -> int:
        return len(self.candidates)

    def __getitem__(self, index):
        return self.candidates[index]

    def __iter__(self) -> Iterator[CandidateAnnotation]:
        return iter(self.candidates)


def _reference_documents(corpus: Corpus, cfg: EstimationConfig) -> list[StimulusDocument]:
    docs = corpus.annotated_documents()
    if not cfg.include_estimated:
        docs = [d for d in docs if d.provenance is not Provenance.ESTIMATED]
    return docs


def _cluster_by_emotion(
    docs: list[StimulusDocument], eps_emo: float
) -> list[list[StimulusDocument]]:
    """Single-linkage at a fixed threshold = components of the <=eps graph."""
    n = len(docs)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    points = [d.rating.point for d in docs]
    for i in range(n):
        for j in range(i + 1, n):
            if emotion_distance(points[i], points[j]) <= eps_emo:
                parent[find(i)] = find(j)
    clusters: dict[int, list[StimulusDocument]] = {}
    for i in range(n):
        clusters.setdefault(find(i), []).append(docs[i])
    return [sorted(c, key=lambda d: d.id) for c in clusters.values()]


def _candidate_from_cluster(
    cluster: list[StimulusDocument],
    weights: dict[str, float],
    distances: dict[str, float],
) -> tuple[CandidateAnnotation, float]:
    """Build the unnormalized candidate; returns (candidate, mass)."""
    ws = [weights[d.id] for d in cluster]
    vals = [d.rating.val_mean for d in cluster]
    ars = [d.rating.ar_mean for d in cluster]
    mass = math.fsum(ws)
    c_val = math.fsum(w * v for w, v in zip(ws, vals)) / mass
    c_ar = math.fsum(w * a for w, a in zip(ws, ars)) / mass
    # the exact weighted mean lies inside the support's bounding box;
    # clamp so rounding can never push it out
    c_val = min(max(c_val, min(vals)), max(vals))
    c_ar = min(max(c_ar, min(ars)), max(ars))
    var_val = math.fsum(w * (v - c_val) ** 2 for w, v in zip(ws, vals)) / mass
    var_ar = math.fsum(w * (a - c_ar) ** 2 for w, a in zip(ws, ars)) / mass
    candidate = CandidateAnnotation(
        emotion=EmotionPoint(c_val, c_ar),
        likelihood=1.0,  # placeholder until normalization
        support=tuple(d.id for d in cluster),
        mean_semantic_distance=math.fsum(distances[d.id] for d in cluster) / len(cluster),
        sd_val=math.sqrt(max(var_val, 0.0)),
        sd_ar=math.sqrt(max(var_ar, 0.0)),
    )
    return candidate, mass


def estimate(
    target_profile: SemanticProfile,
    corpus: Corpus,
    taxonomy: Taxonomy,
    cfg: EstimationConfig = EstimationConfig(),
) -> EstimationResult:
    """Rank candidate emotions for ``target_profile`` against ``corpus``.

    Pure in all arguments: equal inputs produce identical results.

    Raises:
        NoReferenceAnnotationsError: corpus holds no annotated documents.
        UnknownTermError: a target term missing from the taxonomy.
    """
    for term in target_profile.terms:
        taxonomy.resolve(term)
    references = _reference_documents(corpus, cfg)
    if not references:
        raise NoReferenceAnnotationsError()

    distances = {
        d.id: semantic_distance(target_profile, d.profile, taxonomy) for d in references
    }
    neighbors = [d for d in references if distances[d.id] <= cfg.eps_sem]
    used_fallback = False
    if not neighbors:
        used_fallback = True
        by_distance = sorted(references, key=lambda d: (distances[d.id], d.id))
        neighbors = by_distance[: cfg.k_fallback]

    weights = {d.id: profile_similarity(target_profile, d.profile, taxonomy) for d in neighbors}
    built = [
        _candidate_from_cluster(cluster, weights, distances)
        for cluster in _cluster_by_emotion(neighbors, cfg.eps_emo)
    ]
    built = [(cand, mass) for cand, mass in built if len(cand.support) >= cfg.min_support]
    total = math.fsum(mass for _, mass in built)
    candidates = [
        replace(cand, likelihood=mass / total) for cand, mass in built
    ]
    candidates.sort(key=lambda c: (-c.likelihood, c.mean_semantic_distance, c.support[0]))
    return EstimationResult(candidates=tuple(candidates), used_fallback=used_fallback)


class SessionState:
    PROPOSED = "proposed"
    COMMITTED = "committed"
    MANUAL_REQUIRED = "manual_required"
    ABANDONED = "abandoned"

TERMINAL_STATES = frozenset(
    {SessionState.COMMITTED, SessionState.MANUAL_REQUIRED, SessionState.ABANDONED}
)


@dataclass(frozen=True, slots=True)
class Feedback:
    """One expert decision; construct via the classmethods."""

    action: str
    index: int | None = None
    val: float | None = None
    ar: float | None = None
    seq: int = 0

    @classmethod
    def accept(cls, index: int) -> "Feedback":
        return cls(action="accept", index=index)

    @classmethod
    def reject(cls, index: int) -> "Feedback":
        return cls(action="reject", index=index)

    @classmethod
    def adjust(cls, val: float, ar: float) -> "Feedback":
        return cls(action="adjust", val=val, ar=ar)

    @classmethod
    def abandon(cls) -> "Feedback":
        return cls(action="abandon")


@dataclass(frozen=True, slots=True)
class AnnotationSession:
    """Immutable snapshot of one expert review; events produce new snapshots."""

    session_id: str
    target: StimulusDocument
    candidates: tuple[CandidateAnnotation, ...]
    state: str = SessionState.PROPOSED
    history: tuple[Feedback, ...] = ()
    used_fallback: bool = False

    @property
    def seq(self) -> int:
        """Sequence number of the last applied event (0 when fresh)."""
        return len(self.history)

    @property
    def terminal(self) -> bool:
        return self.state in TERMINAL_STATES


def open_session(
    target: StimulusDocument,
    corpus: Corpus,
    cfg: EstimationConfig = EstimationConfig(),
    session_id: str = "session",
) -> AnnotationSession:
    """Start an expert review for an unannotated document.

    A corpus without any annotated reference goes straight to
    ``manual_required``: there is nothing to propose from.

    Raises:
        ConflictError: target already carries a rating.
    """
    if target.rating is not None:
        raise ConflictError(f"document {target.id!r} is already annotated")
    try:
        result = estimate(target.profile, corpus, corpus.taxonomy, cfg)
    except NoReferenceAnnotationsError:
        result = EstimationResult(candidates=())
    if not result.candidates:
        return AnnotationSession(
            session_id=session_id,
            target=target,
            candidates=(),
            state=SessionState.MANUAL_REQUIRED,
        )
    return AnnotationSession(
        session_id=session_id,
        target=target,
        candidates=result.candidates,
        used_fallback=result.used_fallback,
    )


def _checked_index(session: AnnotationSession, index: int | None) -> int:
    if index is None:
        raise ValidationError("feedback needs a candidate index")
    if not 0 <= index < len(session.candidates):
        raise ValidationError(
            f"candidate index out of range: {index} (have {len(session.candidates)})"
        )
    return index


def _renormalized(candidates: tuple[CandidateAnnotation, ...]) -> tuple[CandidateAnnotation, ...]:
    total = math.fsum(c.likelihood for c in candidates)
    return tuple(replace(c, likelihood=c.likelihood / total) for c in candidates)


def _committed_rating(candidate: CandidateAnnotation) -> AffectiveRating:
    return AffectiveRating(
        val_mean=round(candidate.emotion.val, 6),
        val_sd=round(candidate.sd_val, 6),
        ar_mean=round(candidate.emotion.ar, 6),
        ar_sd=round(candidate.sd_ar, 6),
    )


def apply_feedback(session: AnnotationSession, event: Feedback) -> AnnotationSession:
    """Advance the session by one expert decision; returns the new session.

    Raises:
        SessionClosedError: the session already reached a terminal state.
        ValidationError: malformed event (bad action, index, or emotion).
    """
    if session.terminal:
        raise SessionClosedError(session.session_id, session.state)
    entry = replace(event, seq=session.seq + 1)
    history = session.history + (entry,)

    if event.action == "accept":
        index = _checked_index(session, event.index)
        chosen = session.candidates[index]
        target = replace(
            session.target,
            rating=_committed_rating(chosen),
            provenance=Provenance.ESTIMATED,
        )
        return replace(
            session, target=target, state=SessionState.COMMITTED, history=history
        )
    if event.action == "reject":
        index = _checked_index(session, event.index)
        remaining = session.candidates[:index] + session.candidates[index + 1 :]
        if not remaining:
            return replace(
                session,
                candidates=(),
                state=SessionState.MANUAL_REQUIRED,
                history=history,
            )
        return replace(session, candidates=_renormalized(remaining), history=history)
    if event.action == "adjust":
        if event.val is None or event.ar is None:
            raise ValidationError("adjust needs val and ar")
        rating = AffectiveRating(
            val_mean=round(event.val, 6), val_sd=0.0, ar_mean=round(event.ar, 6), ar_sd=0.0
        )
        target = replace(session.target, rating=rating, provenance=Provenance.MANUAL)
        return replace(
            session, target=target, state=SessionState.COMMITTED, history=history
        )
    if event.action == "abandon":
        return replace(session, state=SessionState.ABANDONED, history=history)
    raise ValidationError(f"unknown feedback action {event.action!r}")


@dataclass(frozen=True, slots=True)
class LooRecord:
    doc_id: str
    true_val: float
    true_ar: float
    pred_val: float
    pred_ar: float
    top1_error: float
    hit_at_1: bool
    hit_at_3: bool


@dataclass(frozen=True, slots=True)
class LooReport:
    records: tuple[LooRecord, ...]
    mean_top1_error: float
    median_top1_error: float
    hit_rate_1: float
    hit_rate_3: float
    group_hit_rate_1: dict[str, float] = field(default_factory=dict)

    def to_csv(self) -> str:
        lines = [LOO_CSV_HEADER]
        for r in self.records:
            lines.append(
                ",".join(
                    [
                        r.doc_id,
                        fmt_num(r.true_val),
                        fmt_num(r.true_ar),
                        fmt_num(r.pred_val),
                        fmt_num(r.pred_ar),
                        fmt_num(r.top1_error),
                        "1" if r.hit_at_1 else "0",
                        "1" if r.hit_at_3 else "0",
                    ]
                )
            )
        return "\n".join(lines) + "\n"

    def summary(self) -> str:
        lines = [
            f"documents evaluated: {len(self.records)}",
            f"mean top-1 error:    {fmt_num(self.mean_top1_error)}",
            f"median top-1 error:  {fmt_num(self.median_top1_error)}",
            f"hit@1: {fmt_num(100.0 * self.hit_rate_1)}%",
            f"hit@3: {fmt_num(100.0 * self.hit_rate_3)}%",
        ]
        for group in sorted(self.group_hit_rate_1):
            lines.append(
                f"hit@1[{group}]: {fmt_num(100.0 * self.group_hit_rate_1[group])}%"
            )
        return "\n".join(lines)


def _hidden(corpus: Corpus, doc: StimulusDocument) -> Corpus:
    return corpus.with_document(replace(doc, rating=None), allow_replace=True)


def leave_one_out(
    corpus: Corpus,
    taxonomy: Taxonomy,
    cfg: EstimationConfig = EstimationConfig(),
    groups: dict[str, str] | None = None,
) -> LooReport:
    """Hide each annotation in turn and score its re-estimation.

    ``groups`` optionally maps doc ids to ground-truth group names for a
    per-group hit@1 breakdown.

    Raises:
        ValidationError: fewer than two annotated documents.
    """
    annotated = corpus.annotated_documents()
    if len(annotated) < 2:
        raise ValidationError("leave-one-out needs at least 2 annotated documents")
    records: list[LooRecord] = []
    for doc in annotated:
        result = estimate(doc.profile, _hidden(corpus, doc), taxonomy, cfg)
        if not result:
            raise ValidationError(
                f"no candidates for {doc.id!r}; lower min_support"
            )
        truth = doc.rating.point
        top = result[0]
        errors = [emotion_distance(c.emotion, truth) for c in result]
        records.append(
            LooRecord(
                doc_id=doc.id,
                true_val=truth.val,
                true_ar=truth.ar,
                pred_val=top.emotion.val,
                pred_ar=top.emotion.ar,
                top1_error=errors[0],
                hit_at_1=errors[0] <= cfg.eps_emo,
                hit_at_3=any(e <= cfg.eps_emo for e in errors[:3]),
            )
        )
    top1 = [r.top1_error for r in records]
    report = LooReport(
        records=tuple(records),
        mean_top1_error=math.fsum(top1) / len(top1),
        median_top1_error=statistics.median(top1),
        hit_rate_1=sum(r.hit_at_1 for r in records) / len(records),
        hit_rate_3=sum(r.hit_at_3 for r in records) / len(records),
        group_hit_rate_1=_group_rates(records, groups),
    )
    return report


def _group_rates(
    records: list[LooRecord], groups: dict[str, str] | None
) -> dict[str, float]:
    if not groups:
        return {}
    hits: dict[str, list[bool]] = {}
    for r in records:
        group = groups.get(r.doc_id)
        if group is not None:
            hits.setdefault(group, []).append(r.hit_at_1)
    return {g: sum(h) / len(h) for g, h in sorted(hits.items())}
