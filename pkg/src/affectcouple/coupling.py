"""Pairwise coupling of annotated documents and coupled-cluster extraction.

Two annotated documents are coupled when their tag sets differ but sit
within the semantic radius while their emotions sit within the emotion
radius. Coupling is evaluated pairwise; clusters are the connected
components of the resulting graph (the relation itself is not transitive,
components are the weakest closure over it).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .affect import emotion_distance
from .errors import UnannotatedDocumentError, ValidationError
from .semantics import Taxonomy, semantic_distance

if TYPE_CHECKING:
    from .corpus import StimulusDocument


@dataclass(frozen=True, slots=True)
class CouplingThresholds:
    """Radii in semantic and emotion space that define coupling."""

    eps_sem: float
    eps_emo: float

    def __post_init__(self) -> None:
        if not (self.eps_sem > 0.0):
            raise ValidationError(f"eps_sem must be > 0, got {self.eps_sem!r}")
        if not (self.eps_emo > 0.0):
            raise ValidationError(f"eps_emo must be > 0, got {self.eps_emo!r}")


@dataclass(frozen=True, slots=True)
class CouplingVerdict:
    """Outcome of the coupling predicate for one document pair."""

    doc_a: str
    doc_b: str
    d_sem: float
    d_emo: float
    coupled: bool
    identical_semantics: bool
    thresholds: CouplingThresholds


def _require_rating(doc: "StimulusDocument"):
    if doc.rating is None:
        raise UnannotatedDocumentError(doc.id)
    return doc.rating


def couple(
    doc_a: "StimulusDocument",
    doc_b: "StimulusDocument",
    taxonomy: Taxonomy,
    thresholds: CouplingThresholds,
) -> CouplingVerdict:
    """Evaluate the coupling predicate between two annotated documents.

    Pairs with equal tag sets are never coupled; the verdict carries the
    ``identical_semantics`` flag instead of erroring so that batch
    matrices stay total.
    """
    rating_a = _require_rating(doc_a)
    rating_b = _require_rating(doc_b)
    d_sem = semantic_distance(doc_a.profile, doc_b.profile, taxonomy)
    d_emo = emotion_distance(rating_a.point, rating_b.point)
    identical = doc_a.profile.terms == doc_b.profile.terms
    coupled = (
        not identical
        and d_sem <= thresholds.eps_sem
        and d_emo <= thresholds.eps_emo
    )
    return CouplingVerdict(
        doc_a=doc_a.id,
        doc_b=doc_b.id,
        d_sem=d_sem,
        d_emo=d_emo,
        coupled=coupled,
        identical_semantics=identical,
        thresholds=thresholds,
    )


@dataclass(frozen=True, slots=True)
class CouplingMatrix:
    """Symmetric pairwise verdicts over a document list."""

    ids: tuple[str, ...]
    coupled: tuple[tuple[bool, ...], ...]
    d_sem: tuple[tuple[float, ...], ...]
    d_emo: tuple[tuple[float, ...], ...]
    thresholds: CouplingThresholds

    def coupled_pairs(self) -> list[tuple[str, str]]:
        out = []
        for i in range(len(self.ids)):
            for j in range(i + 1, len(self.ids)):
                if self.coupled[i][j]:
                    out.append((self.ids[i], self.ids[j]))
        return out


def coupling_matrix(
    docs: Sequence["StimulusDocument"],
    taxonomy: Taxonomy,
    thresholds: CouplingThresholds,
) -> CouplingMatrix:
    """All pairwise verdicts; diagonal pairs are identical-semantics, never coupled."""
    n = len(docs)
    for doc in docs:
        _require_rating(doc)
    coupled = [[False] * n for _ in range(n)]
    d_sem = [[0.0] * n for _ in range(n)]
    d_emo = [[0.0] * n for _ in range(n)]
    for i in range(n):
        d_sem[i][i] = semantic_distance(docs[i].profile, docs[i].profile, taxonomy)
        for j in range(i + 1, n):
            verdict = couple(docs[i], docs[j], taxonomy, thresholds)
            coupled[i][j] = coupled[j][i] = verdict.coupled
            d_sem[i][j] = d_sem[j][i] = verdict.d_sem
            d_emo[i][j] = d_emo[j][i] = verdict.d_emo
    return CouplingMatrix(
        ids=tuple(doc.id for doc in docs),
        coupled=tuple(tuple(row) for row in coupled),
        d_sem=tuple(tuple(row) for row in d_sem),
        d_emo=tuple(tuple(row) for row in d_emo),
        thresholds=thresholds,
    )


def coupled_clusters(
    docs: Sequence["StimulusDocument"],
    taxonomy: Taxonomy,
    thresholds: CouplingThresholds,
) -> list[list[str]]:
    """Connected components of the coupling graph, singletons included.

    Returns a partition of the input ids; each cluster is sorted by id and
    clusters are ordered by their smallest member.
    """
    matrix = coupling_matrix(docs, taxonomy, thresholds)
    n = len(matrix.ids)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if matrix.coupled[i][j]:
                parent[find(i)] = find(j)
    groups: dict[int, list[str]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(matrix.ids[i])
    clusters = [sorted(members) for members in groups.values()]
    clusters.sort(key=lambda c: c[0])
    return clusters
