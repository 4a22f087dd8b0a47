"""JSON-over-HTTP facade for corpus browsing, estimation, and sessions.

A thin adapter: every endpoint delegates to the corresponding core
operation and serializes its result; no domain logic lives here. All
non-success responses carry exactly one error object::

    {"code": "...", "message": "...", "detail": "..."?}

State is held in a :class:`CorpusStore`: the latest corpus revision
(mutations serialize through one lock and bump a revision counter) plus
in-memory annotation sessions. Sessions snapshot the corpus at open
time; committing applies to the latest revision and conflicts if the
same document was annotated concurrently.
"""

from __future__ import annotations

import itertools
import threading
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from .affect import AffectiveRating, EmotionPoint
from .analysis import (
    DEFAULT_OUTLIER_FACTOR,
    build_groups,
    group_outliers,
    parse_group_queries,
    scatter_rows,
)
from .corpus import Corpus, Provenance, StimulusDocument, commit_rating
from .coupling import CouplingThresholds, coupled_clusters
from .errors import (
    AffectCoupleError,
    ConflictError,
    UnknownIdError,
    UnknownTermError,
    ValidationError,
)
from .estimator import (
    AnnotationSession,
    CandidateAnnotation,
    EstimationConfig,
    Feedback,
    SessionState,
    apply_feedback,
    estimate,
    open_session,
)
from .semantics import SemanticProfile

_STATUS_BY_CODE = {
    "VALIDATION": 400,
    "RANGE": 400,
    "FORMAT": 400,
    "VERSION": 400,
    "UNANNOTATED": 400,
    "UNKNOWN_ID": 404,
    "DUPLICATE": 409,
    "CONFLICT": 409,
    "SESSION_CLOSED": 409,
    "NO_REFERENCE": 409,
    "UNKNOWN_TERM": 422,
}

_HTTP_CODES = {404: "NOT_FOUND", 405: "METHOD_NOT_ALLOWED"}


class CorpusStore:
    """Latest corpus revision plus live sessions, guarded by one lock."""

    def __init__(self, corpus: Corpus):
        self._lock = threading.Lock()
        self._corpus = corpus
        self._revision = 1
        self._sessions: dict[str, AnnotationSession] = {}
        self._ids = itertools.count(1)

    @property
    def corpus(self) -> Corpus:
        with self._lock:
            return self._corpus

    @property
    def revision(self) -> int:
        with self._lock:
            return self._revision

    def add_document(self, doc: StimulusDocument) -> int:
        with self._lock:
            self._corpus = self._corpus.with_document(doc)
            self._revision += 1
            return self._revision

    def annotate(
        self, doc_id: str, rating: AffectiveRating, provenance: Provenance
    ) -> StimulusDocument:
        with self._lock:
            doc = self._corpus.get(doc_id)
            if doc is None:
                raise UnknownIdError("document", doc_id)
            if doc.rating is not None:
                raise ConflictError(f"document {doc_id!r} is already annotated")
            self._corpus = commit_rating(self._corpus, doc_id, rating, provenance)
            self._revision += 1
            return self._corpus.documents[doc_id]

    def open_session(self, doc_id: str, cfg: EstimationConfig) -> AnnotationSession:
        with self._lock:
            doc = self._corpus.get(doc_id)
            if doc is None:
                raise UnknownIdError("document", doc_id)
            session = open_session(
                doc, self._corpus, cfg, session_id=f"s-{next(self._ids)}"
            )
            self._sessions[session.session_id] = session
            return session

    def get_session(self, session_id: str) -> AnnotationSession:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is None:
                raise UnknownIdError("session", session_id)
            return session

    def feedback(self, session_id: str, event: Feedback) -> AnnotationSession:
        """Apply one event; a commit also lands in the latest corpus revision."""
        with self._lock:
            session = self._sessions.get(session_id)
            if session is None:
                raise UnknownIdError("session", session_id)
            updated = apply_feedback(session, event)
            if updated.state == SessionState.COMMITTED:
                current = self._corpus.get(updated.target.id)
                if current is None:
                    raise UnknownIdError("document", updated.target.id)
                if current.rating is not None:
                    # keep the session open: the expert can retry elsewhere
                    raise ConflictError(
                        f"document {updated.target.id!r} was annotated concurrently"
                    )
                self._corpus = commit_rating(
                    self._corpus,
                    updated.target.id,
                    updated.target.rating,
                    updated.target.provenance,
                )
                self._revision += 1
            self._sessions[session_id] = updated
            return updated


class DocumentIn(BaseModel):
    id: str
    uri: str
    tags: list[str]


class AnnotationIn(BaseModel):
    val: float
    ar: float


class EstimateIn(BaseModel):
    tags: list[str]
    eps_sem: float | None = None
    eps_emo: float | None = None
    k_fallback: int | None = None
    min_support: int | None = None


class SessionIn(BaseModel):
    doc_id: str
    eps_sem: float | None = None
    eps_emo: float | None = None
    k_fallback: int | None = None
    min_support: int | None = None


class FeedbackIn(BaseModel):
    action: str
    index: int | None = None
    val: float | None = None
    ar: float | None = None


def _rating_json(rating: AffectiveRating | None) -> dict[str, float] | None:
    if rating is None:
        return None
    out = {
        "val_mean": rating.val_mean,
        "val_sd": rating.val_sd,
        "ar_mean": rating.ar_mean,
        "ar_sd": rating.ar_sd,
    }
    if rating.dom_mean is not None:
        out["dom_mean"] = rating.dom_mean
        out["dom_sd"] = rating.dom_sd
    return out


def _document_json(doc: StimulusDocument) -> dict[str, Any]:
    return {
        "id": doc.id,
        "uri": doc.uri,
        "tags": sorted(doc.profile.terms),
        "rating": _rating_json(doc.rating),
        "provenance": doc.provenance.value,
        "annotated": doc.annotated,
    }


def _candidate_json(candidate: CandidateAnnotation) -> dict[str, Any]:
    return {
        "emotion": {"val": candidate.emotion.val, "ar": candidate.emotion.ar},
        "likelihood": candidate.likelihood,
        "support": list(candidate.support),
        "mean_semantic_distance": candidate.mean_semantic_distance,
        "sd_val": candidate.sd_val,
        "sd_ar": candidate.sd_ar,
    }


def _session_json(session: AnnotationSession) -> dict[str, Any]:
    return {
        "session_id": session.session_id,
        "state": session.state,
        "seq": session.seq,
        "used_fallback": session.used_fallback,
        "target": _document_json(session.target),
        "candidates": [_candidate_json(c) for c in session.candidates],
        "history": [
            {
                "seq": e.seq,
                "action": e.action,
                "index": e.index,
                "val": e.val,
                "ar": e.ar,
            }
            for e in session.history
        ],
    }


def _config(corpus: Corpus, body) -> EstimationConfig:
    base = EstimationConfig(
        eps_sem=corpus.defaults.eps_sem, eps_emo=corpus.defaults.eps_emo
    )
    overrides = {
        name: getattr(body, name)
        for name in ("eps_sem", "eps_emo", "k_fallback", "min_support")
        if getattr(body, name, None) is not None
    }
    if not overrides:
        return base
    return EstimationConfig(
        eps_sem=overrides.get("eps_sem", base.eps_sem),
        eps_emo=overrides.get("eps_emo", base.eps_emo),
        k_fallback=overrides.get("k_fallback", base.k_fallback),
        min_support=overrides.get("min_support", base.min_support),
    )


def _profile_from_tags(tags: list[str]) -> SemanticProfile:
    cleaned = [t for t in (tag.strip() for tag in tags) if t]
    if not cleaned:
        raise ValidationError("empty semantic profile")
    return SemanticProfile.of(*cleaned)


def create_app(store: CorpusStore) -> FastAPI:
    app = FastAPI(title="affectcouple", docs_url=None, redoc_url=None)

    @app.exception_handler(AffectCoupleError)
    async def _domain_error(request: Request, exc: AffectCoupleError):
        body: dict[str, Any] = {"code": exc.code, "message": str(exc)}
        detail = getattr(exc, "field", None) or getattr(exc, "term", None)
        if detail:
            body["detail"] = str(detail)
        return JSONResponse(
            status_code=_STATUS_BY_CODE.get(exc.code, 400), content=body
        )

    @app.exception_handler(RequestValidationError)
    async def _request_error(request: Request, exc: RequestValidationError):
        errors = exc.errors()
        detail = ".".join(str(part) for part in errors[0]["loc"]) if errors else None
        body = {"code": "VALIDATION", "message": "invalid request"}
        if detail:
            body["detail"] = detail
        return JSONResponse(status_code=400, content=body)

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(request: Request, exc: StarletteHTTPException):
        code = _HTTP_CODES.get(exc.status_code, f"HTTP_{exc.status_code}")
        return JSONResponse(
            status_code=exc.status_code,
            content={"code": code, "message": str(exc.detail)},
        )

    @app.get("/corpus")
    def corpus_summary():
        corpus = store.corpus
        return {
            "documents": len(corpus),
            "annotated": len(corpus.annotated_documents()),
            "unannotated": len(corpus.unannotated_documents()),
            "taxonomy": corpus.taxonomy_ref,
            "defaults": {
                "eps_sem": corpus.defaults.eps_sem,
                "eps_emo": corpus.defaults.eps_emo,
            },
            "revision": store.revision,
        }

    @app.get("/documents")
    def list_documents(
        annotated: bool | None = None, offset: int = 0, limit: int = 100
    ):
        if offset < 0 or limit < 1:
            raise ValidationError("offset must be >= 0 and limit >= 1")
        docs = store.corpus.ordered_documents()
        if annotated is not None:
            docs = [d for d in docs if d.annotated == annotated]
        page = docs[offset : offset + limit]
        return {
            "total": len(docs),
            "offset": offset,
            "limit": limit,
            "documents": [_document_json(d) for d in page],
        }

    @app.post("/documents", status_code=201)
    def register_document(body: DocumentIn):
        corpus = store.corpus
        doc = StimulusDocument(
            id=body.id.strip(),
            uri=body.uri.strip(),
            profile=_profile_from_tags(body.tags),
            rating=None,
            provenance=Provenance.MANIFEST,
        )
        for term in doc.profile.terms:
            if term not in corpus.taxonomy:
                raise UnknownTermError(term)
        revision = store.add_document(doc)
        return {"document": _document_json(doc), "revision": revision}

    @app.post("/documents/{doc_id}/annotation")
    def annotate_document(doc_id: str, body: AnnotationIn):
        rating = AffectiveRating(
            val_mean=round(body.val, 6), val_sd=0.0, ar_mean=round(body.ar, 6), ar_sd=0.0
        )
        doc = store.annotate(doc_id, rating, Provenance.MANUAL)
        return {"document": _document_json(doc), "revision": store.revision}

    @app.post("/estimate")
    def estimate_endpoint(body: EstimateIn):
        corpus = store.corpus
        profile = _profile_from_tags(body.tags)
        result = estimate(profile, corpus, corpus.taxonomy, _config(corpus, body))
        return {
            "candidates": [_candidate_json(c) for c in result],
            "used_fallback": result.used_fallback,
        }

    @app.post("/sessions", status_code=201)
    def open_session_endpoint(body: SessionIn):
        cfg = _config(store.corpus, body)
        session = store.open_session(body.doc_id, cfg)
        return _session_json(session)

    @app.get("/sessions/{session_id}")
    def get_session_endpoint(session_id: str):
        return _session_json(store.get_session(session_id))

    @app.post("/sessions/{session_id}/feedback")
    def feedback_endpoint(session_id: str, body: FeedbackIn):
        event = Feedback(
            action=body.action, index=body.index, val=body.val, ar=body.ar
        )
        return _session_json(store.feedback(session_id, event))

    @app.get("/analysis/groups")
    def analysis_groups(spec: str, c: float = DEFAULT_OUTLIER_FACTOR):
        corpus = store.corpus
        queries = parse_group_queries(spec)
        groups = build_groups(corpus, corpus.taxonomy, queries)
        payload = []
        for g in groups:
            outliers = (
                group_outliers(g, c) if len(g.member_ids) >= 3 and c > 0 else []
            )
            payload.append(
                {
                    "name": g.name,
                    "member_count": len(g.member_ids),
                    "member_ids": list(g.member_ids),
                    "centroid": (
                        None
                        if g.centroid is None
                        else {"val": g.centroid.val, "ar": g.centroid.ar}
                    ),
                    "sd_val": g.sd_val,
                    "sd_ar": g.sd_ar,
                    "empty": g.empty,
                    "outliers": [
                        {"doc_id": doc_id, "distance": distance, "score": score}
                        for doc_id, distance, score in outliers
                    ],
                }
            )
        return {"groups": payload}

    @app.get("/analysis/coupling")
    def analysis_coupling(eps_sem: float | None = None, eps_emo: float | None = None):
        corpus = store.corpus
        thresholds = CouplingThresholds(
            eps_sem=eps_sem if eps_sem is not None else corpus.defaults.eps_sem,
            eps_emo=eps_emo if eps_emo is not None else corpus.defaults.eps_emo,
        )
        clusters = coupled_clusters(
            corpus.annotated_documents(), corpus.taxonomy, thresholds
        )
        return {
            "thresholds": {
                "eps_sem": thresholds.eps_sem,
                "eps_emo": thresholds.eps_emo,
            },
            "clusters": clusters,
        }

    @app.get("/scatter")
    def scatter(spec: str | None = None):
        corpus = store.corpus
        groups = None
        if spec:
            groups = build_groups(corpus, corpus.taxonomy, parse_group_queries(spec))
        points = []
        for doc_id, group, val, ar in scatter_rows(corpus, groups):
            doc = corpus.documents[doc_id]
            points.append(
                {
                    "doc_id": doc_id,
                    "group": group,
                    "val": val,
                    "ar": ar,
                    "provenance": doc.provenance.value,
                    "tags": sorted(doc.profile.terms),
                    "uri": doc.uri,
                }
            )
        return {"points": points}

    return app
