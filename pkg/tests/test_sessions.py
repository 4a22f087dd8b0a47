import math

import pytest

from affectcouple import (
    AnnotationSession,
    ConflictError,
    Corpus,
    EstimationConfig,
    Feedback,
    Provenance,
    SessionClosedError,
    SessionState,
    ValidationError,
    apply_feedback,
    open_session,
)

from conftest import doc

CFG = EstimationConfig(eps_sem=2.0, eps_emo=1.0)


@pytest.fixture
def session(three_doc_corpus):
    target = doc("9999", ["viper"])
    return open_session(target, three_doc_corpus, CFG, session_id="s-1")


def test_open_proposes_candidates(session):
    assert session.state == SessionState.PROPOSED
    assert not session.terminal
    assert session.seq == 0
    assert len(session.candidates) == 2
    assert session.candidates[0].likelihood == pytest.approx(2 / 3, abs=1e-12)


def test_open_on_annotated_document_conflicts(three_doc_corpus):
    with pytest.raises(ConflictError):
        open_session(three_doc_corpus.documents["1050"], three_doc_corpus, CFG)


def test_open_without_references_requires_manual(demo_taxonomy):
    corpus = Corpus(taxonomy=demo_taxonomy, documents={"1": doc("1", ["dog"])})
    session = open_session(doc("2", ["dog"]), corpus, CFG)
    assert session.state == SessionState.MANUAL_REQUIRED
    assert session.terminal
    assert session.candidates == ()


def test_accept_commits_estimated_rating(session):
    done = apply_feedback(session, Feedback.accept(0))
    assert done.state == SessionState.COMMITTED
    assert done.terminal
    rating = done.target.rating
    assert (rating.val_mean, rating.ar_mean) == (2.2, 6.2)
    assert rating.val_sd == rating.ar_sd == pytest.approx(0.2, abs=1e-9)
    assert done.target.provenance is Provenance.ESTIMATED
    assert done.seq == 1
    assert done.history[-1].action == "accept"


def test_adjust_commits_manual_rating(session):
    done = apply_feedback(session, Feedback.adjust(4.25, 5.5))
    assert done.state == SessionState.COMMITTED
    rating = done.target.rating
    assert (rating.val_mean, rating.ar_mean) == (4.25, 5.5)
    assert rating.val_sd == rating.ar_sd == 0.0
    assert done.target.provenance is Provenance.MANUAL


def test_reject_renormalizes_preserving_ratios(three_doc_corpus, demo_taxonomy):
    # force three candidates by tightening the emotion radius
    cfg = EstimationConfig(eps_sem=2.0, eps_emo=0.1)
    session = open_session(doc("9999", ["snake"]), three_doc_corpus, cfg)
    assert len(session.candidates) == 3
    before = session.candidates
    after = apply_feedback(session, Feedback.reject(1)).candidates
    assert len(after) == 2
    survivors = (before[0], before[2])
    assert abs(math.fsum(c.likelihood for c in after) - 1.0) < 1e-12
    assert after[0].likelihood / after[1].likelihood == pytest.approx(
        survivors[0].likelihood / survivors[1].likelihood, abs=1e-12
    )
    # emotions and support ride along untouched
    assert [c.emotion for c in after] == [c.emotion for c in survivors]
    assert [c.support for c in after] == [c.support for c in survivors]


def test_reject_last_candidate_requires_manual(session):
    s = apply_feedback(session, Feedback.reject(0))
    s = apply_feedback(s, Feedback.reject(0))
    assert s.state == SessionState.MANUAL_REQUIRED
    assert s.candidates == ()
    assert s.seq == 2


def test_abandon(session):
    done = apply_feedback(session, Feedback.abandon())
    assert done.state == SessionState.ABANDONED
    assert done.target.rating is None


@pytest.mark.parametrize(
    "closer",
    [Feedback.accept(0), Feedback.adjust(5.0, 5.0), Feedback.abandon()],
    ids=["accept", "adjust", "abandon"],
)
def test_terminal_states_absorb(session, closer):
    done = apply_feedback(session, closer)
    for event in (Feedback.accept(0), Feedback.reject(0), Feedback.abandon()):
        with pytest.raises(SessionClosedError):
            apply_feedback(done, event)


def test_bad_index_rejected(session):
    for index in (-1, 2, None):
        with pytest.raises(ValidationError):
            apply_feedback(session, Feedback(action="accept", index=index))
    # and the session is unchanged because snapshots are immutable
    assert session.seq == 0
    assert session.state == SessionState.PROPOSED


def test_unknown_action_rejected(session):
    with pytest.raises(ValidationError):
        apply_feedback(session, Feedback(action="defer"))


def test_adjust_requires_emotion(session):
    with pytest.raises(ValidationError):
        apply_feedback(session, Feedback(action="adjust", val=4.0))


def test_adjust_range_checked(session):
    with pytest.raises(Exception):
        apply_feedback(session, Feedback.adjust(0.5, 5.0))


def test_history_sequence_numbers(session):
    s = apply_feedback(session, Feedback.reject(0))
    s = apply_feedback(s, Feedback.accept(0))
    assert [e.seq for e in s.history] == [1, 2]
    assert [e.action for e in s.history] == ["reject", "accept"]
    assert s.seq == 2


def test_events_do_not_mutate_the_input_snapshot(session):
    apply_feedback(session, Feedback.accept(0))
    assert session.state == SessionState.PROPOSED
    assert session.history == ()
    assert session.target.rating is None


def test_session_is_frozen(session):
    with pytest.raises(AttributeError):
        session.state = SessionState.ABANDONED
