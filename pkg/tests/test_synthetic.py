import json

import pytest

from affectcouple import (
    EmotionPoint,
    FormatError,
    Provenance,
    SyntheticGroup,
    SyntheticSpec,
    UnknownTermError,
    ValidationError,
    generate_synthetic,
    load_spec,
    load_truth,
    save_truth,
)

STUDY_SPEC = SyntheticSpec(
    groups=(
        SyntheticGroup("food", "food", 35, EmotionPoint(7.0, 3.0), 0.0),
        SyntheticGroup("nature", "nature", 24, EmotionPoint(3.0, 3.0), 0.0),
        SyntheticGroup("sports", "sports", 13, EmotionPoint(6.5, 7.5), 0.0),
    )
)


def test_counts_add_up(study_taxonomy):
    result = generate_synthetic(STUDY_SPEC, study_taxonomy, seed=1)
    assert len(result.corpus) == 72
    members = result.group_members()
    assert {g: len(ids) for g, ids in members.items()} == {
        "food": 35, "nature": 24, "sports": 13,
    }


def test_same_seed_same_corpus(study_taxonomy):
    a = generate_synthetic(STUDY_SPEC, study_taxonomy, seed=99)
    b = generate_synthetic(STUDY_SPEC, study_taxonomy, seed=99)
    assert a.corpus == b.corpus
    assert a.membership == b.membership


def test_different_seeds_differ(study_taxonomy):
    a = generate_synthetic(STUDY_SPEC, study_taxonomy, seed=1)
    b = generate_synthetic(STUDY_SPEC, study_taxonomy, seed=2)
    assert a.corpus != b.corpus


def test_zero_noise_pins_emotions_to_centroid(study_taxonomy):
    result = generate_synthetic(STUDY_SPEC, study_taxonomy, seed=5)
    centroids = {"food": (7.0, 3.0), "nature": (3.0, 3.0), "sports": (6.5, 7.5)}
    for doc_id, group in result.membership.items():
        rating = result.corpus.documents[doc_id].rating
        assert (rating.val_mean, rating.ar_mean) == centroids[group]
        assert rating.val_sd == 0.0


def test_tags_come_from_group_subtree(study_taxonomy):
    result = generate_synthetic(STUDY_SPEC, study_taxonomy, seed=7)
    for doc_id, group in result.membership.items():
        subtree = study_taxonomy.descendants(group)
        terms = result.corpus.documents[doc_id].profile.terms
        assert 1 <= len(terms) <= 4
        assert terms <= subtree


def test_synthetic_provenance(study_taxonomy):
    result = generate_synthetic(STUDY_SPEC, study_taxonomy, seed=3)
    assert all(
        d.provenance is Provenance.SYNTHETIC for d in result.corpus.documents.values()
    )


def test_noise_stays_in_range(study_taxonomy):
    spec = SyntheticSpec(
        groups=(SyntheticGroup("edge", "food", 200, EmotionPoint(1.1, 8.9), 5.0),)
    )
    result = generate_synthetic(spec, study_taxonomy, seed=11)
    for d in result.corpus.documents.values():
        assert 1.0 <= d.rating.val_mean <= 9.0
        assert 1.0 <= d.rating.ar_mean <= 9.0


def test_empty_subtree_rejected(study_taxonomy):
    spec = SyntheticSpec(
        groups=(SyntheticGroup("leafy", "fruit", 3, EmotionPoint(5.0, 5.0), 0.0),)
    )
    with pytest.raises(ValidationError, match="no tags below"):
        generate_synthetic(spec, study_taxonomy, seed=1)


def test_unknown_subtree_rejected(study_taxonomy):
    spec = SyntheticSpec(
        groups=(SyntheticGroup("x", "vehicles", 3, EmotionPoint(5.0, 5.0), 0.0),)
    )
    with pytest.raises(UnknownTermError):
        generate_synthetic(spec, study_taxonomy, seed=1)


def test_centroid_out_of_range_rejected():
    with pytest.raises(ValidationError):
        SyntheticGroup("x", "food", 3, EmotionPoint(0.5, 5.0), 0.0)


def test_group_validation():
    with pytest.raises(ValidationError):
        SyntheticGroup("x", "food", 0, EmotionPoint(5.0, 5.0), 0.0)
    with pytest.raises(ValidationError):
        SyntheticGroup("x", "food", 3, EmotionPoint(5.0, 5.0), -0.5)
    with pytest.raises(ValidationError, match="duplicate"):
        SyntheticSpec(
            groups=(
                SyntheticGroup("x", "food", 1, EmotionPoint(5.0, 5.0)),
                SyntheticGroup("x", "nature", 1, EmotionPoint(5.0, 5.0)),
            )
        )


def test_spec_json_round_trip(tmp_path):
    payload = {
        "groups": [
            {"name": "food", "subtree": "food", "count": 35, "val": 7.0, "ar": 3.0, "sd": 0.0},
            {"name": "nature", "subtree": "nature", "count": 24, "val": 3.0, "ar": 3.0},
        ]
    }
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    spec = load_spec(path)
    assert len(spec.groups) == 2
    assert spec.groups[0].count == 35
    assert spec.groups[1].sd == 0.0


def test_spec_json_errors(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(FormatError, match="invalid JSON"):
        load_spec(path)
    path.write_text(json.dumps({"groups": [{"name": "x"}]}), encoding="utf-8")
    with pytest.raises(FormatError, match="missing keys"):
        load_spec(path)


def test_truth_round_trip(tmp_path, study_taxonomy):
    result = generate_synthetic(STUDY_SPEC, study_taxonomy, seed=2)
    path = tmp_path / "truth.csv"
    save_truth(result, path)
    assert load_truth(path) == result.membership
