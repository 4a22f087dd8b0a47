import pytest

from affectcouple import (
    Corpus,
    EmotionPoint,
    FormatError,
    UnknownTermError,
    ValidationError,
    build_groups,
    group_outliers,
    group_report_csv,
    parse_group_queries,
    point_coverage,
    scatter_csv,
    scatter_rows,
)
from affectcouple.analysis import GROUP_REPORT_HEADER, SCATTER_HEADER

from conftest import doc


@pytest.fixture
def zoo_corpus(demo_taxonomy):
    documents = {
        "s1": doc("s1", ["snake"], 2.0, 6.0),
        "s2": doc("s2", ["viper"], 2.5, 6.5),
        "d1": doc("d1", ["dog"], 7.0, 5.0),
        "b1": doc("b1", ["beach"], 8.0, 3.0),
        "x1": doc("x1", ["snake", "dog"], 5.0, 5.0),
        "u1": doc("u1", ["lizard"]),  # unannotated: never a member
    }
    return Corpus(taxonomy=demo_taxonomy, documents=documents)


def test_parse_group_queries():
    parsed = parse_group_queries("reptiles:snake;viper,pets:dog")
    assert [name for name, _ in parsed] == ["reptiles", "pets"]
    assert parsed[0][1].terms == frozenset({"snake", "viper"})
    assert parsed[1][1].terms == frozenset({"dog"})


@pytest.mark.parametrize("text", ["", "noname", ":dog", "pets:", ",,"])
def test_parse_group_queries_rejects(text):
    with pytest.raises(FormatError):
        parse_group_queries(text)


def test_parse_group_queries_tolerates_stray_commas():
    parsed = parse_group_queries("pets:dog,,x:cat,")
    assert [name for name, _ in parsed] == ["pets", "x"]


def test_membership_is_exact_term_match(zoo_corpus, demo_taxonomy):
    groups = build_groups(
        zoo_corpus, demo_taxonomy, parse_group_queries("reptiles:snake;viper,pets:dog")
    )
    reptiles, pets = groups
    assert reptiles.member_ids == ("s1", "s2", "x1")
    assert pets.member_ids == ("d1", "x1")  # x1 belongs to both


def test_lower_threshold_widens_membership(zoo_corpus, demo_taxonomy):
    corpus = zoo_corpus.with_document(doc("l1", ["lizard"], 4.0, 4.0))
    (group,) = build_groups(
        corpus, demo_taxonomy, parse_group_queries("reptiles:snake"), match_threshold=1 / 3
    )
    assert "l1" in group.member_ids  # lizard is two hops from snake


def test_empty_group_is_kept(zoo_corpus, demo_taxonomy):
    (group,) = build_groups(zoo_corpus, demo_taxonomy, parse_group_queries("m:mountain"))
    assert group.empty
    assert group.centroid is None
    assert group.member_ids == ()


def test_unknown_query_tag(zoo_corpus, demo_taxonomy):
    with pytest.raises(UnknownTermError):
        build_groups(zoo_corpus, demo_taxonomy, parse_group_queries("g:python"))


def test_group_statistics(zoo_corpus, demo_taxonomy):
    (pets,) = build_groups(zoo_corpus, demo_taxonomy, parse_group_queries("pets:dog"))
    assert pets.centroid.val == pytest.approx(6.0, abs=1e-12)
    assert pets.centroid.ar == pytest.approx(5.0, abs=1e-12)
    assert pets.sd_val == pytest.approx(1.0, abs=1e-12)  # population SD of {5,7}
    assert pets.sd_ar == 0.0


def test_point_coverage_inclusive(zoo_corpus, demo_taxonomy):
    groups = build_groups(
        zoo_corpus, demo_taxonomy, parse_group_queries("reptiles:snake,pets:dog,m:mountain")
    )
    # (5,5) is a member of both reptiles and pets via x1
    assert point_coverage(EmotionPoint(5.0, 5.0), groups, 0.0) == ["reptiles", "pets"]
    assert point_coverage(EmotionPoint(4.0, 5.0), groups, 1.0) == ["reptiles", "pets"]
    assert point_coverage(EmotionPoint(1.0, 1.0), groups, 0.5) == []


def test_point_coverage_monotone_in_radius(zoo_corpus, demo_taxonomy):
    groups = build_groups(
        zoo_corpus, demo_taxonomy, parse_group_queries("reptiles:snake;viper,pets:dog")
    )
    point = EmotionPoint(4.2, 5.7)
    previous: set[str] = set()
    for eps in (0.0, 0.5, 1.0, 2.0, 4.0, 8.0):
        covered = set(point_coverage(point, groups, eps))
        assert previous <= covered
        previous = covered


# --------------------------------------------------------------- outliers

def _planted_group(demo_taxonomy):
    documents = {}
    for i in range(5):
        documents[f"a{i}"] = doc(f"a{i}", ["dog"], 6.5, 3.5)
    for i in range(5):
        documents[f"b{i}"] = doc(f"b{i}", ["dog"], 7.5, 3.5)
    documents["p1"] = doc("p1", ["dog"], 2.0, 7.5)
    documents["p2"] = doc("p2", ["dog"], 2.2, 7.8)
    corpus = Corpus(taxonomy=demo_taxonomy, documents=documents)
    (group,) = build_groups(corpus, demo_taxonomy, parse_group_queries("dogs:dog"))
    return group


def test_planted_outliers_are_flagged(demo_taxonomy):
    group = _planted_group(demo_taxonomy)
    assert group.centroid.val == pytest.approx(6.183333333333334, abs=1e-12)
    assert group.centroid.ar == pytest.approx(4.191666666666666, abs=1e-12)
    assert group.sigma == pytest.approx(2.4373112462529503, abs=1e-12)
    flagged = group_outliers(group, c=2.0)
    assert [doc_id for doc_id, _, _ in flagged] == ["p2", "p1"]
    assert flagged[0][1] == pytest.approx(5.374664072189898, abs=1e-12)
    assert flagged[0][2] == pytest.approx(2.205161150613302, abs=1e-12)
    assert flagged[1][2] == pytest.approx(2.188238361546111, abs=1e-12)


def test_raising_c_never_adds_outliers(demo_taxonomy):
    group = _planted_group(demo_taxonomy)
    previous = None
    for c in (0.5, 1.0, 2.0, 2.2, 3.0):
        ids = {doc_id for doc_id, _, _ in group_outliers(group, c)}
        if previous is not None:
            assert ids <= previous
        previous = ids
    assert group_outliers(group, 3.0) == []


def test_outliers_translation_invariant(demo_taxonomy):
    base = _planted_group(demo_taxonomy)
    documents = {}
    for doc_id, emotion in zip(base.member_ids, base.member_emotions):
        documents[doc_id] = doc(doc_id, ["dog"], emotion.val - 1.0, emotion.ar + 0.5)
    corpus = Corpus(taxonomy=demo_taxonomy, documents=documents)
    (shifted,) = build_groups(corpus, demo_taxonomy, parse_group_queries("dogs:dog"))
    assert shifted.sigma == pytest.approx(base.sigma, abs=1e-9)
    original = [(i, pytest.approx(d, abs=1e-9), pytest.approx(s, abs=1e-9))
                for i, d, s in group_outliers(base, 2.0)]
    assert group_outliers(shifted, 2.0) == original


def test_outliers_need_three_members(zoo_corpus, demo_taxonomy):
    (pets,) = build_groups(zoo_corpus, demo_taxonomy, parse_group_queries("pets:dog"))
    with pytest.raises(ValidationError, match="insufficient members"):
        group_outliers(pets, 2.0)


def test_outlier_factor_must_be_positive(demo_taxonomy):
    group = _planted_group(demo_taxonomy)
    with pytest.raises(ValidationError):
        group_outliers(group, 0.0)


def test_zero_dispersion_group_has_no_outliers(demo_taxonomy):
    documents = {f"d{i}": doc(f"d{i}", ["dog"], 5.0, 5.0) for i in range(4)}
    corpus = Corpus(taxonomy=demo_taxonomy, documents=documents)
    (group,) = build_groups(corpus, demo_taxonomy, parse_group_queries("dogs:dog"))
    assert group.sigma == 0.0
    assert group_outliers(group, 2.0) == []


# ------------------------------------------------------------------- csv

def test_group_report_csv(zoo_corpus, demo_taxonomy):
    groups = build_groups(
        zoo_corpus, demo_taxonomy,
        parse_group_queries("reptiles:snake;viper,pets:dog,m:mountain"),
    )
    lines = group_report_csv(groups).splitlines()
    assert lines[0] == GROUP_REPORT_HEADER
    assert lines[1].startswith("reptiles,3,")
    assert lines[2].startswith("pets,2,6,5,1,0,")
    assert lines[3] == "m,0,,,,,0"


def test_scatter_rows_and_csv(zoo_corpus, demo_taxonomy):
    groups = build_groups(
        zoo_corpus, demo_taxonomy, parse_group_queries("reptiles:snake;viper,pets:dog")
    )
    rows = scatter_rows(zoo_corpus, groups)
    assert ("x1", "pets", 5.0, 5.0) in rows
    assert ("x1", "reptiles", 5.0, 5.0) in rows
    assert ("b1", "", 8.0, 3.0) in rows  # beach doc belongs to no group
    assert all(row[0] != "u1" for row in rows)  # unannotated stays out
    assert rows == sorted(rows)
    text = scatter_csv(zoo_corpus, groups)
    lines = text.splitlines()
    assert lines[0] == SCATTER_HEADER
    assert len(lines) == 1 + len(rows)
    assert "b1,,8,3" in lines


def test_scatter_without_groups(zoo_corpus):
    rows = scatter_rows(zoo_corpus)
    assert [r[0] for r in rows] == ["b1", "d1", "s1", "s2", "x1"]
    assert all(r[1] == "" for r in rows)
