import pytest

from affectcouple import (
    AffectiveRating,
    Corpus,
    SemanticProfile,
    StimulusDocument,
    Taxonomy,
)

# One PASS/FAIL line per acceptance criterion, printed after the run so the
# verdicts survive output capture. Keyed by test name; a setup or teardown
# error counts as a failure of that criterion.
_acceptance_results: dict[str, bool] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    name = report.nodeid.split("::", 1)[1]
    if report.when == "call":
        _acceptance_results[name] = report.passed
    elif report.failed:  # setup/teardown error
        _acceptance_results[name] = False


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in _acceptance_results.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")

DEMO_EDGES = [
    ("animal", "entity"),
    ("reptile", "animal"),
    ("snake", "reptile"),
    ("viper", "reptile"),
    ("lizard", "reptile"),
    ("mammal", "animal"),
    ("dog", "mammal"),
    ("cat", "mammal"),
    ("place", "entity"),
    ("beach", "place"),
    ("mountain", "place"),
]

STUDY_EDGES = [
    ("food", "entity"),
    ("fruit", "food"),
    ("bread", "food"),
    ("cake", "food"),
    ("meat", "food"),
    ("soup", "food"),
    ("nature", "entity"),
    ("woods", "nature"),
    ("river", "nature"),
    ("flower", "nature"),
    ("meadow", "nature"),
    ("lake", "nature"),
    ("sports", "entity"),
    ("football", "sports"),
    ("tennis", "sports"),
    ("running", "sports"),
    ("cycling", "sports"),
    ("swimming", "sports"),
]


def doc(doc_id, terms, val=None, ar=None, sd=0.5, **kwargs):
    rating = None
    if val is not None:
        rating = AffectiveRating(val, sd, ar, sd)
    return StimulusDocument(
        id=doc_id,
        uri=f"stimuli/{doc_id}.jpg",
        profile=SemanticProfile.of(*terms),
        rating=rating,
        **kwargs,
    )


@pytest.fixture(scope="session")
def demo_taxonomy():
    return Taxonomy(DEMO_EDGES, root="entity", name="demo")


@pytest.fixture(scope="session")
def study_taxonomy():
    return Taxonomy(STUDY_EDGES, root="entity", name="study")


@pytest.fixture
def three_doc_corpus(demo_taxonomy):
    docs = [
        doc("1050", ["snake"], 2.0, 6.0),
        doc("1120", ["snake"], 2.4, 6.4),
        doc("8190", ["snake"], 7.5, 3.0),
    ]
    return Corpus(taxonomy=demo_taxonomy, documents={d.id: d for d in docs})


@pytest.fixture
def beach_variant_corpus(demo_taxonomy):
    docs = [
        doc("1050", ["snake"], 2.0, 6.0),
        doc("1120", ["snake"], 2.4, 6.4),
        doc("8190", ["beach"], 7.5, 3.0),
    ]
    return Corpus(taxonomy=demo_taxonomy, documents={d.id: d for d in docs})
