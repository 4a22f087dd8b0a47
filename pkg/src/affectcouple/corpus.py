"""Emotionally annotated corpora: ingestion, validation, persistence.

A corpus is an id-keyed collection of stimulus documents, each carrying a
URI, a semantic profile, and (optionally) an affective rating. Corpora are
treated as immutable snapshots: committing a new annotation produces a new
revision via :meth:`Corpus.with_document`.

Manifest CSV format (header verified verbatim, UTF-8, '.' decimals):

    id,uri,tags,val_mean,val_sd,ar_mean,ar_sd[,dom_mean,dom_sd]

``tags`` is a ';'-separated list inside one CSV field. All rating fields
may be left empty to register an unannotated document; partially empty
ratings are rejected. Numbers are serialized with up to six fractional
digits, which fixes the round-trip representation.

Folder-convention mapping file, one rule per line:

    folder_name -> tag1;tag2[;...] [@ val_mean,val_sd,ar_mean,ar_sd]

Corpus persistence is a single tab-separated text file opened by the
version header line ``affectcouple-corpus v1``.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable

from .affect import AffectiveRating
from .coupling import CouplingThresholds
from .errors import (
    DuplicateIdError,
    FormatError,
    UnknownTermError,
    ValidationError,
    VersionError,
)
from .semantics import SemanticProfile, Taxonomy

CORPUS_FORMAT_HEADER = "affectcouple-corpus v1"

MANIFEST_HEADER = ["id", "uri", "tags", "val_mean", "val_sd", "ar_mean", "ar_sd"]
MANIFEST_HEADER_DOM = MANIFEST_HEADER + ["dom_mean", "dom_sd"]

DEFAULT_THRESHOLDS = CouplingThresholds(eps_sem=2.0, eps_emo=1.5)


def fmt_num(x: float) -> str:
    """Serialize a number with up to six fractional digits, zeros stripped."""
    s = f"{float(x):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("", "-0") else s


class Provenance(enum.Enum):
    """How a document (and its rating, if any) entered the corpus."""

    MANIFEST = "manifest"
    FOLDER_CONVENTION = "folder_convention"
    ESTIMATED = "estimated"
    MANUAL = "manual"
    SYNTHETIC = "synthetic"


@dataclass(frozen=True, slots=True)
class StimulusDocument:
    """One multimedia stimulus: identifier, locator, tags, optional rating."""

    id: str
    uri: str
    profile: SemanticProfile
    rating: AffectiveRating | None = None
    provenance: Provenance = Provenance.MANIFEST

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("document id must be non-empty")
        if not self.uri:
            raise ValidationError("document uri must be non-empty")
        if self.provenance is Provenance.ESTIMATED and self.rating is None:
            raise ValidationError(
                f"document {self.id!r}: estimated provenance requires a rating"
            )

    @property
    def annotated(self) -> bool:
        return self.rating is not None


@dataclass(frozen=True)
class Corpus:
    """Immutable snapshot of a document collection bound to a taxonomy."""

    taxonomy: Taxonomy
    documents: dict[str, StimulusDocument] = field(default_factory=dict)
    defaults: CouplingThresholds = DEFAULT_THRESHOLDS

    def __post_init__(self) -> None:
        for doc in self.documents.values():
            for term in doc.profile.terms:
                if term not in self.taxonomy.nodes:
                    raise UnknownTermError(term)

    @property
    def taxonomy_ref(self) -> str:
        return self.taxonomy.name

    def __len__(self) -> int:
        return len(self.documents)

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self.documents

    def get(self, doc_id: str) -> StimulusDocument | None:
        return self.documents.get(doc_id)

    def annotated_documents(self) -> list[StimulusDocument]:
        return [d for d in self.ordered_documents() if d.annotated]

    def unannotated_documents(self) -> list[StimulusDocument]:
        return [d for d in self.ordered_documents() if not d.annotated]

    def ordered_documents(self) -> list[StimulusDocument]:
        return [self.documents[k] for k in sorted(self.documents)]

    def with_document(self, doc: StimulusDocument, allow_replace: bool = False) -> "Corpus":
        """New revision with ``doc`` added (or replaced when allowed)."""
        if not allow_replace and doc.id in self.documents:
            raise DuplicateIdError(doc.id)
        docs = dict(self.documents)
        docs[doc.id] = doc
        return Corpus(taxonomy=self.taxonomy, documents=docs, defaults=self.defaults)


def _parse_tags(tags_field: str, taxonomy: Taxonomy, lineno: int) -> SemanticProfile:
    terms = [t for t in (p.strip() for p in tags_field.split(";")) if t]
    if not terms:
        raise ValidationError(f"line {lineno}: empty semantic profile")
    for term in terms:
        if term not in taxonomy:
            raise UnknownTermError(term, line=lineno)
    return SemanticProfile.of(*terms)


def _parse_number(raw: str, fieldname: str, lineno: int) -> float:
    try:
        return float(raw)
    except ValueError:
        raise FormatError(
            f"unparsable number in {fieldname}: {raw!r}", line=lineno, field=fieldname
        ) from None


def _parse_rating(
    fields: list[str], names: list[str], lineno: int
) -> AffectiveRating | None:
    stripped = [f.strip() for f in fields]
    if all(not f for f in stripped):
        return None
    if any(not f for f in stripped[:4]):
        raise FormatError(
            "rating fields must be all present or all empty", line=lineno
        )
    values: dict[str, float] = {}
    for name, raw in zip(names, stripped):
        if raw:
            values[name] = _parse_number(raw, name, lineno)
    if ("dom_mean" in values) != ("dom_sd" in values):
        raise FormatError("dom_mean and dom_sd must be given together", line=lineno)
    return AffectiveRating(**values)


def load_manifest(
    path: str | Path,
    taxonomy: Taxonomy,
    defaults: CouplingThresholds = DEFAULT_THRESHOLDS,
    provenance: Provenance = Provenance.MANIFEST,
) -> Corpus:
    """Load a manifest CSV into a corpus, rejecting any malformed row.

    Raises:
        FormatError: wrong header, wrong column count, unparsable number.
        RangeError: rating outside its allowed range.
        DuplicateIdError: the same id on two rows (both line numbers cited).
        UnknownTermError: a tag that does not resolve in the taxonomy.
        ValidationError: empty tag list.
    """
    path = Path(path)
    with path.open(encoding="utf-8", newline="") as fh:
        return _read_manifest(fh, taxonomy, defaults, provenance, source=str(path))


def _read_manifest(
    fh,
    taxonomy: Taxonomy,
    defaults: CouplingThresholds,
    provenance: Provenance,
    source: str,
) -> Corpus:
    reader = csv.reader(fh)
    try:
        header = next(reader)
    except StopIteration:
        raise FormatError(f"{source}: empty manifest") from None
    if header == MANIFEST_HEADER:
        rating_names = ["val_mean", "val_sd", "ar_mean", "ar_sd"]
    elif header == MANIFEST_HEADER_DOM:
        rating_names = ["val_mean", "val_sd", "ar_mean", "ar_sd", "dom_mean", "dom_sd"]
    else:
        raise FormatError(
            f"manifest header must be exactly {','.join(MANIFEST_HEADER)}"
            f"[,dom_mean,dom_sd], got {','.join(header)!r}",
            line=1,
        )
    expected_cols = len(header)
    documents: dict[str, StimulusDocument] = {}
    first_line_of: dict[str, int] = {}
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != expected_cols:
            raise FormatError(
                f"expected {expected_cols} columns, got {len(row)}", line=lineno
            )
        doc_id = row[0].strip()
        uri = row[1].strip()
        if not doc_id:
            raise FormatError("empty id", line=lineno, field="id")
        if doc_id in documents:
            raise DuplicateIdError(doc_id, first_line_of[doc_id], lineno)
        profile = _parse_tags(row[2], taxonomy, lineno)
        rating = _parse_rating(row[3:], rating_names, lineno)
        if not uri:
            raise FormatError("empty uri", line=lineno, field="uri")
        documents[doc_id] = StimulusDocument(
            id=doc_id, uri=uri, profile=profile, rating=rating, provenance=provenance
        )
        first_line_of[doc_id] = lineno
    return Corpus(taxonomy=taxonomy, documents=documents, defaults=defaults)


def save_manifest(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus back out as a manifest CSV (annotations included)."""
    has_dom = any(
        d.rating is not None and d.rating.dom_mean is not None
        for d in corpus.documents.values()
    )
    header = MANIFEST_HEADER_DOM if has_dom else MANIFEST_HEADER
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for doc in corpus.ordered_documents():
        row = [doc.id, doc.uri, ";".join(sorted(doc.profile.terms))]
        if doc.rating is None:
            row += [""] * (len(header) - 3)
        else:
            r = doc.rating
            row += [fmt_num(r.val_mean), fmt_num(r.val_sd), fmt_num(r.ar_mean), fmt_num(r.ar_sd)]
            if has_dom:
                if r.dom_mean is None:
                    row += ["", ""]
                else:
                    row += [fmt_num(r.dom_mean), fmt_num(r.dom_sd)]
        writer.writerow(row)
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


@dataclass(frozen=True, slots=True)
class FolderMapping:
    """Mapping from one folder name to tags and an optional coarse rating."""

    folder: str
    tags: tuple[str, ...]
    rating: AffectiveRating | None = None


@dataclass(frozen=True, slots=True)
class FolderLoadResult:
    corpus: Corpus
    unmapped_folders: tuple[str, ...]


def parse_mapping_file(path: str | Path) -> list[FolderMapping]:
    mappings: list[FolderMapping] = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "->" not in line:
            raise FormatError(f"expected 'folder -> tags', got {raw!r}", line=lineno)
        folder, _, rhs = line.partition("->")
        folder = folder.strip()
        rhs = rhs.strip()
        if not folder:
            raise FormatError("empty folder name", line=lineno)
        rating = None
        if "@" in rhs:
            tag_part, _, rating_part = rhs.partition("@")
            numbers = [p.strip() for p in rating_part.split(",")]
            if len(numbers) != 4:
                raise FormatError(
                    f"coarse rating needs val_mean,val_sd,ar_mean,ar_sd, got {rating_part.strip()!r}",
                    line=lineno,
                )
            vm, vs, am, asd = (_parse_number(n, f"rating[{i}]", lineno) for i, n in enumerate(numbers))
            rating = AffectiveRating(vm, vs, am, asd)
        else:
            tag_part = rhs
        tags = tuple(t for t in (p.strip() for p in tag_part.split(";")) if t)
        if not tags:
            raise FormatError("mapping without tags", line=lineno)
        mappings.append(FolderMapping(folder=folder, tags=tags, rating=rating))
    return mappings


def load_folder_convention(
    root_path: str | Path,
    mapping_file: str | Path,
    taxonomy: Taxonomy,
    defaults: CouplingThresholds = DEFAULT_THRESHOLDS,
) -> FolderLoadResult:
    """Build a corpus from folder-named stimuli plus a sidecar mapping file.

    Every regular file directly inside a mapped folder becomes a document:
    id is the file name, uri the root-relative path. Folders without a
    mapping are collected as warnings, not loaded.
    """
    root = Path(root_path)
    if not root.is_dir():
        raise FormatError(f"not a directory: {root}")
    mapping = {m.folder: m for m in parse_mapping_file(mapping_file)}
    for m in mapping.values():
        for tag in m.tags:
            if tag not in taxonomy:
                raise UnknownTermError(tag)
    documents: dict[str, StimulusDocument] = {}
    unmapped: list[str] = []
    for folder in sorted(p for p in root.iterdir() if p.is_dir()):
        rule = mapping.get(folder.name)
        if rule is None:
            unmapped.append(folder.name)
            continue
        profile = SemanticProfile.of(*rule.tags)
        for file in sorted(p for p in folder.iterdir() if p.is_file()):
            doc_id = file.name
            if doc_id in documents:
                raise DuplicateIdError(doc_id)
            documents[doc_id] = StimulusDocument(
                id=doc_id,
                uri=str(file.relative_to(root)),
                profile=profile,
                rating=rule.rating,
                provenance=Provenance.FOLDER_CONVENTION,
            )
    corpus = Corpus(taxonomy=taxonomy, documents=documents, defaults=defaults)
    return FolderLoadResult(corpus=corpus, unmapped_folders=tuple(unmapped))


def _rating_to_text(rating: AffectiveRating | None) -> str:
    if rating is None:
        return "-"
    parts = [
        fmt_num(rating.val_mean),
        fmt_num(rating.val_sd),
        fmt_num(rating.ar_mean),
        fmt_num(rating.ar_sd),
    ]
    if rating.dom_mean is not None:
        parts += [fmt_num(rating.dom_mean), fmt_num(rating.dom_sd)]
    return " ".join(parts)


def _rating_from_text(text: str, lineno: int) -> AffectiveRating | None:
    if text == "-":
        return None
    parts = text.split()
    if len(parts) not in (4, 6):
        raise FormatError(f"rating needs 4 or 6 numbers, got {len(parts)}", line=lineno)
    numbers = [_parse_number(p, "rating", lineno) for p in parts]
    return AffectiveRating(*numbers)


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    """Persist a corpus to the v1 single-file text format."""
    lines = [CORPUS_FORMAT_HEADER]
    lines.append(f"taxonomy\t{corpus.taxonomy_ref}")
    lines.append(
        f"defaults\t{fmt_num(corpus.defaults.eps_sem)}\t{fmt_num(corpus.defaults.eps_emo)}"
    )
    for doc in corpus.ordered_documents():
        lines.append(
            "\t".join(
                [
                    "doc",
                    doc.id,
                    doc.uri,
                    ";".join(sorted(doc.profile.terms)),
                    doc.provenance.value,
                    _rating_to_text(doc.rating),
                ]
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_corpus(path: str | Path, taxonomy: Taxonomy) -> Corpus:
    """Load a v1 corpus file, re-validating every invariant on the way in."""
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != CORPUS_FORMAT_HEADER:
        found = lines[0] if lines else "<empty file>"
        raise VersionError(
            f"unsupported corpus format: expected {CORPUS_FORMAT_HEADER!r}, found {found!r}"
        )
    taxonomy_ref: str | None = None
    defaults = DEFAULT_THRESHOLDS
    documents: dict[str, StimulusDocument] = {}
    first_line_of: dict[str, int] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split("\t")
        kind = fields[0]
        if kind == "taxonomy":
            if len(fields) != 2:
                raise FormatError("taxonomy line needs one value", line=lineno)
            taxonomy_ref = fields[1]
        elif kind == "defaults":
            if len(fields) != 3:
                raise FormatError("defaults line needs eps_sem and eps_emo", line=lineno)
            defaults = CouplingThresholds(
                eps_sem=_parse_number(fields[1], "eps_sem", lineno),
                eps_emo=_parse_number(fields[2], "eps_emo", lineno),
            )
        elif kind == "doc":
            if len(fields) != 6:
                raise FormatError(f"doc line needs 6 fields, got {len(fields)}", line=lineno)
            _, doc_id, uri, tags, provenance_text, rating_text = fields
            if doc_id in documents:
                raise DuplicateIdError(doc_id, first_line_of[doc_id], lineno)
            try:
                provenance = Provenance(provenance_text)
            except ValueError:
                raise FormatError(
                    f"unknown provenance {provenance_text!r}", line=lineno
                ) from None
            profile = _parse_tags(tags, taxonomy, lineno)
            documents[doc_id] = StimulusDocument(
                id=doc_id,
                uri=uri,
                profile=profile,
                rating=_rating_from_text(rating_text, lineno),
                provenance=provenance,
            )
            first_line_of[doc_id] = lineno
        else:
            raise FormatError(f"unknown record kind {kind!r}", line=lineno)
    if taxonomy_ref is not None and taxonomy_ref != taxonomy.name:
        # informational only; terms are validated against the loaded taxonomy
        pass
    return Corpus(taxonomy=taxonomy, documents=documents, defaults=defaults)


def commit_rating(
    corpus: Corpus,
    doc_id: str,
    rating: AffectiveRating,
    provenance: Provenance,
) -> Corpus:
    """New corpus revision with ``doc_id`` annotated."""
    doc = corpus.documents.get(doc_id)
    if doc is None:
        raise ValidationError(f"unknown document {doc_id!r}")
    return corpus.with_document(
        replace(doc, rating=rating, provenance=provenance), allow_replace=True
    )


def validate_corpus(corpus: Corpus) -> list[str]:
    """Re-check all corpus invariants; returns a list of problems (empty = ok).

    Construction already enforces these, so this guards against documents
    built through unchecked paths or future format extensions.
    """
    problems: list[str] = []
    for doc in corpus.ordered_documents():
        for term in doc.profile.terms:
            if term not in corpus.taxonomy.nodes:
                problems.append(f"{doc.id}: unknown term {term!r}")
        if doc.provenance is Provenance.ESTIMATED and doc.rating is None:
            problems.append(f"{doc.id}: estimated provenance without rating")
    return problems
