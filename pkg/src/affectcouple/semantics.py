"""Descriptor taxonomy and tag-cloud similarity.

A stimulus' semantics is a non-empty set of descriptor terms. Terms are
nodes of a rooted is-a taxonomy; similarity between two terms is the
inverse path length 1/(1 + L) over the undirected is-a graph, and profile
similarity is the symmetric best-match average over both tag sets.
Distances are reciprocals of similarities, so the self-distance of a
profile is 1, not 0, and any useful semantic radius is >= 1.

Taxonomy file grammar (UTF-8, one record per line):

    # comment                 -- ignored, as are blank lines
    !root,entity              -- exactly one root declaration
    child,parent              -- one is-a edge; repeated lines collapse

Terms are lowercased, trimmed, and internal whitespace runs collapse to a
single space. Multiple parents are allowed (the graph must stay acyclic
and every node must reach the root).
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import FormatError, UnknownTermError, ValidationError

_WS = re.compile(r"\s+")


def normalize_term(term: str) -> str:
    """Canonical form of a descriptor: lowercase, single internal spaces."""
    return _WS.sub(" ", term.strip()).lower()


class Taxonomy:
    """Immutable rooted DAG of is-a links, with memoized path lengths."""

    def __init__(self, edges: Iterable[tuple[str, str]], root: str = "entity", name: str = "adhoc"):
        self.name = name
        self.root = normalize_term(root)
        if not self.root:
            raise ValidationError("taxonomy root must be non-empty")
        parents: dict[str, set[str]] = {self.root: set()}
        for child, parent in edges:
            child = normalize_term(child)
            parent = normalize_term(parent)
            if not child or not parent:
                raise ValidationError("taxonomy terms must be non-empty")
            parents.setdefault(parent, set())
            parents.setdefault(child, set()).add(parent)
        self._parents: dict[str, frozenset[str]] = {
            node: frozenset(ps) for node, ps in parents.items()
        }
        self.nodes: frozenset[str] = frozenset(self._parents)
        kids: dict[str, set[str]] = {n: set() for n in self.nodes}
        for child, ps in self._parents.items():
            for p in ps:
                kids[p].add(child)
        self._children: dict[str, frozenset[str]] = {n: frozenset(c) for n, c in kids.items()}
        self._validate()
        self._adjacency: dict[str, frozenset[str]] = {
            n: self._parents[n] | self._children[n] for n in self.nodes
        }
        # pure cache of pairwise path lengths; stale entries are impossible
        # because the graph never changes after construction
        self._path_cache: dict[tuple[str, str], int] = {}

    def _validate(self) -> None:
        if self._parents.get(self.root):
            raise ValidationError(f"root {self.root!r} must not have parents")
        orphans = [n for n, ps in self._parents.items() if n != self.root and not ps]
        if orphans:
            raise ValidationError(f"nodes without a path to root: {sorted(orphans)}")
        # Kahn topological check over child -> parent links
        out_degree = {n: len(ps) for n, ps in self._parents.items()}
        ready = deque(n for n, d in out_degree.items() if d == 0)
        seen = 0
        while ready:
            node = ready.popleft()
            seen += 1
            for child in self._children[node]:
                out_degree[child] -= 1
                if out_degree[child] == 0:
                    ready.append(child)
        if seen != len(self._parents):
            raise ValidationError("taxonomy contains a cycle")

    @classmethod
    def load(cls, path: str | Path) -> "Taxonomy":
        """Parse a taxonomy file per the grammar in the module docstring."""
        path = Path(path)
        root: str | None = None
        edges: list[tuple[str, str]] = []
        for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 2:
                raise FormatError(f"expected 'child,parent', got {raw!r}", line=lineno)
            left, right = parts
            if left.startswith("!"):
                if left != "!root":
                    raise FormatError(f"unknown directive {left!r}", line=lineno)
                if root is not None:
                    raise FormatError("duplicate !root declaration", line=lineno)
                root = right
                continue
            edges.append((left, right))
        if root is None:
            raise FormatError(f"missing !root declaration in {path}")
        return cls(edges, root=root, name=path.stem)

    def __contains__(self, term: str) -> bool:
        return normalize_term(term) in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Taxonomy):
            return NotImplemented
        return (
            self.name == other.name
            and self.root == other.root
            and self._parents == other._parents
        )

    def __hash__(self) -> int:  # identity hash; instances are immutable
        return id(self)

    def resolve(self, term: str) -> str:
        norm = normalize_term(term)
        if norm not in self.nodes:
            raise UnknownTermError(term)
        return norm

    def parents(self, term: str) -> frozenset[str]:
        return self._parents[self.resolve(term)]

    def children(self, term: str) -> frozenset[str]:
        return self._children[self.resolve(term)]

    def descendants(self, term: str) -> frozenset[str]:
        """All strict descendants of a node (the node itself excluded)."""
        start = self.resolve(term)
        seen: set[str] = set()
        queue = deque(self._children[start])
        while queue:
            node = queue.popleft()
            if node in seen:
                continue
            seen.add(node)
            queue.extend(self._children[node])
        return frozenset(seen)

    def path_length(self, a: str, b: str) -> int:
        """Edge count of the shortest undirected is-a path between two terms."""
        a = self.resolve(a)
        b = self.resolve(b)
        if a == b:
            return 0
        key = (a, b) if a <= b else (b, a)
        cached = self._path_cache.get(key)
        if cached is not None:
            return cached
        # plain BFS; the graph is connected through the root by construction
        dist = {a: 0}
        queue = deque([a])
        while queue:
            node = queue.popleft()
            for nxt in self._adjacency[node]:
                if nxt not in dist:
                    dist[nxt] = dist[node] + 1
                    if nxt == b:
                        self._path_cache[key] = dist[nxt]
                        return dist[nxt]
                    queue.append(nxt)
        raise ValidationError(f"no path between {a!r} and {b!r}")  # unreachable


@dataclass(frozen=True, slots=True)
class SemanticProfile:
    """Non-empty, duplicate-free set of descriptor terms."""

    terms: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        normed = frozenset(normalize_term(t) for t in self.terms)
        if not normed or "" in normed:
            raise ValidationError("empty semantic profile")
        object.__setattr__(self, "terms", normed)

    @classmethod
    def of(cls, *terms: str) -> "SemanticProfile":
        return cls(frozenset(terms))

    def __iter__(self):
        return iter(sorted(self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return normalize_term(term) in self.terms


@dataclass(frozen=True, slots=True)
class SemanticNeighborhood:
    """Inclusive radius on semantic distance. Must be >= 1 to admit anything."""

    eps_sem: float

    def __post_init__(self) -> None:
        if not (self.eps_sem > 0.0):
            raise ValidationError(f"eps_sem must be > 0, got {self.eps_sem!r}")


def term_similarity(a: str, b: str, taxonomy: Taxonomy) -> float:
    """Inverse path length 1/(1 + L) between two terms, in (0, 1]."""
    return 1.0 / (1.0 + taxonomy.path_length(a, b))


def profile_similarity(s1: SemanticProfile, s2: SemanticProfile, taxonomy: Taxonomy) -> float:
    """Symmetric best-match average of term similarities, in (0, 1].

    Each term contributes its best counterpart in the other profile; both
    directions are summed and divided by the total tag count, so the
    result is symmetric and reaches 1 exactly when the tag sets are equal.
    """
    terms1 = sorted(s1.terms)
    terms2 = sorted(s2.terms)
    best1 = [max(term_similarity(a, b, taxonomy) for b in terms2) for a in terms1]
    best2 = [max(term_similarity(b, a, taxonomy) for a in terms1) for b in terms2]
    return math.fsum(best1 + best2) / (len(terms1) + len(terms2))


def semantic_distance(s1: SemanticProfile, s2: SemanticProfile, taxonomy: Taxonomy) -> float:
    """Reciprocal of profile similarity; >= 1, equal to 1 only for equal sets."""
    return 1.0 / profile_similarity(s1, s2, taxonomy)


def within_semantic_neighborhood(
    s1: SemanticProfile,
    s2: SemanticProfile,
    taxonomy: Taxonomy,
    nb: SemanticNeighborhood,
) -> bool:
    """True iff the semantic distance is within the (inclusive) radius."""
    return semantic_distance(s1, s2, taxonomy) <= nb.eps_sem
