"""Distinguished graphs: a bicoloured graph on a closed surface together with
the boundary words of the complementary pieces.

Vertices and edges are identified by strings. Each edge has a reference
orientation ``tail -> head`` and belongs to one of two circle families.
A letter is an edge traversed forwards (``+1``) or backwards (``-1``); a word
is a cyclic sequence of letters; a patch is a complementary surface piece
recorded as its genus and its boundary words.

Incidence questions are answered on half-edges (edge ends), never on edges,
so that loops behave.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, NamedTuple, Sequence

from distgraph.errors import InvalidReferenceError, ValidationError
from distgraph.unionfind import UnionFind


class Family(enum.Enum):
    """The two circle families: ``U`` (unstable circles) and ``V`` (stable circles)."""

    UNSTABLE = "U"
    STABLE = "V"

    U = "U"
    V = "V"

    def other(self) -> Family:
        return Family.STABLE if self is Family.UNSTABLE else Family.UNSTABLE

    def __str__(self) -> str:
        return self.value


TAIL = "tail"
HEAD = "head"


class HalfEdge(NamedTuple):
    edge: str
    end: str  # TAIL or HEAD

    def __str__(self) -> str:
        return f"{self.edge}-{self.end}"


class Letter(NamedTuple):
    edge: str
    exp: int  # +1 or -1

    def inverse(self) -> Letter:
        return Letter(self.edge, -self.exp)

    @property
    def leaving(self) -> HalfEdge:
        """The edge end the traversal starts from."""
        return HalfEdge(self.edge, TAIL if self.exp > 0 else HEAD)

    @property
    def arriving(self) -> HalfEdge:
        """The edge end the traversal ends at."""
        return HalfEdge(self.edge, HEAD if self.exp > 0 else TAIL)

    def __str__(self) -> str:
        return self.edge if self.exp > 0 else f"{self.edge}^-1"


Word = tuple  # tuple[Letter, ...], read cyclically


def word_str(word: Sequence[Letter]) -> str:
    return " ".join(str(letter) for letter in word)


def make_word(source: str | Sequence) -> Word:
    """Build a word from ``"u v u^-1 v^-1"`` or from ``(edge, exp)`` pairs."""
    if isinstance(source, str):
        out = []
        for tok in source.split():
            if tok.endswith("^-1"):
                out.append(Letter(tok[:-3], -1))
            else:
                out.append(Letter(tok.removesuffix("^+1").removesuffix("^1"), 1))
        return tuple(out)
    return tuple(Letter(e, s) for e, s in source)


@dataclass(frozen=True)
class Edge:
    id: str
    family: Family
    tail: str
    head: str

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head

    def endpoint(self, end: str) -> str:
        return self.tail if end == TAIL else self.head


@dataclass(frozen=True)
class Patch:
    genus: int
    words: tuple

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(tuple(w) for w in self.words))

    @property
    def letter_count(self) -> int:
        return sum(len(w) for w in self.words)


class Corner(NamedTuple):
    """Two edge ends made adjacent by consecutive letters of a boundary word.

    ``arriving`` is the end reached by letter ``position`` and ``leaving`` the
    end the next letter (cyclically) starts from.
    """

    vertex: str
    arriving: HalfEdge
    leaving: HalfEdge
    patch: int
    word: int
    position: int

    @property
    def ends(self) -> tuple[HalfEdge, HalfEdge]:
        return (self.arriving, self.leaving)

    def __str__(self) -> str:
        return f"{self.vertex}: ({self.arriving}, {self.leaving})"


@dataclass(frozen=True)
class DistinguishedGraph:
    """Immutable distinguished graph. Construction does not validate; call
    :func:`validate` or :func:`ensure_valid`."""

    vertices: tuple
    edges: tuple
    patches: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "patches", tuple(self.patches))

    @cached_property
    def edge_by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def edge(self, edge_id: str) -> Edge:
        try:
            return self.edge_by_id[edge_id]
        except KeyError:
            raise InvalidReferenceError(f"unknown edge {edge_id!r}") from None

    def family(self, edge_id: str) -> Family:
        return self.edge(edge_id).family

    def vertex_of(self, half: HalfEdge) -> str:
        return self.edge(half.edge).endpoint(half.end)

    def letters(self) -> Iterator[tuple[int, int, int, Letter]]:
        """Yield ``(patch, word, position, letter)`` over every word."""
        for pi, patch in enumerate(self.patches):
            for wi, word in enumerate(patch.words):
                for k, letter in enumerate(word):
                    yield pi, wi, k, letter

    def words(self) -> Iterator[Word]:
        for patch in self.patches:
            yield from patch.words

    @cached_property
    def half_edges_at(self) -> dict[str, tuple[HalfEdge, ...]]:
        at: dict[str, list[HalfEdge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            for end in (TAIL, HEAD):
                at.setdefault(e.endpoint(end), []).append(HalfEdge(e.id, end))
        return {v: tuple(hs) for v, hs in at.items()}

    def replace(self, **changes) -> DistinguishedGraph:
        data = {"vertices": self.vertices, "edges": self.edges, "patches": self.patches}
        data.update(changes)
        return DistinguishedGraph(**data)


def graph(vertices, edges, patches) -> DistinguishedGraph:
    """Convenience constructor from plain data.

    ``edges`` holds ``(id, family, tail, head)`` tuples with family ``"U"``
    or ``"V"``; ``patches`` holds ``(genus, [word, ...])`` with words in any
    form accepted by :func:`make_word`.
    """
    es = [Edge(i, Family(f), t, h) for i, f, t, h in edges]
    ps = [Patch(genus, tuple(make_word(w) for w in words)) for genus, words in patches]
    return DistinguishedGraph(tuple(vertices), tuple(es), tuple(ps))


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Problem:
    kind: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.problems

    def kinds(self) -> set[str]:
        return {p.kind for p in self.problems}


def validate(g: DistinguishedGraph) -> ValidationReport:
    """Check every structural invariant of ``g`` and report all violations."""
    # graphs are immutable, so the report is computed once per instance
    cached = g.__dict__.get("_validation")
    if cached is None:
        cached = g.__dict__["_validation"] = _validate(g)
    return cached


def _validate(g: DistinguishedGraph) -> ValidationReport:
    problems: list[Problem] = []

    def add(kind: str, message: str) -> None:
        problems.append(Problem(kind, message))

    seen_v: set[str] = set()
    for v in g.vertices:
        if v in seen_v:
            add("duplicate_vertex", f"vertex {v!r} declared twice")
        seen_v.add(v)

    seen_e: set[str] = set()
    for e in g.edges:
        if e.id in seen_e:
            add("duplicate_edge", f"edge {e.id!r} declared twice")
        seen_e.add(e.id)
        if not isinstance(e.family, Family):
            add("bad_family", f"edge {e.id!r} has invalid family {e.family!r}")
        for end in (e.tail, e.head):
            if end not in seen_v:
                add("unknown_vertex", f"edge {e.id!r} references unknown vertex {end!r}")

    if not g.edges:
        add("no_edges", "graph has no edges")

    for pi, patch in enumerate(g.patches):
        if not isinstance(patch.genus, int) or patch.genus < 0:
            add("negative_genus", f"patch {pi} has invalid genus {patch.genus!r}")
        if not patch.words:
            add("empty_patch", f"patch {pi} has no boundary words")
        for wi, word in enumerate(patch.words):
            if not word:
                add("empty_word", f"patch {pi} word {wi} is empty")
                continue
            bad = False
            for letter in word:
                if letter.exp not in (1, -1):
                    add("bad_exponent", f"patch {pi} word {wi}: letter {letter.edge!r} has exponent {letter.exp!r}")
                    bad = True
                if letter.edge not in g.edge_by_id:
                    add("dangling_edge_reference",
                        f"patch {pi} word {wi} references unknown edge {letter.edge!r}")
                    bad = True
            if bad:
                continue
            n = len(word)
            for k in range(n):
                a, b = word[k], word[(k + 1) % n]
                if g.vertex_of(a.arriving) != g.vertex_of(b.leaving):
                    add("broken_chaining",
                        f"patch {pi} word {wi}: letter {k} ({a}) ends at {g.vertex_of(a.arriving)!r} "
                        f"but letter {(k + 1) % n} ({b}) starts at {g.vertex_of(b.leaving)!r}")

    if not problems and not complex_connected(g):
        add("disconnected_complex", "gluing the patches to the graph gives a disconnected complex")

    return ValidationReport(tuple(problems))


def ensure_valid(g: DistinguishedGraph) -> DistinguishedGraph:
    report = validate(g)
    if report.problems:
        raise ValidationError(report.problems)
    return g


def complex_connected(g: DistinguishedGraph) -> bool:
    """Whether graph plus glued patches is connected (assumes valid references)."""
    uf = UnionFind(g.vertices)
    for e in g.edges:
        uf.union(e.tail, e.head)
    for patch in g.patches:
        touched = [g.edge(letter.edge).tail for word in patch.words for letter in word]
        for v in touched[1:]:
            uf.union(touched[0], v)
    return len({uf.root(v) for v in g.vertices}) <= 1


def graph_connected(g: DistinguishedGraph) -> bool:
    """Whether the 1-skeleton alone is connected."""
    uf = UnionFind(g.vertices)
    for e in g.edges:
        uf.union(e.tail, e.head)
    return len({uf.root(v) for v in g.vertices}) <= 1


# ---------------------------------------------------------------------------
# incidence


def degree(g: DistinguishedGraph, v: str) -> int:
    """Number of edge ends at ``v``; a loop counts twice."""
    if v not in g.vertex_index:
        raise InvalidReferenceError(f"unknown vertex {v!r}")
    return len(g.half_edges_at.get(v, ()))


def family_degree(g: DistinguishedGraph, v: str) -> tuple[int, int]:
    """``(U ends, V ends)`` at ``v``."""
    hs = g.half_edges_at.get(v, ())
    nu = sum(1 for h in hs if g.family(h.edge) is Family.UNSTABLE)
    return nu, len(hs) - nu


def corners(g: DistinguishedGraph) -> list[Corner]:
    """One corner per cyclically adjacent letter pair, over all words.

    A one-letter word gives a single corner joining both ends of its edge.
    """
    ensure_valid(g)
    out = []
    for pi, patch in enumerate(g.patches):
        for wi, word in enumerate(patch.words):
            n = len(word)
            for k, letter in enumerate(word):
                nxt = word[(k + 1) % n]
                out.append(Corner(g.vertex_of(letter.arriving), letter.arriving, nxt.leaving, pi, wi, k))
    return out
