"""Exhaustive census of small realizable distinguished graphs, plus the
mutation and relabelling helpers used to build negative and invariance tests.

Generation is constrained rather than filtered: vertices are either crossings
(two U ends and two V ends) or markers of a free circle (a single loop), every
edge is traversed exactly twice, and the successor structure of the
traversals is chosen so that each vertex link is one alternating cycle. Only
the partition of the resulting words into patches and the patch genera are
left free.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Iterator

from distgraph.equivalence import (
    _structure_profile,
    are_equivalent,
    canonical_code,
    is_equivalence_witness,
    iso_from_labellings,
)
from distgraph.errors import ContractViolation, DistGraphError, ResourceError
from distgraph.model import (
    DistinguishedGraph,
    Edge,
    Family,
    Letter,
    Patch,
    validate,
)
from distgraph.realizability import (
    SurfaceInvariants,
    is_orientable,
    is_realizable,
    orientability_and_genus,
)
from distgraph.unionfind import UnionFind
from distgraph.words import min_rotation, reverse_word

DEFAULT_MAX_CANDIDATES = 10_000_000
DEFAULT_TIME_LIMIT = 60.0
NON_COLLISION_SAMPLES = 2


class OracleDisagreement(DistGraphError, AssertionError):
    """Canonical codes and the equivalence search disagree on a pair."""


@dataclass(frozen=True)
class EnumerationParams:
    max_edges: int
    require_orientable: bool = False
    require_connected: bool = True
    max_patch_genus: int = 0
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    time_limit: float = DEFAULT_TIME_LIMIT

    def __post_init__(self):
        if self.max_edges < 1:
            raise ValueError("max_edges must be at least 1")
        if self.max_patch_genus < 0:
            raise ValueError("max_patch_genus must be nonnegative")


@dataclass(frozen=True)
class CensusEntry:
    representative: DistinguishedGraph
    code: bytes
    invariants: SurfaceInvariants
    class_size: int


class _Budget:
    def __init__(self, params: EnumerationParams):
        self.params = params
        self.count = 0
        self.deadline = time.monotonic() + params.time_limit

    def tick(self, n: int = 1) -> None:
        self.count += n
        if self.count > self.params.max_candidates:
            raise ResourceError("max_candidates", self.params.max_candidates)
        if self.count % 256 == 0 and time.monotonic() > self.deadline:
            raise ResourceError("time_limit", self.params.time_limit)


# ---------------------------------------------------------------------------
# skeletons


def _two_regular(n: int) -> list[tuple]:
    """All 2-regular multigraphs on vertices 0..n-1, as sorted edge tuples."""
    ends = [i for i in range(n) for _ in range(2)]
    found = set()

    def match(rest: list, acc: list):
        if not rest:
            found.add(tuple(sorted(acc)))
            return
        a = rest[0]
        for k in range(1, len(rest)):
            b = rest[k]
            yield_rest = rest[1:k] + rest[k + 1:]
            match(yield_rest, acc + [(min(a, b), max(a, b))])

    match(ends, [])
    return sorted(found)


def _skeletons(m: int) -> Iterator[DistinguishedGraph]:
    """Edge-and-vertex skeletons with exactly ``m`` edges (no patches yet)."""
    for c in range(m // 2 + 1):
        free = m - 2 * c
        u_options = _two_regular(c)
        v_options = _two_regular(c)
        seen = set()
        for ue, ve in itertools.product(u_options, v_options):
            # identify skeletons differing by a permutation of crossings
            key = min(
                (tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in ue)),
                 tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in ve)))
                for p in itertools.permutations(range(c))
            ) if c else ((), ())
            if key in seen:
                continue
            seen.add(key)
            for nu in range(free + 1):
                nv = free - nu
                vertices = [f"c{i}" for i in range(c)]
                edges = []
                for k, (a, b) in enumerate(ue):
                    edges.append(Edge(f"u{k}", Family.UNSTABLE, f"c{a}", f"c{b}"))
                for k, (a, b) in enumerate(ve):
                    edges.append(Edge(f"v{k}", Family.STABLE, f"c{a}", f"c{b}"))
                for k in range(nu):
                    vertices.append(f"p{k}")
                    edges.append(Edge(f"u{len(ue) + k}", Family.UNSTABLE, f"p{k}", f"p{k}"))
                for k in range(nv):
                    vertices.append(f"q{k}")
                    edges.append(Edge(f"v{len(ve) + k}", Family.STABLE, f"q{k}", f"q{k}"))
                yield DistinguishedGraph(tuple(vertices), tuple(edges), ())


# ---------------------------------------------------------------------------
# boundary words


def _sign_choices(sk: DistinguishedGraph) -> Iterator[tuple]:
    """Exponent pairs for the two traversals of every edge.

    A loop traversed ``(-1, -1)`` is the reorientation of ``(+1, +1)``, and
    free loops of one family are interchangeable, so those choices are
    generated in non-decreasing order only.
    """
    options = [[(1, 1), (1, -1)] if e.is_loop else [(1, 1), (1, -1), (-1, -1)] for e in sk.edges]
    free = {}
    for i, e in enumerate(sk.edges):
        if e.is_loop and not e.tail.startswith("c"):
            free.setdefault(e.family, []).append(i)
    for choice in itertools.product(*options):
        if all(list(choice[i] for i in idx) == sorted(choice[i] for i in idx) for idx in free.values()):
            yield choice


def _word_systems(sk: DistinguishedGraph, budget: _Budget) -> Iterator[tuple]:
    """All multisets of words with every edge used twice and every vertex
    link a single cycle whose corners alternate families at crossings."""
    seen = set()
    for choice in _sign_choices(sk):
        occ = [Letter(e.id, s) for e, pair in zip(sk.edges, choice) for s in pair]
        arrivals: dict[str, list[int]] = {v: [] for v in sk.vertices}
        departures: dict[str, list[int]] = {v: [] for v in sk.vertices}
        for i, letter in enumerate(occ):
            arrivals[sk.vertex_of(letter.arriving)].append(i)
            departures[sk.vertex_of(letter.leaving)].append(i)
        if any(len(arrivals[v]) != len(departures[v]) for v in sk.vertices):
            continue
        per_vertex = []
        for v in sk.vertices:
            options = []
            for perm in itertools.permutations(departures[v]):
                budget.tick()
                pairs = list(zip(arrivals[v], perm))
                if _link_ok(sk, v, occ, pairs):
                    options.append(pairs)
            if not options:
                break
            per_vertex.append(options)
        else:
            for combo in itertools.product(*per_vertex):
                succ = {}
                for pairs in combo:
                    succ.update(pairs)
                words = _cycles(occ, succ)
                key = tuple(sorted(min_rotation(w) for w in words))
                if key not in seen:
                    seen.add(key)
                    yield tuple(words)


def _link_ok(sk: DistinguishedGraph, v: str, occ: list, pairs: list) -> bool:
    ends = sk.half_edges_at[v]
    uf = UnionFind(ends)
    crossing = len(ends) == 4
    for i, j in pairs:
        a, b = occ[i].arriving, occ[j].leaving
        if crossing and sk.family(a.edge) is sk.family(b.edge):
            return False
        uf.union(a, b)
    return len({uf.root(h) for h in ends}) == 1


def _cycles(occ: list, succ: dict) -> list[tuple]:
    words = []
    done = set()
    for start in range(len(occ)):
        if start in done:
            continue
        w = []
        i = start
        while i not in done:
            done.add(i)
            w.append(occ[i])
            i = succ[i]
        words.append(tuple(w))
    return words


def _set_partitions(items: list) -> Iterator[list[list]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def _raw_key(g: DistinguishedGraph) -> tuple:
    return tuple(sorted((p.genus, tuple(sorted(min_rotation(w) for w in p.words))) for p in g.patches))


class _PartitionFilter:
    """Connectivity and orientability of a grouping of words into patches,
    computed on small integers instead of full graphs."""

    def __init__(self, sk: DistinguishedGraph, words: tuple):
        uf = UnionFind(sk.vertices)
        for e in sk.edges:
            uf.union(e.tail, e.head)
        roots = sorted({uf.root(v) for v in sk.vertices}, key=sk.vertex_index.get)
        comp = {v: roots.index(uf.root(v)) for v in sk.vertices}
        self.full = (1 << len(roots)) - 1
        self.masks = []
        for w in words:
            mask = 0
            for letter in w:
                mask |= 1 << comp[sk.edge(letter.edge).tail]
            self.masks.append(mask)
        first: dict[str, tuple[int, int]] = {}
        self.constraints = []
        for wi, w in enumerate(words):
            for letter in w:
                if letter.edge in first:
                    wj, exp = first[letter.edge]
                    self.constraints.append((wi, wj, 1 if exp == letter.exp else 0))
                else:
                    first[letter.edge] = (wi, letter.exp)

    def connected(self, blocks: list[list[int]]) -> bool:
        bmasks = []
        for b in blocks:
            mask = 0
            for wi in b:
                mask |= self.masks[wi]
            bmasks.append(mask)
        reach = bmasks[0]
        grown = True
        while grown:
            grown = False
            for mask in bmasks:
                if mask & reach and mask | reach != reach:
                    reach |= mask
                    grown = True
        return reach == self.full

    def orientable(self, blocks: list[list[int]]) -> bool:
        where = {wi: k for k, b in enumerate(blocks) for wi in b}
        uf = UnionFind(range(len(blocks)))
        return all(uf.union(where[i], where[j], parity) for i, j, parity in self.constraints)


def _free_loop_symmetries(sk: DistinguishedGraph, words: tuple) -> list[dict]:
    """Index permutations of ``words`` induced by reversing a free loop or by
    swapping two free loops of the same family traversed the same way.

    Every generator maps the instance built from a partition to an
    equivalent instance built from the permuted partition.
    """
    free = [e for e in sk.edges if e.is_loop and len(sk.half_edges_at[e.tail]) == 2]
    where: dict[str, list[int]] = {e.id: [] for e in free}
    for wi, w in enumerate(words):
        if w[0].edge in where:
            where[w[0].edge].append(wi)

    def shape(e) -> tuple:
        return tuple(sorted(tuple(l.exp for l in words[wi]) for wi in where[e.id]))

    gens = []
    for e in free:
        idx = where[e.id]
        if shape(e) == ((-1,), (1,)):
            a, b = idx
            gens.append({a: b, b: a})
    for e, f in zip(free, free[1:]):
        if e.family is f.family and shape(e) == shape(f):
            ie = sorted(where[e.id], key=lambda wi: tuple(l.exp for l in words[wi]))
            jf = sorted(where[f.id], key=lambda wi: tuple(l.exp for l in words[wi]))
            perm = {}
            for x, y in zip(ie, jf):
                perm[x] = y
                perm[y] = x
            gens.append(perm)
    return gens


def _partition_key(blocks) -> tuple:
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def _instances(params: EnumerationParams, budget: _Budget) -> Iterator[DistinguishedGraph]:
    for m in range(1, params.max_edges + 1):
        for sk in _skeletons(m):
            for words in _word_systems(sk, budget):
                check = _PartitionFilter(sk, words)
                gens = _free_loop_symmetries(sk, words)
                seen = set()
                for blocks in _set_partitions(list(range(len(words)))):
                    budget.tick()
                    if not check.connected(blocks):
                        continue
                    if gens:
                        key = _partition_key(blocks)
                        if any(_partition_key([[g.get(x, x) for x in b] for b in blocks]) < key for g in gens):
                            continue
                    if params.require_orientable and not check.orientable(blocks):
                        continue
                    for genera in itertools.product(range(params.max_patch_genus + 1), repeat=len(blocks)):
                        budget.tick()
                        g = sk.replace(patches=tuple(
                            Patch(n, tuple(words[wi] for wi in b)) for n, b in zip(genera, blocks)))
                        key = _raw_key(g)
                        if key in seen:
                            continue
                        seen.add(key)
                        yield g


def enumerate_census(params: EnumerationParams) -> list[CensusEntry]:
    """Every realizable class with at most ``params.max_edges`` edges.

    Classes are deduplicated by canonical code. Each code collision is
    confirmed with the equivalence search, and each new class is checked
    against a few earlier classes of the same coarse profile, which must
    not be equivalent to it. Disagreement raises :class:`OracleDisagreement`.
    """
    budget = _Budget(params)
    classes: dict[bytes, list] = {}
    by_profile: dict[tuple, list[bytes]] = {}
    for g in _instances(params, budget):
        if not validate(g).ok or not is_realizable(g).overall:
            continue
        code = canonical_code(g)
        if code in classes:
            rep = classes[code][0]
            # the aligned canonical labellings must give a genuine witness
            if is_equivalence_witness(g, rep, iso_from_labellings(g, rep)) is None:
                raise OracleDisagreement(f"equal codes but no equivalence for code {code!r}")
            classes[code][1] += 1
            continue
        profile = _structure_profile(g)
        earlier = by_profile.setdefault(profile, [])
        for other in earlier[-NON_COLLISION_SAMPLES:]:
            if are_equivalent(classes[other][0], g) is not None:
                raise OracleDisagreement(f"distinct codes {other!r} and {code!r} but equivalent graphs")
        earlier.append(code)
        classes[code] = [g, 1]
        if time.monotonic() > budget.deadline:
            raise ResourceError("time_limit", params.time_limit)

    entries = []
    for code in sorted(classes):
        rep, size = classes[code]
        entries.append(CensusEntry(rep, code, orientability_and_genus(rep), size))
    return entries


# ---------------------------------------------------------------------------
# relabelling and mutation


def random_relabel(g: DistinguishedGraph, seed: int) -> DistinguishedGraph:
    """A seed-determined member of the equivalence class of ``g``.

    Permutes vertex and edge ids, reverses edge orientations, rotates words,
    reverses whole patches and shuffles the order of everything.
    """
    rng = random.Random(seed)
    vids = list(g.vertices)
    rng.shuffle(vids)
    vmap = dict(zip(g.vertices, vids))
    eids = [e.id for e in g.edges]
    rng.shuffle(eids)
    emap = dict(zip((e.id for e in g.edges), eids))
    flip = {e.id: rng.choice((1, -1)) for e in g.edges}

    edges = []
    for e in g.edges:
        tail, head = vmap[e.tail], vmap[e.head]
        if flip[e.id] < 0:
            tail, head = head, tail
        edges.append(Edge(emap[e.id], e.family, tail, head))
    rng.shuffle(edges)

    patches = []
    for p in g.patches:
        words = []
        for w in p.words:
            w = tuple(Letter(emap[l.edge], l.exp * flip[l.edge]) for l in w)
            k = rng.randrange(len(w))
            words.append(w[k:] + w[:k])
        if rng.random() < 0.5:
            words = [reverse_word(w) for w in words]
        rng.shuffle(words)
        patches.append(Patch(p.genus, tuple(words)))
    rng.shuffle(patches)
    vertices = list(vids)
    rng.shuffle(vertices)
    return DistinguishedGraph(tuple(vertices), tuple(edges), tuple(patches))


MUTATION_TARGETS = ("conditionA", "link", "conditionB", "conditionC", "orientability")


def _fresh(base: str, taken: set) -> str:
    name = base
    k = 1
    while name in taken:
        name = f"{base}{k}"
        k += 1
    taken.add(name)
    return name


def _with_word(g: DistinguishedGraph, pi: int, wi: int, word) -> DistinguishedGraph:
    patches = list(g.patches)
    words = list(patches[pi].words)
    if word:
        words[wi] = tuple(word)
    else:
        del words[wi]
    if words:
        patches[pi] = Patch(patches[pi].genus, tuple(words))
    else:
        del patches[pi]
    return g.replace(patches=tuple(patches))


def _drop_letter(g: DistinguishedGraph):
    for pi, wi, k, _ in g.letters():
        w = g.patches[pi].words[wi]
        yield _with_word(g, pi, wi, w[:k] + w[k + 1:])
    for p in g.patches:
        for w in p.words:
            yield g.replace(patches=g.patches + (Patch(0, (w,)),))


def _successor_swaps(g: DistinguishedGraph):
    for pi, patch in enumerate(g.patches):
        occ = [(wi, k) for wi, w in enumerate(patch.words) for k in range(len(w))]
        letters = [patch.words[wi][k] for wi, k in occ]
        index = {o: i for i, o in enumerate(occ)}
        succ = {}
        for wi, w in enumerate(patch.words):
            for k in range(len(w)):
                succ[index[(wi, k)]] = index[(wi, (k + 1) % len(w))]
        for i, j in itertools.combinations(range(len(occ)), 2):
            if g.vertex_of(letters[i].arriving) != g.vertex_of(letters[j].arriving):
                continue
            s = dict(succ)
            s[i], s[j] = s[j], s[i]
            words = _cycles(letters, s)
            patches = list(g.patches)
            patches[pi] = Patch(patch.genus, tuple(words))
            yield g.replace(patches=tuple(patches))


def _subdivisions(g: DistinguishedGraph):
    for e in g.edges:
        taken_v = set(g.vertices)
        taken_e = set(g.edge_by_id)
        mid = _fresh(f"{e.id}_mid", taken_v)
        e1 = Edge(_fresh(f"{e.id}_a", taken_e), e.family, e.tail, mid)
        e2 = Edge(_fresh(f"{e.id}_b", taken_e), e.family, mid, e.head)
        edges = []
        for f in g.edges:
            edges.extend((e1, e2) if f.id == e.id else (f,))
        patches = []
        for p in g.patches:
            words = []
            for w in p.words:
                out = []
                for letter in w:
                    if letter.edge != e.id:
                        out.append(letter)
                    elif letter.exp > 0:
                        out.extend((Letter(e1.id, 1), Letter(e2.id, 1)))
                    else:
                        out.extend((Letter(e2.id, -1), Letter(e1.id, -1)))
                words.append(tuple(out))
            patches.append(Patch(p.genus, tuple(words)))
        yield DistinguishedGraph(g.vertices + (mid,), tuple(edges), tuple(patches))


def _recolorings(g: DistinguishedGraph):
    for e in g.edges:
        edges = tuple(Edge(f.id, f.family.other(), f.tail, f.head) if f.id == e.id else f for f in g.edges)
        yield g.replace(edges=edges)


def _transpositions(g: DistinguishedGraph):
    for pi, patch in enumerate(g.patches):
        for wi, w in enumerate(patch.words):
            for i, j in itertools.combinations(range(len(w)), 2):
                if w[i] == w[j]:
                    continue
                nw = list(w)
                nw[i], nw[j] = nw[j], nw[i]
                yield _with_word(g, pi, wi, nw)


def _exponent_flips(g: DistinguishedGraph):
    for pi, wi, k, letter in g.letters():
        w = list(g.patches[pi].words[wi])
        w[k] = letter.inverse()
        yield _with_word(g, pi, wi, w)


def _violates(g: DistinguishedGraph, target: str) -> bool:
    if not validate(g).ok:
        return False
    report = is_realizable(g)
    if target == "conditionA":
        return report.condition_a.failed
    if target == "link":
        return report.link_connected.failed
    if target == "conditionB":
        return report.condition_b.failed
    if target == "conditionC":
        return report.condition_c.failed
    return report.condition_a.passed and not is_orientable(g)


_MOVES = {
    "conditionA": (_drop_letter,),
    "link": (_successor_swaps,),
    "conditionB": (_subdivisions,),
    "conditionC": (_transpositions, _recolorings),
    "orientability": (_exponent_flips,),
}


def mutate(g: DistinguishedGraph, target: str) -> list[DistinguishedGraph]:
    """Structurally valid mutants of a realizable ``g`` that break ``target``.

    ``target`` is one of :data:`MUTATION_TARGETS`. The list is deduplicated
    and in a fixed order; it is empty when no move breaks the target.
    """
    if target not in _MOVES:
        raise ValueError(f"unknown mutation target {target!r}")
    if not validate(g).ok or not is_realizable(g).overall:
        raise ContractViolation("mutate expects a realizable graph")
    out = []
    seen = set()
    for move in _MOVES[target]:
        for h in move(g):
            if h in seen or h == g:
                continue
            seen.add(h)
            if _violates(h, target):
                out.append(h)
    return out
