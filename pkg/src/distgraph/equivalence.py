"""Equivalence and conjugacy of distinguished graphs.

Two distinguished graphs are equivalent when some family-preserving graph
isomorphism, applied letter by letter to the boundary words of the first,
turns its patches into the patches of the second: each patch goes to a patch
of the same genus whose words match up to rotation, either all directly
(``equivalent``) or all reversed (``reverse``).

Isomorphisms are found by plain backtracking. Instances are tiny, so no
canonical-labelling machinery is used; a size guard keeps runaway inputs from
hanging.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterator, Mapping

from distgraph.errors import ContractViolation, ResourceError
from distgraph.model import DistinguishedGraph, Family, ensure_valid, family_degree
from distgraph.unionfind import UnionFind


DEFAULT_MAX_EDGES = 64
EQUIVALENT = "equivalent"
REVERSE = "reverse"


def edge_cap(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("DISTGRAPH_MAX_EDGES")
    return int(env) if env else DEFAULT_MAX_EDGES


def _guard(g: DistinguishedGraph, max_edges: int | None) -> None:
    cap = edge_cap(max_edges)
    if len(g.edges) > cap:
        raise ResourceError("max_edges", cap, f"graph has {len(g.edges)} edges")


@dataclass(frozen=True)
class GraphIsomorphism:
    """Vertex bijection plus edge bijection with orientation signs.

    ``edge_map[e] == (f, -1)`` means ``e`` goes to ``f`` with its reference
    orientation reversed.
    """

    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, tuple[str, int]]

    def __hash__(self):
        return hash((tuple(sorted(self.vertex_map.items())), tuple(sorted(self.edge_map.items()))))

    def compose(self, other: GraphIsomorphism) -> GraphIsomorphism:
        """``self ∘ other``: apply ``other`` first. Edge signs multiply."""
        vm = {x: self.vertex_map[y] for x, y in other.vertex_map.items()}
        em = {}
        for e, (f, s) in other.edge_map.items():
            f2, s2 = self.edge_map[f]
            em[e] = (f2, s * s2)
        return GraphIsomorphism(vm, em)

    def inverse(self) -> GraphIsomorphism:
        return GraphIsomorphism(
            {y: x for x, y in self.vertex_map.items()},
            {f: (e, s) for e, (f, s) in self.edge_map.items()},
        )

    @classmethod
    def identity(cls, g: DistinguishedGraph) -> GraphIsomorphism:
        return cls({v: v for v in g.vertices}, {e.id: (e.id, 1) for e in g.edges})

    def is_identity(self) -> bool:
        return (all(x == y for x, y in self.vertex_map.items())
                and all(e == f and s == 1 for e, (f, s) in self.edge_map.items()))


InnerAutomorphism = GraphIsomorphism


@dataclass(frozen=True)
class EquivalenceWitness:
    """An isomorphism together with the patch pairing it induces.

    ``pairing`` lists ``(patch of g1, patch of g2, flag)`` with flag
    ``"equivalent"`` or ``"reverse"``.
    """

    iso: GraphIsomorphism
    pairing: tuple

    @property
    def orientation_preserving(self) -> bool:
        return all(flag == EQUIVALENT for _, _, flag in self.pairing)


def is_isomorphism(g1: DistinguishedGraph, g2: DistinguishedGraph, iso: GraphIsomorphism) -> bool:
    """Family- and incidence-preserving bijection check."""
    vm, em = iso.vertex_map, iso.edge_map
    if set(vm) != set(g1.vertices) or sorted(vm.values()) != sorted(g2.vertices):
        return False
    if set(em) != set(g1.edge_by_id) or sorted(f for f, _ in em.values()) != sorted(g2.edge_by_id):
        return False
    for e in g1.edges:
        f_id, sign = em[e.id]
        if sign not in (1, -1):
            return False
        f = g2.edge_by_id[f_id]
        if f.family is not e.family:
            return False
        tail, head = (f.tail, f.head) if sign == 1 else (f.head, f.tail)
        if vm[e.tail] != tail or vm[e.head] != head:
            return False
    return True


def _cached(g: DistinguishedGraph, name: str, compute):
    # graphs are immutable; derived data is stored on the instance
    try:
        return g.__dict__[name]
    except KeyError:
        value = g.__dict__[name] = compute(g)
        return value


def _vertex_signature(g: DistinguishedGraph, v: str) -> tuple:
    return _cached(g, "_vertex_signatures", _vertex_signatures)[v]


def _vertex_signatures(g: DistinguishedGraph) -> dict:
    out = {}
    for v in g.vertices:
        loops_u = loops_v = 0
        for h in g.half_edges_at.get(v, ()):
            e = g.edge_by_id[h.edge]
            if e.is_loop:
                if e.family is Family.UNSTABLE:
                    loops_u += 1
                else:
                    loops_v += 1
        nu, nv = family_degree(g, v)
        out[v] = (nu + nv, nu, nv, loops_u, loops_v)
    return out


def _edge_order(g: DistinguishedGraph) -> list:
    """Edges grouped around vertices sorted by (degree, family degrees)."""
    vs = sorted(g.vertices, key=lambda v: (_vertex_signature(g, v), g.vertex_index[v]))
    seen: set[str] = set()
    order = []
    # grow from already-placed vertices first so incidence prunes early
    placed: set[str] = set()
    remaining = list(vs)
    while remaining:
        frontier = [v for v in remaining if v in placed] or remaining[:1]
        v = frontier[0]
        remaining.remove(v)
        placed.add(v)
        for h in g.half_edges_at.get(v, ()):
            if h.edge not in seen:
                seen.add(h.edge)
                e = g.edge(h.edge)
                order.append(e)
                placed.update((e.tail, e.head))
    return order


def _structure_profile(g: DistinguishedGraph) -> tuple:
    """Cheap invariant of the equivalence class, used to reject early."""
    return _cached(g, "_profile", _compute_profile)


def _compute_profile(g: DistinguishedGraph) -> tuple:
    sigs = sorted(_vertex_signature(g, v) for v in g.vertices)
    fams = sorted((e.family.value, e.is_loop) for e in g.edges)
    patches = sorted((p.genus, tuple(sorted(len(w) for w in p.words))) for p in g.patches)
    edges = sorted(_edge_keys(g).values())
    return (len(g.vertices), tuple(sigs), tuple(fams), tuple(patches), tuple(edges))


def _edge_keys(g: DistinguishedGraph) -> dict[str, tuple]:
    # an equivalence only matches edges with equal keys (see _edge_key)
    return _cached(g, "_edge_keys", _compute_edge_keys)


def enumerate_isomorphisms(g1: DistinguishedGraph, g2: DistinguishedGraph,
                           max_edges: int | None = None) -> Iterator[GraphIsomorphism]:
    """Yield every family- and incidence-preserving isomorphism exactly once.

    The order is deterministic: it follows the input order of ``g2``'s edges
    for each edge of ``g1`` visited in the search order.
    """
    ensure_valid(g1)
    ensure_valid(g2)
    _guard(g1, max_edges)
    _guard(g2, max_edges)
    yield from _isomorphisms(g1, g2, None)


def _isomorphisms(g1: DistinguishedGraph, g2: DistinguishedGraph, keys) -> Iterator[GraphIsomorphism]:
    """Backtracking search. ``keys``, when given, maps each graph to an edge
    key dict, and only edges with equal keys may correspond."""
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return
    sig1 = {v: _vertex_signature(g1, v) for v in g1.vertices}
    sig2 = {v: _vertex_signature(g2, v) for v in g2.vertices}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return

    order = _edge_order(g1)
    targets = {}
    for e in order:
        targets[e.id] = [f for f in g2.edges if f.family is e.family and f.is_loop == e.is_loop]
    if keys is not None:
        k1, k2 = keys(g1), keys(g2)
        for e in order:
            targets[e.id] = [f for f in targets[e.id] if k1[e.id] == k2[f.id]]

    vmap: dict[str, str] = {}
    vused: set[str] = set()
    emap: dict[str, tuple[str, int]] = {}
    eused: set[str] = set()

    def bind(x: str, y: str, bound: list) -> bool:
        if x in vmap:
            return vmap[x] == y
        if y in vused or sig1[x] != sig2[y]:
            return False
        vmap[x] = y
        vused.add(y)
        bound.append(x)
        return True

    def search(i: int):
        if i == len(order):
            yield GraphIsomorphism(dict(vmap), dict(emap))
            return
        e = order[i]
        for f in targets[e.id]:
            if f.id in eused:
                continue
            for sign in (1, -1):
                tail, head = (f.tail, f.head) if sign == 1 else (f.head, f.tail)
                bound: list[str] = []
                if bind(e.tail, tail, bound) and bind(e.head, head, bound):
                    emap[e.id] = (f.id, sign)
                    eused.add(f.id)
                    yield from search(i + 1)
                    del emap[e.id]
                    eused.discard(f.id)
                for x in bound:
                    vused.discard(vmap.pop(x))

    yield from search(0)


def _least_rotation(w: tuple) -> tuple:
    return min(w[k:] + w[:k] for k in range(len(w)))


def _words_key(words) -> tuple:
    return tuple(sorted(_least_rotation(w) for w in words))


def _plain_patches(g: DistinguishedGraph) -> list:
    """Patches as ``(genus, words)`` with letters as plain ``(edge, exp)`` tuples."""
    return _cached(g, "_plain", lambda h: [
        (p.genus, [tuple((l.edge, l.exp) for l in w) for w in p.words]) for p in h.patches
    ])


def _patch_keys(g: DistinguishedGraph) -> list[tuple]:
    """Per patch: (genus, key of its words, key of its reversed words)."""
    def compute(h):
        out = []
        for genus, words in _plain_patches(h):
            rev = [tuple((e, -x) for e, x in reversed(w)) for w in words]
            out.append((genus, _words_key(words), _words_key(rev)))
        return out
    return _cached(g, "_patch_keys", compute)


def _match_patches(g1: DistinguishedGraph, g2: DistinguishedGraph, em, oriented: bool):
    """Pair the patches of ``g1``, renamed through ``em``, with those of ``g2``.

    Two word lists match directly exactly when their sorted least rotations
    agree, and in reverse when that holds after reversing one side. Both
    relations are equivalences, so the first free compatible partner can be
    taken greedily; preferring a direct match keeps the pairing
    orientation-preserving whenever possible.
    """
    if len(g1.patches) != len(g2.patches):
        return None
    targets = _patch_keys(g2)
    used = [False] * len(targets)
    pairing = []
    for i, (genus1, words) in enumerate(_plain_patches(g1)):
        image = []
        for w in words:
            out = []
            for e, x in w:
                f, s = em[e]
                out.append((f, x * s))
            image.append(tuple(out))
        key = _words_key(image)
        for j, (genus, direct, _) in enumerate(targets):
            if not used[j] and genus == genus1 and direct == key:
                used[j] = True
                pairing.append((i, j, EQUIVALENT))
                break
        else:
            if oriented:
                return None
            for j, (genus, _, reverse) in enumerate(targets):
                if not used[j] and genus == genus1 and reverse == key:
                    used[j] = True
                    pairing.append((i, j, REVERSE))
                    break
            else:
                return None
    return tuple(pairing)


def is_equivalence_witness(g1: DistinguishedGraph, g2: DistinguishedGraph, iso: GraphIsomorphism,
                           oriented: bool = False) -> EquivalenceWitness | None:
    """Return the patch pairing that makes ``iso`` an equivalence, or None.

    With ``oriented=True`` every pair must match directly (an
    orientation-preserving equivalence).
    """
    if not is_isomorphism(g1, g2, iso):
        raise ContractViolation("not a family- and incidence-preserving isomorphism")
    pairing = _match_patches(g1, g2, iso.edge_map, oriented)
    if pairing is None:
        return None
    return EquivalenceWitness(iso, pairing)


def are_equivalent(g1: DistinguishedGraph, g2: DistinguishedGraph, oriented: bool = False,
                   max_edges: int | None = None) -> EquivalenceWitness | None:
    """First equivalence witness in search order, or None."""
    ensure_valid(g1)
    ensure_valid(g2)
    _guard(g1, max_edges)
    _guard(g2, max_edges)
    if _structure_profile(g1) != _structure_profile(g2):
        return None
    for iso in _isomorphisms(g1, g2, _edge_keys):
        pairing = _match_patches(g1, g2, iso.edge_map, oriented)
        if pairing is not None:
            return EquivalenceWitness(iso, pairing)
    return None


def commutes(phi: GraphIsomorphism, s1: GraphIsomorphism, s2: GraphIsomorphism) -> bool:
    """``phi ∘ s1 == s2 ∘ phi`` on vertices and on signed edges."""
    left = phi.compose(s1)
    right = s2.compose(phi)
    return dict(left.vertex_map) == dict(right.vertex_map) and dict(left.edge_map) == dict(right.edge_map)


def check_inner_automorphism(g: DistinguishedGraph, s: GraphIsomorphism, oriented: bool = False) -> None:
    if not is_isomorphism(g, g, s):
        raise ContractViolation("inner automorphism is not an isomorphism of the graph onto itself")
    if is_equivalence_witness(g, g, s, oriented) is None:
        raise ContractViolation("inner automorphism does not preserve the word-list collection")


def are_conjugate(g1: DistinguishedGraph, s1: GraphIsomorphism, g2: DistinguishedGraph,
                  s2: GraphIsomorphism, oriented: bool = False,
                  max_edges: int | None = None) -> EquivalenceWitness | None:
    """Equivalence witness ``phi`` with ``phi ∘ s1 == s2 ∘ phi``, or None."""
    ensure_valid(g1)
    ensure_valid(g2)
    _guard(g1, max_edges)
    _guard(g2, max_edges)
    check_inner_automorphism(g1, s1)
    check_inner_automorphism(g2, s2)
    if _structure_profile(g1) != _structure_profile(g2):
        return None
    for iso in _isomorphisms(g1, g2, _edge_keys):
        if not commutes(iso, s1, s2):
            continue
        pairing = _match_patches(g1, g2, iso.edge_map, oriented)
        if pairing is not None:
            return EquivalenceWitness(iso, pairing)
    return None


# ---------------------------------------------------------------------------
# canonical codes


def _edge_key(g: DistinguishedGraph, e) -> tuple:
    return _edge_keys(g)[e.id]


def _compute_edge_keys(g: DistinguishedGraph) -> dict[str, tuple]:
    # must be invariant under relabelling, rotation and per-patch reversal
    occ: dict[str, list] = {e.id: [] for e in g.edges}
    words: dict[str, set] = {e.id: set() for e in g.edges}
    patches: dict[str, set] = {e.id: set() for e in g.edges}
    for pi, patch in enumerate(g.patches):
        nw, nl = len(patch.words), patch.letter_count
        for wi, word in enumerate(patch.words):
            info = (patch.genus, nw, nl, len(word))
            for letter in word:
                occ[letter.edge].append(info)
                words[letter.edge].add((pi, wi))
                patches[letter.edge].add(pi)
    out = {}
    for e in g.edges:
        fam = 0 if e.family is Family.UNSTABLE else 1
        out[e.id] = (fam, e.is_loop, tuple(sorted(occ[e.id])), len(words[e.id]), len(patches[e.id]))
    return out


def _graph_part(order, signs) -> tuple:
    vlabel: dict[str, int] = {}
    out = []
    for e, s in zip(order, signs):
        ends = (e.tail, e.head) if s == 1 else (e.head, e.tail)
        for x in ends:
            if x not in vlabel:
                vlabel[x] = len(vlabel)
        out.append((0 if e.family is Family.UNSTABLE else 1, vlabel[ends[0]], vlabel[ends[1]]))
    return tuple(out)


def _patch_part(patches, base: list, sign: list) -> tuple:
    """Canonical patch data once edge ``i`` is relabelled as letter code
    ``base[i]`` with orientation ``sign[i]``.

    A letter encodes as ``2 * label`` when traversed along the new
    orientation and ``2 * label + 1`` against it.
    """
    parts = []
    for genus, words in patches:
        fwd = [tuple(base[i] if exp * sign[i] > 0 else base[i] + 1 for i, exp in w) for w in words]
        # reversal: read backwards, flip every orientation bit
        bwd = [tuple(x ^ 1 for x in reversed(w)) for w in fwd]
        a = sorted(_least_rotation(w) for w in fwd)
        b = sorted(_least_rotation(w) for w in bwd)
        parts.append((genus, tuple(min(a, b))))
    parts.sort()
    return tuple(parts)


def _serialize_code(nv: int, gp: tuple, pp: tuple) -> bytes:
    edges = ",".join(f"{'UV'[f]}{t}.{h}" for f, t, h in gp)
    patches = "|".join(f"g{genus}[" + "/".join(" ".join(map(str, w)) for w in words) + "]"
                       for genus, words in pp)
    return f"v{nv};e{edges};p{patches}".encode("ascii")


def canonical_code(g: DistinguishedGraph, max_edges: int | None = None) -> bytes:
    """Least serialization of ``g`` over all relabellings, edge reorientations,
    patch orders, word rotations and per-patch reversals.

    Equal codes mean equivalent graphs (in the default, non-oriented sense).
    """
    ensure_valid(g)
    _guard(g, max_edges)
    return _cached(g, "_canonical", _canonical_form)[0]


def canonical_labelling(g: DistinguishedGraph) -> dict[str, tuple[int, int]]:
    """Edge id -> (position, sign) of a relabelling that attains the code.

    Two graphs with equal codes are related by the isomorphism that sends
    each edge to the edge with the same position, multiplying the signs.
    """
    ensure_valid(g)
    return dict(_cached(g, "_canonical", _canonical_form)[1])


def _automorphism_hints(g: DistinguishedGraph, patches) -> tuple[set, UnionFind]:
    """Loops whose reversal, and pairs of free loops whose exchange, is an
    automorphism of ``g`` (checked without patch reversal, so possibly
    missing some; only found ones are used)."""
    m = len(g.edges)

    def key(perm: list, sign: list) -> tuple:
        return tuple(sorted(
            (genus, tuple(sorted(_least_rotation(tuple((perm[i], exp * sign[i]) for i, exp in w)) for w in words)))
            for genus, words in patches))

    ident = list(range(m))
    ones = [1] * m
    base = key(ident, ones)
    flippable = set()
    for i, e in enumerate(g.edges):
        if e.is_loop:
            sign = list(ones)
            sign[i] = -1
            if key(ident, sign) == base:
                flippable.add(i)
    free = [i for i, e in enumerate(g.edges)
            if e.is_loop and len(g.half_edges_at[e.tail]) == 2]
    twins = UnionFind(free)
    for i, j in itertools.combinations(free, 2):
        if g.edges[i].family is not g.edges[j].family or twins.connected(i, j):
            continue
        perm = list(ident)
        perm[i], perm[j] = j, i
        for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            sign = list(ones)
            sign[i], sign[j] = si, sj
            if key(perm, sign) == base:
                twins.union(i, j)
                break
    return flippable, twins


def _canonical_form(g: DistinguishedGraph) -> tuple[bytes, tuple]:
    """Edges are sorted by a relabelling-invariant key first, so only
    permutations inside equal-key groups are tried; relabellings that differ
    by a known automorphism are tried once."""
    index = {e.id: i for i, e in enumerate(g.edges)}
    patches = [(p.genus, [tuple((index[l.edge], l.exp) for l in w) for w in p.words]) for p in g.patches]
    keyed = sorted(((_edge_key(g, e), i) for i, e in enumerate(g.edges)))
    groups: list[list[int]] = []
    last = object()
    for key, i in keyed:
        if key != last:
            groups.append([])
            last = key
        groups[-1].append(i)
    flippable, twins = _automorphism_hints(g, patches)
    twin_root = {i: twins.root(i) for i in range(len(g.edges)) if i in twins}

    def twin_sorted(order) -> bool:
        last_seen: dict = {}
        for i in order:
            r = twin_root.get(i)
            if r is not None:
                if last_seen.get(r, -1) > i:
                    return False
                last_seen[r] = i
        return True

    edges = g.edges
    nonloops = [i for i, e in enumerate(edges) if not e.is_loop]
    free_signs = [i for i, e in enumerate(edges) if e.is_loop and i not in flippable]
    best_graph = None
    candidates: list = []
    for perms in itertools.product(*(itertools.permutations(grp) for grp in groups)):
        order = [i for grp in perms for i in grp]
        if not twin_sorted(order):
            continue
        for nl_signs in itertools.product((1, -1), repeat=len(nonloops)):
            sign = [1] * len(edges)
            for i, s in zip(nonloops, nl_signs):
                sign[i] = s
            gp = _graph_part([edges[i] for i in order], [sign[i] for i in order])
            if best_graph is None or gp < best_graph:
                best_graph = gp
                candidates = [(order, sign)]
            elif gp == best_graph:
                candidates.append((order, sign))

    best = None
    for order, sign in candidates:
        base = [0] * len(edges)
        for pos, i in enumerate(order):
            base[i] = 2 * pos
        for loop_signs in itertools.product((1, -1), repeat=len(free_signs)):
            sg = list(sign)
            for i, s in zip(free_signs, loop_signs):
                sg[i] = s
            pp = _patch_part(patches, base, sg)
            if best is None or pp < best[0]:
                best = (pp, order, sg)
    pp, order, sg = best
    labelling = tuple((edges[i].id, (pos, sg[i])) for pos, i in enumerate(order))
    return _serialize_code(len(g.vertices), best_graph, pp), labelling


def iso_from_labellings(g1: DistinguishedGraph, g2: DistinguishedGraph) -> GraphIsomorphism:
    """Candidate isomorphism aligning the canonical labellings of two graphs.

    Only meaningful when the codes agree; callers re-check it with
    :func:`is_equivalence_witness`.
    """
    l1 = canonical_labelling(g1)
    by_pos = {pos: (e, s) for e, (pos, s) in canonical_labelling(g2).items()}
    em = {}
    vm = {}
    for e, (pos, s1) in l1.items():
        f, s2 = by_pos[pos]
        sign = s1 * s2
        em[e] = (f, sign)
        a, b = g1.edge(e), g2.edge(f)
        vm[a.tail] = b.tail if sign == 1 else b.head
        vm[a.head] = b.head if sign == 1 else b.tail
    return GraphIsomorphism(vm, em)
