"""Realizability of a distinguished graph as the invariant of a gradient-like
field, and the topology of the closed surface obtained by gluing the patches
onto the graph.

The four combinatorial checks are

* condition (a): every edge occurs exactly twice among all boundary words;
* link connectivity: at every vertex the corners chain all edge ends together;
* condition (b): every vertex is 4-valent or carries a single loop;
* condition (c): every corner at a 4-valent vertex joins the two families.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

from distgraph.errors import NotASurfaceError
from distgraph.model import (
    DistinguishedGraph,
    complex_connected,
    corners,
    degree,
    ensure_valid,
)
from distgraph.unionfind import UnionFind


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_EVALUATED = "not_evaluated"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Verdict:
    status: Status
    offenders: tuple = ()

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    @property
    def failed(self) -> bool:
        return self.status is Status.FAIL


SKIPPED = Verdict(Status.NOT_EVALUATED)


def _verdict(offenders) -> Verdict:
    offenders = tuple(offenders)
    return Verdict(Status.FAIL if offenders else Status.PASS, offenders)


@dataclass(frozen=True)
class RealizabilityReport:
    condition_a: Verdict
    link_connected: Verdict
    condition_b: Verdict
    condition_c: Verdict

    @property
    def overall(self) -> bool:
        return all(v.passed for v in self.verdicts().values())

    def verdicts(self) -> dict[str, Verdict]:
        return {
            "a": self.condition_a,
            "link": self.link_connected,
            "b": self.condition_b,
            "c": self.condition_c,
        }

    def failing(self) -> set[str]:
        return {name for name, v in self.verdicts().items() if v.failed}


@dataclass(frozen=True)
class SurfaceInvariants:
    euler_characteristic: int
    orientable: bool
    genus: int | None


def edge_occurrences(g: DistinguishedGraph) -> Counter:
    counts = Counter({e.id: 0 for e in g.edges})
    for _, _, _, letter in g.letters():
        counts[letter.edge] += 1
    return counts


def check_condition_a(g: DistinguishedGraph) -> Verdict:
    """Every edge occurs exactly twice, whatever the exponents."""
    ensure_valid(g)
    counts = edge_occurrences(g)
    return _verdict(e.id for e in g.edges if counts[e.id] != 2)


def link_classes(g: DistinguishedGraph) -> dict[str, list[list]]:
    """Per vertex, the classes of edge ends chained together by corners."""
    ufs = {v: UnionFind(g.half_edges_at.get(v, ())) for v in g.vertices}
    for c in corners(g):
        ufs[c.vertex].union(c.arriving, c.leaving)
    return {v: uf.classes() for v, uf in ufs.items()}


def check_link_connected(g: DistinguishedGraph) -> Verdict:
    """At each vertex all edge ends lie in one corner-chain class."""
    classes = link_classes(g)
    return _verdict(v for v in g.vertices if len(classes[v]) > 1)


def _single_loop(g: DistinguishedGraph, v: str) -> bool:
    hs = g.half_edges_at.get(v, ())
    return len(hs) == 2 and hs[0].edge == hs[1].edge


def check_condition_b(g: DistinguishedGraph) -> Verdict:
    """Every vertex has degree 4, or degree 2 coming from one loop."""
    ensure_valid(g)
    return _verdict(v for v in g.vertices if not (degree(g, v) == 4 or _single_loop(g, v)))


def check_condition_c(g: DistinguishedGraph) -> Verdict:
    """Corners at 4-valent vertices pair ends of different families.

    Vertices of any other degree are exempt.
    """
    bad = []
    for c in corners(g):
        if degree(g, c.vertex) != 4:
            continue
        if g.family(c.arriving.edge) is g.family(c.leaving.edge):
            bad.append(c)
    return _verdict(bad)


def is_realizable(g: DistinguishedGraph) -> RealizabilityReport:
    """Run all four checks.

    Link connectivity and condition (c) are only meaningful once condition (a)
    holds; when it fails they are reported as not evaluated. Condition (c) is
    evaluated even when the link check fails, so a same-family corner is always
    reported as such.
    """
    a = check_condition_a(g)
    b = check_condition_b(g)
    if a.passed:
        link = check_link_connected(g)
        c = check_condition_c(g)
    else:
        link = c = SKIPPED
    return RealizabilityReport(a, link, b, c)


def _require_surface(g: DistinguishedGraph) -> None:
    a = check_condition_a(g)
    if not a.passed:
        names = ", ".join(a.offenders)
        raise NotASurfaceError(f"edges {names} do not occur exactly twice; the complex is not a closed surface")


def euler_characteristic(g: DistinguishedGraph) -> int:
    """Euler characteristic of the glued closed surface.

    Each patch of genus n with b boundary circles contributes ``2 - 2n - b``.
    """
    _require_surface(g)
    chi = len(g.vertices) - len(g.edges)
    for p in g.patches:
        chi += 2 - 2 * p.genus - len(p.words)
    return chi


def is_orientable(g: DistinguishedGraph) -> bool:
    """Whether the patches can be oriented coherently.

    Each patch gets a flip bit. The two traversals of an edge must have
    opposite exponents after flipping, which is a parity constraint between
    the bits of the patches containing them.
    """
    _require_surface(g)
    seen: dict[str, tuple[int, int]] = {}
    uf = UnionFind(range(len(g.patches)))
    for pi, _, _, letter in g.letters():
        if letter.edge not in seen:
            seen[letter.edge] = (pi, letter.exp)
            continue
        pj, exp = seen[letter.edge]
        # same exponents need exactly one of the two patches flipped
        if not uf.union(pi, pj, 1 if exp == letter.exp else 0):
            return False
    return True


def orientability_and_genus(g: DistinguishedGraph) -> SurfaceInvariants:
    chi = euler_characteristic(g)
    orientable = is_orientable(g)
    genus = None
    if orientable and chi <= 2 and chi % 2 == 0:
        genus = (2 - chi) // 2
    return SurfaceInvariants(chi, orientable, genus)


def is_connected(g: DistinguishedGraph) -> bool:
    return complex_connected(g)
