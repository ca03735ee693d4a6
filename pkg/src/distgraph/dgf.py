"""The DGF text format and the JSON form of distinguished graphs.

A DGF document has up to four sections, each introduced by its name alone
on a line (a trailing colon is allowed)::

    # torus with one crossing
    vertices
    P
    edges
    u U P P
    v V P P
    patches
    genus 0: (u v u^-1 v^-1)
    inner
    v: P->P
    e: u->u
    e: v->v^-1

``#`` starts a comment. The ``inner`` section is optional and declares an
inner automorphism as a vertex map and a signed edge map.
"""

from __future__ import annotations

import re
from typing import Any, NamedTuple

from distgraph.equivalence import GraphIsomorphism
from distgraph.errors import ParseError
from distgraph.model import (
    DistinguishedGraph,
    Edge,
    Family,
    Letter,
    Patch,
    ensure_valid,
    word_str,
)

SECTIONS = ("vertices", "edges", "patches", "inner")
_ID = re.compile(r"[A-Za-z0-9_.]+")
_TOKEN = re.compile(r"\S+")


class Document(NamedTuple):
    graph: DistinguishedGraph
    inner: GraphIsomorphism | None = None


class _Tok(NamedTuple):
    text: str
    line: int
    col: int  # 1-based


def _tokens(text: str, line: int, offset: int = 0) -> list[_Tok]:
    return [_Tok(m.group(), line, offset + m.start() + 1) for m in _TOKEN.finditer(text)]


def _ident(tok: _Tok, what: str) -> str:
    if not _ID.fullmatch(tok.text):
        raise ParseError(tok.line, tok.col, f"malformed {what} id {tok.text!r}")
    return tok.text


def _signed(tok: _Tok, what: str) -> tuple[str, int]:
    """Split ``x``, ``x^1``, ``x^+1`` or ``x^-1`` into id and sign."""
    name, caret, exp = tok.text.partition("^")
    if caret:
        if exp == "-1":
            sign = -1
        elif exp in ("1", "+1"):
            sign = 1
        else:
            raise ParseError(tok.line, tok.col + len(name) + 1, f"malformed exponent {exp!r} (expected 1 or -1)")
    else:
        sign = 1
    return _ident(_Tok(name, tok.line, tok.col), what), sign


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0]


def parse(text: str) -> Document:
    """Parse a DGF document.

    Syntax errors, duplicate ids and references to undeclared vertices or
    edges raise :class:`ParseError` with the position of the offending
    token. A graph that parses but breaks a structural invariant raises
    :class:`~distgraph.errors.ValidationError`.
    """
    section = None
    seen_sections: set[str] = set()
    vertices: list[str] = []
    vertex_pos: dict[str, _Tok] = {}
    edges: list[tuple[_Tok, Family, _Tok, _Tok]] = []
    patches: list[tuple[int, list[list[_Tok]]]] = []
    inner_v: list[tuple[_Tok, _Tok]] = []
    inner_e: list[tuple[_Tok, _Tok]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        toks = _tokens(body, lineno)
        if not toks:
            continue
        head = toks[0]
        name = head.text.rstrip(":")
        if len(toks) == 1 and name in SECTIONS:
            if name in seen_sections:
                raise ParseError(lineno, head.col, f"section {name!r} appears twice")
            seen_sections.add(name)
            section = name
            continue
        if section is None:
            raise ParseError(lineno, head.col, f"expected a section header ({', '.join(SECTIONS)}), got {head.text!r}")

        if section == "vertices":
            if len(toks) != 1:
                raise ParseError(lineno, toks[1].col, "one vertex id per line")
            v = _ident(head, "vertex")
            if v in vertex_pos:
                raise ParseError(lineno, head.col, f"duplicate vertex {v!r}")
            vertex_pos[v] = head
            vertices.append(v)

        elif section == "edges":
            if len(toks) != 4:
                col = toks[min(len(toks), 4) - 1].col if len(toks) > 4 else head.col
                raise ParseError(lineno, col, "edge lines have the form 'id family tail head'")
            eid, fam, tail, head_v = toks
            _ident(eid, "edge")
            try:
                family = Family(fam.text)
            except ValueError:
                raise ParseError(lineno, fam.col, f"unknown family {fam.text!r} (expected U or V)") from None
            _ident(tail, "vertex")
            _ident(head_v, "vertex")
            edges.append((eid, family, tail, head_v))

        elif section == "patches":
            patches.append(_parse_patch(body, lineno))

        else:  # inner
            kind, colon, rest = body.partition(":")
            kind_tok = head
            if not colon or kind.strip() not in ("v", "e"):
                raise ParseError(lineno, kind_tok.col, "inner lines have the form 'v: a->b' or 'e: x->y^-1'")
            offset = len(kind) + 1
            src, arrow, dst = rest.partition("->")
            if not arrow:
                raise ParseError(lineno, offset + 1, "expected '->'")
            src_toks = _tokens(src, lineno, offset)
            dst_toks = _tokens(dst, lineno, offset + len(src) + 2)
            if len(src_toks) != 1 or len(dst_toks) != 1:
                raise ParseError(lineno, offset + 1, "expected exactly one id on each side of '->'")
            target = inner_v if kind.strip() == "v" else inner_e
            target.append((src_toks[0], dst_toks[0]))

    for need in ("vertices", "edges", "patches"):
        if need not in seen_sections:
            raise ParseError(max(1, len(text.splitlines())), 1, f"missing section {need!r}")

    edge_objs = []
    edge_ids: set[str] = set()
    for eid, family, tail, head_v in edges:
        if eid.text in edge_ids:
            raise ParseError(eid.line, eid.col, f"duplicate edge {eid.text!r}")
        edge_ids.add(eid.text)
        for end in (tail, head_v):
            if end.text not in vertex_pos:
                raise ParseError(end.line, end.col, f"unknown vertex {end.text!r}")
        edge_objs.append(Edge(eid.text, family, tail.text, head_v.text))

    patch_objs = []
    for genus, words in patches:
        ws = []
        for word in words:
            letters = []
            for tok in word:
                e, sign = _signed(tok, "edge")
                if e not in edge_ids:
                    raise ParseError(tok.line, tok.col, f"unknown edge {e!r}")
                letters.append(Letter(e, sign))
            ws.append(tuple(letters))
        patch_objs.append(Patch(genus, tuple(ws)))

    g = DistinguishedGraph(tuple(vertices), tuple(edge_objs), tuple(patch_objs))
    ensure_valid(g)

    inner = None
    if "inner" in seen_sections:
        inner = _build_inner(inner_v, inner_e, vertex_pos, edge_ids)
    return Document(g, inner)


def _parse_patch(body: str, lineno: int) -> tuple[int, list[list[_Tok]]]:
    m = re.match(r"\s*genus\s+(\S+?)\s*:", body)
    if not m:
        col = len(body) - len(body.lstrip()) + 1
        raise ParseError(lineno, col, "patch lines have the form 'genus <n>: (<word>) ...'")
    try:
        genus = int(m.group(1))
    except ValueError:
        raise ParseError(lineno, m.start(1) + 1, f"genus must be an integer, got {m.group(1)!r}") from None
    if genus < 0:
        raise ParseError(lineno, m.start(1) + 1, "genus must be nonnegative")
    words = []
    pos = m.end()
    while True:
        while pos < len(body) and body[pos].isspace():
            pos += 1
        if pos == len(body):
            break
        if body[pos] != "(":
            raise ParseError(lineno, pos + 1, f"expected '(' to open a word, got {body[pos]!r}")
        close = body.find(")", pos)
        if close < 0:
            raise ParseError(lineno, pos + 1, "unclosed word")
        inside = body[pos + 1:close]
        if "(" in inside:
            raise ParseError(lineno, pos + 2 + inside.index("("), "nested '('")
        words.append(_tokens(inside, lineno, pos + 1))
        pos = close + 1
    return genus, words


def _build_inner(inner_v, inner_e, vertex_pos, edge_ids) -> GraphIsomorphism:
    vm: dict[str, str] = {}
    em: dict[str, tuple[str, int]] = {}
    for src, dst in inner_v:
        for tok in (src, dst):
            if _ident(tok, "vertex") not in vertex_pos:
                raise ParseError(tok.line, tok.col, f"unknown vertex {tok.text!r}")
        if src.text in vm:
            raise ParseError(src.line, src.col, f"vertex {src.text!r} mapped twice")
        vm[src.text] = dst.text
    for src, dst in inner_e:
        if _ident(src, "edge") not in edge_ids:
            raise ParseError(src.line, src.col, f"unknown edge {src.text!r}")
        e, sign = _signed(dst, "edge")
        if e not in edge_ids:
            raise ParseError(dst.line, dst.col, f"unknown edge {e!r}")
        if src.text in em:
            raise ParseError(src.line, src.col, f"edge {src.text!r} mapped twice")
        em[src.text] = (e, sign)
    return GraphIsomorphism(vm, em)


def serialize(g: DistinguishedGraph, inner: GraphIsomorphism | None = None) -> str:
    """DGF text for ``g``; :func:`parse` gives back an identical value."""
    lines = ["vertices", *g.vertices, "edges"]
    lines += [f"{e.id} {e.family} {e.tail} {e.head}" for e in g.edges]
    lines.append("patches")
    for p in g.patches:
        lines.append(f"genus {p.genus}: " + " ".join(f"({word_str(w)})" for w in p.words))
    if inner is not None:
        lines.append("inner")
        lines += [f"v: {a}->{b}" for a, b in inner.vertex_map.items()]
        lines += [f"e: {x}->{_signed_str(y, s)}" for x, (y, s) in inner.edge_map.items()]
    return "\n".join(lines) + "\n"


def _signed_str(edge: str, sign: int) -> str:
    return edge if sign > 0 else f"{edge}^-1"


# ---------------------------------------------------------------------------
# JSON


def graph_to_json(g: DistinguishedGraph) -> dict[str, Any]:
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "family": str(e.family), "tail": e.tail, "head": e.head} for e in g.edges],
        "patches": [{"genus": p.genus, "words": [[str(l) for l in w] for w in p.words]} for p in g.patches],
    }


def iso_to_json(iso: GraphIsomorphism) -> dict[str, Any]:
    return {
        "vertices": dict(iso.vertex_map),
        "edges": {e: {"edge": f, "sign": s} for e, (f, s) in iso.edge_map.items()},
    }


def document_to_json(g: DistinguishedGraph, inner: GraphIsomorphism | None = None) -> dict[str, Any]:
    data = graph_to_json(g)
    if inner is not None:
        data["inner"] = iso_to_json(inner)
    return data


def graph_from_json(data: dict[str, Any]) -> DistinguishedGraph:
    """Inverse of :func:`graph_to_json`; the result is validated."""
    edges = tuple(Edge(e["id"], Family(e["family"]), e["tail"], e["head"]) for e in data["edges"])
    patches = []
    for p in data["patches"]:
        words = []
        for w in p["words"]:
            letters = []
            for text in w:
                e, sign = _signed(_Tok(text, 0, 0), "edge")
                letters.append(Letter(e, sign))
            words.append(tuple(letters))
        patches.append(Patch(p["genus"], tuple(words)))
    return ensure_valid(DistinguishedGraph(tuple(data["vertices"]), edges, tuple(patches)))


def iso_from_json(data: dict[str, Any]) -> GraphIsomorphism:
    return GraphIsomorphism(dict(data["vertices"]),
                            {e: (d["edge"], d["sign"]) for e, d in data["edges"].items()})


def document_from_json(data: dict[str, Any]) -> Document:
    inner = iso_from_json(data["inner"]) if "inner" in data else None
    return Document(graph_from_json(data), inner)
