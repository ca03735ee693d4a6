"""Cyclic words over signed edge letters.

Words are compared literally up to rotation and, where asked, reversal; no
free-group cancellation is ever performed.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from distgraph.errors import IncompleteMappingError
from distgraph.model import Letter, Word

# edge id -> (target edge id, sign)
EdgeMapping = Mapping[str, tuple[str, int]]


def rotations(w: Sequence[Letter]):
    n = len(w)
    for k in range(n):
        yield tuple(w[k:]) + tuple(w[:k])


def cyclic_equal(w1: Sequence[Letter], w2: Sequence[Letter]) -> bool:
    """True iff some rotation of ``w1`` equals ``w2`` letter for letter."""
    if len(w1) != len(w2):
        return False
    t2 = tuple(w2)
    if not t2:
        return True
    # w2 occurs in w1 + w1 exactly when it is a rotation of w1
    doubled = tuple(w1) * 2
    n = len(t2)
    first = t2[0]
    for k in range(n):
        if doubled[k] == first and doubled[k:k + n] == t2:
            return True
    return False


def reverse_word(w: Sequence[Letter]) -> Word:
    """Letters in reverse order, each exponent negated."""
    return tuple(Letter(letter.edge, -letter.exp) for letter in reversed(w))


def substitute(w: Sequence[Letter], m: EdgeMapping) -> Word:
    """Rename every letter through ``m``, multiplying exponents by the mapped sign."""
    out = []
    for letter in w:
        try:
            target, sign = m[letter.edge]
        except KeyError:
            raise IncompleteMappingError(f"edge {letter.edge!r} is not mapped") from None
        out.append(Letter(target, letter.exp * sign))
    return tuple(out)


def min_rotation(w: Sequence[Letter]) -> Word:
    """Lexicographically least rotation (a canonical representative)."""
    if not w:
        return ()
    return min(rotations(w))


def words_match(ws1: Sequence[Sequence[Letter]], ws2: Sequence[Sequence[Letter]],
                mode: str = "direct") -> bool:
    """Whether the two word multisets can be paired off word by word.

    With ``mode="direct"`` paired words must be cyclically equal; with
    ``mode="reversed"`` each word of ``ws1`` must be cyclically equal to the
    reversal of its partner in ``ws2``.
    """
    if mode not in ("direct", "reversed"):
        raise ValueError(f"unknown mode {mode!r}")
    if len(ws1) != len(ws2):
        return False
    targets = [tuple(w) for w in ws2]
    if mode == "reversed":
        targets = [reverse_word(w) for w in targets]
    compatible = [[j for j, t in enumerate(targets) if cyclic_equal(w, t)] for w in ws1]
    used = [False] * len(targets)

    def extend(i: int) -> bool:
        if i == len(compatible):
            return True
        for j in compatible[i]:
            if not used[j]:
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
        return False

    return extend(0)
