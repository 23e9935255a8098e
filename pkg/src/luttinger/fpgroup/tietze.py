"""Tietze transformations.

The elementary moves are exposed individually (they are also what the
property tests shuffle); :func:`tietze_simplify` drives them greedily.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..words import Word, gen
from .presentation import Presentation

EFFORT_LEVELS = ("low", "medium", "high")

# Hard cap on total relator length during "high" effort elimination.
_LENGTH_CAP = 200_000


@dataclass(frozen=True)
class TietzeMove:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


# elementary moves

def conjugate_relator(p: Presentation, i: int, by: Word) -> Presentation:
    rels = list(p.relators)
    rels[i] = by * rels[i] * by.inverse()
    return Presentation(p.generators, rels)


def invert_relator(p: Presentation, i: int) -> Presentation:
    rels = list(p.relators)
    rels[i] = rels[i].inverse()
    return Presentation(p.generators, rels)


def multiply_relators(p: Presentation, i: int, j: int) -> Presentation:
    """Replace relator ``i`` by ``r_i r_j`` (``i != j``)."""
    if i == j:
        raise ValueError("need two distinct relators")
    rels = list(p.relators)
    rels[i] = rels[i] * rels[j]
    return Presentation(p.generators, rels)


def add_generator(p: Presentation, name: str, value: Word) -> Presentation:
    if name in p.generators:
        raise ValueError(f"generator {name} already present")
    return Presentation(p.generators + (name,), p.relators + (gen(name) * value.inverse(),))


def solve_for(r: Word, x: str) -> Optional[Word]:
    """If ``x`` occurs exactly once in ``r``, return ``w`` with ``x = w`` modulo ``r``."""
    letters = r.letters
    hits = [k for k, (n, _) in enumerate(letters) if n == x]
    if len(hits) != 1:
        return None
    k = hits[0]
    before, after = Word(letters[:k]), Word(letters[k + 1:])
    if letters[k][1] == 1:
        return before.inverse() * after.inverse()
    return after * before


def eliminate_generator(p: Presentation, x: str, i: int) -> Presentation:
    """Drop generator ``x`` using relator ``i``, in which it occurs once."""
    value = solve_for(p.relators[i], x)
    if value is None:
        raise ValueError(f"{x} does not occur exactly once in relator {i}")
    rels = [r.substitute({x: value}) for k, r in enumerate(p.relators) if k != i]
    return Presentation([g for g in p.generators if g != x], rels)


# driver

def _same_cyclic_class(a: Word, b: Word) -> bool:
    if len(a) != len(b):
        return False
    binv = b.inverse()
    return any(rot == b or rot == binv for rot in a.rotations())


def _cleanup(p: Presentation, log: list[TietzeMove]) -> Presentation:
    kept: list[Word] = []
    for r in p.relators:
        c = r.cyclically_reduced()
        if c != r:
            log.append(TietzeMove("conjugate", f"{r} -> {c}"))
        if c.is_identity():
            log.append(TietzeMove("drop", f"trivial relator {r}"))
            continue
        if any(_same_cyclic_class(c, k) for k in kept):
            log.append(TietzeMove("drop", f"duplicate relator {c}"))
            continue
        kept.append(c)
    return Presentation(p.generators, kept)


def _pick_elimination(p: Presentation, effort: str):
    order = {g: k for k, g in enumerate(p.generators)}
    best = None
    total = p.total_length()
    for i, r in enumerate(p.relators):
        if effort == "low" and len(r) > 2:
            continue
        for x in sorted(r.generators(), key=lambda g: -order[g]):
            if r.occurrences(x) != 1:
                continue
            elsewhere = sum(q.occurrences(x) for k, q in enumerate(p.relators) if k != i)
            growth = elsewhere * (len(r) - 2) - len(r)
            if effort == "medium" and growth > 0 and len(r) > 3:
                continue
            if effort == "high" and total + growth > _LENGTH_CAP:
                continue
            key = (len(r), growth, -order[x], i)
            if best is None or key < best[0]:
                best = (key, x, i)
            break
    return best


def tietze_simplify(p: Presentation, effort: str = "medium",
                    log: Optional[list[TietzeMove]] = None) -> Presentation:
    """Greedy simplification; the result presents an isomorphic group.

    ``low`` only uses relators of length <= 2, ``medium`` also eliminates when
    the total relator length does not grow (or the relator is very short),
    ``high`` eliminates whenever possible up to a length cap.
    """
    if effort not in EFFORT_LEVELS:
        raise ValueError(f"effort must be one of {EFFORT_LEVELS}")
    if log is None:
        log = []
    p = _cleanup(p, log)
    while True:
        pick = _pick_elimination(p, effort)
        if pick is None:
            return p
        _, x, i = pick
        value = solve_for(p.relators[i], x)
        log.append(TietzeMove("eliminate", f"{x} = {value} via {p.relators[i]}"))
        p = _cleanup(eliminate_generator(p, x, i), log)
