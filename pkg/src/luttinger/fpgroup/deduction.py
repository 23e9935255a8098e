"""Mechanical checking of hand-written consequence chains.

A script is a list of :class:`Step`.  Each step claims ``generator = value``
and cites one relator of the presentation.  The checker substitutes every
identity established so far into the cited relator and accepts the claim if
some cyclic conjugate of the result (or of its inverse) equals
``generator * value^-1`` after cancellation.  Cancellation is free reduction,
optionally extended by letter swaps licensed by cited commutator relators
``[u, v]``; cancelling ``x ... x^-1`` across letters that all commute with
``x`` is a complete word-problem solution for such partially commutative
groups, so nothing beyond the cited relators is ever assumed.

Established identities are kept as a substitution ``generator -> word``
(a Tietze elimination), so a generator whose value collapses to the empty
word through later steps counts as proved trivial without a step of its own.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from ..words import EMPTY, Word, gen
from .presentation import Presentation


class StepUnjustified(Exception):
    def __init__(self, index: int, reason: str):
        super().__init__(f"step {index}: {reason}")
        self.index = index
        self.reason = reason


@dataclass(frozen=True)
class Step:
    claim: str
    value: Word = EMPTY
    relator: Optional[Word] = None
    commuting: tuple[Word, ...] = ()
    note: str = ""


@dataclass(frozen=True)
class LogEntry:
    index: int
    claim: str
    value: str
    justification: str
    note: str = ""

    def __str__(self) -> str:
        tail = f"  ({self.note})" if self.note else ""
        return f"[{self.index}] {self.claim} = {self.value}  <- {self.justification}{tail}"

    def as_dict(self) -> dict:
        return {"index": self.index, "claim": self.claim, "value": self.value,
                "justification": self.justification, "note": self.note}


@dataclass(frozen=True)
class ProofLog:
    entries: tuple[LogEntry, ...]
    trivial: tuple[str, ...]
    survivors: tuple[str, ...] = field(default=())

    @property
    def all_trivial(self) -> bool:
        return not self.survivors

    def __len__(self) -> int:
        return len(self.entries)

    def as_dict(self) -> dict:
        return {"steps": [e.as_dict() for e in self.entries],
                "trivial": list(self.trivial), "survivors": list(self.survivors),
                "all_trivial": self.all_trivial}


def canonical_cyclic(r: Word) -> tuple:
    """Representative of ``r`` up to cyclic permutation and inversion."""
    r = r.cyclically_reduced()
    if r.is_identity():
        return ()
    return min(min(rot.letters for rot in w.rotations()) for w in (r, r.inverse()))


def commutator_pair(r: Word) -> Optional[frozenset]:
    """Generators ``{u, v}`` if ``r`` is cyclically ``[u^±1, v^±1]``."""
    r = r.cyclically_reduced()
    if len(r) != 4:
        return None
    (a, s), (b, t), (c, u), (d, v) = r.letters
    if a == c and b == d and a != b and s == -u and t == -v:
        return frozenset((a, b))
    return None


def cancel_with_swaps(letters: Sequence[tuple[str, int]], commute: set) -> list:
    """Cancel ``x^e ... x^-e`` pairs whose intervening letters commute with ``x``."""
    w = list(letters)
    changed = True
    while changed and w:
        changed = False
        i = 0
        while i < len(w):
            n, s = w[i]
            hit = None
            for j in range(i + 1, len(w)):
                m, t = w[j]
                if m == n:
                    if t == -s:
                        hit = j
                        break
                    continue
                if frozenset((n, m)) not in commute:
                    break
            if hit is not None:
                del w[hit]
                del w[i]
                changed = True
            else:
                i += 1
    return w


def deduction_replay(p: Presentation, script: Iterable[Step],
                     require_all_trivial: bool = False) -> ProofLog:
    """Check every step of ``script`` against ``p``; raise on the first gap."""
    known = {canonical_cyclic(r) for r in p.relators}
    gens = set(p.generators)
    subst: dict[str, Word] = {}
    entries: list[LogEntry] = []

    def apply(w: Word) -> Word:
        return w.substitute(subst) if subst else w

    for idx, step in enumerate(script):
        if step.claim not in gens:
            raise StepUnjustified(idx, f"{step.claim} is not a generator")
        if step.value.generators() - gens:
            raise StepUnjustified(idx, f"value {step.value} uses unknown symbols")
        commute: set = set()
        for c in step.commuting:
            pair = commutator_pair(c)
            if pair is None:
                raise StepUnjustified(idx, f"{c} is not a commutator of two generators")
            if canonical_cyclic(c) not in known:
                raise StepUnjustified(idx, f"commutator {c} is not a relator")
            commute.add(pair)
        value = apply(step.value)
        target = apply(gen(step.claim)) * value.inverse()

        if cancel_with_swaps(target.letters, commute) == []:
            justification = "earlier steps"
        else:
            if step.relator is None:
                raise StepUnjustified(idx, f"{step.claim} = {step.value} cites no relator")
            if canonical_cyclic(step.relator) not in known:
                raise StepUnjustified(idx, f"{step.relator} is not a relator")
            body = apply(step.relator).cyclically_reduced()
            tinv = target.inverse()
            ok = any(
                cancel_with_swaps((rot * tinv).letters, commute) == []
                for w in (body, body.inverse())
                for rot in w.rotations()
            )
            if not ok:
                raise StepUnjustified(
                    idx, f"{step.claim} = {step.value} does not follow from {step.relator} "
                         f"(reduces to {body})")
            justification = f"relator {step.relator}"
        if step.commuting:
            justification += " with " + ", ".join(str(c) for c in step.commuting)

        # a re-claim replaces the stored value by the (verified equal) new one
        if step.claim in value.generators():
            raise StepUnjustified(idx, f"{step.claim} = {value} is not a substitution")
        subst[step.claim] = value
        for k in list(subst):
            if k != step.claim:
                subst[k] = subst[k].substitute({step.claim: value})
        entries.append(LogEntry(idx, step.claim, str(step.value), justification, step.note))

    trivial = tuple(g for g in p.generators if g in subst and subst[g].is_identity())
    survivors = tuple(g for g in p.generators if g not in trivial)
    if require_all_trivial and survivors:
        raise StepUnjustified(len(entries), f"generators not proved trivial: {' '.join(survivors)}")
    return ProofLog(tuple(entries), trivial, survivors)
