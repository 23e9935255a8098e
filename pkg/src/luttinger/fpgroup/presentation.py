from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..words import Word, WordSyntaxError, split_top_level


class MalformedPresentation(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    """Generators plus relators.  Relators are deduplicated on construction."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __init__(self, generators: Iterable[str], relators: Iterable[Word] = ()):
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise MalformedPresentation("duplicate generator names")
        known = set(gens)
        seen: set[Word] = set()
        rels: list[Word] = []
        for r in relators:
            stray = r.generators() - known
            if stray:
                raise MalformedPresentation(
                    f"relator {r} uses symbols outside the generator set: {sorted(stray)}")
            if r.is_identity() or r in seen:
                continue
            seen.add(r)
            rels.append(r)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    def with_relators(self, extra: Iterable[Word]) -> "Presentation":
        return Presentation(self.generators, self.relators + tuple(extra))

    def exponent_matrix(self) -> list[list[int]]:
        """Relators x generators matrix of exponent sums."""
        index = {g: j for j, g in enumerate(self.generators)}
        rows = []
        for r in self.relators:
            row = [0] * len(self.generators)
            for name, sign in r:
                row[index[name]] += sign
            rows.append(row)
        return rows

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def __str__(self) -> str:
        rels = " , ".join(str(r) for r in self.relators)
        return f"gens: {' '.join(self.generators)} ; rels: {rels}".rstrip()

    @classmethod
    def parse(cls, text: str) -> "Presentation":
        try:
            parts = split_top_level(text.strip(), ";")
        except WordSyntaxError as exc:
            raise MalformedPresentation(str(exc)) from None
        if len(parts) != 2:
            raise MalformedPresentation("expected 'gens: ... ; rels: ...'")
        head, tail = (p.strip() for p in parts)
        if not head.startswith("gens:") or not tail.startswith("rels:"):
            raise MalformedPresentation("expected 'gens: ... ; rels: ...'")
        gens = head[len("gens:"):].split()
        body = tail[len("rels:"):].strip()
        rels: list[Word] = []
        if body:
            for chunk in split_top_level(body, ","):
                if not chunk.strip():
                    raise MalformedPresentation("empty relator slot")
                try:
                    rels.append(Word.parse(chunk))
                except WordSyntaxError as exc:
                    raise MalformedPresentation(str(exc)) from None
        return cls(gens, rels)


def free_presentation(generators: Sequence[str]) -> Presentation:
    return Presentation(generators, ())
