"""Assembled 4-manifolds: a presentation plus (e, sigma) and the torus ledger.

States are immutable; every operation returns a new state and appends to the
provenance log, from which ``(e, sigma)`` can be recomputed.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

from .blocks import AVAILABLE, BlockState, TorusDescriptor
from .fpgroup.presentation import Presentation
from .words import GeneratorSymbol, Word

BASEPOINT_NOTE = (
    "block generators are taken as already transported to the basepoint of the "
    "first block along the chain of fiber-sum arcs; relations are literal word "
    "equalities with the transport conjugators elided")


class ManifoldError(ValueError):
    pass


class TorusNotAvailable(ManifoldError):
    pass


class UnknownTorus(ManifoldError, KeyError):
    pass


@dataclass(frozen=True)
class ManifoldState:
    blocks: tuple[BlockState, ...]
    presentation: Presentation
    euler: int
    signature: int
    tori: tuple[TorusDescriptor, ...]
    provenance: tuple[dict, ...] = ()
    meridians: tuple[tuple[str, Optional[Word]], ...] = ()
    completed: frozenset = field(default=frozenset())
    basepoint_note: str = BASEPOINT_NOTE

    @classmethod
    def from_block(cls, block: BlockState) -> "ManifoldState":
        entry = {"op": "block", "block": block.block_id, "kind": str(block.kind),
                 "euler": block.euler, "signature": block.signature}
        return cls((block,), block.presentation(), block.euler, block.signature,
                   block.tori, (entry,))

    # lookups

    def torus(self, key: str) -> TorusDescriptor:
        for t in self.tori:
            if t.key == key:
                return t
        raise UnknownTorus(f"no torus {key!r} in this manifold")

    def block(self, block_id: str) -> BlockState:
        for b in self.blocks:
            if b.block_id == block_id:
                return b
        raise ManifoldError(f"no block {block_id!r}")

    @property
    def block_ids(self) -> tuple[str, ...]:
        return tuple(b.block_id for b in self.blocks)

    @property
    def generator_symbols(self) -> tuple[GeneratorSymbol, ...]:
        owner = {g.name: g.block for b in self.blocks for g in b.generators}
        for t in self.tori:
            if t.meridian:
                owner[t.meridian] = t.block
        return tuple(GeneratorSymbol(owner[n], n) for n in self.presentation.generators)

    def meridian_word(self, name: str) -> Optional[Word]:
        return dict(self.meridians).get(name)

    def unassigned_meridians(self) -> tuple[str, ...]:
        return tuple(n for n, w in self.meridians if w is None)

    def available_tori(self) -> tuple[TorusDescriptor, ...]:
        return tuple(t for t in self.tori if t.status == AVAILABLE)

    # functional updates

    def with_torus(self, torus: TorusDescriptor) -> "ManifoldState":
        tori = tuple(torus if t.key == torus.key else t for t in self.tori)
        return replace(self, tori=tori)

    def logged(self, entry: dict) -> "ManifoldState":
        return replace(self, provenance=self.provenance + (entry,))

    def with_presentation(self, gens: Iterable[str], rels: Iterable[Word]) -> "ManifoldState":
        return replace(self, presentation=Presentation(gens, rels))


def recompute_invariants(state: ManifoldState) -> tuple[int, int]:
    """(e, sigma) from the provenance log alone.

    Blocks contribute their own numbers; torus fiber sums add both (the torus
    has e = 0 and sigma is Novikov-additive) and torus surgeries change neither.
    """
    e = s = 0
    for entry in state.provenance:
        if entry["op"] == "block":
            e += entry["euler"]
            s += entry["signature"]
        elif entry["op"] not in ("fiber_sum", "surgery", "meridian", "complete_block"):
            raise ManifoldError(f"unknown provenance op {entry['op']!r}")
    return e, s
