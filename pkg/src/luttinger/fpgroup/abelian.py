from __future__ import annotations

from dataclasses import dataclass, field

from .presentation import Presentation
from .smith import smith_normal_form


@dataclass(frozen=True)
class AbelianInvariants:
    betti: int
    torsion: tuple[int, ...] = field(default=())

    @property
    def is_trivial(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self) -> str:
        parts = ["Z"] * self.betti + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {"betti": self.betti, "torsion": list(self.torsion)}


def abelianize(p: Presentation) -> AbelianInvariants:
    """H_1 of the presented group from the Smith form of its exponent matrix."""
    n = len(p.generators)
    if not p.relators or n == 0:
        return AbelianInvariants(n, ())
    snf = smith_normal_form(p.exponent_matrix())
    torsion = tuple(d for d in snf.diagonal if d > 1)
    return AbelianInvariants(n - snf.rank, torsion)
