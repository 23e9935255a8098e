"""Runner for the bundled presentation corpus.

Each ``*.pres`` file holds one presentation in ``gens: ... ; rels: ...``
form; lines starting with ``#`` are comments.  The runner reports H_1 and the
coset-enumeration outcome but asserts nothing about pi_1.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .fpgroup.abelian import AbelianInvariants, abelianize
from .fpgroup.cosets import TrivialityVerdict
from .fpgroup.presentation import Presentation
from .pipeline import certify_trivial

CORPUS_DIR = Path(__file__).parent / "data" / "corpus"
CORPUS_BUDGET = 20_000


@dataclass
class CorpusCase:
    name: str
    presentation: Presentation
    h1: AbelianInvariants
    verdict: TrivialityVerdict

    @property
    def homology_trivial(self) -> bool:
        return self.h1.is_trivial

    def as_dict(self) -> dict:
        return {"name": self.name, "generators": len(self.presentation.generators),
                "relators": len(self.presentation.relators), "h1": self.h1.as_dict(),
                "pi1_verdict": self.verdict.as_dict()}


def load_presentation(path) -> Presentation:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return Presentation.parse(" ".join(l for l in lines if not l.lstrip().startswith("#")))


def run_corpus(directory=CORPUS_DIR, budget: int = CORPUS_BUDGET) -> list[CorpusCase]:
    out = []
    for path in sorted(Path(directory).glob("*.pres")):
        p = load_presentation(path)
        h1 = abelianize(p)
        out.append(CorpusCase(path.stem, p, h1, certify_trivial(p, budget, h1=h1)))
    return out


def summary(cases: list[CorpusCase]) -> str:
    lines = [f"{len(cases)} cases"]
    for c in cases:
        lines.append(f"  {c.name}: {len(c.presentation.generators)} generators, "
                     f"{len(c.presentation.relators)} relators, H_1 = {c.h1}, "
                     f"coset enumeration {c.verdict.status}"
                     + (f" (order {c.verdict.order})" if c.verdict.closed else ""))
    return "\n".join(lines)
