"""Symplectic fiber sum along square-zero tori.

The sum ``A #_{T_A = T_B} B`` takes the disjoint union of both presentations,
materializes the meridians of both tori as generators and adds

* ``pushoff(left curve k) = pushoff(right curve k)`` for the two identified
  curve pairs,
* ``mu_left * mu_right = 1`` (the meridians are glued with opposite
  orientation),
* ``mu_left = w`` for the meridian word ``w`` (unless explicitly withheld).

``e`` and ``sigma`` add.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Union

from .blocks import AVAILABLE, CONSUMED, pushoff_word
from .manifold import ManifoldError, ManifoldState, TorusNotAvailable
from .words import Word, gen

STANDARD_MERIDIAN = "standard"
ALTERNATIVE_MERIDIAN = "alternative"
MERIDIAN_POLICIES = (STANDARD_MERIDIAN, ALTERNATIVE_MERIDIAN, "none")

MeridianChoice = Union[Word, str, None]


class SelfSum(ManifoldError):
    pass


class ForeignMeridianWord(ManifoldError):
    pass


class MeridianAlreadyAssigned(ManifoldError):
    pass


@dataclass(frozen=True)
class GluingSpec:
    left: str
    right: str
    identification: tuple[tuple[int, int], ...] = ((0, 0), (1, 1))

    def __post_init__(self):
        lefts = sorted(i for i, _ in self.identification)
        rights = sorted(j for _, j in self.identification)
        if lefts != [0, 1] or rights != [0, 1]:
            raise ManifoldError("identification must pair both curves of each torus")

    def __str__(self) -> str:
        if self.identification == ((0, 0), (1, 1)):
            return f"{self.left} = {self.right}"
        return f"{self.left} = {self.right} [swap]"


def resolve_meridian(choice: MeridianChoice, torus) -> Optional[Word]:
    if choice is None or choice == "none":
        return None
    if isinstance(choice, Word):
        return choice
    if choice == STANDARD_MERIDIAN:
        return torus.meridian_word()
    if choice == ALTERNATIVE_MERIDIAN:
        return torus.meridian_word(alternative=True)
    raise ValueError(f"unknown meridian policy {choice!r}")


def assign_meridian_word(state: ManifoldState, torus_key: str, word: Word) -> ManifoldState:
    """Adjoin ``mu = word`` for the meridian of ``torus_key``.

    The meridian symbol becomes a generator if it is not one yet.  ``word``
    may only use generators of the torus's own block.
    """
    t = state.torus(torus_key)
    own = set(state.block(t.block).generator_names)
    stray = word.generators() - own
    if stray:
        raise ForeignMeridianWord(
            f"meridian word for {torus_key} uses generators outside block {t.block}: {sorted(stray)}")
    name = t.meridian or t.meridian_name
    if state.meridian_word(name) is not None:
        raise MeridianAlreadyAssigned(f"{name} already has a word")
    gens = state.presentation.generators
    if name not in gens:
        gens = gens + (name,)
    rels = state.presentation.relators + (gen(name) * word.inverse(),)
    meridians = tuple((n, w) for n, w in state.meridians if n != name) + ((name, word),)
    out = replace(state.with_presentation(gens, rels), meridians=meridians)
    out = out.with_torus(replace(t, meridian=name))
    return out.logged({"op": "meridian", "torus": torus_key, "meridian": name, "word": str(word)})


def fiber_sum(a: ManifoldState, b: ManifoldState, glue: GluingSpec,
              meridian: MeridianChoice = STANDARD_MERIDIAN) -> ManifoldState:
    """Sum ``a`` and ``b`` along ``glue.left`` (in ``a``) and ``glue.right`` (in ``b``).

    ``meridian`` is the word assigned to the left meridian: the commutator of
    the dual curves (``"standard"``), the reversed commutator
    (``"alternative"``), an explicit word, or ``None`` to leave it free.
    """
    if a is b or set(a.block_ids) & set(b.block_ids):
        raise SelfSum("fiber sum needs two disjoint manifolds")
    if set(a.presentation.generators) & set(b.presentation.generators):
        raise SelfSum("the two summands share generator symbols")
    lt, rt = a.torus(glue.left), b.torus(glue.right)
    for t in (lt, rt):
        if t.status != AVAILABLE:
            raise TorusNotAvailable(f"torus {t.key} is {t.status}")
        if t.square != 0:
            raise ManifoldError(f"torus {t.key} has nonzero square")

    mu_l = lt.meridian or lt.meridian_name
    mu_r = rt.meridian or rt.meridian_name
    gens = list(a.presentation.generators) + list(b.presentation.generators)
    for m in (mu_l, mu_r):
        if m not in gens:
            gens.append(m)
    lblock, rblock = a.block(lt.block), b.block(rt.block)
    gluing = []
    for i, j in glue.identification:
        gluing.append(pushoff_word(lblock, lt.curves[i]) * pushoff_word(rblock, rt.curves[j]).inverse())
    gluing.append(gen(mu_l) * gen(mu_r))

    meridians = list(a.meridians) + list(b.meridians)
    for m in (mu_l, mu_r):
        if m not in dict(meridians):
            meridians.append((m, None))

    merged = ManifoldState(
        blocks=a.blocks + b.blocks,
        presentation=a.presentation,  # replaced below
        euler=a.euler + b.euler,
        signature=a.signature + b.signature,
        tori=a.tori + b.tori,
        provenance=a.provenance + b.provenance,
        meridians=tuple(meridians),
        completed=a.completed | b.completed,
    )
    merged = merged.with_presentation(
        gens, a.presentation.relators + b.presentation.relators + tuple(gluing))
    merged = merged.with_torus(lt.with_status(CONSUMED, mu_l))
    merged = merged.with_torus(rt.with_status(CONSUMED, mu_r))
    merged = merged.logged({"op": "fiber_sum", "left": glue.left, "right": glue.right,
                            "identification": [list(p) for p in glue.identification],
                            "meridians": [mu_l, mu_r]})
    word = resolve_meridian(meridian, lt)
    if word is not None:
        merged = assign_meridian_word(merged, glue.left, word)
    return merged
