"""Torus surgeries ``(T, gamma, p/q)``.

Schema mode installs the post-surgery relation recorded in the tables below;
derived mode adjoins ``mu^p * gamma'^q`` for a torus whose meridian word has
been assigned.  Neither changes ``e`` or ``sigma``.

Once every Luttinger torus of a block has been surgered, the block's base
commutators that do not survive (those whose dual pair met a surgered or
summed torus) are dropped, leaving exactly the completed relation block.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from fractions import Fraction

from .blocks import (AVAILABLE, LUTTINGER_ROLE, SURGERED, CurveLabel, gname,
                     pushoff_word, split_name, torus_key)
from .manifold import ManifoldError, ManifoldState, TorusNotAvailable
from .words import Word, commutator, gen, split_top_level

SCHEMA, DERIVED = "schema", "derived"


class SurgeryError(ManifoldError):
    pass


class NoSchemaForSpec(SurgeryError):
    pass


class MissingMeridianWord(SurgeryError):
    pass


# (first curve, second curve, gamma, coefficient) -> (x, y, z): relation [x, y] = z
SIGMA2_SCHEMAS = {
    ("a'1", "c'1", "a'1", -1): ("b1^-1", "d1^-1", "a1"),
    ("b'1", "c''1", "b'1", -1): ("a1^-1", "d1", "b1"),
    ("a'2", "c'2", "a'2", -1): ("b2^-1", "d2^-1", "a2"),
    ("b'2", "c''2", "b'2", -1): ("a2^-1", "d2", "b2"),
    ("a'2", "c'1", "c'1", 1): ("d1^-1", "b2^-1", "c1"),
    ("a''2", "d'1", "d'1", 1): ("c1^-1", "b2", "d1"),
    ("a'1", "c'2", "c'2", 1): ("d2^-1", "b1^-1", "c2"),
}
SYM2_SCHEMAS = {
    ("f'1", "f'2", "f'2", 1): ("g1^-1", "g2^-1", "f2"),
    ("f'1", "f'3", "f'1", -1): ("g1^-1", "g3^-1", "f1"),
    ("g'1", "f''3", "g'1", -1): ("f1^-1", "g3", "g1"),
    ("f'2", "f'3", "f'3", 1): ("g2^-1", "g3^-1", "f3"),
    ("f''2", "g'3", "g'3", 1): ("g2", "f3^-1", "g3"),
}
# Integral k-surgeries: relation z = [x, y]^k for any nonzero integer k.
POWER_SCHEMAS = {
    ("f''1", "g'2", "g'2"): ("g1", "f2^-1", "g2"),
    ("a''1", "d'2", "d'2"): ("c2^-1", "b1", "d2"),
}
SCHEMAS = {**SIGMA2_SCHEMAS, **SYM2_SCHEMAS}


@dataclass(frozen=True)
class SurgerySpec:
    torus: str
    gamma: CurveLabel
    coefficient: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        if self.coefficient == 0:
            raise SurgeryError("surgery coefficient must be nonzero")
        c1, c2 = (CurveLabel.parse(s) for s in self.torus.split(" x "))
        if self.gamma not in (c1, c2):
            raise SurgeryError(f"{self.gamma} is not a curve of torus {self.torus}")

    @property
    def curves(self) -> tuple[CurveLabel, CurveLabel]:
        c1, c2 = (CurveLabel.parse(s) for s in self.torus.split(" x "))
        return c1, c2

    def __str__(self) -> str:
        c = self.coefficient
        sign = "+" if c > 0 else "-"
        num = f"{abs(c.numerator)}" if c.denominator == 1 else f"{abs(c.numerator)}/{c.denominator}"
        return f"({self.torus}, {self.gamma}, {sign}{num})"

    @classmethod
    def parse(cls, text: str) -> "SurgerySpec":
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise SurgeryError(f"surgery tuple must be parenthesised: {text!r}")
        parts = [p.strip() for p in split_top_level(body[1:-1], ",")]
        if len(parts) != 3:
            raise SurgeryError(f"expected (torus, curve, coefficient): {text!r}")
        torus_txt, gamma_txt, coeff_txt = parts
        curves = re.split(r"\s+(?:x|\\times|×)\s+", torus_txt)
        if len(curves) != 2:
            raise SurgeryError(f"bad torus {torus_txt!r}")
        c1, c2 = (CurveLabel.parse(c) for c in curves)
        try:
            coeff = Fraction(coeff_txt.replace(" ", ""))
        except (ValueError, ZeroDivisionError):
            raise SurgeryError(f"bad coefficient {coeff_txt!r}") from None
        return cls(torus_key(c1, c2), CurveLabel.parse(gamma_txt), coeff)


def _expand(local: str, index: int) -> Word:
    name, _, exp = local.partition("^")
    w = gen(gname(name[0], index, int(name[1:])))
    return w.inverse() if exp == "-1" else w


def schema_lookup(spec: SurgerySpec) -> Word:
    """Relator installed by ``spec`` in schema mode.

    Luttinger entries give ``[x, y] * z^-1``; integral k-surgeries give
    ``z * ([x, y]^k)^-1``.
    """
    c1, c2 = spec.curves
    _, index, _ = split_name(c1.base)
    key = (c1.local(), c2.local(), spec.gamma.local())
    c = spec.coefficient
    if c.denominator == 1 and key + (int(c),) in SCHEMAS:
        x, y, z = SCHEMAS[key + (int(c),)]
        return commutator(_expand(x, index), _expand(y, index)) * _expand(z, index).inverse()
    if c.denominator == 1 and key in POWER_SCHEMAS:
        x, y, z = POWER_SCHEMAS[key]
        loop = commutator(_expand(x, index), _expand(y, index))
        return _expand(z, index) * (loop ** int(c)).inverse()
    raise NoSchemaForSpec(f"no relation on record for {spec}")


def derived_relator(state: ManifoldState, spec: SurgerySpec) -> Word:
    t = state.torus(spec.torus)
    name = t.meridian
    if name is None or state.meridian_word(name) is None:
        raise MissingMeridianWord(f"torus {spec.torus} has no assigned meridian word")
    p, q = spec.coefficient.numerator, spec.coefficient.denominator
    push = pushoff_word(state.block(t.block), spec.gamma)
    return gen(name) ** p * push ** q


def _complete_block(state: ManifoldState, block_id: str) -> ManifoldState:
    block = state.block(block_id)
    drop = set(block.base_relators) - set(block.retained)
    rels = [r for r in state.presentation.relators if r not in drop]
    out = state.with_presentation(state.presentation.generators, rels)
    out = replace(out, completed=state.completed | {block_id})
    return out.logged({"op": "complete_block", "block": block_id, "dropped": len(drop)})


def apply_surgery(state: ManifoldState, spec: SurgerySpec, mode: str = SCHEMA) -> ManifoldState:
    t = state.torus(spec.torus)
    if t.status != AVAILABLE:
        raise TorusNotAvailable(f"torus {t.key} is {t.status}")
    if mode == SCHEMA:
        relator = schema_lookup(spec)
    elif mode == DERIVED:
        relator = derived_relator(state, spec)
    else:
        raise SurgeryError(f"unknown surgery mode {mode!r}")
    out = state.with_presentation(state.presentation.generators,
                                  state.presentation.relators + (relator,))
    out = out.with_torus(t.with_status(SURGERED))
    out = out.logged({"op": "surgery", "spec": str(spec), "mode": mode, "relator": str(relator)})
    block_tori = [x for x in out.tori if x.block == t.block and x.role == LUTTINGER_ROLE]
    if (t.role == LUTTINGER_ROLE and t.block not in out.completed
            and all(x.status == SURGERED for x in block_tori)):
        out = _complete_block(out, t.block)
    return out
