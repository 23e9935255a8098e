"""Building blocks: products of surfaces and the symmetric square of a genus-3 surface.

Generators of copy ``i`` of a surface product are ``a_{i,j}, b_{i,j}`` (first
factor) and ``c_{i,j}, d_{i,j}`` (second factor); copy ``s`` of the symmetric
square has ``f_{s,j}, g_{s,j}`` for ``j = 1, 2, 3``.  Every generator is
assumed already transported to the global basepoint.

Push-offs: ``x' ~ x`` and ``x'' ~ y x y^-1`` where ``y`` is the dual of ``x``
(``a <-> b``, ``c <-> d``, ``f <-> g``, same ``j``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from itertools import product
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Union

from .fpgroup.presentation import Presentation
from .words import GeneratorSymbol, Word, commutator, conjugate, gen

PLAIN, PRIME, DOUBLEPRIME = "plain", "prime", "doubleprime"
_PRIMES = {PLAIN: "", PRIME: "'", DOUBLEPRIME: "''"}

AVAILABLE, SURGERED, CONSUMED = "Available", "Surgered", "ConsumedByFiberSum"
LAGRANGIAN, SYMPLECTIC = "Lagrangian", "Symplectic"
LUTTINGER_ROLE, FIBERSUM_ROLE = "luttinger", "fibersum"

_DUAL_LETTER = {"a": "b", "b": "a", "c": "d", "d": "c", "f": "g", "g": "f"}
_NAME_RE = re.compile(r"^([a-z])_\{(\d+),(\d+)\}$")
_LABEL_RE = re.compile(r"^([a-z])('{0,2})_\{(\d+),(\d+)\}$")


class BlockError(ValueError):
    pass


class DuplicateBlock(BlockError):
    pass


class UnknownCurve(BlockError):
    pass


@dataclass(frozen=True)
class SurfaceProduct:
    g: int = 2
    h: int = 2

    def __post_init__(self):
        if self.g < 1 or self.h < 1:
            raise BlockError("surface genera must be >= 1")

    @property
    def tag(self) -> str:
        return "Z"

    def __str__(self) -> str:
        return f"Sigma_{self.g} x Sigma_{self.h}"


@dataclass(frozen=True)
class SymSquareGenus3:
    @property
    def tag(self) -> str:
        return "S"

    def __str__(self) -> str:
        return "Sym^2(Sigma_3)"


BlockKind = Union[SurfaceProduct, SymSquareGenus3]
SIGMA2_SQUARED = SurfaceProduct(2, 2)
SYM2 = SymSquareGenus3()


def gname(letter: str, index: int, j: int) -> str:
    return f"{letter}_{{{index},{j}}}"


def split_name(name: str) -> tuple[str, int, int]:
    m = _NAME_RE.match(name)
    if not m:
        raise UnknownCurve(f"not a block generator name: {name!r}")
    return m.group(1), int(m.group(2)), int(m.group(3))


def dual_name(name: str) -> str:
    letter, i, j = split_name(name)
    return gname(_DUAL_LETTER[letter], i, j)


@dataclass(frozen=True, order=True)
class CurveLabel:
    base: str
    variant: str = PLAIN

    def __str__(self) -> str:
        letter, i, j = split_name(self.base)
        return f"{letter}{_PRIMES[self.variant]}_{{{i},{j}}}"

    @classmethod
    def parse(cls, text: str) -> "CurveLabel":
        m = _LABEL_RE.match(text.strip())
        if not m:
            raise UnknownCurve(f"bad curve label {text!r}")
        letter, primes, i, j = m.groups()
        variant = {"": PLAIN, "'": PRIME, "''": DOUBLEPRIME}[primes]
        return cls(gname(letter, int(i), int(j)), variant)

    def local(self) -> str:
        """Index-free form used by schema tables, e.g. ``a''1``."""
        letter, _, j = split_name(self.base)
        return f"{letter}{_PRIMES[self.variant]}{j}"


def torus_key(c1: CurveLabel, c2: CurveLabel) -> str:
    return f"{c1} x {c2}"


@dataclass(frozen=True)
class TorusDescriptor:
    block: str
    curves: tuple[CurveLabel, CurveLabel]
    kind: str
    role: str
    meridian_name: str
    status: str = AVAILABLE
    square: int = 0
    meridian: Optional[str] = None  # set once the meridian symbol is a generator

    def __post_init__(self):
        if self.square != 0:
            raise BlockError("only square-zero tori are supported")
        if self.status not in (AVAILABLE, SURGERED, CONSUMED):
            raise BlockError(f"bad torus status {self.status!r}")

    @property
    def key(self) -> str:
        return torus_key(*self.curves)

    def with_status(self, status: str, meridian: Optional[str] = None) -> "TorusDescriptor":
        if self.status != AVAILABLE and status != self.status:
            raise BlockError(f"torus {self.key} is already {self.status}")
        return replace(self, status=status, meridian=meridian or self.meridian)

    def meridian_word(self, alternative: bool = False) -> Word:
        """Commutator of the dual curves: ``[x*, y*^-1]`` (or ``[y*, x*]``)."""
        x = gen(dual_name(self.curves[0].base))
        y = gen(dual_name(self.curves[1].base))
        if alternative:
            return commutator(y, x)
        return commutator(x, y.inverse())


@dataclass(frozen=True)
class BlockState:
    kind: BlockKind
    index: int
    generators: tuple[GeneratorSymbol, ...]
    base_relators: tuple[Word, ...]
    retained: tuple[Word, ...]
    euler: int
    signature: int
    curves: Mapping[CurveLabel, Word] = field(compare=False, repr=False)
    tori: tuple[TorusDescriptor, ...] = ()

    @property
    def block_id(self) -> str:
        return f"{self.kind.tag}{self.index}"

    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def presentation(self) -> Presentation:
        return Presentation(self.generator_names, self.base_relators)

    def name(self, local: str) -> str:
        """``'b2'`` -> ``'b_{i,2}'`` for this copy."""
        return gname(local[0], self.index, int(local[1:]))


def pushoff_word(block: BlockState, label: CurveLabel) -> Word:
    try:
        return block.curves[label]
    except KeyError:
        raise UnknownCurve(f"{label} is not registered in block {block.block_id}") from None


def _curve_registry(names: Iterable[str]) -> Mapping[CurveLabel, Word]:
    reg = {}
    for n in names:
        x, y = gen(n), gen(dual_name(n))
        reg[CurveLabel(n, PLAIN)] = x
        reg[CurveLabel(n, PRIME)] = x
        reg[CurveLabel(n, DOUBLEPRIME)] = conjugate(y, x)
    return MappingProxyType(reg)


def _tori(tag: str, index: int, luttinger: list[str], fibersum: list[str]) -> tuple[TorusDescriptor, ...]:
    out = []
    for k, spec in enumerate(luttinger + fibersum, start=1):
        c1, c2 = (CurveLabel.parse(s.format(i=index)) for s in spec.split(" x "))
        is_fs = k > len(luttinger)
        if is_fs:
            mname = f"mu{_PRIMES[c2.variant]}_{{{tag}{index}}}"
        else:
            mname = f"mu_{{{tag}{index}.{k}}}"
        out.append(TorusDescriptor(
            block=f"{tag}{index}", curves=(c1, c2),
            kind=SYMPLECTIC if is_fs else LAGRANGIAN,
            role=FIBERSUM_ROLE if is_fs else LUTTINGER_ROLE,
            meridian_name=mname))
    return tuple(out)


# Tori on which surgeries or fiber sums happen, in the order they are used.
SIGMA2_LUTTINGER_TORI = [
    "a'_{{{i},1}} x c'_{{{i},1}}", "b'_{{{i},1}} x c''_{{{i},1}}",
    "a'_{{{i},2}} x c'_{{{i},2}}", "b'_{{{i},2}} x c''_{{{i},2}}",
    "a'_{{{i},2}} x c'_{{{i},1}}", "a''_{{{i},2}} x d'_{{{i},1}}",
    "a'_{{{i},1}} x c'_{{{i},2}}",
]
SIGMA2_FIBERSUM_TORI = ["a''_{{{i},1}} x d'_{{{i},2}}", "a''_{{{i},1}} x d''_{{{i},2}}"]

SYM2_LUTTINGER_TORI = [
    "f'_{{{i},1}} x f'_{{{i},2}}", "f'_{{{i},1}} x f'_{{{i},3}}",
    "g'_{{{i},1}} x f''_{{{i},3}}", "f'_{{{i},2}} x f'_{{{i},3}}",
    "f''_{{{i},2}} x g'_{{{i},3}}",
]
SYM2_FIBERSUM_TORI = ["f''_{{{i},1}} x g'_{{{i},2}}", "f''_{{{i},1}} x g''_{{{i},2}}"]

# Base commutators that survive once all Luttinger surgeries of a copy are done.
SIGMA2_RETAINED = [("a1", "c1"), ("a1", "c2"), ("a1", "d2"), ("b1", "c1"),
                   ("a2", "c1"), ("a2", "c2"), ("a2", "d1"), ("b2", "c2")]
SYM2_RETAINED = [("f1", "g1"), ("f1", "f2"), ("f1", "g2"), ("f1", "f3"), ("g1", "f3"),
                 ("f2", "g2"), ("f2", "f3"), ("f2", "g3"), ("f3", "g3")]


def _surface_relator(letters: tuple[str, str], index: int, genus: int) -> Word:
    w = Word()
    for j in range(1, genus + 1):
        w = w * commutator(gen(gname(letters[0], index, j)), gen(gname(letters[1], index, j)))
    return w


def instantiate_block(kind: BlockKind, index: int, taken: Iterable[str] = ()) -> BlockState:
    """Fresh copy ``index`` of ``kind`` with its base presentation and tori."""
    if index < 1:
        raise BlockError("block index must be >= 1")
    block_id = f"{kind.tag}{index}"
    if block_id in set(taken):
        raise DuplicateBlock(f"block {block_id} already exists")

    if isinstance(kind, SurfaceProduct):
        first = [gname(l, index, j) for j in range(1, kind.g + 1) for l in "ab"]
        second = [gname(l, index, j) for j in range(1, kind.h + 1) for l in "cd"]
        names = first + second
        base = [_surface_relator(("a", "b"), index, kind.g),
                _surface_relator(("c", "d"), index, kind.h)]
        base += [commutator(gen(x), gen(y)) for x, y in product(first, second)]
        euler, signature = (2 - 2 * kind.g) * (2 - 2 * kind.h), 0
        if kind == SIGMA2_SQUARED:
            tori = _tori("Z", index, SIGMA2_LUTTINGER_TORI, SIGMA2_FIBERSUM_TORI)
            retained = base[:2] + [commutator(gen(gname(x[0], index, int(x[1]))),
                                              gen(gname(y[0], index, int(y[1]))))
                                   for x, y in SIGMA2_RETAINED]
        else:
            last = "{{{i}," + str(kind.h) + "}}"
            tori = _tori("Z", index, [], ["a''_{{{i},1}} x d'_" + last,
                                          "a''_{{{i},1}} x d''_" + last])
            retained = list(base)
    elif isinstance(kind, SymSquareGenus3):
        names = [gname(l, index, j) for j in (1, 2, 3) for l in "fg"]
        base = [commutator(gen(x), gen(y)) for k, x in enumerate(names) for y in names[k + 1:]]
        euler, signature = 6, -2
        tori = _tori("S", index, SYM2_LUTTINGER_TORI, SYM2_FIBERSUM_TORI)
        retained = [commutator(gen(gname(x[0], index, int(x[1]))),
                               gen(gname(y[0], index, int(y[1]))))
                    for x, y in SYM2_RETAINED]
    else:
        raise BlockError(f"unknown block kind {kind!r}")

    gens = tuple(GeneratorSymbol(block_id, n) for n in names)
    return BlockState(kind, index, gens, tuple(base), tuple(retained),
                      euler, signature, _curve_registry(names), tori)
