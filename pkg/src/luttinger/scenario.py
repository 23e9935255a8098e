"""Scenario files: a plain-text recipe for a custom construction.

One directive per line, ``#`` starts a comment::

    params l=1 n=1 k=1
    budget 1000000
    mode schema
    block S 1
    block Z 1
    sum f''_{1,1} x g''_{1,2} = a''_{1,1} x d'_{1,2} meridian=standard
    surgery (f'_{1,1} x f'_{1,2}, f'_{1,2}, +1)
    meridian f''_{1,1} x g'_{1,2} = g_{1,1} f_{1,2}^-1 g_{1,1}^-1 f_{1,2}
    surgery (f''_{1,1} x g'_{1,2}, g'_{1,2}, +1) derived

Block kinds are ``S`` (symmetric square of a genus-3 surface), ``Z``
(product of two genus-2 surfaces) and ``Z{g}x{h}`` for other surface products.
Operations run in file order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from .blocks import SIGMA2_SQUARED, SYM2, SurfaceProduct, instantiate_block
from .fibersum import MERIDIAN_POLICIES, STANDARD_MERIDIAN, GluingSpec, assign_meridian_word, fiber_sum
from .fpgroup.cosets import DEFAULT_BUDGET
from .manifold import ManifoldError, ManifoldState
from .surgery import DERIVED, SCHEMA, SurgerySpec, apply_surgery
from .words import Word, WordSyntaxError

GOLDEN_DIR = Path(__file__).parent / "data" / "scenarios"


class ScenarioError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class SumOp:
    glue: GluingSpec
    meridian: Union[str, Word] = STANDARD_MERIDIAN

    def __str__(self) -> str:
        return f"sum {self.glue.left} = {self.glue.right} meridian={self.meridian}"


@dataclass(frozen=True)
class SurgeryOp:
    spec: SurgerySpec
    mode: Optional[str] = None  # None: the scenario's default mode

    def __str__(self) -> str:
        tail = f" {self.mode}" if self.mode else ""
        return f"surgery {self.spec}{tail}"


@dataclass(frozen=True)
class MeridianOp:
    torus: str
    word: Word

    def __str__(self) -> str:
        return f"meridian {self.torus} = {self.word}"


Operation = Union[SumOp, SurgeryOp, MeridianOp]


@dataclass
class Scenario:
    blocks: list = field(default_factory=list)  # (kind tag, index)
    operations: list = field(default_factory=list)
    budget: int = DEFAULT_BUDGET
    mode: str = SCHEMA
    params: dict = field(default_factory=dict)

    @property
    def sums(self) -> list[SumOp]:
        return [op for op in self.operations if isinstance(op, SumOp)]

    @property
    def surgeries(self) -> list[SurgeryOp]:
        return [op for op in self.operations if isinstance(op, SurgeryOp)]

    @property
    def meridian_assignments(self) -> list[MeridianOp]:
        return [op for op in self.operations if isinstance(op, MeridianOp)]

    def __str__(self) -> str:
        lines = []
        if self.params:
            lines.append("params " + " ".join(f"{k}={v}" for k, v in self.params.items()))
        lines.append(f"budget {self.budget}")
        lines.append(f"mode {self.mode}")
        lines += [f"block {kind} {index}" for kind, index in self.blocks]
        lines += [str(op) for op in self.operations]
        return "\n".join(lines) + "\n"


_KIND_RE = re.compile(r"^(S|Z)(?:(\d+)x(\d+))?$")


def block_kind(tag: str):
    m = _KIND_RE.match(tag)
    if not m:
        raise ScenarioError(f"unknown block kind {tag!r}")
    if m.group(1) == "S":
        if m.group(2):
            raise ScenarioError("kind S takes no genera")
        return SYM2
    if m.group(2):
        return SurfaceProduct(int(m.group(2)), int(m.group(3)))
    return SIGMA2_SQUARED


def _parse_int(text: str, lineno: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ScenarioError(f"expected an integer, got {text!r}", lineno) from None


def parse_scenario(text: str) -> Scenario:
    sc = Scenario()
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if head == "params":
                for item in rest.split():
                    key, eq, value = item.partition("=")
                    if not eq:
                        raise ScenarioError(f"bad parameter {item!r}", lineno)
                    sc.params[key] = _parse_int(value, lineno)
            elif head == "budget":
                sc.budget = _parse_int(rest, lineno)
                if sc.budget < 1:
                    raise ScenarioError("budget must be positive", lineno)
            elif head == "mode":
                if rest not in (SCHEMA, DERIVED):
                    raise ScenarioError(f"unknown mode {rest!r}", lineno)
                sc.mode = rest
            elif head == "block":
                parts = rest.split()
                if len(parts) != 2:
                    raise ScenarioError("expected: block <kind> <index>", lineno)
                block_kind(parts[0])
                entry = (parts[0], _parse_int(parts[1], lineno))
                if (entry[0][0], entry[1]) in seen:
                    raise ScenarioError(f"block {entry[0]} {entry[1]} declared twice", lineno)
                seen.add((entry[0][0], entry[1]))
                sc.blocks.append(entry)
            elif head == "sum":
                body, policy = rest, STANDARD_MERIDIAN
                m = re.search(r"\s+meridian=(.*)$", rest)
                if m:
                    body, policy = rest[:m.start()], m.group(1).strip()
                    if policy not in MERIDIAN_POLICIES:
                        policy = Word.parse(policy)
                left, eq, right = body.partition(" = ")
                if not eq:
                    raise ScenarioError("expected: sum <torus> = <torus>", lineno)
                sc.operations.append(SumOp(GluingSpec(left.strip(), right.strip()), policy))
            elif head == "surgery":
                mode = None
                close = rest.rfind(")")
                tail = rest[close + 1:].strip()
                if tail:
                    if tail not in (SCHEMA, DERIVED):
                        raise ScenarioError(f"unknown surgery mode {tail!r}", lineno)
                    mode = tail
                sc.operations.append(SurgeryOp(SurgerySpec.parse(rest[:close + 1]), mode))
            elif head == "meridian":
                torus, eq, word = rest.partition(" = ")
                if not eq:
                    raise ScenarioError("expected: meridian <torus> = <word>", lineno)
                sc.operations.append(MeridianOp(torus.strip(), Word.parse(word)))
            else:
                raise ScenarioError(f"unknown directive {head!r}", lineno)
        except ScenarioError as exc:
            if exc.line is None:
                raise ScenarioError(str(exc), lineno) from None
            raise
        except (ManifoldError, WordSyntaxError) as exc:
            raise ScenarioError(str(exc), lineno) from None
    return sc


def load_scenario(path) -> Scenario:
    return parse_scenario(Path(path).read_text(encoding="utf-8"))


def _owner(components: list[ManifoldState], torus: str) -> int:
    for i, c in enumerate(components):
        if any(t.key == torus for t in c.tori):
            return i
    raise ScenarioError(f"no declared block has torus {torus!r}")


def build_scenario(sc: Scenario) -> ManifoldState:
    """Execute the scenario; all blocks must end up in one connected manifold."""
    if not sc.blocks:
        raise ScenarioError("scenario declares no blocks")
    components = [ManifoldState.from_block(instantiate_block(block_kind(kind), index))
                  for kind, index in sc.blocks]
    for op in sc.operations:
        try:
            if isinstance(op, SumOp):
                i, j = _owner(components, op.glue.left), _owner(components, op.glue.right)
                if i == j:
                    raise ScenarioError(f"{op}: both tori lie in the same manifold")
                merged = fiber_sum(components[i], components[j], op.glue, op.meridian)
                components = [c for k, c in enumerate(components) if k not in (i, j)]
                components.insert(min(i, j), merged)
            elif isinstance(op, SurgeryOp):
                i = _owner(components, op.spec.torus)
                components[i] = apply_surgery(components[i], op.spec, op.mode or sc.mode)
            else:
                i = _owner(components, op.torus)
                components[i] = assign_meridian_word(components[i], op.torus, op.word)
        except ManifoldError as exc:
            raise ScenarioError(f"{op}: {exc}") from None
    if len(components) != 1:
        raise ScenarioError(f"scenario leaves {len(components)} disconnected pieces")
    return components[0]


def scenario_for(l: int, n: int, k: int, mode: str = SCHEMA) -> Scenario:
    """The scenario that reproduces ``build_tilde_Y(l, n, k, mode)``."""
    from .pipeline import _sym_torus, _z_torus, final_spec, final_torus, luttinger_specs

    sc = Scenario(budget=DEFAULT_BUDGET, mode=SCHEMA, params={"l": l, "n": n, "k": k})
    sc.blocks = [("S", s) for s in range(1, l + 1)] + [("Z", i) for i in range(1, n + 1)]
    for s in range(2, l + 1):
        sc.operations.append(SumOp(GluingSpec(_sym_torus(s - 1, "''"), _sym_torus(s, "'"))))
    for i in range(2, n + 1):
        sc.operations.append(SumOp(GluingSpec(_z_torus(i - 1, "''"), _z_torus(i, "'"))))
    if n:
        sc.operations.append(SumOp(GluingSpec(_sym_torus(l, "''"), _z_torus(1, "'"))))
    sc.operations += [SurgeryOp(spec) for spec in luttinger_specs(l, n)]
    if mode == DERIVED:
        word = next(t for t in instantiate_block(SYM2, 1).tori if t.key == final_torus()).meridian_word()
        sc.operations.append(MeridianOp(final_torus(), word))
        sc.operations.append(SurgeryOp(final_spec(k), DERIVED))
    else:
        sc.operations.append(SurgeryOp(final_spec(k)))
    return sc
