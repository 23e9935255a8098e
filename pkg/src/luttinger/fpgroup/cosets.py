"""Todd-Coxeter enumeration of the cosets of the trivial subgroup.

Two strategies share one table implementation:

* ``hlt``: Haselgrove-Leech-Trotter, relators scanned coset by coset with
  lookahead (a non-defining pass over the whole table) whenever the live
  coset budget is hit.
* ``felsch``: definitions fill the first hole in the table and every
  definition is chased through all relator rotations starting with it.

Generator ``i`` occupies column ``2i`` and its inverse column ``2i + 1`` so a
column's inverse is ``col ^ 1``.  Cosets are numbered from 0; ``-1`` marks an
undefined entry.  Coincidence handling follows the usual queue-based merge
with union-find representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .presentation import Presentation

DEFAULT_BUDGET = 10**6

CERTIFIED_TRIVIAL = "CertifiedTrivial"
CERTIFIED_ORDER = "CertifiedOrder"
EXHAUSTED = "Exhausted"
ABELIAN_OBSTRUCTION = "AbelianObstruction"


@dataclass(frozen=True)
class TrivialityVerdict:
    status: str
    order: Optional[int]
    certificate: str
    budget_used: int  # cosets defined over the whole run
    budget: int
    max_live: int = 0
    strategy: str = "hlt"

    @property
    def closed(self) -> bool:
        return self.status in (CERTIFIED_TRIVIAL, CERTIFIED_ORDER)

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "order": self.order,
            "certificate": self.certificate,
            "budget_used": self.budget_used,
            "budget": self.budget,
            "max_live": self.max_live,
            "strategy": self.strategy,
        }


class _TableFull(Exception):
    pass


class CosetTable:
    def __init__(self, ngens: int, relators: list[list[int]], max_cosets: int):
        self.ncols = 2 * ngens
        self.relators = relators
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent: list[int] = [0]
        self.live = 1
        self.defined = 1
        self.max_live = 1
        self.deductions: Optional[list[tuple[int, int]]] = None

    # bookkeeping

    def rep(self, c: int) -> int:
        parent = self.parent
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> int:
        if self.live >= self.max_cosets:
            raise _TableFull
        d = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(d)
        self.table[c][x] = d
        self.table[d][x ^ 1] = c
        self.live += 1
        self.defined += 1
        if self.live > self.max_live:
            self.max_live = self.live
        if self.deductions is not None:
            self.deductions.append((c, x))
        return d

    def _merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        queue.append(b)
        self.live -= 1

    def coincidence(self, a: int, b: int) -> None:
        table = self.table
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = table[g]
            for x in range(self.ncols):
                d = row[x]
                if d < 0:
                    continue
                xi = x ^ 1
                table[d][xi] = -1
                m, n = self.rep(g), self.rep(d)
                if table[m][x] >= 0:
                    self._merge(n, table[m][x], queue)
                elif table[n][xi] >= 0:
                    self._merge(m, table[n][xi], queue)
                else:
                    table[m][x] = n
                    table[n][xi] = m
                    if self.deductions is not None:
                        self.deductions.append((m, x))

    # scanning

    def scan(self, c: int, w: list[int], fill: bool) -> None:
        """Trace ``w`` from ``c`` both ways; deduce, merge, or (if ``fill``) define."""
        table = self.table
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j:
                nxt = table[f][w[i]]
                if nxt < 0:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                nxt = table[b][w[j] ^ 1]
                if nxt < 0:
                    break
                b = nxt
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                if self.deductions is not None:
                    self.deductions.append((f, w[i]))
                return
            if not fill:
                return
            self.define(f, w[i])

    def lookahead(self) -> None:
        for c in range(len(self.table)):
            if not self.is_live(c):
                continue
            for w in self.relators:
                self.scan(c, w, fill=False)
                if not self.is_live(c):
                    break

    def compact(self) -> dict[int, int]:
        """Renumber live cosets consecutively, keeping their order."""
        mapping = {}
        for c in range(len(self.table)):
            if self.parent[c] == c:
                mapping[c] = len(mapping)
        new_table = []
        for c, nc in mapping.items():
            row = self.table[c]
            new_table.append([mapping[self.rep(d)] if d >= 0 else -1 for d in row])
        self.table = new_table
        self.parent = list(range(len(new_table)))
        return mapping

    def first_hole(self, start: int) -> Optional[tuple[int, int]]:
        for c in range(start, len(self.table)):
            if self.parent[c] != c:
                continue
            row = self.table[c]
            for x in range(self.ncols):
                if row[x] < 0:
                    return c, x
        return None

    def validate(self) -> bool:
        """Complete table on which every relator closes at every live coset."""
        table = self.table
        for c in range(len(table)):
            if self.parent[c] != c:
                continue
            row = table[c]
            for d in row:
                if d < 0 or self.parent[d] != d:
                    return False
            for w in self.relators:
                f = c
                for x in w:
                    f = table[f][x]
                if f != c:
                    return False
        return True


def encode_relators(p: Presentation) -> list[list[int]]:
    index = {g: i for i, g in enumerate(p.generators)}
    out = []
    for r in p.relators:
        r = r.cyclically_reduced()
        if r.is_identity():
            continue
        out.append([2 * index[n] + (0 if s == 1 else 1) for n, s in r])
    out.sort(key=len)
    return out


def _run_hlt(t: CosetTable) -> bool:
    c = 0
    while True:
        while c < len(t.table):
            if not t.is_live(c):
                c += 1
                continue
            try:
                for w in t.relators:
                    t.scan(c, w, fill=True)
                    if not t.is_live(c):
                        break
                if t.is_live(c):
                    row = t.table[c]
                    for x in range(t.ncols):
                        if row[x] < 0:
                            t.define(c, x)
            except _TableFull:
                before = t.live
                t.lookahead()
                if t.live >= before:
                    return False
                if len(t.table) > 2 * t.live + 1024:
                    c = _compact_position(t, c)
                continue
            c += 1
            if len(t.table) > 4 * t.live + 65536:
                c = _compact_position(t, c)
        hole = t.first_hole(0)
        if hole is not None:
            c = hole[0]
            continue
        if t.validate():
            return True
        t.lookahead()
        c = 0


def _compact_position(t: CosetTable, c: int) -> int:
    mapping = t.compact()
    for old in sorted(mapping):
        if old >= c:
            return mapping[old]
    return len(t.table)


def _run_felsch(t: CosetTable) -> bool:
    starts: list[list[list[int]]] = [[] for _ in range(t.ncols)]
    seen = set()
    for w in t.relators:
        inv = [x ^ 1 for x in reversed(w)]
        for base in (w, inv):
            for i in range(len(base)):
                rot = tuple(base[i:] + base[:i])
                if rot not in seen:
                    seen.add(rot)
                    starts[rot[0]].append(list(rot))
    t.deductions = []
    pos = 0
    while True:
        while t.deductions:
            if len(t.deductions) > 50000:
                t.deductions.clear()
                t.lookahead()
                t.deductions.clear()
                break
            a, x = t.deductions.pop()
            if not t.is_live(a):
                continue
            for w in starts[x]:
                t.scan(a, w, fill=False)
                if not t.is_live(a):
                    break
            b = t.table[a][x] if t.is_live(a) else -1
            if b >= 0 and t.is_live(b):
                for w in starts[x ^ 1]:
                    t.scan(b, w, fill=False)
                    if not t.is_live(b):
                        break
        hole = t.first_hole(pos)
        if hole is None:
            hole = t.first_hole(0)
        if hole is None:
            if t.validate():
                return True
            t.lookahead()
            pos = 0
            continue
        pos = hole[0]
        try:
            t.define(*hole)
        except _TableFull:
            before = t.live
            t.deductions.clear()
            t.lookahead()
            t.deductions.clear()
            if t.live >= before:
                return False
            if len(t.table) > 2 * t.live + 1024:
                t.compact()
                pos = 0


def coset_enumerate(p: Presentation, max_cosets: int = DEFAULT_BUDGET,
                    strategy: str = "hlt") -> TrivialityVerdict:
    """Enumerate cosets of the trivial subgroup; the closed table size is |G|.

    Hitting ``max_cosets`` live cosets without room to recover yields an
    ``Exhausted`` verdict, never an exception.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    rels = encode_relators(p)
    t = CosetTable(len(p.generators), rels, max_cosets)
    if strategy == "hlt":
        ok = _run_hlt(t)
    elif strategy == "felsch":
        ok = _run_felsch(t)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if not ok:
        return TrivialityVerdict(
            EXHAUSTED, None,
            f"live cosets reached budget {max_cosets} with no lookahead progress "
            f"({t.defined} cosets defined)",
            t.defined, max_cosets, t.max_live, strategy)
    order = t.live
    cert = (f"closed coset table with {order} coset(s); {t.defined} defined, "
            f"peak {t.max_live} live; all {len(rels)} relators close at every coset")
    status = CERTIFIED_TRIVIAL if order == 1 else CERTIFIED_ORDER
    return TrivialityVerdict(status, order, cert, t.defined, max_cosets, t.max_live, strategy)
