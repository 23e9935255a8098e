"""Smith normal form over the integers.

Python integers are unbounded, so entry growth cannot overflow; the only cost
of blow-up is time.  Pivots are always chosen with the smallest absolute
value, which keeps entries small on the sparse matrices built here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Matrix = list[list[int]]


class SmithCertificationError(AssertionError):
    pass


@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple[int, ...]   # min(rows, cols) entries, divisibility chain
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    D: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append([sum(x * b[k][j] for k, x in nz) for j in range(cols)] if inner else [0] * cols)
    return out


def _smallest_nonzero(A: Matrix, t: int, rows: range, cols: range):
    best = None
    for i in rows:
        Ai = A[i]
        for j in cols:
            v = Ai[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return best
    return best


def _swap_rows(A: Matrix, i: int, k: int) -> None:
    A[i], A[k] = A[k], A[i]


def _swap_cols(A: Matrix, j: int, k: int) -> None:
    for row in A:
        row[j], row[k] = row[k], row[j]


def _add_row(A: Matrix, dst: int, src: int, q: int) -> None:
    """row[dst] += q * row[src]"""
    if q:
        rd, rs = A[dst], A[src]
        for j, x in enumerate(rs):
            if x:
                rd[j] += q * x


def _add_col(A: Matrix, dst: int, src: int, q: int) -> None:
    if q:
        for row in A:
            x = row[src]
            if x:
                row[dst] += q * x


def smith_normal_form(m: Sequence[Sequence[int]], certify: bool = True) -> SmithForm:
    """Return ``U, V, D`` with ``U m V = D`` diagonal and ``d_1 | d_2 | ...``.

    ``U`` and ``V`` are products of elementary integer operations, hence
    unimodular.  With ``certify`` the identity ``U m V = D`` is re-checked.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    A = [[int(x) for x in row] for row in m]
    if any(len(row) != cols for row in A):
        raise ValueError("ragged matrix")
    U = identity(rows)
    # V is tracked transposed so column operations become row operations.
    Vt = identity(cols)

    t = 0
    while t < min(rows, cols):
        piv = _smallest_nonzero(A, t, range(t, rows), range(t, cols))
        if piv is None:
            break
        _, i, j = piv
        _swap_rows(A, t, i)
        _swap_rows(U, t, i)
        _swap_cols(A, t, j)
        _swap_rows(Vt, t, j)
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, rows):
                if A[i][t]:
                    q = -(A[i][t] // p)
                    _add_row(A, i, t, q)
                    _add_row(U, i, t, q)
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if A[t][j]:
                    q = -(A[t][j] // p)
                    _add_col(A, j, t, q)
                    _add_row(Vt, j, t, q)
                    if A[t][j]:
                        clean = False
            if not clean:
                best = None
                for i in range(t + 1, rows):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, None)
                for j in range(t + 1, cols):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), None, j)
                _, i, j = best
                if i is not None:
                    _swap_rows(A, t, i)
                    _swap_rows(U, t, i)
                else:
                    _swap_cols(A, t, j)
                    _swap_rows(Vt, t, j)
                continue
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            _add_row(A, t, bad, 1)
            _add_row(U, t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    V = [list(col) for col in zip(*Vt)] if cols else []
    diagonal = tuple(A[i][i] for i in range(min(rows, cols)))
    if certify:
        got = matmul(matmul(U, m), V) if rows and cols else A
        if got != A:
            raise SmithCertificationError("U*M*V != D")
        for a, b in zip(diagonal, diagonal[1:]):
            if (a == 0 and b != 0) or (a and b % a):
                raise SmithCertificationError(f"divisibility chain broken at {a}, {b}")
    freeze = lambda M: tuple(tuple(r) for r in M)
    return SmithForm(diagonal, freeze(U), freeze(V), freeze(A))
