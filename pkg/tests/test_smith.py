import random

import pytest
from hypothesis import given, settings, strategies as st

from luttinger.fpgroup.smith import matmul, smith_normal_form
from oracles import invariant_factors

small = st.integers(-5, 5)


def matrices(max_dim=5):
    return st.integers(1, max_dim).flatmap(lambda r: st.integers(1, max_dim).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@pytest.mark.parametrize("m,diag", [
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
    ([[0, 0], [0, 0]], []),
    ([[6]], [6]),
    ([[2, 0], [0, 3]], [1, 6]),
])
def test_known_forms(m, diag):
    assert [d for d in smith_normal_form(m).diagonal if d] == diag


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_certificate_and_oracle(m):
    sf = smith_normal_form(m)
    assert matmul(matmul(sf.U, m), sf.V) == [list(r) for r in sf.D]
    nonzero = [d for d in sf.diagonal if d]
    assert nonzero == invariant_factors(m)
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0


def test_against_sympy():
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf
    rng = random.Random(7)
    for _ in range(20):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        m = [[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)]
        ours = [d for d in smith_normal_form(m).diagonal if d]
        s = sympy_snf(sympy.Matrix(m), domain=sympy.ZZ)
        theirs = [abs(int(s[i, i])) for i in range(min(r, c)) if s[i, i] != 0]
        assert ours == sorted(theirs, key=lambda x: (x != 0, x))
