import pytest

from luttinger.fpgroup.cosets import (CERTIFIED_ORDER, CERTIFIED_TRIVIAL, EXHAUSTED,
                                      coset_enumerate)
from luttinger.fpgroup.presentation import Presentation
from oracles import cyclic, dihedral

GROUPS = [
    ("gens: a ; rels: a", 1),
    ("gens: a ; rels: a^3", 3),
    ("gens: r s ; rels: r^7 , s^2 , s r s r", 14),
    ("gens: a b ; rels: a^2 , b^3 , a b a b a b a b a b", 60),
    ("gens: a b ; rels: a^3 , b^3 , a b a b", 12),
    ("gens: a b ; rels: a^2 , b^2 , a b a b a b", 6),
    ("gens: a b ; rels: a b a^-1 b^-2 , b a b^-1 a^-2", 1),
    ("gens: a b ; rels: a^4 , b^2 , a b a b , a^2", 4),
]


@pytest.mark.parametrize("strategy", ["hlt", "felsch"])
@pytest.mark.parametrize("text,order", GROUPS)
def test_known_orders(text, order, strategy):
    v = coset_enumerate(Presentation.parse(text), 10_000, strategy)
    assert v.closed and v.order == order
    assert v.status == (CERTIFIED_TRIVIAL if order == 1 else CERTIFIED_ORDER)
    assert v.max_live <= v.budget


@pytest.mark.parametrize("n", [1, 2, 5, 12, 30, 60])
def test_cyclic(n):
    assert coset_enumerate(cyclic(n), 1000).order == n


@pytest.mark.parametrize("n", [2, 3, 10, 30])
def test_dihedral(n):
    assert coset_enumerate(dihedral(n), 1000).order == 2 * n


@pytest.mark.parametrize("strategy", ["hlt", "felsch"])
def test_infinite_group_exhausts(strategy):
    triangle = Presentation.parse("gens: a b ; rels: a^2 , b^3 , a b a b a b a b a b a b a b")
    v = coset_enumerate(triangle, 2000, strategy)
    assert v.status == EXHAUSTED and v.order is None
    assert v.max_live <= 2000


def test_free_group_exhausts():
    v = coset_enumerate(Presentation.parse("gens: a b ; rels: "), 500)
    assert v.status == EXHAUSTED


def test_no_generators_is_trivial():
    assert coset_enumerate(Presentation((), ()), 10).status == CERTIFIED_TRIVIAL


def test_verdict_dict_is_deterministic():
    p = dihedral(9)
    assert coset_enumerate(p, 1000).as_dict() == coset_enumerate(p, 1000).as_dict()


def test_unknown_strategy():
    with pytest.raises(ValueError):
        coset_enumerate(cyclic(3), 10, "bogus")
