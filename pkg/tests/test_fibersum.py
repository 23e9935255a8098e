import random

import pytest
from hypothesis import given, settings, strategies as st

from luttinger.blocks import CONSUMED, FIBERSUM_ROLE, SIGMA2_SQUARED, SYM2, SurfaceProduct, instantiate_block
from luttinger.fibersum import (ForeignMeridianWord, GluingSpec, MeridianAlreadyAssigned, SelfSum,
                                assign_meridian_word, fiber_sum)
from luttinger.manifold import ManifoldError, ManifoldState, TorusNotAvailable, recompute_invariants
from luttinger.pipeline import classify
from luttinger.words import Word


def piece(kind, index):
    return ManifoldState.from_block(instantiate_block(kind, index))


def sym_sum(meridian="standard"):
    return fiber_sum(piece(SYM2, 1), piece(SYM2, 2),
                     GluingSpec("f''_{1,1} x g''_{1,2}", "f''_{2,1} x g'_{2,2}"), meridian)


def test_bookkeeping():
    s = sym_sum()
    assert len(s.presentation.generators) == 6 + 6 + 2
    assert len(s.presentation.relators) == 15 + 15 + 4
    assert (s.euler, s.signature) == (12, -4)
    assert s.torus("f''_{1,1} x g''_{1,2}").status == CONSUMED
    assert s.torus("f''_{2,1} x g'_{2,2}").status == CONSUMED


def test_gluing_relators():
    rels = set(sym_sum().presentation.relators)
    assert Word.parse("g_{1,1} f_{1,1} g_{1,1}^-1 g_{2,1} f_{2,1}^-1 g_{2,1}^-1") in rels
    assert Word.parse("f_{1,2} g_{1,2} f_{1,2}^-1 g_{2,2}^-1") in rels
    assert Word.parse("mu''_{S1} mu'_{S2}") in rels
    assert Word.parse("mu''_{S1} f_{1,2}^-1 g_{1,1} f_{1,2} g_{1,1}^-1") in rels


def test_no_meridian_word_leaves_symbol_free():
    s = sym_sum(None)
    assert len(s.presentation.relators) == 15 + 15 + 3
    assert set(s.unassigned_meridians()) == {"mu''_{S1}", "mu'_{S2}"}
    report = classify(s, budget=100)
    assert any("mu''_{S1}" in w for w in report.warnings)


def test_assign_later():
    s = sym_sum(None)
    s = assign_meridian_word(s, "f''_{1,1} x g''_{1,2}", Word.parse("g_{1,1} f_{1,2}"))
    assert s.meridian_word("mu''_{S1}") == Word.parse("g_{1,1} f_{1,2}")
    with pytest.raises(MeridianAlreadyAssigned):
        assign_meridian_word(s, "f''_{1,1} x g''_{1,2}", Word.parse("g_{1,1}"))


def test_foreign_meridian_word():
    with pytest.raises(ForeignMeridianWord):
        sym_sum(Word.parse("g_{2,1}"))


def test_self_sum_and_reuse():
    a = piece(SYM2, 1)
    with pytest.raises(SelfSum):
        fiber_sum(a, a, GluingSpec("f''_{1,1} x g''_{1,2}", "f''_{1,1} x g'_{1,2}"))
    s = sym_sum()
    with pytest.raises(TorusNotAvailable):
        fiber_sum(s, piece(SYM2, 3), GluingSpec("f''_{1,1} x g''_{1,2}", "f''_{3,1} x g'_{3,2}"))


def test_identification_must_pair_curves():
    with pytest.raises(ManifoldError):
        GluingSpec("x", "y", ((0, 0), (0, 1)))


def test_swapped_identification():
    s = fiber_sum(piece(SYM2, 1), piece(SYM2, 2),
                  GluingSpec("f''_{1,1} x g''_{1,2}", "f''_{2,1} x g'_{2,2}", ((0, 1), (1, 0))))
    assert Word.parse("f_{1,2} g_{1,2} f_{1,2}^-1 g_{2,1} f_{2,1}^-1 g_{2,1}^-1") in s.presentation.relators


KINDS = [SYM2, SIGMA2_SQUARED, SurfaceProduct(1, 2), SurfaceProduct(3, 1)]


def fs_tori(state):
    return [t.key for t in state.available_tori() if t.role == FIBERSUM_ROLE]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_random_sums_are_additive(seed):
    rng = random.Random(seed)
    a = piece(rng.choice(KINDS), 1)
    b = piece(rng.choice([SYM2, SurfaceProduct(2, 3)]), 2)
    s = fiber_sum(a, b, GluingSpec(rng.choice(fs_tori(a)), rng.choice(fs_tori(b))),
                  rng.choice(["standard", "alternative", None]))
    assert (s.euler, s.signature) == (a.euler + b.euler, a.signature + b.signature)
    assert len(s.presentation.generators) == len(a.presentation.generators) + len(b.presentation.generators) + 2
    assert recompute_invariants(s) == (s.euler, s.signature)
