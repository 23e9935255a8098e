import pytest

from luttinger.blocks import (AVAILABLE, FIBERSUM_ROLE, LAGRANGIAN, LUTTINGER_ROLE,
                              SIGMA2_SQUARED, SYM2, SYMPLECTIC, BlockError, CurveLabel,
                              DuplicateBlock, SurfaceProduct, UnknownCurve, dual_name,
                              instantiate_block, pushoff_word)
from luttinger.words import Word


@pytest.mark.parametrize("kind,ngens,nrels,euler,sig,ntori", [
    (SIGMA2_SQUARED, 8, 18, 4, 0, 9),
    (SYM2, 6, 15, 6, -2, 7),
    (SurfaceProduct(1, 3), 8, 14, 0, 0, 2),
    (SurfaceProduct(3, 2), 10, 26, 8, 0, 2),
])
def test_block_shapes(kind, ngens, nrels, euler, sig, ntori):
    b = instantiate_block(kind, 2)
    assert len(b.generators) == ngens
    assert len(b.base_relators) == nrels
    assert (b.euler, b.signature) == (euler, sig)
    assert len(b.tori) == ntori
    assert all(t.status == AVAILABLE and t.square == 0 for t in b.tori)


def test_sigma2_tori_roles():
    b = instantiate_block(SIGMA2_SQUARED, 1)
    lut = [t for t in b.tori if t.role == LUTTINGER_ROLE]
    fs = [t for t in b.tori if t.role == FIBERSUM_ROLE]
    assert len(lut) == 7 and all(t.kind == LAGRANGIAN for t in lut)
    assert [t.key for t in fs] == ["a''_{1,1} x d'_{1,2}", "a''_{1,1} x d''_{1,2}"]
    assert all(t.kind == SYMPLECTIC for t in fs)


def test_meridian_names_are_unique_across_copies():
    names = [t.meridian_name for i in (1, 2) for k in (SYM2, SIGMA2_SQUARED)
             for t in instantiate_block(k, i).tori]
    assert len(names) == len(set(names))


def test_pushoffs():
    b = instantiate_block(SIGMA2_SQUARED, 1)
    assert pushoff_word(b, CurveLabel.parse("a'_{1,1}")) == Word.parse("a_{1,1}")
    assert pushoff_word(b, CurveLabel.parse("a''_{1,1}")) == Word.parse("b_{1,1} a_{1,1} b_{1,1}^-1")
    assert pushoff_word(b, CurveLabel.parse("d''_{1,2}")) == Word.parse("c_{1,2} d_{1,2} c_{1,2}^-1")
    with pytest.raises(UnknownCurve):
        pushoff_word(b, CurveLabel.parse("f'_{1,1}"))


def test_meridian_words():
    s = instantiate_block(SYM2, 1)
    t = next(t for t in s.tori if t.key == "f''_{1,1} x g'_{1,2}")
    assert t.meridian_word() == Word.parse("g_{1,1} f_{1,2}^-1 g_{1,1}^-1 f_{1,2}")
    assert t.meridian_word(alternative=True) == Word.parse("f_{1,2} g_{1,1} f_{1,2}^-1 g_{1,1}^-1")


@pytest.mark.parametrize("text", ["a_{1,1}", "b'_{2,1}", "d''_{10,2}"])
def test_curve_label_roundtrip(text):
    assert str(CurveLabel.parse(text)) == text


def test_dual_name():
    assert dual_name("a_{3,2}") == "b_{3,2}"
    assert dual_name("g_{1,3}") == "f_{1,3}"


def test_errors():
    with pytest.raises(DuplicateBlock):
        instantiate_block(SYM2, 1, taken=["S1"])
    with pytest.raises(BlockError):
        instantiate_block(SYM2, 0)
    with pytest.raises(BlockError):
        SurfaceProduct(0, 2)
    with pytest.raises(UnknownCurve):
        CurveLabel.parse("a'''_{1,1}")
