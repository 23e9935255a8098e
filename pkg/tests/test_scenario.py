import pytest
from hypothesis import given, settings, strategies as st

from luttinger.pipeline import build_tilde_Y
from luttinger.scenario import (GOLDEN_DIR, ScenarioError, build_scenario, load_scenario,
                                parse_scenario, scenario_for)

GOLDEN = GOLDEN_DIR / "tilde_Y_1_1_1.scn"


def test_golden_file_matches_generator():
    assert load_scenario(GOLDEN) == scenario_for(1, 1, 1)


def test_golden_file_rebuilds_the_family_member():
    state = build_scenario(load_scenario(GOLDEN))
    assert state.presentation == build_tilde_Y(1, 1, 1).presentation
    assert (state.euler, state.signature) == (10, -2)


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 3), st.integers(0, 3), st.integers(1, 9), st.sampled_from(["schema", "derived"]))
def test_roundtrip(l, n, k, mode):
    sc = scenario_for(l, n, k, mode)
    assert parse_scenario(str(sc)) == sc


@pytest.mark.parametrize("l,n,k,mode", [(2, 1, 3, "schema"), (1, 2, 2, "derived")])
def test_scenario_equals_builder(l, n, k, mode):
    assert build_scenario(scenario_for(l, n, k, mode)).presentation == \
        build_tilde_Y(l, n, k, mode=mode).presentation


def test_custom_scenario_with_generic_blocks():
    text = """
    # two generic products summed, one with explicit meridian word
    block Z1x2 1
    block Z3x2 2
    sum a''_{1,1} x d''_{1,2} = a''_{2,1} x d'_{2,2} meridian=b_{1,1} c_{1,2}
    """
    state = build_scenario(parse_scenario(text))
    assert (state.euler, state.signature) == (0 + 8, 0)
    assert state.meridian_word("mu''_{Z1}") is not None


@pytest.mark.parametrize("text,line", [
    ("block Q 1", 1),
    ("block S 1\nblock S 1", 2),
    ("budget lots", 1),
    ("mode fast", 1),
    ("block S 1\nsurgery (f'_{1,1} x f'_{1,2}, f'_{1,2}, +1) sideways", 2),
    ("frobnicate", 1),
    ("block S 1\nsum f''_{1,1} x g''_{1,2}", 2),
])
def test_parse_errors(text, line):
    with pytest.raises(ScenarioError) as err:
        parse_scenario(text)
    assert err.value.line == line


@pytest.mark.parametrize("text", [
    "",
    "block S 1\nblock S 2",
    "block S 1\nsurgery (a'_{1,1} x c'_{1,1}, a'_{1,1}, -1)",
    "block S 1\nblock S 2\nsum f''_{1,1} x g''_{1,2} = f''_{1,1} x g'_{1,2}",
])
def test_build_errors(text):
    with pytest.raises(ScenarioError):
        build_scenario(parse_scenario(text))
