from dataclasses import replace

import pytest

from luttinger.fpgroup.abelian import abelianize
from luttinger.fpgroup.cosets import CERTIFIED_TRIVIAL
from luttinger.fpgroup.deduction import StepUnjustified
from luttinger.pipeline import (IdentityViolation, ParameterError, build_explore, build_S,
                                build_tilde_Y, build_Y, build_Z, classify, deduction_script,
                                homeo_type_string, luttinger_specs, replay_deduction)
from luttinger.words import Word


@pytest.mark.parametrize("n,euler,ngens", [(1, 4, 8), (2, 8, 18), (3, 12, 28)])
def test_build_Z(n, euler, ngens):
    z = build_Z(n)
    assert (z.euler, z.signature) == (euler, 0)
    # 8 generators per copy plus a meridian pair per sum
    assert len(z.presentation.generators) == ngens


def test_build_Z_relator_count():
    assert len(build_Z(2).presentation.relators) == 2 * 18 + 4


@pytest.mark.parametrize("l,euler,sig", [(1, 6, -2), (2, 12, -4), (4, 24, -8)])
def test_build_S(l, euler, sig):
    s = build_S(l)
    assert (s.euler, s.signature) == (euler, sig)


@pytest.mark.parametrize("l,n,euler,sig", [(1, 0, 6, -2), (1, 1, 10, -2), (2, 3, 24, -4)])
def test_build_Y(l, n, euler, sig):
    y = build_Y(l, n)
    assert (y.euler, y.signature) == (euler, sig)


def test_last_sym_copy_meets_first_product_copy():
    y = build_Y(3, 1)
    assert y.torus("f''_{3,1} x g''_{3,2}").status == "ConsumedByFiberSum"
    assert y.torus("f''_{1,1} x g''_{1,2}").status == "ConsumedByFiberSum"
    assert y.torus("a''_{1,1} x d'_{1,2}").status == "ConsumedByFiberSum"


@pytest.mark.parametrize("bad", [lambda: build_Z(0), lambda: build_S(0), lambda: build_Y(0, 1),
                                 lambda: build_tilde_Y(1, 0, 0), lambda: build_tilde_Y(1, 0, -1),
                                 lambda: build_tilde_Y(1, -1, 1)])
def test_parameter_errors(bad):
    with pytest.raises(ParameterError):
        bad()


def test_unsafe_allows_negative_k():
    s = build_tilde_Y(1, 0, -1, unsafe=True)
    assert abelianize(s.presentation).is_trivial
    with pytest.raises(ParameterError):
        build_tilde_Y(1, 0, 0, unsafe=True)


def test_tilde_Y_1_0_1_presentation():
    s = build_tilde_Y(1, 0, 1)
    rels = s.presentation.relators
    assert len(rels) == 15
    final = Word.parse("g_{1,2} f_{1,2}^-1 g_{1,1} f_{1,2} g_{1,1}^-1")
    assert rels[-1] == final
    assert (s.euler, s.signature) == (6, -2)


@pytest.mark.parametrize("l,n,count", [(1, 1, 12), (2, 3, 31), (1, 0, 5)])
def test_surgery_counts(l, n, count):
    assert len(luttinger_specs(l, n)) == count
    s = build_tilde_Y(l, n, 2)
    assert sum(1 for e in s.provenance if e["op"] == "surgery") == count + 1
    assert all(t.status == "Surgered" for t in s.tori if t.role == "luttinger")


@pytest.mark.parametrize("l,n,b2p,b2m", [(1, 0, 1, 3), (1, 1, 3, 5), (2, 1, 5, 9)])
def test_classify(l, n, b2p, b2m):
    r = classify(build_tilde_Y(l, n, 2), parameters={"l": l, "n": n, "k": 2})
    assert (r.b1, r.b2plus, r.b2minus) == (0, b2p, b2m)
    assert r.pi1_verdict["status"] == CERTIFIED_TRIVIAL
    assert r.homeo_type == homeo_type_string(b2p, b2m) == f"{b2p} CP2 # {b2m} CP2bar"
    assert r.spin["status"] == "asserted" and "asserted" in r.spin["note"]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_verdict_independent_of_k(k):
    r = classify(build_tilde_Y(1, 0, k))
    assert (r.euler, r.signature, r.b2plus, r.b2minus) == (6, -2, 1, 3)
    assert r.pi1_trivial


def test_budget_too_small_falls_back_to_replay():
    r = classify(build_tilde_Y(1, 1, 1), budget=50)
    assert r.pi1_verdict["status"] == "Exhausted"
    assert r.pi1_verdict["certificate_kind"] == "deduction"
    assert r.deduction_log["all_trivial"]
    assert not r.homeo_type.startswith("conditional")


def test_no_certificate_is_conditional():
    s = build_tilde_Y(1, 1, 1, meridian=None)
    r = classify(s, budget=50)
    assert r.homeo_type.startswith("conditional")
    assert r.warnings


def test_identity_violation():
    s = build_tilde_Y(1, 0, 1)
    with pytest.raises(IdentityViolation):
        classify(replace(s, euler=s.euler + 1))


def test_explore():
    s = build_explore(1, 1)
    r = classify(s, budget=2000)
    assert r.homeo_type == "unknown"
    assert r.spin["status"] == "unknown"
    assert r.pi1_verdict["status"] in ("Exhausted", "CertifiedTrivial", "CertifiedOrder")


def test_replay_1_0_1():
    log = replay_deduction(build_tilde_Y(1, 0, 1))
    assert len(log) >= 8 and log.all_trivial
    assert len(log.trivial) == 6


def test_replay_uses_sym_gluing():
    log = replay_deduction(build_tilde_Y(2, 0, 1))
    step = next(e for e in log.entries if e.claim == "g_{2,2}")
    assert "f_{1,2} g_{1,2} f_{1,2}^-1 g_{2,2}^-1" in step.justification


def test_replay_induction_step():
    log = replay_deduction(build_tilde_Y(1, 2, 3))
    step = next(e for e in log.entries if e.claim == "a_{2,1}")
    assert "b_{1,1} a_{1,1} b_{1,1}^-1" in step.justification
    assert log.all_trivial


def test_replay_derived_mode():
    s = build_tilde_Y(1, 1, 4, mode="derived")
    log = replay_deduction(s)
    assert "mu'_{S1}" in log.trivial and log.all_trivial


def test_replay_detects_a_tampered_relator():
    s = build_tilde_Y(1, 0, 1)
    rels = s.presentation.relators[:-1]
    broken = s.with_presentation(s.presentation.generators, rels)
    with pytest.raises(StepUnjustified):
        replay_deduction(broken)


def test_script_needs_a_sym_copy():
    with pytest.raises(Exception):
        deduction_script(build_explore(1, 1))


@pytest.mark.parametrize("mode", ["schema", "derived"])
def test_modes_agree(mode):
    r = classify(build_tilde_Y(1, 1, 2, mode=mode))
    assert r.pi1_trivial and (r.b2plus, r.b2minus) == (3, 5)


def test_report_dict_keys():
    d = classify(build_tilde_Y(1, 0, 1)).as_dict()
    assert set(d) >= {"parameters", "euler", "signature", "b1", "b2plus", "b2minus", "spin",
                      "homeo_type", "pi1_verdict", "deduction_log", "warnings"}
