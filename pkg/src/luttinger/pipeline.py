"""Builders for Z_n, S_l, Y_{l,n} and the surgered family, plus classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .blocks import (SIGMA2_LUTTINGER_TORI, SIGMA2_SQUARED, SYM2, SYM2_LUTTINGER_TORI,
                     CurveLabel, gname, instantiate_block)
from .fibersum import (STANDARD_MERIDIAN, GluingSpec, MeridianChoice, assign_meridian_word,
                       fiber_sum, resolve_meridian)
from .fpgroup.abelian import AbelianInvariants, abelianize
from .fpgroup.cosets import (ABELIAN_OBSTRUCTION, CERTIFIED_TRIVIAL, DEFAULT_BUDGET,
                             TrivialityVerdict, coset_enumerate)
from .fpgroup.deduction import ProofLog, Step, StepUnjustified, deduction_replay
from .manifold import ManifoldError, ManifoldState
from .surgery import DERIVED, SCHEMA, SurgerySpec, apply_surgery, schema_lookup
from .words import Word, commutator, gen

NONSPIN_NOTE = ("nonspin asserted, not computed: each Sym^2(Sigma_3) copy contributes "
                "disjoint tori of square -1, so the intersection form is odd")


class ParameterError(ValueError):
    pass


class IdentityViolation(AssertionError):
    pass


def _sym_torus(s: int, second: str) -> str:
    return f"f''_{{{s},1}} x g{second}_{{{s},2}}"


def _z_torus(i: int, second: str) -> str:
    return f"a''_{{{i},1}} x d{second}_{{{i},2}}"


def final_torus() -> str:
    return _sym_torus(1, "'")


# builders

def build_Z(n: int, meridian: MeridianChoice = STANDARD_MERIDIAN) -> ManifoldState:
    if n < 1:
        raise ParameterError("Z_n needs n >= 1")
    z = ManifoldState.from_block(instantiate_block(SIGMA2_SQUARED, 1))
    for i in range(2, n + 1):
        nxt = ManifoldState.from_block(instantiate_block(SIGMA2_SQUARED, i))
        z = fiber_sum(z, nxt, GluingSpec(_z_torus(i - 1, "''"), _z_torus(i, "'")), meridian)
    return z


def build_S(l: int, meridian: MeridianChoice = STANDARD_MERIDIAN) -> ManifoldState:
    if l < 1:
        raise ParameterError("S_l needs l >= 1")
    s = ManifoldState.from_block(instantiate_block(SYM2, 1))
    for k in range(2, l + 1):
        nxt = ManifoldState.from_block(instantiate_block(SYM2, k))
        s = fiber_sum(s, nxt, GluingSpec(_sym_torus(k - 1, "''"), _sym_torus(k, "'")), meridian)
    return s


def build_Y(l: int, n: int, meridian: MeridianChoice = STANDARD_MERIDIAN) -> ManifoldState:
    if l < 1 or n < 0:
        raise ParameterError("Y_{l,n} needs l >= 1 and n >= 0")
    s = build_S(l, meridian)
    if n == 0:
        return s
    return fiber_sum(s, build_Z(n, meridian), GluingSpec(_sym_torus(l, "''"), _z_torus(1, "'")),
                     meridian)


def luttinger_specs(l: int, n: int) -> list[SurgerySpec]:
    """The 5l + 7n Luttinger surgeries with the coefficients listed for each copy."""
    specs = []
    for s in range(1, l + 1):
        specs += [_spec(t.format(i=s), _SYM2_GAMMA[k]) for k, t in enumerate(SYM2_LUTTINGER_TORI)]
    for i in range(1, n + 1):
        specs += [_spec(t.format(i=i), _SIGMA2_GAMMA[k]) for k, t in enumerate(SIGMA2_LUTTINGER_TORI)]
    return specs


# (index of gamma among the torus curves, coefficient), in torus-table order
_SIGMA2_GAMMA = [(0, -1), (0, -1), (0, -1), (0, -1), (1, 1), (1, 1), (1, 1)]
_SYM2_GAMMA = [(1, 1), (0, -1), (0, -1), (1, 1), (1, 1)]


def _spec(key: str, gamma: tuple[int, int]) -> SurgerySpec:
    curves = [CurveLabel.parse(c) for c in key.split(" x ")]
    return SurgerySpec(key, curves[gamma[0]], gamma[1])


def final_spec(k: int) -> SurgerySpec:
    return SurgerySpec(final_torus(), CurveLabel.parse("g'_{1,2}"), k)


def build_tilde_Y(l: int, n: int, k: int, mode: str = SCHEMA,
                  meridian: MeridianChoice = STANDARD_MERIDIAN,
                  unsafe: bool = False,
                  final_meridian: MeridianChoice = STANDARD_MERIDIAN) -> ManifoldState:
    """Y_{l,n} after its 5l + 7n Luttinger surgeries and the final k-surgery.

    ``meridian`` is the policy for the fiber-sum meridians.  In ``derived``
    mode the final surgery goes through the meridian of ``f''_{1,1} x g'_{1,2}``,
    set by ``final_meridian`` (default ``[g_{1,1}, f_{1,2}^-1]``); the Luttinger
    surgeries always use their recorded relations.
    """
    if l < 1 or n < 0:
        raise ParameterError("need l >= 1 and n >= 0")
    if k < 1 and not (unsafe and k != 0):
        raise ParameterError("need k >= 1 (k <= -1 only with unsafe=True)")
    state = build_Y(l, n, meridian)
    for spec in luttinger_specs(l, n):
        state = apply_surgery(state, spec, SCHEMA)
    spec = final_spec(k)
    if mode == DERIVED:
        word = resolve_meridian(final_meridian, state.torus(spec.torus))
        if word is None:
            raise ParameterError("derived mode needs a meridian word for the final torus")
        state = assign_meridian_word(state, spec.torus, word)
    elif mode != SCHEMA:
        raise ParameterError(f"unknown mode {mode!r}")
    return apply_surgery(state, spec, mode)


def build_explore(n: int, k: int, meridian: MeridianChoice = STANDARD_MERIDIAN) -> ManifoldState:
    """The l = 0 configuration: Z_n, 7n Luttinger surgeries, then a k-surgery
    on ``a''_{1,1} x d'_{1,2}`` along ``d'_{1,2}``.  Triviality is not claimed."""
    state = build_Z(n, meridian)
    for spec in luttinger_specs(0, n):
        state = apply_surgery(state, spec, SCHEMA)
    spec = SurgerySpec(_z_torus(1, "'"), CurveLabel.parse("d'_{1,2}"), k)
    return apply_surgery(state, spec, SCHEMA)


def copy_counts(state: ManifoldState) -> tuple[int, int]:
    l = sum(1 for b in state.blocks if b.kind == SYM2)
    n = sum(1 for b in state.blocks if b.kind == SIGMA2_SQUARED)
    return l, n


# deduction replay

def _g(letter: str, i: int, j: int) -> Word:
    return gen(gname(letter, i, j))


def _c(x: Word, y: Word) -> Word:
    return commutator(x, y)


def _meridian_steps(state: ManifoldState, torus_key: str, note: str) -> list[Step]:
    t = state.torus(torus_key)
    steps = []
    if t.meridian and state.meridian_word(t.meridian) is not None:
        w = state.meridian_word(t.meridian)
        steps.append(Step(t.meridian, relator=gen(t.meridian) * w.inverse(),
                          note=f"meridian word {w} of {torus_key} dies with its block"))
    return steps


def _sum_meridian_steps(state: ManifoldState, left: str, right: str, note: str) -> list[Step]:
    lt, rt = state.torus(left), state.torus(right)
    steps = _meridian_steps(state, left, note)
    if lt.meridian and rt.meridian:
        steps.append(Step(rt.meridian, relator=gen(lt.meridian) * gen(rt.meridian),
                          note=f"{note}: meridians of the summed tori are identified"))
    return steps


def _sym2_kill_steps(s: int, first: bool, state: ManifoldState) -> list[Step]:
    f = lambda j: _g("f", s, j)
    g = lambda j: _g("g", s, j)
    steps = [
        Step(gname("g", s, 3), _c(g(2), f(3).inverse()),
             relator=_c(g(2), f(3).inverse()) * g(3).inverse(),
             note="substitute g_3 = [g_2, f_3^-1]"),
        Step(gname("g", s, 1), _c(f(1).inverse(), g(3)),
             relator=_c(f(1).inverse(), g(3)) * g(1).inverse(),
             note="g_1 = [f_1^-1, g_3] = [f_1^-1, [g_2, f_3^-1]]"),
        Step(gname("g", s, 1), commuting=(_c(f(1), f(3)), _c(f(1), g(2))),
             note="f_1 commutes with f_3 and g_2, so g_1 = 1"),
    ]
    if first:
        done = [e for e in state.provenance if e["op"] == "surgery"
                and e["spec"].startswith(f"({final_torus()},")]
        if not done:
            raise ManifoldError(f"no surgery on {final_torus()}; the script needs the final surgery")
        spec = done[-1]
        if spec["mode"] == DERIVED:
            steps += _meridian_steps(state, final_torus(), "final surgery")
            steps.append(Step(gname("g", 1, 2), relator=Word.parse(spec["relator"]),
                              note="final surgery: g_{1,2} is a power of a dead meridian"))
        else:
            steps.append(Step(gname("g", 1, 2), relator=Word.parse(spec["relator"]),
                              note="final surgery: g_{1,2} = [g_{1,1}, f_{1,2}^-1]^k = 1"))
    else:
        p = s - 1
        steps.append(Step(gname("g", s, 2),
                          relator=_g("f", p, 2) * _g("g", p, 2) * _g("f", p, 2).inverse() * g(2).inverse(),
                          note=f"gluing S_{p} to copy {s}: f g f^-1 = g_{{{s},2}}"))
    steps += [
        Step(gname("f", s, 1), relator=_c(g(1).inverse(), g(3).inverse()) * f(1).inverse(),
             note="[g_1^-1, g_3^-1] = f_1"),
        Step(gname("f", s, 2), relator=_c(g(1).inverse(), g(2).inverse()) * f(2).inverse(),
             note="[g_1^-1, g_2^-1] = f_2"),
        Step(gname("f", s, 3), relator=_c(g(2).inverse(), g(3).inverse()) * f(3).inverse(),
             note="[g_2^-1, g_3^-1] = f_3"),
        Step(gname("g", s, 3), relator=_c(g(2), f(3).inverse()) * g(3).inverse(),
             note="[g_2, f_3^-1] = g_3"),
    ]
    return steps


def _sigma2_kill_steps(i: int, glue_a: Word, glue_d: Word, note: str) -> list[Step]:
    a = lambda j: _g("a", i, j)
    b = lambda j: _g("b", i, j)
    c = lambda j: _g("c", i, j)
    d = lambda j: _g("d", i, j)
    return [
        Step(gname("a", i, 1), relator=glue_a, note=f"{note}: conjugate of a_1 is trivial"),
        Step(gname("d", i, 2), relator=glue_d, note=f"{note}: d_2 is trivial"),
        Step(gname("b", i, 1), relator=_c(a(1).inverse(), d(1)) * b(1).inverse(), note="[a_1^-1, d_1] = b_1"),
        Step(gname("a", i, 2), relator=_c(b(2).inverse(), d(2).inverse()) * a(2).inverse(), note="[b_2^-1, d_2^-1] = a_2"),
        Step(gname("b", i, 2), relator=_c(a(2).inverse(), d(2)) * b(2).inverse(), note="[a_2^-1, d_2] = b_2"),
        Step(gname("c", i, 1), relator=_c(d(1).inverse(), b(2).inverse()) * c(1).inverse(), note="[d_1^-1, b_2^-1] = c_1"),
        Step(gname("d", i, 1), relator=_c(c(1).inverse(), b(2)) * d(1).inverse(), note="[c_1^-1, b_2] = d_1"),
        Step(gname("c", i, 2), relator=_c(d(2).inverse(), b(1).inverse()) * c(2).inverse(), note="[d_2^-1, b_1^-1] = c_2"),
    ]


def deduction_script(state: ManifoldState) -> list[Step]:
    """The consequence chain that kills every generator of a built tilde-Y."""
    l, n = copy_counts(state)
    if l < 1:
        raise ManifoldError("the scripted chain needs at least one Sym^2 copy")
    steps: list[Step] = []
    for s in range(1, l + 1):
        steps += _sym2_kill_steps(s, s == 1, state)
        if s > 1:
            steps += _sum_meridian_steps(state, _sym_torus(s - 1, "''"), _sym_torus(s, "'"),
                                         f"S_{s - 1} # S_{s}")
    for i in range(1, n + 1):
        a1, d2 = _g("a", i, 1), _g("d", i, 2)
        if i == 1:
            left = _g("g", l, 1) * _g("f", l, 1) * _g("g", l, 1).inverse()
            glue_a = left * (_g("b", 1, 1) * a1 * _g("b", 1, 1).inverse()).inverse()
            glue_d = _g("f", l, 2) * _g("g", l, 2) * _g("f", l, 2).inverse() * d2.inverse()
            note = f"gluing S_{l} to the first Sigma_2 x Sigma_2"
            meridian = (_sym_torus(l, "''"), _z_torus(1, "'"))
        else:
            p = i - 1
            left = _g("b", p, 1) * _g("a", p, 1) * _g("b", p, 1).inverse()
            glue_a = left * (_g("b", i, 1) * a1 * _g("b", i, 1).inverse()).inverse()
            glue_d = _g("c", p, 2) * _g("d", p, 2) * _g("c", p, 2).inverse() * d2.inverse()
            note = f"gluing Sigma_2 x Sigma_2 copy {p} to copy {i}"
            meridian = (_z_torus(p, "''"), _z_torus(i, "'"))
        steps += _sigma2_kill_steps(i, glue_a, glue_d, note)
        steps += _sum_meridian_steps(state, *meridian, note)
    return steps


def replay_deduction(state: ManifoldState) -> ProofLog:
    """Replay ``deduction_script``; raises ``StepUnjustified`` on the first bad step."""
    return deduction_replay(state.presentation, deduction_script(state), require_all_trivial=True)


replay_paper_deduction = replay_deduction


# classification

@dataclass
class Report:
    parameters: dict
    euler: int
    signature: int
    b1: int
    torsion: list
    b2plus: int
    b2minus: int
    spin: dict
    homeo_type: str
    pi1_verdict: dict
    deduction_log: Optional[dict] = None
    warnings: list = field(default_factory=list)
    presentation_size: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "parameters": self.parameters,
            "euler": self.euler,
            "signature": self.signature,
            "b1": self.b1,
            "torsion": self.torsion,
            "b2plus": self.b2plus,
            "b2minus": self.b2minus,
            "spin": self.spin,
            "homeo_type": self.homeo_type,
            "pi1_verdict": self.pi1_verdict,
            "deduction_log": self.deduction_log,
            "warnings": self.warnings,
            "presentation_size": self.presentation_size,
        }

    @property
    def pi1_trivial(self) -> bool:
        return self.pi1_verdict.get("trivial", False)


def homeo_type_string(b2plus: int, b2minus: int) -> str:
    return f"{b2plus} CP2 # {b2minus} CP2bar"


def certify_trivial(state_or_p, budget: int = DEFAULT_BUDGET, strategy: str = "hlt",
                    h1: Optional[AbelianInvariants] = None) -> TrivialityVerdict:
    """Coset enumeration, short-circuited when H_1 is infinite."""
    p = getattr(state_or_p, "presentation", state_or_p)
    h1 = h1 or abelianize(p)
    if h1.betti > 0:
        return TrivialityVerdict(ABELIAN_OBSTRUCTION, None,
                                 f"H_1 = {h1} is infinite; the group is not finite", 0, budget,
                                 0, strategy)
    verdict = coset_enumerate(p, budget, strategy)
    if verdict.status == CERTIFIED_TRIVIAL and not h1.is_trivial:
        raise IdentityViolation(f"coset table says trivial but H_1 = {h1}")
    if verdict.closed and verdict.order % max(1, _abelian_order(h1)) != 0:
        raise IdentityViolation(f"|G| = {verdict.order} not divisible by |H_1| = {_abelian_order(h1)}")
    return verdict


def _abelian_order(h1: AbelianInvariants) -> int:
    out = 1
    for d in h1.torsion:
        out *= d
    return out


def betti_numbers(state: ManifoldState, h1: Optional[AbelianInvariants] = None) -> tuple[int, int, int]:
    """``(b1, b2+, b2-)`` from H_1 and the closed 4-manifold identities."""
    h1 = h1 or abelianize(state.presentation)
    b1 = h1.betti
    total = state.euler - 2 + 2 * b1
    if (total + state.signature) % 2:
        raise IdentityViolation("e - 2 + 2 b1 + sigma is odd")
    b2plus = (total + state.signature) // 2
    b2minus = (total - state.signature) // 2
    if b2plus < 0 or b2minus < 0:
        raise IdentityViolation(f"negative b2: ({b2plus}, {b2minus})")
    if b2plus - b2minus != state.signature or b2plus + b2minus != total:
        raise IdentityViolation("b2 identities fail")
    return b1, b2plus, b2minus


def classify(state: ManifoldState, budget: int = DEFAULT_BUDGET, replay: bool = False,
             parameters: Optional[dict] = None, strategy: str = "hlt",
             nonspin_asserted: Optional[bool] = None) -> Report:
    """Characteristic numbers, H_1, and a certified pi_1 verdict for ``state``.

    ``b2+`` and ``b2-`` come from ``b2+ + b2- = e - 2 + 2 b1`` and
    ``b2+ - b2- = sigma``.  The homeomorphism type is stated only when pi_1 is
    certified trivial, ``b1 = 0`` and nonspin is asserted.
    """
    l, n = copy_counts(state)
    if nonspin_asserted is None:
        nonspin_asserted = l >= 1
    warnings = [f"meridian {m} has no assigned word" for m in state.unassigned_meridians()]
    h1 = abelianize(state.presentation)
    b1, b2plus, b2minus = betti_numbers(state, h1)

    verdict = certify_trivial(state.presentation, budget, strategy, h1)
    log = None
    log_error = None
    if l >= 1 and (replay or verdict.status != CERTIFIED_TRIVIAL):
        try:
            log = replay_deduction(state)
        except StepUnjustified as exc:
            log_error = str(exc)
        except ManifoldError as exc:
            log_error = str(exc)
    if log is not None and verdict.closed and verdict.order != 1:
        raise IdentityViolation(f"deduction proves triviality but |G| = {verdict.order}")

    certificate_kind = None
    if verdict.status == CERTIFIED_TRIVIAL:
        certificate_kind = "coset-table"
    elif log is not None and log.all_trivial:
        certificate_kind = "deduction"
    trivial = certificate_kind is not None
    if trivial and not h1.is_trivial:
        raise IdentityViolation(f"pi_1 certified trivial but H_1 = {h1}")
    if log_error:
        warnings.append(f"deduction replay failed: {log_error}")

    if l < 1:
        homeo = "unknown"
    elif trivial and b1 == 0 and nonspin_asserted:
        homeo = homeo_type_string(b2plus, b2minus)
    else:
        homeo = "conditional: " + homeo_type_string(b2plus, b2minus)

    pi1 = verdict.as_dict()
    pi1["trivial"] = trivial
    pi1["certificate_kind"] = certificate_kind
    return Report(
        parameters=parameters if parameters is not None else {"l": l, "n": n, "k": None},
        euler=state.euler,
        signature=state.signature,
        b1=b1,
        torsion=list(h1.torsion),
        b2plus=b2plus,
        b2minus=b2minus,
        spin={"spin": False if nonspin_asserted else None,
              "status": "asserted" if nonspin_asserted else "unknown",
              "note": NONSPIN_NOTE if nonspin_asserted else "no nonspin assertion available"},
        homeo_type=homeo,
        pi1_verdict=pi1,
        deduction_log=log.as_dict() if log is not None else None,
        warnings=warnings,
        presentation_size={"generators": len(state.presentation.generators),
                           "relators": len(state.presentation.relators)},
    )
