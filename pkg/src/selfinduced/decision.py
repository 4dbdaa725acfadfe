"""Decide whether a positive primitive automorphism comes from a self-induced CIET.

The procedure lists the singularities, checks the necessary conditions,
builds a base automorphism fixing the left end point, then peels off one
elementary twist per combinatorial Rauzy induction until the remainder is
the identity (accepted) or stops being positive (rejected).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .automorphisms import (
    ElementaryTwist,
    Endomorphism,
    conjugacy,
    incidence_matrix,
    validate_positive_primitive,
)
from .boundary import BiPoint, Fixing, is_fixed_by, shift, transform, translate
from .ciet import Ciet, cross_validate, detect_self_induction, perron
from .config import DEFAULT, Config
from .errors import (
    ConditionFailure,
    ConvergenceError,
    DepthExceededError,
    ExcludedPointError,
    IntervalConnectionError,
    InvalidTranslationError,
    MalformedGeneratorError,
)
from .graphs import SingGraph, build_graphs, check_c32, check_c33_c4, derive_pair
from .prefix_suffix import BACKWARD, Singularity, detect_singularities
from .rauzy import PermutationPair, edge_twist, induce_pair
from .words import Letter, Word

ACCEPTED = "accepted"
REJECTED = "rejected"
INCONCLUSIVE = "inconclusive"

EXIT_CODES = {ACCEPTED: 0, REJECTED: 1, INCONCLUSIVE: 2}


@dataclass
class DecisionReport:
    verdict: str
    condition: str | None = None
    stage: int | None = None
    message: str = ""
    k: int | None = None
    phi: Endomorphism | None = None
    orientation: str | None = None
    pair: PermutationPair | None = None
    lengths: dict[str, float] | None = None
    eta: float | None = None
    twists: list[ElementaryTwist] = field(default_factory=list)
    delta_automorphism: Endomorphism | None = None
    period: int | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def accepted(self) -> bool:
        return self.verdict == ACCEPTED

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def as_dict(self) -> dict:
        pair = None
        if self.pair is not None:
            pair = {"pi0": list(self.pair.top), "pi1": list(self.pair.bottom)}
        return {
            "verdict": self.verdict,
            "condition": self.condition,
            "stage": self.stage,
            "message": self.message,
            "k": self.k,
            "phi": self.phi.as_strings() if self.phi is not None else None,
            "orientation": self.orientation,
            "pair": pair,
            "lambda": self.lengths,
            "eta": self.eta,
            "twists": [str(t) for t in self.twists],
            "delta_automorphism": (self.delta_automorphism.as_strings()
                                   if self.delta_automorphism is not None else None),
            "period": self.period,
            "diagnostics": self.diagnostics,
        }


# step 3 ------------------------------------------------------------------


@dataclass
class BaseCandidate:
    automorphism: Endomorphism
    point: BiPoint  # Z, the coding of the left end point
    conjugator: Word
    singularity: int


def _candidate(auto: Endomorphism, level: int, sings: list[Singularity],
               pair: PermutationPair) -> BaseCandidate:
    first = pair.top[0]
    pi1 = pair.pi1
    for s in sings:
        if s.kind != BACKWARD:
            continue
        here = [p for p in s.points if p.u.first() == Letter(first, True)]
        others = [p for p in s.points if p.u.first() != Letter(first, True)]
        if len(here) != 1 or not others:
            continue
        if any(pi1[q.u.first().symbol] == pi1[first] - 1 for q in others):
            g = Word.positive(first)
            z = translate(here[0], g, label="Z")
            fix = Fixing(auto, s.fixing.k, s.fixing.w).power(level // s.fixing.k).translated(g)
            z.fixing = fix
            base = conjugacy(fix.w, auto.alphabet).compose(auto.power(level))
            return BaseCandidate(base, z, fix.w, s.ident)
    raise ConditionFailure("C5", f"no backward singularity starts with {first}^-1 next to the end point")


def base_automorphism(auto: Endomorphism, level: int, sings: list[Singularity],
                      pair: PermutationPair, depth: int = 32) -> tuple[BaseCandidate, str, dict]:
    """Pick ``i_u ∘ ψᵏ`` fixing Z for the pair or its mirror, whichever is positive."""
    notes = {}
    found = {}
    for orientation, p in (("as-is", pair), ("mirror", pair.mirror())):
        try:
            cand = _candidate(auto, level, sings, p)
        except ConditionFailure as exc:
            notes[orientation] = exc.message
            continue
        notes[orientation] = f"u = {cand.conjugator or 'ε'}; positive = {cand.automorphism.is_positive()}"
        if cand.automorphism.is_positive():
            found[orientation] = cand
    if not found:
        raise ConditionFailure("C5", "neither the pair nor its mirror gives a positive base automorphism")
    orientation = "as-is" if "as-is" in found else "mirror"
    cand = found[orientation]
    check = is_fixed_by(cand.point, cand.automorphism, depth)
    if not check:
        raise ConditionFailure("C5", "the base automorphism does not fix the end point")
    notes["c5_depth"] = depth
    return cand, orientation, notes


# steps 4 to 7 ------------------------------------------------------------


@dataclass
class DecisionState:
    stage: int
    remainder: Endomorphism
    pair: PermutationPair
    sings: list[Singularity]
    twists: list[ElementaryTwist] = field(default_factory=list)
    pairs: list[PermutationPair] = field(default_factory=list)


@dataclass
class StageOutcome:
    state: DecisionState
    done: bool = False


def _graphs(sings: list[Singularity], alphabet) -> tuple[SingGraph, SingGraph]:
    return build_graphs(sings, tuple(alphabet))


def induction_step(state: DecisionState, config: Config = DEFAULT) -> StageOutcome:
    """One combinatorial Rauzy induction; raises :class:`ConditionFailure` on a failed gate."""
    alphabet = state.remainder.alphabet
    g_plus, g_minus = _graphs(state.sings, alphabet)
    check_c32(g_plus, g_minus, state.pair)
    choice = check_c33_c4(g_plus, g_minus, state.pair, state.sings)
    twist = edge_twist(state.pair, choice.kind)
    undo = twist.inverse_endomorphism(alphabet)
    remainder = undo.compose(state.remainder)
    twists = state.twists + [twist]
    nxt_pair = induce_pair(state.pair, choice.kind)
    pairs = state.pairs + [nxt_pair]
    if remainder.is_identity():
        return StageOutcome(DecisionState(state.stage + 1, remainder, nxt_pair, state.sings, twists, pairs), True)
    if not remainder.is_positive():
        raise ConditionFailure("C6", f"remainder {remainder} is not positive")
    if remainder.total_image_length() >= state.remainder.total_image_length():
        raise ConditionFailure("C6", "remainder did not get shorter")
    sings = []
    for s in state.sings:
        pts = s.points
        if s.ident == choice.singularity:
            pts = [shift(p, 1 if choice.kind == 0 else -1) for p in pts]
        try:
            new_pts = [transform(undo, p) for p in pts]
            for p in new_pts:  # expose a few letters so sign violations surface here
                p.u.prefix(min(config.working_depth, 8))
                p.v.prefix(min(config.working_depth, 8))
        except (ExcludedPointError, InvalidTranslationError) as exc:
            raise ConditionFailure("C4", f"singularity {s.ident} left the subshift: {exc}") from None
        sings.append(dataclasses.replace(s, points=new_pts, fixing=None))
    return StageOutcome(DecisionState(state.stage + 1, remainder, nxt_pair, sings, twists, pairs))


def smallest_period(twists: list[ElementaryTwist], pairs: list[PermutationPair]) -> int:
    n = len(twists)
    for p in range(1, n + 1):
        if pairs[p] != pairs[0]:
            continue
        if all(twists[j + p] == twists[j] for j in range(n - p)):
            return p
    return n


def compose_twists(twists: list[ElementaryTwist], alphabet) -> Endomorphism:
    out = Endomorphism.identity(alphabet)
    for t in twists:
        out = out.compose(t.as_endomorphism(alphabet))
    return out


# end to end --------------------------------------------------------------


def decide(auto: Endomorphism, config: Config = DEFAULT) -> DecisionReport:
    diag: dict = {}
    try:
        return _decide(auto, config, diag)
    except ConditionFailure as exc:
        return DecisionReport(REJECTED, exc.condition, diag.get("stage"), exc.message, k=diag.get("k"),
                              diagnostics=diag)
    except DepthExceededError as exc:
        return DecisionReport(INCONCLUSIVE, "max-depth", diag.get("stage"), str(exc), k=diag.get("k"),
                              diagnostics=diag)
    except (MalformedGeneratorError, ConvergenceError) as exc:
        return DecisionReport(INCONCLUSIVE, type(exc).__name__, diag.get("stage"), str(exc),
                              k=diag.get("k"), diagnostics=diag)


def _decide(auto: Endomorphism, config: Config, diag: dict) -> DecisionReport:
    report = validate_positive_primitive(auto)
    if not report.ok:
        raise ConditionFailure("positive-primitive", "; ".join(report.failures))
    detection = detect_singularities(auto, config)
    level = detection.k
    diag["k"] = level
    diag["singularities"] = [s.as_dict() for s in detection.singularities]
    diag["detection"] = _jsonable(detection.diagnostics)
    sings = detection.singularities
    diag["stage"] = 0
    g_plus, g_minus = _graphs(sings, auto.alphabet)
    pair = derive_pair(g_plus, g_minus)
    diag["graphs"] = [{"forward": g_plus.as_dict(), "backward": g_minus.as_dict()}]
    check_c32(g_plus, g_minus, pair)
    check_c33_c4(g_plus, g_minus, pair, sings)
    diag["derived_pair"] = str(pair)
    cand, orientation, notes = base_automorphism(auto, level, sings, pair, config.working_depth)
    diag["base"] = notes
    if orientation == "mirror":
        pair = pair.mirror()
    base = cand.automorphism
    state = DecisionState(0, base, pair, sings, [], [pair])
    max_stages = base.total_image_length() - len(auto.alphabet) + 1
    stages = []
    for _ in range(max_stages):
        diag["stage"] = state.stage
        out = induction_step(state, config)
        state = out.state
        stages.append({"pair": str(state.pairs[-2]), "twist": str(state.twists[-1]),
                       "remainder": str(state.remainder)})
        if out.done:
            break
    else:
        raise ConditionFailure("C6", "stage bound reached without reaching the identity")
    diag["stages"] = stages
    twists = state.twists
    if compose_twists(twists, auto.alphabet) != base:
        raise AssertionError("twist product differs from the base automorphism")
    period = smallest_period(twists, state.pairs)
    delta = compose_twists(twists[:period], auto.alphabet)
    pr = perron(incidence_matrix(auto.power(level)), tol=min(config.tol, 1e-10))
    lengths = {x: float(v) for x, v in zip(auto.alphabet, pr.vector)}
    diag["perron_residual"] = pr.residual
    if config.verify:
        diag["verification"] = _verify(auto, pair, lengths, twists[:period], config)
    diag.pop("stage", None)
    return DecisionReport(ACCEPTED, None, None, "decomposed into elementary twists", level, base,
                          orientation, pair, lengths, pr.eigenvalue, twists, delta, period, diag)


def _verify(auto: Endomorphism, pair: PermutationPair, lengths: dict[str, float],
            twists: list[ElementaryTwist], config: Config) -> dict:
    c = Ciet.build(pair, lengths, auto.alphabet)
    out: dict = {}
    try:
        numeric = detect_self_induction(c, max_steps=4 * len(twists) + 8, tol=config.tol)
    except IntervalConnectionError as exc:
        numeric = None
        out["numeric_error"] = str(exc)
    out["numeric_twists"] = [str(t) for t in numeric.twists] if numeric else None
    out["numeric_matches"] = bool(numeric) and numeric.twists == twists
    cv = cross_validate(auto, c, config.verify_max_len, config.verify_depth)
    out["factors_match"] = cv.ok
    out["max_len"] = cv.max_len
    if not cv.ok:
        out["first_difference"] = cv.first_difference
    return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj
