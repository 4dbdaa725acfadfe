"""Numeric interval exchanges: the map, Rauzy induction, orbit codings, Perron data."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .automorphisms import ElementaryTwist, Endomorphism, factors, is_primitive_matrix
from .errors import ConvergenceError, InputError, IntervalConnectionError, NotPrimitiveError
from .rauzy import PermutationPair, edge_twist, induce_pair


@dataclass(frozen=True)
class Ciet:
    pair: PermutationPair
    lengths: tuple[float, ...]  # in `letters` order
    letters: tuple[str, ...]

    @classmethod
    def build(cls, pair: PermutationPair, lengths: Mapping[str, float] | Sequence[float],
              letters: Sequence[str] | None = None) -> "Ciet":
        """``lengths`` is a mapping or a sequence in ``letters`` order (default: sorted alphabet)."""
        letters = tuple(letters) if letters is not None else tuple(sorted(pair.top))
        if sorted(letters) != sorted(pair.top):
            raise InputError("letters must be the pair's alphabet")
        if isinstance(lengths, Mapping):
            vals = tuple(float(lengths[x]) for x in letters)
        else:
            vals = tuple(float(v) for v in lengths)
        if len(vals) != len(letters):
            raise InputError("one length per letter is required")
        if any(not v > 0 or not math.isfinite(v) for v in vals):
            raise InputError("lengths must be positive and finite")
        return cls(pair, vals, letters)

    def length(self, x: str) -> float:
        return self.lengths[self.letters.index(x)]

    def length_map(self) -> dict[str, float]:
        return dict(zip(self.letters, self.lengths))

    @property
    def total(self) -> float:
        return math.fsum(self.lengths)

    def offsets(self, row: int) -> dict[str, float]:
        """Λ₀ (row 0) or Λ₁ (row 1): left end of each letter's interval."""
        order = self.pair.top if row == 0 else self.pair.bottom
        out, acc = {}, []
        for x in order:
            out[x] = math.fsum(acc)
            acc.append(self.length(x))
        return out

    def domain(self, x: str) -> tuple[float, float]:
        left = self.offsets(0)[x]
        return left, left + self.length(x)

    def normalized(self) -> np.ndarray:
        v = np.array(self.lengths)
        return v / v.sum()


def _locate(c: Ciet, x: float, row: int) -> str:
    if not 0 <= x < c.total:
        raise InputError(f"{x} is outside [0, {c.total})")
    order = c.pair.top if row == 0 else c.pair.bottom
    off = c.offsets(row)
    for letter in reversed(order):
        if x >= off[letter]:
            return letter
    return order[0]


def iet_apply(c: Ciet, x: float) -> float:
    a = _locate(c, x, 0)
    return x - c.offsets(0)[a] + c.offsets(1)[a]


def iet_inverse(c: Ciet, x: float) -> float:
    a = _locate(c, x, 1)
    return x - c.offsets(1)[a] + c.offsets(0)[a]


@dataclass
class InductionStep:
    kind: int
    twist: ElementaryTwist
    ciet: Ciet


def rauzy_induce_numeric(c: Ciet, tol: float = 1e-9) -> InductionStep:
    a0, a1 = c.pair.alpha0, c.pair.alpha1
    l0, l1 = c.length(a0), c.length(a1)
    if abs(l0 - l1) <= tol * max(l0, l1):
        raise IntervalConnectionError(f"λ_{a0} = λ_{a1} within tolerance")
    kind = 0 if l0 > l1 else 1
    longer, shorter = (a0, a1) if kind == 0 else (a1, a0)
    lengths = c.length_map()
    lengths[longer] = lengths[longer] - lengths[shorter]
    nxt = Ciet.build(induce_pair(c.pair, kind), lengths, c.letters)
    return InductionStep(kind, edge_twist(c.pair, kind), nxt)


@dataclass
class Trajectory:
    steps: list[InductionStep] = field(default_factory=list)

    @property
    def twists(self) -> list[ElementaryTwist]:
        return [s.twist for s in self.steps]


def simulate(c: Ciet, steps: int, tol: float = 1e-9) -> Trajectory:
    out = Trajectory()
    cur = c
    for _ in range(steps):
        st = rauzy_induce_numeric(cur, tol)
        out.steps.append(st)
        cur = st.ciet
    return out


@dataclass
class SelfInduction:
    steps: int
    dilation: float  # η with λ⁽⁰⁾ = η λ⁽ⁿ⁾
    twists: list[ElementaryTwist]


def _same_shape(a: Ciet, b: Ciet, tol: float) -> bool:
    return a.pair == b.pair and bool(np.max(np.abs(a.normalized() - b.normalized())) <= tol)


def detect_self_induction(c: Ciet, max_steps: int = 1000, tol: float = 1e-9) -> SelfInduction | None:
    cur = c
    twists = []
    for n in range(1, max_steps + 1):
        st = rauzy_induce_numeric(cur, tol)
        twists.append(st.twist)
        cur = st.ciet
        if _same_shape(c, cur, tol):
            return SelfInduction(n, c.total / cur.total, twists)
    return None


def orbit_coding(c: Ciet, x: float, n: int, direction: str = "forward") -> str:
    """Letters of the intervals visited by ``x`` under the map (or its inverse)."""
    if direction not in ("forward", "backward"):
        raise ValueError(direction)
    if not 0 <= x < c.total:
        raise InputError(f"{x} is outside [0, {c.total})")
    src, dst = (0, 1) if direction == "forward" else (1, 0)
    order = c.pair.top if src == 0 else c.pair.bottom
    start, end = c.offsets(src), c.offsets(dst)
    cuts = [start[a] for a in order]
    moves = [end[a] - start[a] for a in order]
    total = c.total
    out = []
    for _ in range(n):
        i = bisect.bisect_right(cuts, x) - 1
        out.append(order[i])
        x += moves[i]
        if x >= total:  # rounding at the right end
            x -= total
        elif x < 0:
            x = 0.0
    return "".join(out)


@dataclass
class PerronResult:
    eigenvalue: float
    vector: np.ndarray  # Σ = 1
    residual: float


def perron(m, tol: float = 1e-12, max_iter: int = 100_000) -> PerronResult:
    """Dominant eigenpair of a primitive nonnegative matrix by power iteration."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError("a square matrix is required")
    if (m < 0).any() or not is_primitive_matrix(m):
        raise NotPrimitiveError("Perron data needs a primitive nonnegative matrix")
    # I + M has the same eigenvector and a strictly dominant eigenvalue
    shifted = m + np.eye(m.shape[0])
    v = np.full(m.shape[0], 1.0 / m.shape[0])
    for _ in range(max_iter):
        w = shifted @ v
        w /= w.sum()
        if np.max(np.abs(w - v)) < tol * 1e-3:
            v = w
            break
        v = w
    else:
        raise ConvergenceError("power iteration did not converge")
    mv = m @ v
    eta = float(mv.sum() / v.sum())
    residual = float(np.max(np.abs(mv - eta * v)))
    if residual > max(tol, 1e-10) * max(1.0, eta):
        raise ConvergenceError(f"residual {residual:.3e} above tolerance")
    return PerronResult(eta, v, residual)


@dataclass
class CrossValidation:
    ok: bool
    max_len: int
    missing: list[str]  # in the substitution language but not in the coding
    extra: list[str]  # in the coding but not in the substitution language

    @property
    def first_difference(self) -> str | None:
        diff = sorted(self.missing + self.extra, key=lambda w: (len(w), w))
        return diff[0] if diff else None


GENERIC_OFFSET = (math.sqrt(5) - 1) / 2 * 0.01 + math.pi / 1000


def coding_factors(c: Ciet, max_len: int, depth: int, x: float | None = None) -> set[str]:
    x = GENERIC_OFFSET * c.total if x is None else x
    word = orbit_coding(c, x, depth)
    out = set()
    for n in range(1, max_len + 1):
        out.update(word[i:i + n] for i in range(len(word) - n + 1))
    return out


def cross_validate(e: Endomorphism, c: Ciet, max_len: int = 10, depth: int = 200_000) -> CrossValidation:
    """Compare the substitution language with the factors of a generic orbit."""
    lang = factors(e, max_len)
    coded = coding_factors(c, max_len, depth)
    missing = sorted(lang - coded, key=lambda w: (len(w), w))
    extra = sorted(coded - lang, key=lambda w: (len(w), w))
    return CrossValidation(not missing and not extra, max_len, missing, extra)
