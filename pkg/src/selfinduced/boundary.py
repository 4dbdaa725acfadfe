"""Points of the double boundary as pairs of lazily generated infinite words.

A point ``(U, V)`` of the attracting subshift reads as the bi-infinite word
``U⁻¹V``: ``U`` is made of inverse letters, ``V`` of positive ones. Only
finite prefixes are ever materialised; each coordinate knows how to extend
itself on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .automorphisms import Endomorphism, conjugacy
from .errors import (
    DepthExceededError,
    ExcludedPointError,
    InvalidTranslationError,
    MalformedGeneratorError,
)
from .words import EPSILON, Letter, Word, reduce_tuple

POSITIVE = "positive"
INVERSE = "inverse"

DEFAULT_MAX_DEPTH = 4096


def _check_sign(letters: Sequence[Letter], sign: str, exc=InvalidTranslationError) -> None:
    want_inverse = sign == INVERSE
    for i, x in enumerate(letters):
        if x.inverse != want_inverse:
            raise exc(f"letter {i} ({x}) breaks the {sign} sign class")


class LazyInfiniteWord:
    """Base class: an infinite reduced word exposed prefix by prefix."""

    sign: str = POSITIVE
    max_depth: int = DEFAULT_MAX_DEPTH

    def __init__(self):
        self._buffer: tuple[Letter, ...] = ()

    def _extend(self, n: int) -> None:  # pragma: no cover - abstract
        raise NotImplementedError

    def prefix(self, n: int) -> tuple[Letter, ...]:
        if n < 0:
            raise ValueError("negative prefix length")
        if n > self.max_depth:
            raise DepthExceededError(f"requested {n} letters, cap is {self.max_depth}")
        if len(self._buffer) < n:
            self._extend(n)
        return self._buffer[:n]

    def __getitem__(self, i: int) -> Letter:
        return self.prefix(i + 1)[i]

    def first(self) -> Letter:
        return self[0]

    def describe(self) -> str:  # pragma: no cover - overridden
        return type(self).__name__


class DevelopmentExpansion(LazyInfiniteWord):
    """Coordinates of the point with constant development ``(p, a, s)*`` under θ.

    suffix side: ``V = a·s·θ(s)·θ²(s)…``;  prefix side: ``U = p⁻¹·θ(p⁻¹)·θ²(p⁻¹)…``.
    """

    def __init__(self, subst: Endomorphism, p: str, a: str, s: str, side: str):
        super().__init__()
        self.subst, self.p, self.a, self.s, self.side = subst, p, a, s, side
        if side == "suffix":
            if not s:
                raise MalformedGeneratorError("empty suffix cannot generate V")
            self.sign = POSITIVE
            self._block = Word.positive(s)
            self._buffer = (Letter(a),) + self._block.letters
        elif side == "prefix":
            if not p:
                raise MalformedGeneratorError("empty prefix cannot generate U")
            self.sign = INVERSE
            self._block = Word.positive(p).inverse()
            self._buffer = self._block.letters
        else:
            raise ValueError(side)

    def _extend(self, n: int) -> None:
        buf = list(self._buffer)
        while len(buf) < n:
            self._block = self.subst.apply(self._block)
            buf.extend(self._block.letters)
        self._buffer = tuple(buf)

    def describe(self) -> str:
        return f"dev({self.p or 'ε'},{self.a},{self.s or 'ε'})[{self.side}]"


class LetterLimit(LazyInfiniteWord):
    """``head · lim θⁿ(seed)`` where θ(seed) starts with seed."""

    def __init__(self, subst: Endomorphism, seed: Letter, head: Sequence[Letter] = ()):
        super().__init__()
        self.subst, self.seed, self.head = subst, seed, tuple(head)
        self.sign = INVERSE if seed.inverse else POSITIVE
        start = subst.image_of(seed)
        if not start.letters or start[0] != seed:
            raise MalformedGeneratorError(f"θ({seed}) does not start with {seed}")
        if len(start) == 1:
            raise MalformedGeneratorError(f"θ fixes {seed}; the limit never grows")
        self._core = Word([seed])
        self._buffer = self.head + (seed,)

    def _extend(self, n: int) -> None:
        core = self._core
        while len(self.head) + len(core) < n:
            nxt = self.subst.apply(core)
            if len(nxt) <= len(core) or not nxt.startswith(core):
                raise MalformedGeneratorError("letter limit stalled")
            core = nxt
        self._core = core
        self._buffer = self.head + core.letters

    def describe(self) -> str:
        head = "".join(str(x) for x in self.head)
        return f"{head}lim θⁿ({self.seed})"


class Transformed(LazyInfiniteWord):
    """``left · e(source)``, freely reduced."""

    def __init__(self, source: LazyInfiniteWord, endo: Endomorphism | None = None,
                 left: Word = EPSILON, sign: str | None = None):
        super().__init__()
        # Pure translations are absorbed. Endomorphisms are not composed: a
        # composite of inverse twists cancels deeply, one layer each stays shallow.
        if isinstance(source, Transformed) and (endo is None or source.endo is None):
            inner_e, inner_left, source = source.endo, source.left, source.source
            if endo is not None:
                left = left * endo.apply(inner_left)
            else:
                left = left * inner_left
                endo = inner_e
        self.source, self.endo, self.left = source, endo, left
        self.sign = sign or source.sign
        self.max_depth = source.max_depth
        self._m = 8

    def _image(self, start: int, stop: int) -> list[Letter]:
        src = self.source.prefix(stop)[start:]
        return self.endo.apply_letters(src) if self.endo is not None else list(src)

    def _extend(self, n: int) -> None:
        m = max(self._m, n)
        while True:
            extra = max(8, m // 8)
            if m + extra > self.source.max_depth:
                raise DepthExceededError(f"needed more than {self.source.max_depth} source letters")
            stack = list(reduce_tuple(list(self.left.letters) + self._image(0, m)))
            # letters below the lowest point the continuation cancels down to are settled
            low = len(stack)
            for x in self._image(m, m + extra):
                if stack and stack[-1].symbol == x.symbol and stack[-1].inverse != x.inverse:
                    stack.pop()
                    low = min(low, len(stack))
                else:
                    stack.append(x)
            if low >= n:
                stable = tuple(stack[:low])
                _check_sign(stable, self.sign, ExcludedPointError)
                self._buffer = stable
                self._m = m
                return
            # grow by the estimated number of source letters still missing
            rate = max(low, 1) / m
            m += max(8, int((n - low) / rate) + 1)

    def describe(self) -> str:
        parts = []
        if self.left:
            parts.append(f"{self.left}·")
        if self.endo is not None:
            parts.append("T(")
        parts.append(self.source.describe())
        if self.endo is not None:
            parts.append(")")
        return "".join(parts)


@dataclass
class Fixing:
    """The point is fixed by ``∂²(i_w ∘ θ^k)`` where θ is ``base``."""

    base: Endomorphism
    k: int
    w: Word

    def power(self, r: int) -> "Fixing":
        """Fixing data of ``(i_w ∘ θ^k)^r`` written as ``i_W ∘ θ^{kr}``."""
        step = self.base.power(self.k)
        total, cur = EPSILON, self.w
        for _ in range(r):
            total = cur * total
            cur = step.apply(cur)
        # (i_w θ)^r = i_{θ^{r-1}(w)…θ(w)w} θ^r
        return Fixing(self.base, self.k * r, total)

    def translated(self, g: Word) -> "Fixing":
        """Fixing data of ``g·P`` given this fixing data for ``P``."""
        step = self.base.power(self.k)
        return Fixing(self.base, self.k, step.apply(g) * self.w * g.inverse())

    def automorphism(self) -> Endomorphism:
        return conjugacy(self.w, self.base.alphabet).compose(self.base.power(self.k))


@dataclass
class BiPoint:
    u: LazyInfiniteWord
    v: LazyInfiniteWord
    fixing: Fixing | None = None
    label: str = ""
    history: list[str] = field(default_factory=list)

    def first_letters(self) -> tuple[Letter, Letter]:
        return self.u.first(), self.v.first()

    def key(self, depth: int) -> tuple:
        return (self.u.prefix(depth), self.v.prefix(depth))

    def describe(self) -> str:
        u0, v0 = self.first_letters()
        return f"{self.label or '?'} ({u0}…, {v0}…)"


def prefix_letters(w: LazyInfiniteWord, n: int) -> Word:
    return Word._trusted(w.prefix(n))


def translate(pt: BiPoint, w: Word, label: str | None = None) -> BiPoint:
    """``(wU, wV)``; sign purity is verified on the exposed buffer."""
    u = Transformed(pt.u, None, w, sign=INVERSE)
    v = Transformed(pt.v, None, w, sign=POSITIVE)
    check = len(w) + 2
    for coord in (u, v):
        try:
            coord.prefix(check)
        except ExcludedPointError as exc:
            raise InvalidTranslationError(str(exc)) from None
    fixing = pt.fixing.translated(w) if pt.fixing is not None else None
    return BiPoint(u, v, fixing, label if label is not None else pt.label, pt.history + [f"translate {w or 'ε'}"])


def shift(pt: BiPoint, m: int = 1) -> BiPoint:
    """``S^m``: ``S`` translates by ``V₀⁻¹``, ``S⁻¹`` by ``U₀⁻¹``."""
    if m >= 0:
        g = Word._trusted(pt.v.prefix(m)).inverse()
    else:
        g = Word._trusted(pt.u.prefix(-m)).inverse()
    out = translate(pt, g)
    out.history[-1] = f"S^{m}"
    return out


def transform(action: Endomorphism, pt: BiPoint, label: str | None = None) -> BiPoint:
    """Coordinatewise ``∂²action``. Mixed signs raise :class:`ExcludedPointError`."""
    u = Transformed(pt.u, action, EPSILON, sign=INVERSE)
    v = Transformed(pt.v, action, EPSILON, sign=POSITIVE)
    u.prefix(1)
    v.prefix(1)
    return BiPoint(u, v, None, label if label is not None else pt.label, pt.history + ["transform"])


@dataclass
class FixedCheck:
    fixed: bool
    exact: bool
    depth: int

    def __bool__(self) -> bool:
        return self.fixed


def is_fixed_by(pt: BiPoint, e: Endomorphism, depth: int) -> FixedCheck:
    """Compare ``∂²e(pt)`` with ``pt`` on ``depth`` letters of both coordinates.

    A match is exact when the point's own fixing data yields ``e``;
    otherwise it is a depth-bounded approximation.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    try:
        image = transform(e, pt)
        same = image.u.prefix(depth) == pt.u.prefix(depth) and image.v.prefix(depth) == pt.v.prefix(depth)
    except ExcludedPointError:
        return FixedCheck(False, True, depth)
    if not same:
        return FixedCheck(False, True, depth)
    exact = pt.fixing is not None and pt.fixing.automorphism() == e
    return FixedCheck(True, exact, depth)


# undetermined coordinates ------------------------------------------------


def limit_letters(subst: Endomorphism, side: str, h_max: int) -> list[tuple[str, int]]:
    """Letters ``x`` with θ^h(x) ending (side="prefix") or beginning ("suffix") with x.

    Returns ``(x, h)`` with the smallest such ``h ≤ h_max``.
    """
    # for a positive map the edge letter of θ(w) only depends on the edge letter of w
    pick = -1 if side == "prefix" else 0
    step = {x: subst.images[x][pick].symbol for x in subst.alphabet}
    found: list[tuple[str, int]] = []
    edge = dict(step)
    pending = list(subst.alphabet)
    for h in range(1, h_max + 1):
        for x in list(pending):
            if edge[x] == x:
                found.append((x, h))
                pending.remove(x)
        if not pending:
            break
        edge = {x: step[y] for x, y in edge.items()}
    return sorted(found, key=lambda t: subst.alphabet.index(t[0]))


def resolve_undetermined(subst: Endomorphism, side: str, a: str, two_factors: set[str],
                         h_max: int) -> list[tuple[str, int]]:
    """Candidate seeds for the ε side of a development ``(p, a, s)``.

    ``side="prefix"`` (p = ε): seeds x with x·a a factor;
    ``side="suffix"`` (s = ε): seeds y with a·y a factor.
    """
    out = []
    for x, h in limit_letters(subst, side, h_max):
        pair = x + a if side == "prefix" else a + x
        if pair in two_factors:
            out.append((x, h))
    return out
