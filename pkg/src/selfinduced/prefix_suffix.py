"""Prefix-suffix automaton, constant developments and singularity detection.

Singular points are found by comparing γ-orbits of the prefixes (or
suffixes) of constant developments of ψᵏ. Two points whose orbits collide
first at ``(i, j)`` are shifted into a common singularity; every point is
then tagged with the conjugator ``w`` such that ``i_w ∘ ψᴷ`` fixes it, and
points sharing ``(K, w)`` form one singularity.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

from .automorphisms import Endomorphism, factors
from .boundary import (
    BiPoint,
    DevelopmentExpansion,
    Fixing,
    LetterLimit,
    is_fixed_by,
    resolve_undetermined,
    shift,
)
from .config import DEFAULT, Config
from .errors import InputError
from .words import EPSILON, Letter, Word

PREFIX = "prefix"
SUFFIX = "suffix"
FORWARD = "forward"
BACKWARD = "backward"
MIXED = "mixed"


# automaton ----------------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    source: str  # the letter a
    target: str  # the letter b with ψ(b) = p a s
    p: str
    a: str
    s: str

    @property
    def label(self) -> tuple[str, str, str]:
        return (self.p, self.a, self.s)


@dataclass
class PSAutomaton:
    vertices: tuple[str, ...]
    edges: list[Edge]

    def loops(self) -> list[Edge]:
        return [e for e in self.edges if e.source == e.target]


def build_automaton(e: Endomorphism) -> PSAutomaton:
    if not e.is_positive():
        raise InputError("the prefix-suffix automaton needs a positive endomorphism")
    edges = []
    for b in e.alphabet:
        img = e.images[b].symbols()
        for pos, a in enumerate(img):
            edges.append(Edge(a, b, img[:pos], a, img[pos + 1:]))
    return PSAutomaton(e.alphabet, edges)


@dataclass(frozen=True)
class ConstantDevelopment:
    k: int
    p: str
    a: str
    s: str

    def __str__(self) -> str:
        return f"({self.p or 'ε'},{self.a},{self.s or 'ε'})*"


def constant_developments(auto: Endomorphism, k: int) -> list[ConstantDevelopment]:
    """All ``(p, a, s)`` with ``ψᵏ(a) = p·a·s`` (self-loops of the ψᵏ automaton)."""
    if k < 1:
        raise ValueError("k must be positive")
    subst = auto.power(k)
    return [ConstantDevelopment(k, e.p, e.a, e.s) for e in build_automaton(subst).loops()]


# γ maps -------------------------------------------------------------------


def gamma(images: dict[str, str] | Endomorphism, side: str, u: str) -> str:
    """prefix side: image(last)·u[:-1];  suffix side: u[1:]·image(first)."""
    if isinstance(images, Endomorphism):
        images = {x: w.symbols() for x, w in images.images.items()}
    if not u:
        raise InputError("γ is undefined on the empty word")
    if side == PREFIX:
        return images[u[-1]] + u[:-1]
    if side == SUFFIX:
        return u[1:] + images[u[0]]
    raise ValueError(side)


@dataclass(frozen=True)
class MatchResult:
    side: str
    i: int
    j: int
    w: Word


@dataclass(frozen=True)
class CapReached:
    """Neither a match nor a proof of absence within the γ caps."""

    side: str
    first: ConstantDevelopment
    second: ConstantDevelopment


def _orbit(images: dict[str, str], side: str, u: str, iter_cap: int, len_cap: int) -> dict[str, int]:
    out: dict[str, int] = {}
    for i in range(iter_cap + 1):
        if len(u) > len_cap:
            break
        out.setdefault(u, i)
        u = gamma(images, side, u)
    return out


def match_development_pair(d1: ConstantDevelopment, d2: ConstantDevelopment, side: str,
                           auto: Endomorphism, iter_cap: int = 64,
                           len_cap: int | None = None) -> MatchResult | CapReached | None:
    """Smallest ``(i, j)`` with ``γⁱ(x) = γʲ(y)`` for the prefixes (suffixes) x, y."""
    if d1.k != d2.k:
        raise ValueError("developments must use the same power")
    x = d1.p if side == PREFIX else d1.s
    y = d2.p if side == PREFIX else d2.s
    if not x or not y:
        if not x and not y:
            return MatchResult(side, 0, 0, EPSILON)
        return None
    subst = auto.power(d1.k)
    images = {c: w.symbols() for c, w in subst.images.items()}
    if len_cap is None:
        len_cap = 16 * len(auto.alphabet) * max(len(v) for v in images.values())
    o1 = _orbit(images, side, x, iter_cap, len_cap)
    o2 = _orbit(images, side, y, iter_cap, len_cap)
    hits = [(i + j, i, j, u) for u, j in o2.items() if (i := o1.get(u)) is not None]
    if not hits:
        return CapReached(side, d1, d2)
    _, i, j, u = min(hits)
    w = Word.positive(u)
    return MatchResult(side, i, j, w if side == PREFIX else w.inverse())


# detection ----------------------------------------------------------------


@dataclass
class Singularity:
    ident: int
    points: list[BiPoint]
    kind: str
    fixing: Fixing | None
    sources: list[set[str]] = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.fixing.k

    @property
    def w(self) -> Word:
        return self.fixing.w

    def first_letters(self) -> list[tuple[Letter, Letter]]:
        return [p.first_letters() for p in self.points]

    def as_dict(self) -> dict:
        return {
            "id": self.ident,
            "kind": self.kind,
            "k": self.k,
            "w": str(self.w),
            "points": [
                {"u0": str(p.u.first()), "v0": str(p.v.first()), "sources": sorted(src)}
                for p, src in zip(self.points, self.sources)
            ],
        }


@dataclass
class DetectionResult:
    k: int
    singularities: list[Singularity]
    diagnostics: dict = field(default_factory=dict)

    @property
    def forward(self) -> list[Singularity]:
        return [s for s in self.singularities if s.kind == FORWARD]

    @property
    def backward(self) -> list[Singularity]:
        return [s for s in self.singularities if s.kind == BACKWARD]


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> None:
        self.add(x)
        self.add(y)
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx

    def groups(self) -> list[list]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


def _resolved_points(auto: Endomorphism, d: ConstantDevelopment, subst: Endomorphism,
                     two_factors: set[str], h_max: int) -> Iterator[BiPoint]:
    """Every subshift point with constant development ``d``."""
    base = str(d)
    if d.p and d.s:
        u = DevelopmentExpansion(subst, d.p, d.a, d.s, PREFIX)
        v = DevelopmentExpansion(subst, d.p, d.a, d.s, SUFFIX)
        yield BiPoint(u, v, Fixing(auto, d.k, Word.positive(d.p)), base)
    elif not d.p:
        v = DevelopmentExpansion(subst, d.p, d.a, d.s, SUFFIX)
        for x, h in resolve_undetermined(subst, PREFIX, d.a, two_factors, h_max):
            u = LetterLimit(subst.power(h), Letter(x, True))
            yield BiPoint(u, v, Fixing(auto, d.k * h, EPSILON), f"{base}[U=lim {x}^-1]")
    else:
        u = DevelopmentExpansion(subst, d.p, d.a, d.s, PREFIX)
        for y, h in resolve_undetermined(subst, SUFFIX, d.a, two_factors, h_max):
            v = LetterLimit(subst.power(h), Letter(y), head=(Letter(d.a),))
            fix = Fixing(auto, d.k, Word.positive(d.p)).power(h)
            yield BiPoint(u, v, fix, f"{base}[V={d.a}·lim {y}]")


def _shift_label(label: str, m: int) -> str:
    return label if m == 0 else f"S^{m}{label}"


class _Pool:
    """Deduplicated points (keyed by exposed prefixes) plus co-membership."""

    def __init__(self, depth: int):
        self.depth = depth
        self.points: dict[tuple, BiPoint] = {}
        self.sources: dict[tuple, set[str]] = {}
        self.uf = _UnionFind()
        self.candidates: list[BiPoint] = []

    def add(self, pt: BiPoint) -> tuple:
        key = pt.key(self.depth)
        if key not in self.points:
            self.points[key] = pt
            self.sources[key] = set()
        else:
            old = self.points[key]
            if pt.fixing is not None and (old.fixing is None or pt.fixing.k < old.fixing.k):
                self.points[key] = pt
        self.sources[key].add(pt.label)
        self.uf.add(key)
        return key

    def union(self, a: tuple, b: tuple) -> None:
        if a != b:
            self.uf.union(a, b)

    def signature(self) -> frozenset:
        return frozenset(frozenset(g) for g in self.uf.groups() if len(g) >= 2)


def _collect(pool: _Pool, auto: Endomorphism, k: int, two_factors: set[str], cfg: Config,
             diag: dict, extra_shifts: int = 0) -> None:
    n = len(auto.alphabet)
    subst = auto.power(k)
    devs = constant_developments(auto, k)
    resolved = {d: [_capped(p, cfg.max_depth) for p in _resolved_points(auto, d, subst, two_factors, n)]
                for d in devs}
    diag.setdefault("developments", {})[k] = [str(d) for d in devs]
    len_cap = cfg.gamma_len_factor * n * max(len(w) for w in subst.images.values())
    capped = 0
    for d in devs:  # several points with one development
        pts = resolved[d]
        if len(pts) < 2:
            continue
        m = 0 if not d.p else 1
        keys = [pool.add(_relabel(shift(p, m), _shift_label(p.label, m))) for p in pts]
        for other in keys[1:]:
            pool.union(keys[0], other)
    for d1, d2 in itertools.combinations(devs, 2):
        for side in (PREFIX, SUFFIX):
            res = match_development_pair(d1, d2, side, auto, cfg.gamma_cap, len_cap)
            if isinstance(res, CapReached):
                capped += 1
                continue
            if res is None:
                continue
            step = -1 if side == PREFIX else 1
            m1, m2 = (-res.i, -res.j) if side == PREFIX else (res.i + 1, res.j + 1)
            for p1 in resolved[d1]:
                for p2 in resolved[d2]:
                    k1 = pool.add(_relabel(shift(p1, m1), _shift_label(p1.label, m1)))
                    k2 = pool.add(_relabel(shift(p2, m2), _shift_label(p2.label, m2)))
                    pool.union(k1, k2)
                    # the collision persists at (i+t, j+t); those points only become candidates
                    for t in range(1, extra_shifts + 1):
                        for pt, m in ((p1, m1 + step * t), (p2, m2 + step * t)):
                            pool.candidates.append(_relabel(shift(pt, m), _shift_label(pt.label, m)))
    diag.setdefault("pairs_without_match_within_cap", {})[k] = capped


def _capped(pt: BiPoint, max_depth: int) -> BiPoint:
    pt.u.max_depth = pt.v.max_depth = max_depth
    return pt


def _relabel(pt: BiPoint, label: str) -> BiPoint:
    pt.label = label
    return pt


def _kind(points: list[BiPoint], depth: int) -> str:
    us = {p.u.prefix(depth) for p in points}
    vs = {p.v.prefix(depth) for p in points}
    if len(us) == 1:
        return FORWARD
    if len(vs) == 1:
        return BACKWARD
    return MIXED


def _branches(points: list[BiPoint]) -> bool:
    """Two points sharing one first letter and differing in the other."""
    for p, q in itertools.combinations(points, 2):
        (pu, pv), (qu, qv) = p.first_letters(), q.first_letters()
        if (pu == qu) != (pv == qv):
            return True
    return False


def _common_level(groups: list[list[BiPoint]], h_cap: int, max_len: int) -> int | None:
    """Smallest K (multiple of every point's own level) giving one conjugator per group."""
    base = 1
    for g in groups:
        for p in g:
            base = math.lcm(base, p.fixing.k)
    for r in range(1, h_cap + 1):
        level = base * r
        ok = True
        for g in groups:
            ws = {p.fixing.power(level // p.fixing.k).w for p in g}
            if len(ws) != 1:
                ok = False
                break
        if ok:
            return level
        if max(len(p.fixing.base.power(level).images[x]) for g in groups for p in g[:1]
               for x in p.fixing.base.alphabet) > max_len:
            break
    return None


def detect_singularities(auto: Endomorphism, config: Config = DEFAULT) -> DetectionResult:
    """Find the singularities of a positive primitive ψ and their fixing data."""
    if not auto.is_positive():
        raise InputError("singularity detection needs a positive automorphism")
    n = len(auto.alphabet)
    two_factors = {f for f in factors(auto, 2) if len(f) == 2}
    pool = _Pool(config.working_depth)
    diag: dict = {"k_scanned": []}
    previous = None
    for k in range(1, config.k_bound(n) + 1):
        subst = auto.power(k)
        if max(len(w) for w in subst.images.values()) > config.max_power_length:
            diag["stopped"] = f"ψ^{k} exceeds the word-length cap"
            break
        _collect(pool, auto, k, two_factors, config, diag)
        diag["k_scanned"].append(k)
        sig = pool.signature()
        full = len(sig) == 2 * n - 2 and all(len(g) == 2 for g in sig)
        if full:
            diag["stopped"] = f"k={k}: 2N-2 singularities of two points (the maximum)"
            break
        if sig == previous:
            diag["stopped"] = f"k={k}: grouping unchanged from k={k - 1}"
            break
        previous = sig
    else:
        diag["stopped"] = "k bound reached"
    sig = pool.signature()
    if not (len(sig) == 2 * n - 2 and all(len(g) == 2 for g in sig)):
        # short of the maximum: also try the non-minimal collisions
        for k in diag["k_scanned"]:
            _collect(pool, auto, k, two_factors, config, {}, extra_shifts=2)
        diag["non_minimal_shifts"] = 2

    groups = [[pool.points[key] for key in g] for g in pool.signature()]
    branching = [g for g in groups if _branches(g)]
    if len(branching) < len(groups):
        diag["groups_without_branching"] = len(groups) - len(branching)
    groups = branching
    srcs = {id(pool.points[key]): pool.sources[key] for key in pool.points}
    h_cap = n * max(1, 4 * n - 4)
    level = _common_level(groups, h_cap, config.max_power_length) if groups else 1
    if level is None:
        diag["fixing_conflict"] = "points grouped by γ-matches have no common conjugator within the h cap"
        level = 1
        for g in groups:
            for p in g:
                level = math.lcm(level, p.fixing.k)
    # merge groups fixed by the same map
    by_w: dict[Word, list[BiPoint]] = {}
    order: list[Word] = []
    for g in groups:
        for p in g:
            w = p.fixing.power(level // p.fixing.k).w
            if w not in by_w:
                by_w[w] = []
                order.append(w)
            if all(q is not p for q in by_w[w]):
                by_w[w].append(p)
    added = 0
    for c in pool.candidates:
        if c.fixing is None or level % c.fixing.k:
            continue
        w = c.fixing.power(level // c.fixing.k).w
        key = c.key(config.working_depth)
        if w in by_w and all(q.key(config.working_depth) != key for q in by_w[w]):
            by_w[w].append(c)
            added += 1
    if pool.candidates:
        diag["non_minimal_points_added"] = added
    sings = []
    depth = config.working_depth
    for w in order:
        pts = by_w[w]
        pts.sort(key=lambda p: (str(p.u.first()), str(p.v.first()), p.label))
        sings.append(Singularity(0, pts, _kind(pts, depth), Fixing(auto, level, w),
                                 [srcs.get(id(p), {p.label}) for p in pts]))
    sings.sort(key=lambda s: (s.kind != FORWARD, [(str(a), str(b)) for a, b in s.first_letters()]))
    for i, s in enumerate(sings):
        s.ident = i
    unverified = []
    for s in sings:
        e = s.fixing.automorphism()
        for p in s.points:
            if not is_fixed_by(p, e, min(depth, 16)):
                unverified.append((s.ident, p.label))
    if unverified:
        diag["not_fixed"] = unverified
    diag["level"] = level
    return DetectionResult(level, sings, diag)
