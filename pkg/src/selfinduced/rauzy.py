"""Permutation pairs, Rauzy induction on pairs, edge twists and Rauzy classes."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .automorphisms import ElementaryTwist
from .errors import InputError


@dataclass(frozen=True)
class PermutationPair:
    """Two orderings of one alphabet: ``top`` lists letters by π₀, ``bottom`` by π₁."""

    top: tuple[str, ...]
    bottom: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "top", tuple(self.top))
        object.__setattr__(self, "bottom", tuple(self.bottom))
        if len(set(self.top)) != len(self.top) or sorted(self.top) != sorted(self.bottom):
            raise InputError("both rows must list the same letters exactly once")
        if len(self.top) < 2:
            raise InputError("a pair needs at least two letters")

    @classmethod
    def parse(cls, text: str) -> "PermutationPair":
        """``"abcd/dacb"``: top row then bottom row."""
        parts = text.replace(" ", "").split("/")
        if len(parts) != 2:
            raise InputError(f"expected 'top/bottom', got {text!r}")
        return cls(tuple(parts[0]), tuple(parts[1]))

    @classmethod
    def from_maps(cls, pi0: dict[str, int], pi1: dict[str, int]) -> "PermutationPair":
        n = len(pi0)
        if set(pi0) != set(pi1) or sorted(pi0.values()) != list(range(n)) or sorted(pi1.values()) != list(range(n)):
            raise InputError("π₀ and π₁ must be bijections onto 0..N-1")
        return cls(tuple(sorted(pi0, key=pi0.get)), tuple(sorted(pi1, key=pi1.get)))

    @property
    def n(self) -> int:
        return len(self.top)

    @property
    def pi0(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.top)}

    @property
    def pi1(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.bottom)}

    @property
    def alpha0(self) -> str:
        return self.top[-1]

    @property
    def alpha1(self) -> str:
        return self.bottom[-1]

    def mirror(self) -> "PermutationPair":
        return PermutationPair(self.top[::-1], self.bottom[::-1])

    def __str__(self) -> str:
        return "".join(self.top) + "/" + "".join(self.bottom)


def is_irreducible(p: PermutationPair) -> bool:
    for k in range(p.n - 1):
        if set(p.top[: k + 1]) == set(p.bottom[: k + 1]):
            return False
    return True


def _require_irreducible(p: PermutationPair) -> None:
    if not is_irreducible(p):
        raise InputError(f"pair {p} is reducible")


def induce_pair(p: PermutationPair, kind: int) -> PermutationPair:
    """Type 0 moves α₁ right after α₀ in the bottom row; type 1 moves α₀ after α₁ on top."""
    _require_irreducible(p)
    if kind == 0:
        row = list(p.bottom[:-1])
        row.insert(row.index(p.alpha0) + 1, p.alpha1)
        return PermutationPair(p.top, tuple(row))
    if kind == 1:
        row = list(p.top[:-1])
        row.insert(row.index(p.alpha1) + 1, p.alpha0)
        return PermutationPair(tuple(row), p.bottom)
    raise ValueError(f"induction type must be 0 or 1, got {kind!r}")


def edge_twist(p: PermutationPair, kind: int) -> ElementaryTwist:
    _require_irreducible(p)
    if kind == 0:
        return ElementaryTwist(p.alpha1, p.alpha0)
    if kind == 1:
        return ElementaryTwist(p.alpha0, p.alpha1, prepend=True)
    raise ValueError(f"induction type must be 0 or 1, got {kind!r}")


@dataclass(frozen=True)
class RauzyEdge:
    source: PermutationPair
    kind: int
    target: PermutationPair
    twist: ElementaryTwist


@dataclass
class RauzyClass:
    nodes: list[PermutationPair]
    edges: list[RauzyEdge] = field(default_factory=list)

    def out_degree(self, p: PermutationPair) -> int:
        return sum(1 for e in self.edges if e.source == p)

    def in_degree(self, p: PermutationPair) -> int:
        return sum(1 for e in self.edges if e.target == p)

    def as_dict(self) -> dict:
        return {
            "nodes": [str(p) for p in self.nodes],
            "edges": [
                {"from": str(e.source), "type": e.kind, "to": str(e.target), "twist": str(e.twist)}
                for e in self.edges
            ],
        }


def enumerate_class(p: PermutationPair) -> RauzyClass:
    _require_irreducible(p)
    seen = {p}
    order = [p]
    edges = []
    queue = deque([p])
    while queue:
        cur = queue.popleft()
        for kind in (0, 1):
            nxt = induce_pair(cur, kind)
            if not is_irreducible(nxt):  # cannot happen from an irreducible pair
                raise AssertionError(f"induction left the irreducible pairs at {cur}")
            edges.append(RauzyEdge(cur, kind, nxt, edge_twist(cur, kind)))
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    return RauzyClass(order, edges)
