"""Forward/backward singularity graphs, pair derivation and the induction type.

Each two-point forward singularity gives an edge between the first letters
of its two ``V`` coordinates, labelled by the shared ``U`` letter; backward
singularities give the mirror-image edges in the backward graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .boundary import BiPoint
from .errors import ConditionFailure
from .prefix_suffix import BACKWARD, FORWARD, Singularity
from .rauzy import PermutationPair, is_irreducible


@dataclass(frozen=True)
class GraphEdge:
    x: str
    y: str
    label: str
    provenance: int  # singularity id

    def ends(self) -> tuple[str, str]:
        return (self.x, self.y)


@dataclass
class SingGraph:
    nodes: tuple[str, ...]
    edges: list[GraphEdge]

    def degree(self, v: str) -> int:
        return sum((e.x == v) + (e.y == v) for e in self.edges)

    def leaves(self) -> list[str]:
        return [v for v in self.nodes if self.degree(v) == 1]

    def distances(self, source: str) -> dict[str, int]:
        adj: dict[str, list[str]] = {v: [] for v in self.nodes}
        for e in self.edges:
            adj[e.x].append(e.y)
            adj[e.y].append(e.x)
        dist = {source: 0}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist

    def edge_distance(self, source: str, e: GraphEdge) -> int:
        d = self.distances(source)
        return min(d[e.x], d[e.y])

    def labels(self) -> set[str]:
        return {e.label for e in self.edges}

    def as_dict(self) -> dict:
        return {"edges": [{"nodes": [e.x, e.y], "label": e.label, "singularity": e.provenance}
                          for e in self.edges]}


def _edge_from(s: Singularity, forward: bool) -> GraphEdge:
    if len(s.points) != 2:
        raise ConditionFailure("C1", f"singularity {s.ident} has {len(s.points)} points")
    p, q = s.points
    if forward:
        x, y = p.v.first().symbol, q.v.first().symbol
        label = p.u.first().symbol
    else:
        x, y = p.u.first().symbol, q.u.first().symbol
        label = p.v.first().symbol
    if x == y:
        raise ConditionFailure("C3.1", f"singularity {s.ident} does not branch in its first letters")
    return GraphEdge(*sorted((x, y)), label, s.ident)


def check_c1_c2(sings: list[Singularity], n: int) -> None:
    if len(sings) != 2 * n - 2 or any(len(s.points) != 2 for s in sings):
        sizes = [len(s.points) for s in sings]
        raise ConditionFailure("C1", f"need {2 * n - 2} singularities of 2 points, found {len(sings)} with sizes {sizes}")
    fw = sum(s.kind == FORWARD for s in sings)
    bw = sum(s.kind == BACKWARD for s in sings)
    if fw != n - 1 or bw != n - 1:
        raise ConditionFailure("C2", f"need {n - 1} forward and {n - 1} backward singularities, found {fw} and {bw}")


def build_graphs(sings: list[Singularity], alphabet: tuple[str, ...]) -> tuple[SingGraph, SingGraph]:
    check_c1_c2(sings, len(alphabet))
    fw = [_edge_from(s, True) for s in sings if s.kind == FORWARD]
    bw = [_edge_from(s, False) for s in sings if s.kind == BACKWARD]
    return SingGraph(alphabet, fw), SingGraph(alphabet, bw)


def check_c31(g: SingGraph) -> bool:
    """Connected, two nodes of degree 1 and the rest of degree 2."""
    n = len(g.nodes)
    if len(g.edges) != n - 1 or len({e.ends() for e in g.edges}) != len(g.edges):
        return False
    degrees = sorted(g.degree(v) for v in g.nodes)
    if degrees != [1, 1] + [2] * (n - 2):
        return False
    return len(g.distances(g.nodes[0])) == n


def _pair_of_edges(g: SingGraph, closer):
    """First two edges with distinct labels, ordered by ``closer``."""
    edges = sorted(g.edges, key=closer)
    for i, e in enumerate(edges):
        for f in edges[i + 1:]:
            if e.label != f.label:
                return e, f
    return None


def derive_pair(g_plus: SingGraph, g_minus: SingGraph) -> PermutationPair:
    for name, g in (("forward", g_plus), ("backward", g_minus)):
        if not check_c31(g):
            raise ConditionFailure("C3.1", f"the {name} graph is not a path")
    n = len(g_plus.nodes)
    alpha = min(g_plus.leaves())
    d_alpha = g_plus.distances(alpha)
    pi0 = dict(d_alpha)
    plus_pair = _pair_of_edges(g_plus, lambda e: g_plus.edge_distance(alpha, e))
    if plus_pair is not None:  # two distinct labels in the forward graph
        ea, eb = plus_pair
        a, b = ea.label, eb.label
        beta = next(v for v in g_minus.leaves()
                    if g_minus.distances(v)[a] < g_minus.distances(v)[b])
        pi1 = g_minus.distances(beta)
    else:
        minus_pair = _pair_of_edges(g_minus, lambda e: d_alpha[e.label])
        if minus_pair is not None:
            ea, eb = minus_pair
            if d_alpha[ea.label] == d_alpha[eb.label]:
                raise ConditionFailure("C3.3", "backward labels are not ordered by the forward graph")
            beta = next(v for v in g_minus.leaves()
                        if g_minus.edge_distance(v, ea) < g_minus.edge_distance(v, eb))
            pi1 = g_minus.distances(beta)
        else:
            beta0 = g_plus.edges[0].label
            beta1 = g_minus.edges[0].label
            if beta0 != beta1:
                raise ConditionFailure("C3.2", f"forward label {beta0} differs from backward label {beta1}")
            # either end of the forward path is a valid start; pick one the backward graph also ends at
            ends = [v for v in sorted(g_plus.leaves()) if g_minus.degree(v) == 1]
            if not ends:
                raise ConditionFailure("C3.2", "no end of the forward graph is an end of the backward graph")
            alpha = ends[0]
            pi0 = g_plus.distances(alpha)
            d = g_minus.distances(alpha)
            pi1 = {x: n - 1 - d[x] for x in g_minus.nodes}
    return PermutationPair.from_maps(pi0, pi1)


@dataclass
class InductionChoice:
    kind: int  # 0 or 1
    singularity: int
    point: BiPoint


def check_c32(g_plus: SingGraph, g_minus: SingGraph, p: PermutationPair) -> None:
    for name, g, pi, root in (("forward", g_plus, p.pi0, p.top[0]), ("backward", g_minus, p.pi1, p.bottom[0])):
        if g.degree(root) != 1:
            raise ConditionFailure("C3.2", f"{root} is not an end of the {name} graph")
        if g.distances(root) != pi:
            raise ConditionFailure("C3.2", f"{name} graph distances disagree with the pair")


def check_c33(g_plus: SingGraph, g_minus: SingGraph, p: PermutationPair) -> None:
    for name, g, root, other in (("forward", g_plus, p.top[0], p.pi1), ("backward", g_minus, p.bottom[0], p.pi0)):
        edges = g.edges
        for e in edges:
            for f in edges:
                if e.label == f.label:
                    continue
                closer = g.edge_distance(root, e) < g.edge_distance(root, f)
                if (other[e.label] < other[f.label]) != closer:
                    raise ConditionFailure(
                        "C3.3", f"{name} labels {e.label}, {f.label} are out of order")


def check_c33_c4(g_plus: SingGraph, g_minus: SingGraph, p: PermutationPair,
                 sings: list[Singularity]) -> InductionChoice:
    if not is_irreducible(p):
        raise ConditionFailure("C3.2", f"pair {p} is reducible")
    check_c33(g_plus, g_minus, p)
    a0, a1 = p.alpha0, p.alpha1
    hits = [(s, q) for s in sings for q in s.points
            if q.u.first().symbol == a1 and q.u.first().inverse
            and q.v.first().symbol == a0]
    if len(hits) != 1:
        raise ConditionFailure("C4", f"{len(hits)} points start with ({a1}^-1, {a0}), need exactly 1")
    s, q = hits[0]
    kind = 0 if s.kind == BACKWARD else 1
    # the forward edge at α₀ is labelled α₁ exactly for type 1
    at_end = [e for e in g_plus.edges if a0 in e.ends()]
    edge_kind = 1 if len(at_end) == 1 and at_end[0].label == a1 else 0
    if edge_kind != kind:
        raise ConditionFailure(
            "C4", f"singularity kind gives type {kind} but the forward edge at {a0} gives type {edge_kind}")
    return InductionChoice(kind, s.ident, q)
