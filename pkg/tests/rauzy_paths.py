"""Random closed Rauzy paths and the twist products they spell."""

import random
from collections import deque

from selfinduced.automorphisms import incidence_matrix, is_primitive_matrix
from selfinduced.decision import compose_twists
from selfinduced.rauzy import PermutationPair, edge_twist, enumerate_class, induce_pair

START_PAIRS = ["ab/ba", "abc/cba", "abc/cab", "abc/bca", "abcd/dcba", "abcd/dacb", "abcd/cdab"]


def path_back(cls, start, goal):
    prev = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == goal:
            break
        for e in cls.edges:
            if e.source == cur and e.target not in prev:
                prev[e.target] = e
                queue.append(e.target)
    edges = []
    cur = goal
    while prev[cur] is not None:
        edges.append(prev[cur])
        cur = prev[cur].source
    return edges[::-1]


def random_cycle(pair, rng, length):
    """Twists of a random walk of ``length`` steps, closed by a shortest path home."""
    cls = enumerate_class(pair)
    cur, twists = pair, []
    for _ in range(length):
        kind = rng.randint(0, 1)
        twists.append(edge_twist(cur, kind))
        cur = induce_pair(cur, kind)
    twists += [e.twist for e in path_back(cls, cur, pair)]
    return twists


def twist_product_corpus(seed, size):
    """Primitive products of random Rauzy cycles; non-primitive draws are skipped."""
    rng = random.Random(seed)
    out = []
    while len(out) < size:
        pair = PermutationPair.parse(rng.choice(START_PAIRS))
        twists = random_cycle(pair, rng, rng.randint(2, 10))
        phi = compose_twists(twists, tuple(sorted(pair.top)))
        if is_primitive_matrix(incidence_matrix(phi)):
            out.append((pair, twists, phi))
    return out
