"""Build automorphisms from random closed Rauzy paths and decide each one.

Every product of the twists along a closed path is the automorphism of a
self-induced exchange, so each primitive one should come back accepted.

    python3 demos/rauzy_cycles.py [seed] [count]
"""

import random
import sys
import time
from collections import deque

from selfinduced import Config, PermutationPair, decide, edge_twist, enumerate_class, incidence_matrix, induce_pair
from selfinduced.automorphisms import is_primitive_matrix
from selfinduced.decision import compose_twists

START = ["abc/cba", "abc/cab", "abcd/dcba", "abcd/dacb", "abcd/cdab"]


def shortest_path(cls, start, goal):
    prev = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for e in cls.edges:
            if e.source == cur and e.target not in prev:
                prev[e.target] = e
                queue.append(e.target)
    path, cur = [], goal
    while prev[cur] is not None:
        path.append(prev[cur])
        cur = prev[cur].source
    return path[::-1]


def closed_walk(pair, rng, steps):
    cur, twists = pair, []
    for _ in range(steps):
        kind = rng.randint(0, 1)
        twists.append(edge_twist(cur, kind))
        cur = induce_pair(cur, kind)
    return twists + [e.twist for e in shortest_path(enumerate_class(pair), cur, pair)]


def main(seed=0, count=10):
    rng = random.Random(seed)
    done = 0
    while done < count:
        pair = PermutationPair.parse(rng.choice(START))
        twists = closed_walk(pair, rng, rng.randint(2, 8))
        phi = compose_twists(twists, tuple(sorted(pair.top)))
        if not is_primitive_matrix(incidence_matrix(phi)):
            continue
        done += 1
        t = time.perf_counter()
        report = decide(phi, Config(verify=False))
        dt = time.perf_counter() - t
        print(f"{pair}  {len(twists):2} twists  {report.verdict:8}  pair {report.pair}  "
              f"period {report.period}  {dt:.2f}s")


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:3]))
