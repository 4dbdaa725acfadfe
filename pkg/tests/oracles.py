"""Independent reference computations used to check the library.

Words are plain strings here: a lowercase letter is a generator and the
matching uppercase letter its inverse. Nothing in this module imports the
package under test.
"""

from __future__ import annotations

import math
from collections import deque

import numpy as np


def inv_char(c: str) -> str:
    return c.lower() if c.isupper() else c.upper()


def naive_reduce(w: str) -> str:
    """Delete adjacent inverse pairs until none is left (quadratic on purpose)."""
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] != w[i + 1] and w[i].lower() == w[i + 1].lower():
                w = w[:i] + w[i + 2:]
                changed = True
                break
    return w


def naive_inverse(w: str) -> str:
    return "".join(inv_char(c) for c in reversed(w))


def naive_apply(images: dict[str, str], w: str) -> str:
    out = []
    for c in w:
        if c.islower():
            out.append(images[c])
        else:
            out.append(naive_inverse(images[c.lower()]))
    return naive_reduce("".join(out))


def to_caps(text: str) -> str:
    """Library notation ``a^-1`` to the uppercase convention."""
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if text.startswith("^-1", i + 1):
            out.append(c.upper())
            i += 4
        else:
            out.append(c)
            i += 1
    return "".join(out)


def count_matrix(images: dict[str, str], alphabet: str) -> np.ndarray:
    """m[i][j] = occurrences of letter i in the image of letter j."""
    return np.array([[images[y].count(x) for y in alphabet] for x in alphabet], dtype=np.int64)


def compose_images(outer: dict[str, str], inner: dict[str, str]) -> dict[str, str]:
    return {x: naive_apply(outer, w) for x, w in inner.items()}


def brute_factors(images: dict[str, str], max_len: int, seed_len: int = 20_000) -> set[str]:
    """Factors of a long iterate of every letter (primitive substitutions only)."""
    out = set()
    for x in images:
        w = x
        while len(w) < seed_len:
            w = "".join(images[c] for c in w)
        for n in range(1, max_len + 1):
            out.update(w[i:i + n] for i in range(len(w) - n + 1))
    return out


def char_poly_root(m) -> float:
    """Dominant real root of the characteristic polynomial, via numpy.roots."""
    roots = np.roots(np.poly(np.asarray(m, dtype=float)))
    return float(max(r.real for r in roots if abs(r.imag) < 1e-9))


def eig_right_vector(m) -> np.ndarray:
    vals, vecs = np.linalg.eig(np.asarray(m, dtype=float))
    v = np.real(vecs[:, int(np.argmax(vals.real))])
    return v / v.sum()


# permutation pairs as dictionaries --------------------------------------


def induce_maps(pi0: dict[str, int], pi1: dict[str, int], kind: int) -> tuple[dict, dict]:
    """Rauzy induction written with the position formulas, not list surgery."""
    n = len(pi0)
    a0 = next(x for x, v in pi0.items() if v == n - 1)
    a1 = next(x for x, v in pi1.items() if v == n - 1)
    if kind == 0:
        new1 = {}
        for x, v in pi1.items():
            if x == a1:
                new1[x] = pi1[a0] + 1
            elif v > pi1[a0]:
                new1[x] = v + 1
            else:
                new1[x] = v
        return dict(pi0), new1
    new0 = {}
    for x, v in pi0.items():
        if x == a0:
            new0[x] = pi0[a1] + 1
        elif v > pi0[a1]:
            new0[x] = v + 1
        else:
            new0[x] = v
    return new0, dict(pi1)


def class_by_maps(top: str, bottom: str) -> tuple[set, int]:
    """Nodes and edge count of a Rauzy class, using :func:`induce_maps`."""
    def key(p0, p1):
        return ("".join(sorted(p0, key=p0.get)), "".join(sorted(p1, key=p1.get)))

    start = ({x: i for i, x in enumerate(top)}, {x: i for i, x in enumerate(bottom)})
    seen = {key(*start)}
    queue = deque([start])
    edges = 0
    while queue:
        p0, p1 = queue.popleft()
        for kind in (0, 1):
            q0, q1 = induce_maps(p0, p1, kind)
            edges += 1
            k = key(q0, q1)
            if k not in seen:
                seen.add(k)
                queue.append((q0, q1))
    return seen, edges


def irreducible(top: str, bottom: str) -> bool:
    return all(set(top[:k + 1]) != set(bottom[:k + 1]) for k in range(len(top) - 1))


# numeric interval exchanges ----------------------------------------------


def iet_map(top: str, bottom: str, lengths: dict[str, float], x: float) -> float:
    left0 = 0.0
    for c in top:
        if left0 <= x < left0 + lengths[c]:
            left1 = math.fsum(lengths[d] for d in bottom[:bottom.index(c)])
            return x - left0 + left1
        left0 += lengths[c]
    raise ValueError(x)


def itinerary(top: str, bottom: str, lengths: dict[str, float], x: float, n: int) -> str:
    out = []
    for _ in range(n):
        left = 0.0
        for c in top:
            if x < left + lengths[c]:
                out.append(c)
                break
            left += lengths[c]
        x = iet_map(top, bottom, lengths, x)
    return "".join(out)


def rotation_coding(alpha: float, x: float, n: int) -> str:
    """Coding of x ↦ x + alpha (mod 1) by [0, 1 − alpha) → a, the rest → b."""
    out = []
    for _ in range(n):
        out.append("a" if x < 1 - alpha else "b")
        x = (x + alpha) % 1.0
    return "".join(out)
