"""Endomorphisms of the free group given by the images of the basis letters."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InputError, NotPrimitiveError
from .words import EPSILON, Letter, Word

_INT64_SAFE = 2**62


class Endomorphism:
    """Letter-to-word map on an ordered alphabet, extended to the free group."""

    __slots__ = ("alphabet", "images", "_inv_images")

    def __init__(self, alphabet: Sequence[str], images: Mapping[str, Word]):
        alphabet = tuple(alphabet)
        if len(set(alphabet)) != len(alphabet):
            raise InputError("alphabet has repeated symbols")
        if set(images) != set(alphabet):
            raise InputError("images must be given for exactly the alphabet symbols")
        allowed = set(alphabet)
        for x, img in images.items():
            if not isinstance(img, Word):
                raise InputError(f"image of {x!r} is not a Word")
            if not img:
                raise InputError(f"image of {x!r} is empty")
            for y in img:
                if y.symbol not in allowed:
                    raise InputError(f"image of {x!r} uses unknown symbol {y.symbol!r}")
        self.alphabet = alphabet
        self.images = {x: images[x] for x in alphabet}
        self._inv_images: dict[str, Word] = {}

    # construction -------------------------------------------------------

    @classmethod
    def from_strings(cls, rules: Mapping[str, str], alphabet: Sequence[str] | None = None):
        alphabet = tuple(rules) if alphabet is None else tuple(alphabet)
        return cls(alphabet, {x: Word.parse(rules[x], alphabet) for x in alphabet})

    @classmethod
    def identity(cls, alphabet: Sequence[str]) -> "Endomorphism":
        return cls(alphabet, {x: Word.positive(x) for x in alphabet})

    # action -------------------------------------------------------------

    def image_of(self, x: Letter) -> Word:
        if not x.inverse:
            return self.images[x.symbol]
        inv = self._inv_images.get(x.symbol)
        if inv is None:
            inv = self._inv_images[x.symbol] = self.images[x.symbol].inverse()
        return inv

    def apply(self, w: Word) -> Word:
        out = EPSILON
        for x in w:
            if x.symbol not in self.images:
                raise InputError(f"symbol {x.symbol!r} not in alphabet {''.join(self.alphabet)}")
            out = out * self.image_of(x)
        return out

    __call__ = apply

    def apply_letters(self, letters: Iterable[Letter]) -> list[Letter]:
        """Unreduced concatenation of images (callers reduce)."""
        out: list[Letter] = []
        for x in letters:
            out.extend(self.image_of(x).letters)
        return out

    def compose(self, inner: "Endomorphism") -> "Endomorphism":
        """Return ``self ∘ inner``."""
        if self.alphabet != inner.alphabet:
            raise InputError("alphabet mismatch in composition")
        return Endomorphism(self.alphabet, {x: self.apply(inner.images[x]) for x in self.alphabet})

    def __matmul__(self, other: "Endomorphism") -> "Endomorphism":
        return self.compose(other)

    def power(self, k: int) -> "Endomorphism":
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = Endomorphism.identity(self.alphabet)
        base = self
        while k:
            if k & 1:
                out = out.compose(base)
            k >>= 1
            if k:
                base = base.compose(base)
        return out

    # predicates ---------------------------------------------------------

    def is_positive(self) -> bool:
        return all(img.is_positive() for img in self.images.values())

    def is_identity(self) -> bool:
        return all(len(img) == 1 and img[0] == Letter(x) for x, img in self.images.items())

    def total_image_length(self) -> int:
        return sum(len(img) for img in self.images.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.alphabet == other.alphabet and self.images == other.images

    def __hash__(self) -> int:
        return hash((self.alphabet, tuple(self.images.values())))

    def as_strings(self) -> dict[str, str]:
        return {x: str(img) for x, img in self.images.items()}

    def __str__(self) -> str:
        return ", ".join(f"{x}->{img}" for x, img in self.images.items())

    def __repr__(self) -> str:
        return f"Endomorphism({self})"


def apply(e: Endomorphism, w: Word) -> Word:
    return e.apply(w)


def compose(outer: Endomorphism, inner: Endomorphism) -> Endomorphism:
    return outer.compose(inner)


def conjugacy(w: Word, alphabet: Sequence[str]) -> Endomorphism:
    """The inner automorphism ``v ↦ w⁻¹ v w``."""
    wi = w.inverse()
    return Endomorphism(alphabet, {x: wi * Word.positive(x) * w for x in alphabet})


def total_image_length(e: Endomorphism) -> int:
    return e.total_image_length()


@dataclass(frozen=True)
class ElementaryTwist:
    """``target ↦ target·other`` (append) or ``target ↦ other·target`` (prepend)."""

    target: str
    other: str
    prepend: bool = False

    def __post_init__(self):
        if self.target == self.other:
            raise InputError("a twist needs two distinct letters")

    @property
    def image(self) -> Word:
        if self.prepend:
            return Word.positive(self.other + self.target)
        return Word.positive(self.target + self.other)

    @property
    def inverse_image(self) -> Word:
        o = Word([Letter(self.other, True)])
        t = Word.positive(self.target)
        return o * t if self.prepend else t * o

    def as_endomorphism(self, alphabet: Sequence[str]) -> Endomorphism:
        images = {x: Word.positive(x) for x in alphabet}
        images[self.target] = self.image
        return Endomorphism(alphabet, images)

    def inverse_endomorphism(self, alphabet: Sequence[str]) -> Endomorphism:
        images = {x: Word.positive(x) for x in alphabet}
        images[self.target] = self.inverse_image
        return Endomorphism(alphabet, images)

    def __str__(self) -> str:
        return f"{self.target}->{self.image}"


# incidence and validation ----------------------------------------------


def incidence_matrix(e: Endomorphism) -> np.ndarray:
    """``M[i, j]`` = occurrences of letter ``i`` in the image of letter ``j``."""
    if not e.is_positive():
        raise InputError("incidence matrix requires a positive endomorphism")
    index = {x: i for i, x in enumerate(e.alphabet)}
    n = len(e.alphabet)
    counts = [[0] * n for _ in range(n)]
    for j, x in enumerate(e.alphabet):
        for y in e.images[x]:
            counts[index[y.symbol]][j] += 1
    return _to_int64(counts)


def _to_int64(rows: list[list[int]]) -> np.ndarray:
    for row in rows:
        for v in row:
            if abs(v) >= _INT64_SAFE:
                raise OverflowError("integer entry exceeds the 64-bit safe range")
    return np.array(rows, dtype=np.int64)


def int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product through Python integers, overflow-checked."""
    al, bl = a.tolist(), b.tolist()
    n, m, p = len(al), len(bl), len(bl[0])
    rows = [[sum(al[i][k] * bl[k][j] for k in range(m)) for j in range(p)] for i in range(n)]
    return _to_int64(rows)


def integer_determinant(m: np.ndarray) -> int:
    """Bareiss fraction-free elimination."""
    a = [list(map(int, row)) for row in np.asarray(m).tolist()]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def wielandt_exponent(n: int) -> int:
    return n * n - 2 * n + 2


def is_primitive_matrix(m: np.ndarray) -> bool:
    b = (np.asarray(m) > 0).astype(np.int64)
    n = b.shape[0]
    p = b.copy()
    for _ in range(wielandt_exponent(n) - 1):
        p = ((p @ b) > 0).astype(np.int64)
    return bool((p > 0).all())


@dataclass
class ValidationReport:
    positive: bool
    determinant: int | None
    primitive: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def validate_positive_primitive(e: Endomorphism) -> ValidationReport:
    failures = []
    for x, img in e.images.items():
        bad = [y for y in img if y.inverse]
        if bad:
            failures.append(f"positivity: image of {x} contains inverse letter {bad[0]}")
    if failures:
        return ValidationReport(False, None, False, failures)
    m = incidence_matrix(e)
    det = integer_determinant(m)
    if det not in (1, -1):
        failures.append(f"determinant: abelianization has determinant {det}, not ±1")
    primitive = is_primitive_matrix(m)
    if not primitive:
        failures.append(
            f"primitivity: incidence matrix power {wielandt_exponent(len(e.alphabet))} has a zero entry"
        )
    return ValidationReport(True, det, primitive, failures)


def require_primitive(m: np.ndarray) -> None:
    if not is_primitive_matrix(m):
        raise NotPrimitiveError("matrix is not primitive")


# factor language --------------------------------------------------------


def _positive_str_map(e: Endomorphism) -> dict[str, str]:
    if not e.is_positive():
        raise InputError("factor language requires a positive endomorphism")
    return {x: img.symbols() for x, img in e.images.items()}


def _subwords(s: str, max_len: int, into: set[str]) -> None:
    n = len(s)
    for i in range(n):
        for j in range(i + 1, min(n, i + max_len) + 1):
            into.add(s[i:j])


def factors(e: Endomorphism, max_len: int) -> set[str]:
    """Factors of length ≤ ``max_len`` of the language of a primitive positive ``e``.

    A factor of length L of ``e(w)`` lies in the image of a factor of ``w``
    of length ≤ L, so closing the letter set under "take short factors of
    the image" until nothing new appears gives the exact factor set.
    """
    img = _positive_str_map(e)
    seen: set[str] = set(e.alphabet)
    frontier = set(seen)
    while frontier:
        new: set[str] = set()
        for u in frontier:
            _subwords("".join(img[c] for c in u), max_len, new)
        frontier = new - seen
        seen |= frontier
    return seen
