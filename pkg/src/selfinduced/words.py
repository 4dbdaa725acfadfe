"""Signed letters and freely reduced words of a free group.

A word is written as a string of single-character symbols; an inverse
letter carries the suffix ``^-1`` (``⁻¹`` is accepted too)::

    >>> w = Word.parse("bdacda")
    >>> str(w.inverse())
    'a^-1d^-1c^-1a^-1d^-1b^-1'
    >>> str(Word.parse("a") * Word.parse("a^-1b"))
    'b'
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import InputError

_INV_SUFFIXES = ("^-1", "⁻¹")
EPSILON_SYMBOLS = ("ε",)


class Letter(NamedTuple):
    symbol: str
    inverse: bool = False

    def inv(self) -> "Letter":
        return Letter(self.symbol, not self.inverse)

    @property
    def positive(self) -> bool:
        return not self.inverse

    def __str__(self) -> str:
        return self.symbol + ("^-1" if self.inverse else "")


def _cancels(x: Letter, y: Letter) -> bool:
    return x.symbol == y.symbol and x.inverse != y.inverse


def free_reduce(letters: Iterable[Letter], alphabet: Sequence[str] | None = None) -> "Word":
    """Freely reduce ``letters`` with a single stack pass.

    When ``alphabet`` is given, every symbol must belong to it.
    """
    allowed = set(alphabet) if alphabet is not None else None
    stack: list[Letter] = []
    for x in letters:
        if allowed is not None and x.symbol not in allowed:
            raise InputError(f"unknown symbol {x.symbol!r}")
        if stack and _cancels(stack[-1], x):
            stack.pop()
        else:
            stack.append(x)
    return Word._trusted(tuple(stack))


def reduce_tuple(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for x in letters:
        if stack and _cancels(stack[-1], x):
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def invert_word(w: "Word") -> "Word":
    return w.inverse()


class Word:
    """An immutable freely reduced word."""

    __slots__ = ("_letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        self._letters = reduce_tuple(Letter(*x) for x in letters)
        self._hash = None

    @classmethod
    def _trusted(cls, letters: tuple[Letter, ...]) -> "Word":
        w = object.__new__(cls)
        w._letters = letters
        w._hash = None
        return w

    @classmethod
    def parse(cls, text: str, alphabet: Sequence[str] | None = None) -> "Word":
        text = "".join(text.split())
        if text in EPSILON_SYMBOLS or text == "":
            return cls()
        out: list[Letter] = []
        i = 0
        while i < len(text):
            sym = text[i]
            i += 1
            inverse = False
            for suffix in _INV_SUFFIXES:
                if text.startswith(suffix, i):
                    inverse = True
                    i += len(suffix)
                    break
            out.append(Letter(sym, inverse))
        return free_reduce(out, alphabet)

    @classmethod
    def positive(cls, symbols: Iterable[str]) -> "Word":
        return cls._trusted(tuple(Letter(s) for s in symbols))

    @property
    def letters(self) -> tuple[Letter, ...]:
        return self._letters

    def inverse(self) -> "Word":
        return Word._trusted(tuple(x.inv() for x in reversed(self._letters)))

    __invert__ = inverse

    def is_positive(self) -> bool:
        return all(not x.inverse for x in self._letters)

    def is_negative(self) -> bool:
        return all(x.inverse for x in self._letters)

    def symbols(self) -> str:
        """Concatenated symbols, ignoring signs."""
        return "".join(x.symbol for x in self._letters)

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        a, b = self._letters, other._letters
        # only the junction can cancel
        i = 0
        while i < len(a) and i < len(b) and _cancels(a[-1 - i], b[i]):
            i += 1
        return Word._trusted(a[: len(a) - i] + b[i:])

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out = Word()
        for _ in range(n):
            out = out * self
        return out

    def __len__(self) -> int:
        return len(self._letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self._letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word._trusted(self._letters[item])
        return self._letters[item]

    def __bool__(self) -> bool:
        return bool(self._letters)

    def __eq__(self, other) -> bool:
        if isinstance(other, Word):
            return self._letters == other._letters
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._letters)
        return self._hash

    def __str__(self) -> str:
        return "".join(str(x) for x in self._letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def startswith(self, prefix: "Word") -> bool:
        return self._letters[: len(prefix)] == prefix._letters


EPSILON = Word()
