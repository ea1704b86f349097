"""Freely reduced words over a finite generating set.

A letter is a nonzero integer: ``+g`` is the g-th generator (1-based) and
``-g`` is its inverse.  Every constructor reduces its input, so two Word
values are equal exactly when they represent the same free-group element.
Words are immutable and hashable.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping


class MissingImageError(KeyError):
    """A substitution was asked for a generator with no assigned image."""


def _reduced(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for x in letters:
        if not isinstance(x, int) or x == 0:
            raise ValueError(f"invalid letter {x!r}: letters are nonzero integers")
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


class Word:
    """A freely reduced word; the value type shared by every other module."""

    __slots__ = ("_letters",)

    def __init__(self, letters: Iterable[int] = ()):
        self._letters = _reduced(letters)

    @classmethod
    def identity(cls) -> "Word":
        return _EPSILON

    @classmethod
    def generator(cls, gen: int, power: int = 1) -> "Word":
        if gen <= 0:
            raise ValueError("generator index must be positive")
        sign = 1 if power >= 0 else -1
        return cls([sign * gen] * abs(power))

    @property
    def letters(self) -> tuple[int, ...]:
        return self._letters

    def __len__(self) -> int:
        return len(self._letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self._letters)

    def __bool__(self) -> bool:
        return bool(self._letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self._letters == other._letters

    def __hash__(self) -> int:
        return hash(self._letters)

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self._letters + other._letters)

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return _EPSILON
        base = self if n > 0 else self.inverse()
        return Word(base._letters * abs(n))

    def inverse(self) -> "Word":
        w = Word.__new__(Word)
        w._letters = tuple(-x for x in reversed(self._letters))
        return w

    def conjugate_by(self, g: "Word") -> "Word":
        """g * self * g^-1."""
        return Word(g._letters + self._letters + g.inverse()._letters)

    def exponent_sum(self, gen: int) -> int:
        return sum(1 if x == gen else -1 if x == -gen else 0 for x in self._letters)

    def max_generator(self) -> int:
        return max((abs(x) for x in self._letters), default=0)

    def generators_used(self) -> set[int]:
        return {abs(x) for x in self._letters}

    def __repr__(self) -> str:
        return f"Word({list(self._letters)!r})"


_EPSILON = Word(())


def reduce(letters: Iterable[int]) -> Word:
    """Freely reduce a raw letter sequence."""
    return Word(letters)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w`` as ``conjugator * core * conjugator^-1`` with cyclically
    reduced ``core``."""
    letters = w.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == -letters[j]:
        i += 1
        j -= 1
    return Word(letters[i : j + 1]), Word(letters[:i])


def substitute(w: Word, images: Mapping[int, Word]) -> Word:
    """Apply the homomorphism sending each generator to its image word.

    Negative letters map to the inverted image.  Raises MissingImageError if
    some generator of ``w`` has no image.
    """
    out: list[int] = []
    for x in w:
        try:
            img = images[abs(x)]
        except KeyError:
            raise MissingImageError(abs(x)) from None
        out.extend(img.letters if x > 0 else img.inverse().letters)
    return Word(out)
