"""Free-group words over named generators.

A word is an immutable, freely reduced tuple of ``(name, sign)`` letters with
``sign`` in ``{+1, -1}``.  Every relator in the engine is one of these.

Text form: whitespace separated tokens ``name`` or ``name^-1`` (``name^k``
is accepted on input and expanded); the empty word prints as ``1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

Letter = tuple[str, int]

IDENTITY_TOKEN = "1"


class WordSyntaxError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    """A generator name together with the building block that owns it."""

    block: str
    name: str

    def word(self) -> "Word":
        return Word(((self.name, 1),))


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for name, sign in letters:
        if sign not in (1, -1):
            raise ValueError(f"letter exponent must be +1 or -1, got {sign!r}")
        if stack and stack[-1][0] == name and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((name, sign))
    return tuple(stack)


class Word:
    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        object.__setattr__(self, "letters", _free_reduce(letters))
        object.__setattr__(self, "_hash", hash(self.letters))

    def __setattr__(self, key, value):
        raise AttributeError("Word is immutable")

    # construction helpers

    @classmethod
    def gen(cls, name: str, power: int = 1) -> "Word":
        sign = 1 if power >= 0 else -1
        return cls([(name, sign)] * abs(power))

    @classmethod
    def parse(cls, text: str) -> "Word":
        tokens = text.split()
        if tokens == [IDENTITY_TOKEN] or not tokens:
            return cls()
        letters: list[Letter] = []
        for tok in tokens:
            name, power = _parse_token(tok)
            sign = 1 if power > 0 else -1
            letters.extend([(name, sign)] * abs(power))
        return cls(letters)

    # algebra

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    def __invert__(self) -> "Word":
        return self.inverse()

    def inverse(self) -> "Word":
        return Word((n, -s) for n, s in reversed(self.letters))

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.letters * k)

    def is_identity(self) -> bool:
        return not self.letters

    def cyclically_reduced(self) -> "Word":
        letters = self.letters
        i, j = 0, len(letters) - 1
        while i < j and letters[i][0] == letters[j][0] and letters[i][1] == -letters[j][1]:
            i += 1
            j -= 1
        return Word(letters[i:j + 1])

    def rotations(self) -> Iterator["Word"]:
        """Cyclic permutations of a cyclically reduced word."""
        n = len(self.letters)
        for i in range(max(n, 1)):
            yield Word(self.letters[i:] + self.letters[:i])

    def substitute(self, mapping: Mapping[str, "Word"]) -> "Word":
        out: list[Letter] = []
        for name, sign in self.letters:
            image = mapping.get(name)
            if image is None:
                out.append((name, sign))
            elif sign == 1:
                out.extend(image.letters)
            else:
                out.extend(image.inverse().letters)
        return Word(out)

    def generators(self) -> set[str]:
        return {n for n, _ in self.letters}

    def exponent_sum(self, name: str) -> int:
        return sum(s for n, s in self.letters if n == name)

    def occurrences(self, name: str) -> int:
        return sum(1 for n, _ in self.letters if n == name)

    # container protocol

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Word") -> bool:
        return (len(self), self.letters) < (len(other), other.letters)

    def __str__(self) -> str:
        if not self.letters:
            return IDENTITY_TOKEN
        return " ".join(n if s == 1 else f"{n}^-1" for n, s in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


EMPTY = Word()


def _parse_token(tok: str) -> tuple[str, int]:
    if "^" in tok:
        name, _, exp = tok.partition("^")
        try:
            power = int(exp)
        except ValueError:
            raise WordSyntaxError(f"bad exponent in token {tok!r}") from None
        if power == 0:
            raise WordSyntaxError(f"zero exponent in token {tok!r}")
    else:
        name, power = tok, 1
    if not name or name == IDENTITY_TOKEN:
        raise WordSyntaxError(f"bad generator name in token {tok!r}")
    return name, power


def reduce(raw: Iterable[Letter]) -> Word:
    return Word(raw)


def commutator(x: Word, y: Word) -> Word:
    """``[x, y] = x y x^-1 y^-1``."""
    return x * y * x.inverse() * y.inverse()


def conjugate(alpha: Word, beta: Word) -> Word:
    """``alpha(beta) = alpha beta alpha^-1``."""
    return alpha * beta * alpha.inverse()


def gen(name: str) -> Word:
    return Word(((name, 1),))


def split_top_level(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside ``{...}``; generator names contain commas."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth < 0:
                raise WordSyntaxError(f"unbalanced braces in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise WordSyntaxError(f"unbalanced braces in {text!r}")
    parts.append("".join(cur))
    return parts
