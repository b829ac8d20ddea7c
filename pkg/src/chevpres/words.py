"""Free-group words over integer generator indices.

A word is stored as a tuple of ``(generator, exponent)`` syllables in freely
reduced form: adjacent syllables have distinct generators and no exponent is
zero.  Commutators follow ``[a, b] = a b a^-1 b^-1`` and conjugation
``a^b = b a b^-1``.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class Word(tuple):
    __slots__ = ()

    def __new__(cls, syllables: Iterable[tuple[int, int]] = ()):
        return super().__new__(cls, _reduce(syllables))

    @classmethod
    def _raw(cls, reduced) -> "Word":
        return tuple.__new__(cls, reduced)

    @classmethod
    def gen(cls, g: int, e: int = 1) -> "Word":
        return cls._raw(((g, e),) if e else ())

    def __mul__(self, other: "Word") -> "Word":
        if not other:
            return self
        if not self:
            return other
        out = list(self)
        for syl in other:
            _push(out, syl)
        return Word._raw(out)

    def inverse(self) -> "Word":
        return Word._raw(tuple((g, -e) for g, e in reversed(self)))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out = Word()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        if not self:
            return "1"
        return " ".join(f"g{g}" + (f"^{e}" if e != 1 else "") for g, e in self)

    @property
    def length(self) -> int:
        """Letter length (sum of |exponents|)."""
        return sum(abs(e) for _, e in self)

    def generators(self) -> set[int]:
        return {g for g, _ in self}

    def exponent_sum(self, g: int) -> int:
        return sum(e for h, e in self if h == g)

    def relabel(self, mapping: Mapping[int, int] | list[int]) -> "Word":
        # mapping is injective, so reduced form is preserved
        return Word._raw(tuple((mapping[g], e) for g, e in self))

    def letters(self) -> list[int]:
        """Expanded letters: +(g+1) for g, -(g+1) for g^-1."""
        out = []
        for g, e in self:
            out.extend([g + 1 if e > 0 else -(g + 1)] * abs(e))
        return out


def _push(out: list, syl: tuple[int, int]) -> None:
    g, e = syl
    if e == 0:
        return
    if out and out[-1][0] == g:
        e += out[-1][1]
        out.pop()
        if e:
            out.append((g, e))
    else:
        out.append((g, e))


def _reduce(syllables) -> tuple:
    out: list = []
    for g, e in syllables:
        _push(out, (int(g), int(e)))
    return tuple(out)


def comm(x: Word, y: Word) -> Word:
    """[x, y] = x y x^-1 y^-1."""
    return x * y * x.inverse() * y.inverse()


def conj(x: Word, y: Word) -> Word:
    """x^y = y x y^-1."""
    return y * x * y.inverse()


def product(words: Iterable[Word]) -> Word:
    out = Word()
    for w in words:
        out = out * w
    return out


def relator(lhs: Word, rhs: Word = Word()) -> Word:
    """Relator for the relation lhs = rhs."""
    return lhs * rhs.inverse()
