"""Braid words in Artin generators.

A word is a sequence of nonzero integers; letter ``e`` stands for the
generator ``sigma_|e|``, inverted when ``e < 0``.  Words multiply left to
right under the representation map.

Text format: whitespace-separated signed integers, e.g. ``"1 -2 1"``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GeneratorOutOfRange, ParseError


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 1:
            raise GeneratorOutOfRange("strand count must be >= 1")
        for e in self.letters:
            if e == 0 or abs(e) > self.strands - 1:
                raise GeneratorOutOfRange(
                    f"letter {e} invalid on {self.strands} strands"
                )

    @staticmethod
    def of(strands: int, letters) -> "BraidWord":
        return BraidWord(strands, tuple(letters))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise GeneratorOutOfRange("concatenating words on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-e for e in reversed(self.letters)))

    def __str__(self) -> str:
        return " ".join(str(e) for e in self.letters)


def parse_word(text: str, strands: int) -> BraidWord:
    letters = []
    for tok in text.split():
        try:
            letters.append(int(tok))
        except ValueError as exc:
            raise ParseError(f"bad braid letter {tok!r}") from exc
    return BraidWord.of(strands, letters)


def free_reduce(word: BraidWord) -> BraidWord:
    """Cancel adjacent e, -e pairs until none remain; idempotent."""
    stack: list[int] = []
    for e in word.letters:
        if stack and stack[-1] == -e:
            stack.pop()
        else:
            stack.append(e)
    return BraidWord.of(word.strands, stack)


def fio(word: BraidWord) -> BraidWord:
    """Swap over- and under-crossings: negate every letter."""
    return BraidWord.of(word.strands, (-e for e in word.letters))


def feta(word: BraidWord) -> BraidWord:
    """Vertical flip: reverse the word and negate (the group inverse)."""
    return word.inverse()


def fox(word: BraidWord) -> BraidWord:
    """Lateral flip: sigma_i -> sigma_{n-i}, signs kept."""
    n = word.strands
    return BraidWord.of(word.strands, ((1 if e > 0 else -1) * (n - abs(e)) for e in word.letters))


def half_twist_word(n: int) -> BraidWord:
    """The positive half twist (s1)(s2 s1)...(s_{n-1} ... s1) on n strands."""
    letters: list[int] = []
    for j in range(1, n):
        letters.extend(range(j, 0, -1))
    return BraidWord.of(n, letters)


def cabled_crossing_word(k: int) -> BraidWord:
    """Positive word on 2k strands taking strands 1..k over strands k+1..2k.

    k = 2 gives [2, 1, 3, 2], the printed 2-cabling of the elementary braid.
    """
    if k < 1:
        raise GeneratorOutOfRange("cabling width must be >= 1")
    letters: list[int] = []
    for j in range(k):
        letters.extend(range(k + j, j, -1))
    return BraidWord.of(2 * k, letters)
