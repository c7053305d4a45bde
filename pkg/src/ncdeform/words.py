"""Alphabets and words of the free *-algebra.

A word is a plain tuple of small integers indexing into an alphabet's
letter list; the empty tuple is the unit.  Letter order inside an
alphabet is the lexicographic order used by the rewrite engine.
"""

from __future__ import annotations

from dataclasses import dataclass

Word = tuple


@dataclass(frozen=True)
class Alphabet:
    name: str
    letters: tuple
    star: tuple

    def adjoint(self, word: Word) -> Word:
        """Reverse ``word`` and star each letter."""
        return tuple(self.star[a] for a in reversed(word))

    def index(self, letter: str) -> int:
        return self.letters.index(letter)

    def spell(self, word: Word) -> str:
        """Human readable form; runs of a letter become powers."""
        if not word:
            return "I"
        out = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name = self.letters[word[i]]
            out.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return " ".join(out)


TORUS = Alphabet("torus", ("L", "L*", "W", "W*"), (1, 0, 3, 2))
SURFACE = Alphabet("surface", ("X", "Y", "Z"), (0, 1, 2))

# torus letters, in the order L < L* < W < W*
L, LS, W, WS = range(4)
X, Y, Z = range(3)


def word_key(word: Word):
    """Total order on words: length first, then lexicographic."""
    return (len(word), word)
