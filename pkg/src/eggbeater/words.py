"""Words in the free group on two letters a, b.

A word is a tuple of syllables g^e with g in {a, b} and nonzero integer
exponent e.  Reduced words alternate generators.  Every nontrivial word is
conjugate either to a power of a single generator or to an "even" word

    a^{k_1} b^{k_2} ... a^{k_{2m-1}} b^{k_{2m}},

which is the normal form the dynamical constructions consume.

>>> w = parse_word("a^1 b^-2 a^3")
>>> str(w)
'a^1 b^-2 a^3'
>>> str(power_word(parse_word("a^1 b^1"), 2))
'a^1 b^1 a^1 b^1'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import WordSyntaxError

GENERATORS = ("a", "b")

_TOKEN_RE = re.compile(r"([ab])(?:\^(-?\d+))?")


@dataclass(frozen=True)
class Syllable:
    gen: str
    exp: int

    def __post_init__(self):
        if self.gen not in GENERATORS:
            raise ValueError(f"unknown generator {self.gen!r}")
        if self.exp == 0:
            raise ValueError("syllable exponent must be nonzero")

    def inverse(self) -> "Syllable":
        return Syllable(self.gen, -self.exp)

    def __str__(self) -> str:
        return f"{self.gen}^{self.exp}"


@dataclass(frozen=True)
class Word:
    """A reduced word. Construct through :func:`reduce_word`."""

    syllables: tuple[Syllable, ...]

    def __len__(self) -> int:
        return len(self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        return reduce_word(list(self.syllables) + list(other.syllables))

    def inverse(self) -> "Word":
        return Word(tuple(s.inverse() for s in reversed(self.syllables)))

    def exponent_sum(self, gen: str) -> int:
        return sum(s.exp for s in self.syllables if s.gen == gen)

    def max_abs_exponent(self) -> int:
        return max((abs(s.exp) for s in self.syllables), default=0)

    def __str__(self) -> str:
        if not self.syllables:
            return "<identity>"
        return " ".join(str(s) for s in self.syllables)


IDENTITY = Word(())


def reduce_word(raw: Iterable[Union[Syllable, tuple]]) -> Word:
    """Freely reduce a syllable sequence, merging adjacent equal generators
    and dropping zero exponents.

    >>> str(reduce_word([("a", 1), ("a", 2), ("b", 1), ("b", -1), ("a", 3)]))
    'a^6'
    """
    stack: list[Syllable] = []
    for item in raw:
        s = item if isinstance(item, Syllable) else Syllable(*item)
        while True:
            if stack and stack[-1].gen == s.gen:
                e = stack[-1].exp + s.exp
                stack.pop()
                if e == 0:
                    if stack:
                        s = stack.pop()
                        continue
                    s = None
                else:
                    s = Syllable(s.gen, e)
            break
        if s is not None:
            stack.append(s)
    return Word(tuple(stack))


def power_word(w: Word, k: int) -> Word:
    """k-th power of w, k >= 1, freely reduced."""
    if k < 1:
        raise ValueError("power_word requires k >= 1")
    out = IDENTITY
    for _ in range(k):
        out = out * w
    return out


def parse_word(text: str) -> Word:
    """Parse a word literal such as ``a^2b^-1ab`` or ``a^2 b^-1 a b``.

    Syllables may be juxtaposed or whitespace separated; a bare generator
    means exponent 1.  Raises :class:`WordSyntaxError` with the character
    position of the first offending character.
    """
    syllables = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise WordSyntaxError(f"bad syllable at {text[pos:pos + 8]!r}", pos)
        exp = int(match.group(2)) if match.group(2) is not None else 1
        if exp == 0:
            raise WordSyntaxError(f"zero exponent in {match.group(0)!r}", pos)
        syllables.append(Syllable(match.group(1), exp))
        pos = match.end()
    if not syllables:
        raise WordSyntaxError("empty word literal", 0)
    return reduce_word(syllables)


@dataclass(frozen=True)
class EvenWord:
    """Alternating word a^{k_1} b^{k_2} ... a^{k_{2m-1}} b^{k_{2m}}.

    ``exponents`` holds (k_1, ..., k_2m); odd positions (0-based even
    indices) are a-exponents.
    """

    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) == 0 or len(self.exponents) % 2 != 0:
            raise ValueError("even word needs a positive even exponent count")
        if any(k == 0 for k in self.exponents):
            raise ValueError("even word exponents must be nonzero")

    @property
    def m(self) -> int:
        return len(self.exponents) // 2

    def max_abs_exponent(self) -> int:
        return max(abs(k) for k in self.exponents)

    def as_word(self) -> Word:
        sylls = []
        for i, k in enumerate(self.exponents):
            sylls.append(Syllable("a" if i % 2 == 0 else "b", k))
        return reduce_word(sylls)

    def step_exponents(self) -> list[tuple[int, int]]:
        """Exponent pairs (kb_j, ka_j) in the order the map applies them.

        The last syllable acts first, so step j uses the b-exponent
        k_{2m-2j} followed by the a-exponent k_{2m-2j-1}.
        """
        ks = self.exponents
        two_m = len(ks)
        return [(ks[two_m - 2 - 2 * j + 1], ks[two_m - 2 - 2 * j])
                for j in range(self.m)]

    def __str__(self) -> str:
        return str(self.as_word())


@dataclass(frozen=True)
class PowerCase:
    """A word conjugate to a pure power gen^exp."""

    gen: str
    exp: int


EvenForm = Union[EvenWord, PowerCase]


def to_even_form(w: Word) -> tuple[Word, EvenForm]:
    """Cyclically reduce ``w`` and rotate so it starts with an a-syllable.

    Returns ``(conjugator, form)`` with ``conjugator.inverse() * w *
    conjugator`` equal to the form.  Single-syllable cores come back as
    :class:`PowerCase`.

    >>> c, f = to_even_form(parse_word("b^2 a^3"))
    >>> str(c), str(f.as_word())
    ('b^2', 'a^3 b^2')
    >>> c, f = to_even_form(parse_word("a^1 b^1 a^-1"))
    >>> str(c), (f.gen, f.exp)
    ('a^1', ('b', 1))
    """
    if not w:
        raise ValueError("identity word has no even form")
    conj = IDENTITY
    cur = w
    # Cyclic reduction: while the first and last syllables share a
    # generator, conjugate the first syllable away.
    while len(cur) >= 2 and cur.syllables[0].gen == cur.syllables[-1].gen:
        s = Word((cur.syllables[0],))
        conj = conj * s
        cur = s.inverse() * cur * s
    if len(cur) == 1:
        s = cur.syllables[0]
        return conj, PowerCase(s.gen, s.exp)
    if cur.syllables[0].gen == "b":
        s = Word((cur.syllables[0],))
        conj = conj * s
        cur = s.inverse() * cur * s
    exps = tuple(s.exp for s in cur.syllables)
    gens = [s.gen for s in cur.syllables]
    expected = ["a" if i % 2 == 0 else "b" for i in range(len(gens))]
    if gens != expected:
        raise AssertionError(f"normal form failed for {w}")
    return conj, EvenWord(exps)
