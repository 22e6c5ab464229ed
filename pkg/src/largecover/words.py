"""
Free-group words.

A letter is a non-zero integer: generator ``g`` (0-based) is ``g + 1`` and
its inverse is ``-(g + 1)``.  Words are immutable tuples of letters that are
always freely reduced; cyclic words additionally store the least rotation
under the letter order (generator index, then ``+1`` before ``-1``).

Text encoding: lowercase is a generator, uppercase its inverse.  Rank 2 uses
``x`` and ``y``; higher ranks use ``x1``, ``x2``, ... so ``"xyXY"`` is the
commutator and ``"x1x2X1"`` is ``x1 x2 x1^-1``.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from math import gcd

_RANK2 = "xy"
_TOKEN = re.compile(r"([xyXY])(\d*)")


class WordError(ValueError):
    pass


def letter(generator: int, sign: int = 1) -> int:
    if generator < 0 or sign not in (1, -1):
        raise WordError(f"bad letter ({generator}, {sign})")
    return sign * (generator + 1)


def generator_of(a: int) -> int:
    return abs(a) - 1


def sign_of(a: int) -> int:
    return 1 if a > 0 else -1


def letter_key(a: int) -> int:
    """Sort key: generator index first, then +1 before -1."""
    return 2 * (abs(a) - 1) + (a < 0)


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in letters:
        if a == 0:
            raise WordError("0 is not a letter")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


class Word(tuple):
    """A freely reduced word; the empty word is the identity."""

    def __new__(cls, letters: Iterable[int] = ()):
        return super().__new__(cls, _free_reduce(letters))

    def __mul__(self, other):
        return Word(tuple(self) + tuple(other))

    def __invert__(self):
        return Word(-a for a in reversed(self))

    def __pow__(self, n: int):
        if n < 0:
            return (~self) ** (-n)
        return Word(tuple(self) * n)

    def __repr__(self):
        return f"Word({to_string(self)!r})"

    def max_generator(self) -> int:
        return max((abs(a) for a in self), default=0)


def reduce(letters: Iterable[int]) -> Word:
    return Word(letters)


def least_rotation(letters: Sequence[int]) -> tuple[int, ...]:
    n = len(letters)
    if n == 0:
        return ()
    keys = [letter_key(a) for a in letters]
    best = min(range(n), key=lambda i: keys[i:] + keys[:i])
    return tuple(letters[best:]) + tuple(letters[:best])


class CyclicWord(tuple):
    """A cyclically reduced word stored as its least rotation."""

    def __new__(cls, letters: Iterable[int] = ()):
        core, _ = _cyclic_core(Word(letters))
        return super().__new__(cls, least_rotation(core))

    def __invert__(self):
        return CyclicWord(-a for a in reversed(self))

    def __repr__(self):
        return f"CyclicWord({to_string(self)!r})"

    def rotations(self):
        for i in range(len(self)):
            yield tuple(self[i:]) + tuple(self[:i])

    def as_word(self) -> Word:
        return Word(self)


def _cyclic_core(w: Word) -> tuple[tuple[int, ...], Word]:
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1]), Word(w[:i])


def cyclic_reduce(w: Iterable[int]) -> tuple[CyclicWord, Word]:
    """
    Return ``(c, u)`` with ``u * c * u^-1 == w``.

    ``c`` is the stored canonical rotation, so ``u`` absorbs the rotation
    as well as the stripped conjugating prefix.
    """
    w = Word(w)
    core, prefix = _cyclic_core(w)
    c = CyclicWord(core)
    if not core:
        return c, Word()
    # core = p q with c = q p, so core = p c p^-1.
    n = len(core)
    for i in range(n):
        if tuple(core[i:]) + tuple(core[:i]) == tuple(c):
            return c, prefix * Word(core[:i])
    raise AssertionError("canonical rotation not found")


def is_cyclically_reduced(letters: Sequence[int]) -> bool:
    if len(letters) == 0:
        return True
    if any(letters[i] == -letters[i + 1] for i in range(len(letters) - 1)):
        return False
    return len(letters) == 1 or letters[0] != -letters[-1]


def abelianize(w: Iterable[int], rank: int) -> tuple[int, ...]:
    out = [0] * rank
    for a in w:
        g = abs(a) - 1
        if g >= rank:
            raise WordError(f"letter {a} outside rank {rank}")
        out[g] += 1 if a > 0 else -1
    return tuple(out)


def letter_count(w: Iterable[int], generator: int) -> int:
    return sum(1 for a in w if abs(a) - 1 == generator)


def shift(w: Iterable[int], offset: int) -> tuple[int, ...]:
    """Add ``offset`` to every generator index (sign kept)."""
    return tuple(a + offset if a > 0 else a - offset for a in w)


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for a in v:
        g = gcd(g, a)
    if g == 0:
        return tuple(v)
    return tuple(a // g for a in v)


class Substitution:
    """
    An endomorphism of the free group of rank ``rank`` given by generator
    images.  When ``inverse`` is supplied the substitution is an
    automorphism and the inverse is checked on every generator.
    """

    def __init__(self, images: Sequence[Iterable[int]], inverse: "Substitution | None" = None):
        self.images = tuple(Word(im) for im in images)
        self.rank = len(self.images)
        for im in self.images:
            if im.max_generator() > self.rank:
                raise WordError("image uses a generator outside the rank")
        self.inverse = inverse
        if inverse is not None:
            if inverse.rank != self.rank:
                raise WordError("inverse has a different rank")
            for g in range(self.rank):
                if inverse(self.images[g]) != Word([g + 1]):
                    raise WordError("inverse witness does not invert")
                if self(inverse.images[g]) != Word([g + 1]):
                    raise WordError("inverse witness does not invert")

    @classmethod
    def identity(cls, rank: int) -> "Substitution":
        ident = cls._unchecked([[g + 1] for g in range(rank)])
        ident.inverse = ident
        return ident

    @classmethod
    def _unchecked(cls, images, inverse=None):
        s = cls.__new__(cls)
        s.images = tuple(Word(im) for im in images)
        s.rank = len(s.images)
        s.inverse = inverse
        return s

    @property
    def is_automorphism(self) -> bool:
        return self.inverse is not None

    def __call__(self, w: Iterable[int]) -> Word:
        out: list[int] = []
        for a in w:
            g = abs(a) - 1
            if g >= self.rank:
                raise WordError(f"letter {a} outside rank {self.rank}")
            out.extend(self.images[g] if a > 0 else ~self.images[g])
        return Word(out)

    def then(self, other: "Substitution") -> "Substitution":
        """Composite ``w -> other(self(w))``."""
        if other.rank != self.rank:
            raise WordError("rank mismatch")
        images = [other(im) for im in self.images]
        inv = None
        if self.inverse is not None and other.inverse is not None:
            inv = Substitution._unchecked([self.inverse(im) for im in other.inverse.images])
        s = Substitution._unchecked(images, inv)
        if inv is not None:
            inv.inverse = s
        return s

    def matrix(self) -> list[list[int]]:
        """Abelianization matrix: column ``g`` is the exponent vector of image ``g``."""
        cols = [abelianize(im, self.rank) for im in self.images]
        return [[cols[j][i] for j in range(self.rank)] for i in range(self.rank)]

    def __eq__(self, other):
        return isinstance(other, Substitution) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        body = ", ".join(
            f"{_gen_name(g, self.rank)}->{to_string(im, self.rank) or '1'}"
            for g, im in enumerate(self.images)
        )
        return f"Substitution({body})"


def apply(s: Substitution, w: Iterable[int]) -> Word:
    return s(w)


def elementary(rank: int, target: int, multiplier: int, power: int = 1, side: str = "right") -> Substitution:
    """
    Transvection ``target -> target * multiplier^power`` (or on the left),
    with its inverse attached.  Generators are 0-based.
    """
    if target == multiplier:
        raise WordError("transvection needs distinct generators")
    m = Word([multiplier + 1]) ** power
    t = Word([target + 1])
    fwd = [[g + 1] for g in range(rank)]
    back = [[g + 1] for g in range(rank)]
    if side == "right":
        fwd[target] = t * m
        back[target] = t * ~m
    else:
        fwd[target] = m * t
        back[target] = ~m * t
    inv = Substitution._unchecked(back)
    s = Substitution._unchecked(fwd, inv)
    inv.inverse = s
    return s


def signed_permutation(images: Sequence[int]) -> Substitution:
    """Type-I automorphism: generator ``g`` maps to the single letter ``images[g]``."""
    rank = len(images)
    if sorted(abs(a) for a in images) != list(range(1, rank + 1)):
        raise WordError("not a signed permutation")
    back = [0] * rank
    for g, a in enumerate(images):
        back[abs(a) - 1] = (g + 1) if a > 0 else -(g + 1)
    inv = Substitution._unchecked([[a] for a in back])
    s = Substitution._unchecked([[a] for a in images], inv)
    inv.inverse = s
    return s


# -- text encoding -----------------------------------------------------------

def _gen_name(g: int, rank: int) -> str:
    if rank <= 2:
        return _RANK2[g]
    return f"x{g + 1}"


def to_string(w: Iterable[int], rank: int | None = None) -> str:
    w = tuple(w)
    if rank is None:
        rank = max((abs(a) for a in w), default=0)
        rank = max(rank, 2)
    parts = []
    for a in w:
        name = _gen_name(abs(a) - 1, rank)
        parts.append(name if a > 0 else name.upper())
    return "".join(parts)


def parse(text: str, rank: int | None = None) -> Word:
    """
    Parse the text encoding into a reduced word.

    ``rank`` is inferred when omitted: 2 for the ``x``/``y`` alphabet, the
    largest index for the ``x1, x2, ...`` alphabet.
    """
    return Word(parse_letters(text, rank))


def parse_letters(text: str, rank: int | None = None) -> tuple[int, ...]:
    s = "".join(text.split())
    if s in ("", "1"):
        return ()
    pos = 0
    out: list[int] = []
    indexed = None
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:
            raise WordError(f"cannot parse {text!r} at offset {pos}")
        ch, digits = m.groups()
        if digits:
            if ch.lower() != "x":
                raise WordError(f"indexed generators use x: {text!r}")
            g = int(digits) - 1
            if g < 0:
                raise WordError(f"generator index starts at 1: {text!r}")
            kind = True
        else:
            g = _RANK2.index(ch.lower())
            kind = False
        if indexed is None:
            indexed = kind
        elif indexed != kind:
            raise WordError(f"mixed alphabets in {text!r}")
        out.append(g + 1 if ch.islower() else -(g + 1))
        pos = m.end()
    top = max(abs(a) for a in out)
    if rank is not None and top > rank:
        raise WordError(f"{text!r} uses a generator outside rank {rank}")
    return tuple(out)
