# -*- encoding: utf-8 -*-

"""Words in a free group and rotation elements

Words are written as juxtaposed generator names, with ``~`` in front of
an inverse letter. Generators are single lowercase letters, and the
identity is written ``1``::

    from rotelem.words import Word, normalize_rot

    w = Word.parse("a~ba")
    print(normalize_rot(Word.parse("baba"), 10))   # ba^1/5
"""

from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .errors import WordError

__all__ = [
    "Letter",
    "Word",
    "RotationElement",
    "IDENTITY",
    "concat_reduce",
    "invert",
    "word_power",
    "cyclically_reduce",
    "primitive_root",
    "exponent_of",
    "normalize_rot",
    "conjugate_words",
    "conjugacy_equal",
    "common_primitive",
    "s_set_periods",
    "generate_s_set",
    "initial_subwords",
    "element_sort_key",
]

#: A letter of a word
#:
#: Fields are:
#: - ``generator``: name of the generator (a single lowercase letter)
#: - ``sign``: +1 for the generator, -1 for its inverse
Letter = namedtuple("Letter", ["generator", "sign"])


def _inverse_letter(letter: Letter) -> Letter:
    return Letter(letter.generator, -letter.sign)


class Word:
    """A freely reduced word

    The constructor accepts any sequence of ``(generator, sign)`` pairs and
    reduces it, so ``Word([("a", 1), ("a", -1)])`` is the identity. Words
    are immutable and can be used as dictionary keys. Multiplication is
    concatenation followed by free reduction::

        Word.parse("ab") * Word.parse("~b~b")   # a~b
    """

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable = ()):
        stack = []
        for generator, sign in letters:
            if sign not in (1, -1):
                raise WordError(f"invalid sign {sign} for generator {generator!r}")

            if stack and stack[-1].generator == generator and stack[-1].sign == -sign:
                stack.pop()
            else:
                stack.append(Letter(generator, sign))

        self.letters = tuple(stack)

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Build a word from its textual form, e.g. ``a~ba`` or ``1``"""
        text = text.strip()
        if text in ("", "1"):
            return cls()

        letters = []
        sign = 1
        for pos, char in enumerate(text, start=1):
            if char == "~":
                if sign == -1:
                    raise WordError(f"doubled '~' at position {pos} of word {text!r}")
                sign = -1
            elif "a" <= char <= "z":
                letters.append(Letter(char, sign))
                sign = 1
            else:
                raise WordError(
                    f"invalid character {char!r} at position {pos} of word {text!r}"
                )

        if sign == -1:
            raise WordError(f"dangling '~' at the end of word {text!r}")

        return cls(letters)

    @classmethod
    def generator(cls, name: str, sign: int = 1) -> "Word":
        return cls([Letter(name, sign)])

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word(self.letters[index])

        return self.letters[index]

    def __mul__(self, other: "Word") -> "Word":
        return concat_reduce(self, other)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __str__(self):
        if not self.letters:
            return "1"

        return "".join(
            ("~" if letter.sign < 0 else "") + letter.generator
            for letter in self.letters
        )

    def __repr__(self):
        return f"Word({str(self)!r})"


def concat_reduce(u: Word, v: Word) -> Word:
    """Return the freely reduced form of ``u·v``"""
    return Word(u.letters + v.letters)


def invert(w: Word) -> Word:
    """Return the inverse of ``w``"""
    return Word(_inverse_letter(letter) for letter in reversed(w.letters))


def word_power(w: Word, k: int) -> Word:
    """Return ``w`` raised to the integer power ``k`` (``k`` can be negative)"""
    if k < 0:
        return Word(invert(w).letters * (-k))

    return Word(w.letters * k)


def cyclically_reduce(w: Word) -> Tuple[Word, Word]:
    """Split ``w`` into a cyclically reduced core and a conjugator

    Returns:
        A pair ``(core, conjugator)`` such that ``w = conjugator · core ·
        conjugator⁻¹`` and the first and last letter of ``core`` are not
        mutually inverse.
    """
    letters = w.letters
    size = len(letters)
    i = 0
    while 2 * i + 1 < size and letters[i] == _inverse_letter(letters[size - 1 - i]):
        i += 1

    return Word(letters[i : size - i]), Word(letters[:i])


def primitive_root(w: Word) -> Tuple[Word, int]:
    """Return the pair ``(u, k)`` with ``w = uᵏ``, ``u`` primitive and ``k ≥ 1``

    The root is searched on the cyclically reduced core of ``w`` and then
    conjugated back, as a cyclically reduced word is a proper power if and
    only if it is periodic as a string.
    """
    if w.is_identity:
        raise WordError("identity has no primitive root")

    core, conjugator = cyclically_reduce(w)
    letters = core.letters
    size = len(letters)
    for period in range(1, size + 1):
        if size % period == 0 and letters[:period] * (size // period) == letters:
            root = Word(conjugator.letters + letters[:period] + invert(conjugator).letters)
            return root, size // period

    # Unreachable, as period == size always matches
    raise AssertionError(f"no period found for {w}")


def exponent_of(w: Word, root: Word) -> Optional[int]:
    """Return ``k`` such that ``w = rootᵏ``, or ``None`` if there is none

    ``root`` must be primitive; the identity is the zeroth power of any
    root."""
    if w.is_identity:
        return 0

    u, k = primitive_root(w)
    if u == root:
        return k

    if u == invert(root):
        return -k

    return None


@dataclass(frozen=True)
class RotationElement:
    """A formal rational power ``base^exponent`` of a primitive word

    Use :meth:`RotationElement.power` or :func:`normalize_rot` to build
    instances: they take care of the normal form (primitive base, positive
    exponent in lowest terms). The identity has neither base nor exponent.
    """

    base: Optional[Word] = None
    exponent: Optional[Fraction] = None

    def __post_init__(self):
        if (self.base is None) != (self.exponent is None):
            raise WordError("a rotation element needs both a base and an exponent")

        if self.base is not None:
            if self.base.is_identity:
                raise WordError("the base of a rotation element must not be empty")
            if self.exponent <= 0:
                raise WordError("the exponent of a rotation element must be positive")

    @classmethod
    def power(cls, base: Word, exponent) -> "RotationElement":
        """Return the normal form of ``base^exponent``"""
        exponent = Fraction(exponent)
        if base.is_identity or exponent == 0:
            return IDENTITY

        root, k = primitive_root(base)
        exponent *= k
        if exponent < 0:
            root, exponent = invert(root), -exponent

        return cls(root, exponent)

    @property
    def is_identity(self) -> bool:
        return self.base is None

    def __str__(self):
        if self.is_identity:
            return "1"

        return f"{self.base}^{self.exponent.numerator}/{self.exponent.denominator}"

    def to_dict(self):
        if self.is_identity:
            return {"element": "1", "base": None, "exponent": None}

        return {
            "element": str(self),
            "base": str(self.base),
            "exponent": f"{self.exponent.numerator}/{self.exponent.denominator}",
        }


#: The rotation element of points whose lift is fixed
IDENTITY = RotationElement()


def element_sort_key(element: RotationElement):
    """Key that sorts rotation elements by exponent, then by base"""
    if element.is_identity:
        return (Fraction(0), "")

    return (element.exponent, str(element.base))


def normalize_rot(w: Word, n: int) -> RotationElement:
    """Return the rotation element ``w^(1/n)`` in normal form"""
    if n < 1:
        raise WordError(f"the period must be positive, got {n}")

    return RotationElement.power(w, Fraction(1, n))


def conjugate_words(u: Word, v: Word) -> bool:
    """Tell if ``u`` and ``v`` are conjugate in the free group"""
    core_u, _ = cyclically_reduce(u)
    core_v, _ = cyclically_reduce(v)
    if len(core_u) != len(core_v):
        return False

    letters = core_u.letters
    return any(
        letters[i:] + letters[:i] == core_v.letters for i in range(max(len(letters), 1))
    )


def conjugacy_equal(r1: RotationElement, r2: RotationElement) -> bool:
    """Tell if two rotation elements are equal up to conjugacy"""
    if r1.is_identity or r2.is_identity:
        return r1.is_identity and r2.is_identity

    return r1.exponent == r2.exponent and conjugate_words(r1.base, r2.base)


def common_primitive(w1: Word, w2: Word) -> Optional[Word]:
    """Return a primitive word of which both ``w1`` and ``w2`` are powers

    When one of the two words is the identity, the root of the other one is
    returned. The result is ``None`` if both are the identity or if the two
    words are not powers of a common word.
    """
    if w1.is_identity and w2.is_identity:
        return None

    if w1.is_identity:
        return primitive_root(w2)[0]

    if w2.is_identity:
        return primitive_root(w1)[0]

    u1, _ = primitive_root(w1)
    u2, _ = primitive_root(w2)
    if u2 == u1 or u2 == invert(u1):
        return u1

    return None


def s_set_periods(
    pair1: Tuple[Word, int], pair2: Tuple[Word, int], max_len: int
) -> Dict[RotationElement, int]:
    """Enumerate the S-set of two raw rotation pairs

    Each pair ``(w, m)`` stands for the rotation element ``w^(1/m)``. For
    every sequence ``v₁…v_l`` (``l ≤ max_len``) drawn from ``{w₁, w₂}``,
    with ``r`` copies of ``w₁`` and ``s`` copies of ``w₂``, the element
    ``(v₁…v_l)^(1/(rm+sn))`` is computed.

    Returns:
        A dictionary associating each element with the smallest
        denominator ``rm+sn`` that produced it.
    """
    if max_len < 1:
        raise WordError(f"max_len must be at least 1, got {max_len}")

    for _, period in (pair1, pair2):
        if period < 1:
            raise WordError(f"the period must be positive, got {period}")

    pairs = (pair1, pair2)
    result = {}
    for length in range(1, max_len + 1):
        for choice in product((0, 1), repeat=length):
            word = Word()
            period = 0
            for idx in choice:
                word = concat_reduce(word, pairs[idx][0])
                period += pairs[idx][1]

            element = normalize_rot(word, period)
            if element not in result or period < result[element]:
                result[element] = period

    return result


def generate_s_set(
    pair1: Tuple[Word, int], pair2: Tuple[Word, int], max_len: int
) -> Set[RotationElement]:
    """Return the S-set of two raw rotation pairs, see :func:`s_set_periods`"""
    return set(s_set_periods(pair1, pair2, max_len))


def initial_subwords(w: Word) -> List[Word]:
    """Return all the prefixes of ``w``, from the identity to ``w`` itself"""
    return [w[:i] for i in range(len(w) + 1)]
