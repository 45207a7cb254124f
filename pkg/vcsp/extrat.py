__all__ = (
    "ExtRat",
    "ZERO",
    "ONE",
    "INFINITY",
    "parse",
    "format",
    "sum_of",
)


import fractions
import functools
import re
import typing

from . import errors


@functools.total_ordering
class ExtRat:
    """Nonnegative rational number or positive infinity.

    Addition absorbs into infinity and multiplication follows the convention
    ``inf * 0 == 0 * inf == 0``. There is no subtraction.
    """

    __slots__ = ("_fraction",)

    def __init__(self, numerator: int=0, denominator: int=1) -> None:
        if denominator == 0:
            raise errors.ZeroDenominatorError("zero denominator: numerator={!r}".format(numerator))

        fraction = fractions.Fraction(numerator, denominator)

        if fraction < 0:
            raise errors.MalformedRationalError("negative value: numerator={!r} denominator={!r}"
                                                .format(numerator, denominator))

        self._fraction: typing.Optional[fractions.Fraction] = fraction

    @classmethod
    def from_fraction(cls, fraction: fractions.Fraction) -> "ExtRat":
        if fraction < 0:
            raise errors.MalformedRationalError("negative value: fraction={!s}".format(fraction))

        value = cls.__new__(cls)
        value._fraction = fraction
        return value

    @classmethod
    def infinity(cls) -> "ExtRat":
        value = cls.__new__(cls)
        value._fraction = None
        return value

    def is_infinite(self) -> bool:
        return self._fraction is None

    def is_finite(self) -> bool:
        return self._fraction is not None

    def is_zero(self) -> bool:
        return self._fraction == 0

    def is_positive(self) -> bool:
        return self._fraction is None or self._fraction > 0

    def to_fraction(self) -> fractions.Fraction:
        assert self._fraction is not None, "infinite value"
        return self._fraction

    def __add__(self, other: "ExtRat") -> "ExtRat":
        if not isinstance(other, ExtRat):
            return NotImplemented

        if self._fraction is None or other._fraction is None:
            return INFINITY

        return ExtRat.from_fraction(self._fraction + other._fraction)

    def __mul__(self, other: "ExtRat") -> "ExtRat":
        if not isinstance(other, ExtRat):
            return NotImplemented

        if self._fraction == 0 or other._fraction == 0:
            return ZERO

        if self._fraction is None or other._fraction is None:
            return INFINITY

        return ExtRat.from_fraction(self._fraction * other._fraction)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtRat):
            return NotImplemented

        return self._fraction == other._fraction

    def __lt__(self, other: "ExtRat") -> bool:
        if not isinstance(other, ExtRat):
            return NotImplemented

        if self._fraction is None:
            return False

        if other._fraction is None:
            return True

        return self._fraction < other._fraction

    def __hash__(self) -> int:
        return hash(self._fraction)

    def __str__(self) -> str:
        return format(self)

    def __repr__(self) -> str:
        return "ExtRat({!r})".format(format(self))


def parse(text: str) -> ExtRat:
    text = text.strip()

    if text == _INFINITY_TEXT:
        return INFINITY

    matches = _RE1.match(text)

    if matches is None:
        raise errors.MalformedRationalError("malformed rational: text={!r}".format(text))

    numerator = int(matches[1])

    if matches[2] is None:
        return ExtRat(numerator)

    return ExtRat(numerator, int(matches[2]))


def format(value: ExtRat) -> str:
    if value.is_infinite():
        return _INFINITY_TEXT

    fraction = value.to_fraction()

    if fraction.denominator == 1:
        return str(fraction.numerator)

    return "{}/{}".format(fraction.numerator, fraction.denominator)


def sum_of(values: typing.Iterable[ExtRat]) -> ExtRat:
    total = fractions.Fraction(0)

    for value in values:
        if value.is_infinite():
            return INFINITY

        total += value.to_fraction()

    return ExtRat.from_fraction(total)


_INFINITY_TEXT = "inf"
_RE1 = re.compile(r"^(\d+)(?:/(\d+))?$")

ZERO = ExtRat(0)
ONE = ExtRat(1)
INFINITY = ExtRat.infinity()
