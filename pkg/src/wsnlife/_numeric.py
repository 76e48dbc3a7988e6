from fractions import Fraction
from numbers import Rational


def to_fraction(x):
    """Exact rational for ``x``; floats are read through their shortest repr.

    ``Fraction(0.1)`` would give the binary expansion 3602879701896397/2**55,
    whereas configs and tests mean the decimal 1/10.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(repr(float(x)))


def is_exact(x):
    return isinstance(x, Rational)


def as_number(x):
    """Normalise a parsed value: keep ints/Fractions, coerce the rest to float."""
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, Fraction)):
        return x
    return float(x)
