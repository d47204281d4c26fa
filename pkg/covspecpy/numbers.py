from fractions import Fraction
from decimal import Decimal, InvalidOperation

from .errors import ParameterError


thousand = 10 ** 3
K = thousand

million = 10 ** 6
M = million

# Defaults for every tunable budget. Functions take these as keyword arguments.
COSET_BUDGET = 50 * K
MAX_CLASSES = 100 * K
GRID_STATES = 200
WITNESS_STATES = 5 * K
ELIMINATION_LENGTH = 12
DEFAULT_MESH = 6
LANDMARKS = 16


def to_rational(x):
    """
    Parse ``x`` into an exact ``Fraction``.

    Parameters
    ----------
    x : Fraction or int or str
        Strings may be ``"a/b"``, ``"a"`` or a decimal such as ``"1.5"``. Floats are
        refused since they are not exact.

    Returns
    -------
    Fraction

    Examples
    --------
    >>> to_rational('7/2')
    Fraction(7, 2)
    >>> to_rational('0.25')
    Fraction(1, 4)
    """
    if isinstance(x, bool):
        raise ParameterError('cannot read a bool as a rational')
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        raise ParameterError('floats are not exact - pass `{}` as a string or Fraction'.format(x))
    if isinstance(x, str):
        text = x.strip()
        try:
            if '/' in text:
                num, den = text.split('/')
                return Fraction(int(num), int(den))
            return Fraction(Decimal(text))
        except (ValueError, ZeroDivisionError, InvalidOperation):
            raise ParameterError('cannot parse `{}` as a rational'.format(x))
    raise ParameterError('cannot read type `{}` as a rational'.format(type(x).__name__))


def format_rational(x):
    """
    Format a rational as ``"num/den"``.

    Examples
    --------
    >>> format_rational(Fraction(3))
    '3/1'
    """
    x = Fraction(x)
    return '{}/{}'.format(x.numerator, x.denominator)
