"""Exact rational scalar used throughout the algebraic core.

gmpy2's mpq is preferred when installed (same semantics as
fractions.Fraction, roughly an order of magnitude faster on the dense
operator products); fractions.Fraction is the fallback.  Either way a
value is always in lowest terms with positive denominator, serializes
as a "p/q" (or bare "p") string, and interoperates with ints.

Floats never enter here; the numeric layer converts explicitly.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - exercised only without gmpy2
    Rat = Fraction

ZERO = Rat(0)
ONE = Rat(1)


def rat(value) -> Rat:
    """Coerce an int, string ("p/q" or "p"), Fraction or Rat to Rat."""
    if isinstance(value, float):
        raise TypeError(f"refusing to coerce float {value!r} to an exact rational")
    return Rat(value)


def parse_rational(text: str) -> Rat:
    """Parse a "p/q" or "p" string, rejecting malformed or zero-denominator input."""
    if not isinstance(text, str):
        if isinstance(text, int):
            return Rat(text)
        raise ValueError(f"expected a rational string, got {type(text).__name__}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in rational {text!r}")
    return Rat(p, q)


def format_rational(value) -> str:
    """Lowest-terms string form, "p/q" with q > 0, or bare "p" when q == 1."""
    return str(Rat(value))


def falling_factorial(a, r: int) -> Rat:
    """a(a-1)...(a-r+1) over the rationals; 1 for r == 0."""
    if r < 0:
        raise ValueError("falling factorial needs r >= 0")
    out = ONE
    a = Rat(a)
    for i in range(r):
        out *= a - i
    return out
