"""Exact scalars over Q(i) and univariate polynomials in ``t``.

Rationals are :class:`fractions.Fraction`.  :class:`GaussianRational` adds an
imaginary part, and :class:`Poly` stores a trimmed coefficient tuple indexed
by the exponent of ``t``.  All values are immutable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "GaussianRational",
    "Poly",
    "ParseError",
    "INF",
    "gq",
    "parse_poly",
    "parse_scalar",
    "format_rational",
    "DEFAULT_EXPONENT_CAP",
]

INF = math.inf
DEFAULT_EXPONENT_CAP = 10**6

Scalar = Union[int, Fraction, "GaussianRational"]


class GaussianRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        if isinstance(x, complex):
            raise TypeError("floating-point complex values are not exact")
        raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational")

    def __eq__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_scalar(self)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        if not o.im:
            return GaussianRational(self.re * o.re, self.im * o.re)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """``x * conj(x)``, a nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_real(self) -> bool:
        return self.im == 0


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gq(x) -> GaussianRational:
    """Coerce an int, Fraction, GaussianRational or scalar literal."""
    if isinstance(x, str):
        return parse_scalar(x)
    return GaussianRational.coerce(x)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(c: GaussianRational) -> str:
    """Canonical literal for a scalar, parseable as a ``coeff`` or ``rat``."""
    if c.im == 0:
        return format_rational(c.re)
    if c.re == 0:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{format_rational(c.im)}i"
    sign = "+" if c.im > 0 else "-"
    mag = abs(c.im)
    imag = "i" if mag == 1 else f"{format_rational(mag)}i"
    return f"({format_rational(c.re)}{sign}{imag})"


class Poly:
    """A polynomial in ``t`` with Gaussian-rational coefficients.

    ``coeffs[j]`` is the coefficient of ``t**j``; trailing zeros are trimmed so
    the zero polynomial has an empty tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [GaussianRational.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, exponent: int, c=1) -> "Poly":
        return cls([0] * exponent + [c])

    @classmethod
    def t(cls) -> "Poly":
        return cls.monomial(1)

    @classmethod
    def coerce(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, str):
            return parse_poly(x)
        return cls.const(x)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        """Highest stored exponent; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, j: int) -> GaussianRational:
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return ZERO

    def ord(self):
        """Order of vanishing at ``t = 0``; ``math.inf`` for zero."""
        for j, c in enumerate(self.coeffs):
            if c:
                return j
        return INF

    def leading_coeff(self) -> GaussianRational:
        """Coefficient at exponent ``ord(self)``."""
        if not self.coeffs:
            raise ValueError("no leading term: zero polynomial")
        return self.coeffs[self.ord()]

    def conj(self) -> "Poly":
        return Poly(c.conj() for c in self.coeffs)

    # -- ring operations -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == Poly.const(other).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __add__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] = out[j] + c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, Poly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return Poly()
            out = [ZERO] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if not x:
                    continue
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
            return Poly(out)
        if isinstance(other, (int, Fraction)):
            if other == 1:
                return self
            return Poly(x * other for x in self.coeffs)
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return Poly(x * c for x in self.coeffs)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        return self * GaussianRational.coerce(c)

    def __truediv__(self, other):
        """Division by a nonzero scalar."""
        if isinstance(other, Poly):
            return NotImplemented
        c = GaussianRational.coerce(other)
        return self * c.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        return self.eval(x)

    def eval(self, x) -> GaussianRational:
        """Evaluate at a Gaussian-rational point (Horner)."""
        x = GaussianRational.coerce(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        """``self(inner(t))``."""
        inner = Poly.coerce(inner)
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly.const(c)
        return acc

    def shift_down(self, k: int) -> "Poly":
        """Divide by ``t**k``; requires ``ord(self) >= k``."""
        if self.ord() < k:
            raise ValueError(f"polynomial is not divisible by t^{k}")
        return Poly(self.coeffs[k:])

    def truncate(self, n: int) -> "Poly":
        """Drop all terms of degree ``>= n``."""
        return Poly(self.coeffs[:n])

    # -- printing ---------------------------------------------------------

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        return format_poly(self)


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction, GaussianRational)):
        return Poly.const(x)
    return None


def _mono(j: int) -> str:
    if j == 1:
        return "t"
    return f"t^{j}"


def format_poly(p: Poly) -> str:
    """Canonical printed form: increasing exponents, lowest-terms rationals."""
    parts: list[str] = []
    for j, c in enumerate(p.coeffs):
        if not c:
            continue
        negative = False
        if c.im == 0 and c.re < 0:
            negative, c = True, -c
        elif c.re == 0 and c.im < 0:
            negative, c = True, -c
        if j == 0:
            body = format_scalar(c)
        elif c == ONE:
            body = _mono(j)
        else:
            body = f"{format_scalar(c)}*{_mono(j)}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts) if parts else "0"


# -- parser -----------------------------------------------------------------


class ParseError(ValueError):
    """Malformed polynomial literal.

    ``offset`` is the byte offset (UTF-8) into the input where the problem was
    detected; ``code`` is a stable machine-readable tag.
    """

    def __init__(self, message: str, offset: int, code: str = "syntax"):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset
        self.code = code


class _Parser:
    def __init__(self, text: str, exponent_cap: int):
        self.text = text
        self.pos = 0
        self.exponent_cap = exponent_cap

    def byte_offset(self, pos=None) -> int:
        if pos is None:
            pos = self.pos
        return len(self.text[:pos].encode("utf-8"))

    def error(self, message, code="syntax", pos=None):
        raise ParseError(message, self.byte_offset(pos), code)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        if self.pos < len(self.text):
            return self.text[self.pos]
        return ""

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.accept(ch):
            found = self.peek() or "end of input"
            self.error(f"expected {ch!r}, found {found!r}")

    def uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            found = self.peek() or "end of input"
            self.error(f"expected digits, found {found!r}")
        return int(self.text[start:self.pos])

    def rat_magnitude(self) -> Fraction:
        num = self.uint()
        if self.accept("/"):
            start = self.pos
            den = self.uint()
            if den == 0:
                self.error("zero denominator", code="zero-denominator", pos=start)
            return Fraction(num, den)
        return Fraction(num)

    def paren_coeff(self) -> GaussianRational:
        # "(" rat ("+"|"-") rat? "i" ")"
        neg = self.accept("-")
        re = self.rat_magnitude()
        if neg:
            re = -re
        if self.accept("+"):
            sign = 1
        elif self.accept("-"):
            sign = -1
        else:
            self.error("expected '+' or '-' inside parenthesized coefficient")
        if self.peek() == "i":
            im = Fraction(1)
        else:
            im = self.rat_magnitude()
        self.expect("i")
        self.expect(")")
        return GaussianRational(re, sign * im)

    def mono_exponent(self) -> int:
        self.expect("t")
        if self.accept("^"):
            start = self.pos
            e = self.uint()
            if e > self.exponent_cap:
                self.error(
                    f"exponent {e} exceeds cap {self.exponent_cap}",
                    code="exponent-overflow",
                    pos=start,
                )
            return e
        return 1

    def term(self) -> tuple[GaussianRational, int]:
        ch = self.peek()
        if ch == "t":
            coeff, exp = ONE, self.mono_exponent()
        else:
            if ch == "(":
                self.pos += 1
                coeff = self.paren_coeff()
            elif ch == "i":
                self.pos += 1
                coeff = I
            elif ch.isdigit():
                r = self.rat_magnitude()
                coeff = GaussianRational(0, r) if self.accept("i") else GaussianRational(r)
            else:
                self.error(f"unexpected {ch or 'end of input'!r}")
            exp = 0
            if self.accept("*"):
                exp = self.mono_exponent()
            elif self.peek() == "t":
                exp = self.mono_exponent()
        # "t/2" shorthand for "1/2*t"
        if self.peek() == "/":
            self.pos += 1
            start = self.pos
            den = self.uint()
            if den == 0:
                self.error("zero denominator", code="zero-denominator", pos=start)
            coeff = coeff / den
        return coeff, exp

    def poly(self) -> Poly:
        acc: dict[int, GaussianRational] = {}
        sign = -1 if self.accept("-") else 1
        while True:
            coeff, exp = self.term()
            acc[exp] = acc.get(exp, ZERO) + (coeff if sign > 0 else -coeff)
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        if not acc:
            return Poly()
        top = max(acc)
        return Poly(acc.get(j, ZERO) for j in range(top + 1))


def parse_poly(text: str, exponent_cap: int = DEFAULT_EXPONENT_CAP) -> Poly:
    """Parse a polynomial literal such as ``"t^2 + 1/2*t"`` or ``"(3+2i)*t^3 - t"``.

    Whitespace is insignificant.  A leading sign on the first term and the
    shorthand ``t/2`` are accepted in addition to the canonical grammar.
    """
    if not isinstance(text, str):
        raise TypeError("polynomial literal must be a string")
    return _Parser(text, exponent_cap).poly()


def parse_scalar(text: str) -> GaussianRational:
    p = parse_poly(text)
    if p.degree > 0:
        raise ParseError("expected a constant, found a polynomial in t", 0)
    return p.coeff(0)


def poly_vector(items: Sequence) -> tuple[Poly, ...]:
    """Coerce a sequence of literals/scalars/polys to a tuple of Poly."""
    return tuple(Poly.coerce(x) for x in items)
