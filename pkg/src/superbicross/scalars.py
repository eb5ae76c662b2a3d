"""Exact coefficients: Gaussian rationals times integer powers of kappa.

A :class:`Scalar` is a finite Laurent polynomial in the formal deformation
parameter ``k`` whose coefficients live in Q(i).  Nothing here is ever
evaluated numerically.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from gmpy2 import mpq

__all__ = [
    "GaussianRational",
    "Scalar",
    "ScalarError",
    "NotMonomial",
    "DivergentLimit",
    "ZERO",
    "ONE",
    "I",
    "KAPPA",
    "scalar",
    "scalar_add",
    "scalar_mul",
    "invert_monomial",
    "classical_limit",
]


class ScalarError(ArithmeticError):
    pass


class NotMonomial(ScalarError):
    pass


class DivergentLimit(ScalarError):
    pass


Number = Union[int, Fraction]


class GaussianRational:
    """``re + im*i`` with arbitrary precision rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Number = 0, im: Number = 0):
        # Fraction already keeps lowest terms with a positive denominator
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __add__(self, other: GaussianRational) -> GaussianRational:
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussianRational) -> GaussianRational:
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: GaussianRational) -> GaussianRational:
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    def inverse(self) -> GaussianRational:
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __repr__(self) -> str:
        return f"GaussianRational({self.re}, {self.im})"


class Scalar:
    """Immutable Laurent polynomial in ``k`` over Q(i).

    ``terms`` maps a kappa exponent to a nonzero ``(re, im)`` pair of
    ``gmpy2.mpq`` rationals.  The zero scalar has no terms.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, GaussianRational] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if not isinstance(c, GaussianRational):
                    c = GaussianRational(c)
                if c:
                    clean[int(e)] = (mpq(c.re), mpq(c.im))
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> Scalar:
        s = cls.__new__(cls)
        s._terms = terms
        s._hash = None
        return s

    @classmethod
    def const(cls, re: Number = 0, im: Number = 0, exp: int = 0) -> Scalar:
        re, im = mpq(re), mpq(im)
        if not re and not im:
            return ZERO
        return cls._raw({exp: (re, im)})

    @property
    def terms(self) -> dict[int, GaussianRational]:
        return {e: _gaussian(c) for e, c in self._terms.items()}

    def items(self) -> Iterable[tuple[int, GaussianRational]]:
        for e in sorted(self._terms, reverse=True):
            yield e, _gaussian(self._terms[e])

    def monomials(self) -> list[Scalar]:
        """Split into single-exponent pieces, highest exponent first."""
        return [Scalar._raw({e: self._terms[e]}) for e in sorted(self._terms, reverse=True)]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_one(self) -> bool:
        return self._terms == {0: (1, 0)}

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: (mpq(other), mpq(0))} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> Scalar:
        other = scalar(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, (c, d) in other._terms.items():
            if e in out:
                a, b = out[e]
                re, im = a + c, b + d
                if re or im:
                    out[e] = (re, im)
                else:
                    del out[e]
            else:
                out[e] = (c, d)
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar._raw({e: (-a, -b) for e, (a, b) in self._terms.items()})

    def __sub__(self, other) -> Scalar:
        return self + (-scalar(other))

    def __rsub__(self, other) -> Scalar:
        return scalar(other) - self

    def __mul__(self, other) -> Scalar:
        if not isinstance(other, Scalar):
            other = scalar(other)
        if other is ONE:
            return self
        if self is ONE:
            return other
        st, ot = self._terms, other._terms
        if not st or not ot:
            return ZERO
        if len(st) == 1 and len(ot) == 1:
            (e1, (a, b)), = st.items()
            (e2, (c, d)), = ot.items()
            return Scalar._raw({e1 + e2: (a * c - b * d, a * d + b * c)})
        out: dict = {}
        for e1, (a, b) in st.items():
            for e2, (c, d) in ot.items():
                e = e1 + e2
                re, im = a * c - b * d, a * d + b * c
                if e in out:
                    x, y = out[e]
                    re, im = re + x, im + y
                out[e] = (re, im)
        return Scalar._raw({e: v for e, v in out.items() if v[0] or v[1]})

    __rmul__ = __mul__

    def __truediv__(self, other) -> Scalar:
        return self * invert_monomial(scalar(other))

    def __rtruediv__(self, other) -> Scalar:
        return scalar(other) * invert_monomial(self)

    def __pow__(self, n: int) -> Scalar:
        if n < 0:
            return invert_monomial(self) ** (-n)
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def max_exponent(self) -> int | None:
        return max(self._terms) if self._terms else None

    def __repr__(self) -> str:
        from .render import render_scalar

        return f"Scalar({render_scalar(self)})"

    def __str__(self) -> str:
        from .render import render_scalar

        return render_scalar(self)


def _gaussian(c) -> GaussianRational:
    return GaussianRational(Fraction(int(c[0].numerator), int(c[0].denominator)), Fraction(int(c[1].numerator), int(c[1].denominator)))


ZERO = Scalar._raw({})
ONE = Scalar._raw({0: (mpq(1), mpq(0))})
I = Scalar._raw({0: (mpq(0), mpq(1))})
KAPPA = Scalar._raw({1: (mpq(1), mpq(0))})


def scalar(x) -> Scalar:
    """Coerce ints, Fractions and GaussianRationals to :class:`Scalar`."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, GaussianRational):
        return Scalar({0: x})
    if isinstance(x, (int, Fraction)):
        return Scalar.const(x)
    if isinstance(x, complex):
        raise TypeError("floating point complex numbers are not exact scalars")
    raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def invert_monomial(a: Scalar) -> Scalar:
    if not a._terms:
        raise ZeroDivisionError("cannot invert the zero scalar")
    if len(a._terms) != 1:
        raise NotMonomial(f"{a} has {len(a._terms)} kappa terms")
    (e, (re, im)), = a._terms.items()
    n = re * re + im * im
    return Scalar._raw({-e: (re / n, -im / n)})


def classical_limit(a: Scalar) -> Scalar:
    """Send ``1/k -> 0``; positive powers of ``k`` diverge."""
    out = {}
    for e, c in a._terms.items():
        if e > 0:
            raise DivergentLimit(f"term with k^{e} diverges as 1/k -> 0")
        if e == 0:
            out[0] = c
    return Scalar._raw(out)
