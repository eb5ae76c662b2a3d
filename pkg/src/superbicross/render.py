"""Canonical text rendering shared by reports and the ``.hsa`` printer."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = ["render_scalar", "render_term", "join_terms"]


def _rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"({q.numerator}/{q.denominator})"


def _imag(q: Fraction) -> str:
    # q > 0
    if q == 1:
        return "i"
    if q.denominator == 1:
        return f"({q.numerator}*i)"
    if q.numerator == 1:
        return f"(i/{q.denominator})"
    return f"({q.numerator}*i/{q.denominator})"


def _plain(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _coefficient(re: Fraction, im: Fraction) -> tuple[bool, str | None]:
    """Return ``(negative, magnitude)``; magnitude ``None`` means unit."""
    if not im:
        return re < 0, None if abs(re) == 1 else _rational(abs(re))
    if not re:
        return im < 0, _imag(abs(im))
    if abs(im) == 1:
        imag = "i"
    else:
        imag = f"{_plain(abs(im))}*i"
    return False, f"({_plain(re)}{'-' if im < 0 else '+'}{imag})"


def render_term(exp: int, re: Fraction, im: Fraction, word: Sequence[str] = ()) -> tuple[bool, str]:
    """Render one monomial ``c * k^exp * word``; returns ``(negative, body)``."""
    neg, mag = _coefficient(re, im)
    parts = []
    if exp:
        parts.append("k" if exp == 1 else f"k^{exp}")
    parts.extend(word)
    if mag is not None or not parts:
        parts.insert(0, mag if mag is not None else "1")
    return neg, "*".join(parts)


def join_terms(terms: Sequence[tuple[bool, str]]) -> str:
    if not terms:
        return "0"
    out = []
    for n, (neg, body) in enumerate(terms):
        if n == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def render_scalar(s) -> str:
    terms = []
    for e in sorted(s._terms, reverse=True):
        re, im = s._terms[e]
        terms.append(render_term(e, re, im))
    return join_terms(terms)
