"""Graded tensor products of presented algebras.

Factor indices in the public operations are 1-based, matching the usual
``m_12`` / ``sigma_23`` notation.  Applying a map to one factor never
introduces a sign; all Koszul signs come from :func:`tensor_mul` and
:func:`graded_flip`.
"""

from __future__ import annotations

import itertools
from typing import Callable, Mapping, Sequence, Union

from .presentation import Element, Presentation
from .scalars import ONE, Scalar, scalar

__all__ = [
    "TensorError",
    "ArityMismatch",
    "PresentationMismatch",
    "BadIndex",
    "DomainMismatch",
    "TensorElement",
    "tensor",
    "tensor_mul",
    "graded_flip",
    "apply_factorwise",
    "multiply_adjacent_factors",
    "transfer_tensor",
]


class TensorError(ValueError):
    pass


class ArityMismatch(TensorError):
    pass


class PresentationMismatch(TensorError):
    pass


class BadIndex(TensorError, IndexError):
    pass


class DomainMismatch(TensorError):
    pass


def _acc(out: dict, key, c: Scalar) -> None:
    v = out.get(key)
    v = c if v is None else v + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class TensorElement:
    """Linear combination of tuples of normal words, one per factor."""

    __slots__ = ("factors", "terms")

    def __init__(self, factors: Sequence[Presentation], terms: dict):
        self.factors = tuple(factors)
        self.terms = terms

    @property
    def arity(self) -> int:
        return len(self.factors)

    @classmethod
    def zero(cls, factors: Sequence[Presentation]) -> TensorElement:
        return cls(factors, {})

    @classmethod
    def unit(cls, factors: Sequence[Presentation]) -> TensorElement:
        return cls(factors, {tuple(() for _ in factors): ONE})

    @classmethod
    def from_raw(cls, factors: Sequence[Presentation], raw: Mapping[tuple, Scalar]) -> TensorElement:
        """Normalize every component of a raw sum of word tuples."""
        factors = tuple(factors)
        out: dict = {}
        for words, c in raw.items():
            if not c:
                continue
            parts = [P.nf_word(tuple(w)) for P, w in zip(factors, words)]
            for combo in itertools.product(*(p.items() for p in parts)):
                k = c
                for _, d in combo:
                    k = k * d
                _acc(out, tuple(w for w, _ in combo), k)
        return cls(factors, out)

    def _check(self, other: TensorElement) -> None:
        if other.arity != self.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")
        if any(a is not b for a, b in zip(self.factors, other.factors)):
            raise PresentationMismatch("tensor factors differ")

    def __add__(self, other: TensorElement) -> TensorElement:
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return TensorElement(self.factors, out)

    def __neg__(self) -> TensorElement:
        return TensorElement(self.factors, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: TensorElement) -> TensorElement:
        return self + (-other)

    def scale(self, c) -> TensorElement:
        c = scalar(c)
        if not c:
            return TensorElement(self.factors, {})
        return TensorElement(self.factors, {k: c * d for k, d in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (
            self.arity == other.arity
            and all(a is b for a, b in zip(self.factors, other.factors))
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def term_parities(self, words: Sequence[tuple]) -> tuple[int, ...]:
        return tuple(P.word_parity(w) for P, w in zip(self.factors, words))

    def factor_element(self, i: int) -> Element:
        """Only for arity one: the underlying element."""
        if self.arity != 1:
            raise ArityMismatch("factor_element needs arity 1")
        return Element(self.factors[0], {w[0]: c for w, c in self.terms.items()})

    def map_coefficients(self, f) -> TensorElement:
        return TensorElement.from_raw(self.factors, {k: f(c) for k, c in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: tuple((len(w), w) for w in t[0]))

    def render(self) -> str:
        from .render import join_terms, render_term

        parts = []
        for words, c in self.sorted_terms():
            body = " @ ".join(P.render_word(w) for P, w in zip(self.factors, words))
            for e in sorted(c._terms, reverse=True):
                re, im = c._terms[e]
                neg, coef = render_term(e, re, im)
                if coef == "1":
                    parts.append((neg, body))
                else:
                    parts.append((neg, f"{coef}*{body}"))
        return join_terms(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"TensorElement({self.render()})"


def tensor(*elements: Element) -> TensorElement:
    """Plain tensor product ``e1 (x) e2 (x) ...`` of elements (no sign)."""
    factors = tuple(e.presentation for e in elements)
    out: dict = {}
    for combo in itertools.product(*(e.terms.items() for e in elements)):
        k = ONE
        for _, c in combo:
            k = k * c
        _acc(out, tuple(w for w, _ in combo), k)
    return TensorElement(factors, out)


def _koszul(px: Sequence[int], py: Sequence[int]) -> int:
    # y_i passes x_j for every j > i
    s = 0
    suffix = 0
    for i in range(len(px) - 1, -1, -1):
        s += py[i] * suffix
        suffix += px[i]
    return s & 1


def tensor_mul(x: TensorElement, y: TensorElement) -> TensorElement:
    x._check(y)
    factors = x.factors
    out: dict = {}
    ypar = [(yw, d, y.term_parities(yw)) for yw, d in y.terms.items()]
    if len(factors) == 2:
        P1, P2 = factors
        for (a1, a2), c in x.terms.items():
            # y's first slot passes x's second slot
            px2 = P2.word_parity(a2)
            for (b1, b2), d, (pb1, _) in ypar:
                k = c * d
                if px2 and pb1:
                    k = -k
                p2 = P2.nf_word(a2 + b2)
                for w1, e1 in P1.nf_word(a1 + b1).items():
                    ke = k * e1
                    for w2, e2 in p2.items():
                        _acc(out, (w1, w2), ke * e2)
        return TensorElement(factors, out)
    for xw, c in x.terms.items():
        px = x.term_parities(xw)
        for yw, d, py in ypar:
            k = c * d
            if _koszul(px, py):
                k = -k
            parts = [P.nf_word(a + b) for P, a, b in zip(factors, xw, yw)]
            for combo in itertools.product(*(p.items() for p in parts)):
                kk = k
                for _, e in combo:
                    kk = kk * e
                _acc(out, tuple(w for w, _ in combo), kk)
    return TensorElement(factors, out)


def _check_index(x: TensorElement, i: int, pair: bool = False) -> None:
    hi = x.arity - 1 if pair else x.arity
    if not (1 <= i <= hi):
        raise BadIndex(f"factor index {i} out of range for arity {x.arity}")


def graded_flip(x: TensorElement, i: int = 1) -> TensorElement:
    """Swap factors ``i`` and ``i+1`` with the sign ``(-1)^{p(left)p(right)}``."""
    _check_index(x, i, pair=True)
    j = i - 1
    f = list(x.factors)
    f[j], f[j + 1] = f[j + 1], f[j]
    Pl, Pr = x.factors[j], x.factors[j + 1]
    out = {}
    for words, c in x.terms.items():
        w = list(words)
        sign = Pl.word_parity(w[j]) * Pr.word_parity(w[j + 1])
        w[j], w[j + 1] = w[j + 1], w[j]
        out[tuple(w)] = -c if sign else c
    return TensorElement(f, out)


MapImage = Union[Element, TensorElement, Scalar]


def apply_factorwise(x: TensorElement, i: int, f: Callable[[tuple], MapImage], domain: Presentation | None = None) -> TensorElement:
    """Replace factor ``i`` by its image under the linear map ``f``.

    ``f`` takes a normal word of factor ``i``.  Element images keep the
    arity, tensor images are spliced in place, and scalar images leave the
    unit word behind in that factor.
    """
    _check_index(x, i)
    j = i - 1
    if domain is not None and x.factors[j] is not domain:
        raise DomainMismatch(f"map expects {domain.name}, factor {i} is {x.factors[j].name}")
    out: dict = {}
    new_factors = None
    cache: dict = {}
    for words, c in x.terms.items():
        w = words[j]
        img = cache.get(w)
        if img is None:
            img = cache[w] = f(w)
        pre, post = words[:j], words[j + 1 :]
        if isinstance(img, Scalar):
            nf = x.factors
            if img:
                _acc(out, pre + ((),) + post, c * img)
        elif isinstance(img, Element):
            nf = x.factors[:j] + (img.presentation,) + x.factors[j + 1 :]
            for v, d in img.terms.items():
                _acc(out, pre + (v,) + post, c * d)
        elif isinstance(img, TensorElement):
            nf = x.factors[:j] + img.factors + x.factors[j + 1 :]
            for v, d in img.terms.items():
                _acc(out, pre + v + post, c * d)
        else:
            raise TypeError(f"map returned {type(img).__name__}")
        if new_factors is None:
            new_factors = nf
        elif any(a is not b for a, b in zip(new_factors, nf)) or len(nf) != len(new_factors):
            raise DomainMismatch("map images land in different tensor factors")
    if new_factors is None:
        # zero input: probe the map's shape on the unit word
        img = f(())
        if isinstance(img, Element):
            new_factors = x.factors[:j] + (img.presentation,) + x.factors[j + 1 :]
        elif isinstance(img, TensorElement):
            new_factors = x.factors[:j] + img.factors + x.factors[j + 1 :]
        else:
            new_factors = x.factors
    return TensorElement(new_factors, out)


def multiply_adjacent_factors(x: TensorElement, i: int = 1) -> TensorElement:
    """``m_{i,i+1}``: multiply factors ``i`` and ``i+1``; no sign."""
    _check_index(x, i, pair=True)
    j = i - 1
    P = x.factors[j]
    if x.factors[j + 1] is not P:
        raise PresentationMismatch(f"factors {i} and {i + 1} live in different algebras")
    f = x.factors[:j] + x.factors[j + 1 :]
    out: dict = {}
    for words, c in x.terms.items():
        pre, post = words[:j], words[j + 2 :]
        for w, d in P.nf_word(words[j] + words[j + 1]).items():
            _acc(out, pre + (w,) + post, c * d)
    return TensorElement(f, out)


def transfer_tensor(x: TensorElement, factors: Sequence[Presentation], f=None) -> TensorElement:
    """Tensor analogue of :func:`presentation.transfer`."""
    factors = tuple(factors)
    raw: dict = {}
    for words, c in x.terms.items():
        named = [src.word_names(w) for src, w in zip(x.factors, words)]
        if any(n not in P.index for P, ns in zip(factors, named) for n in ns):
            continue
        c = f(c) if f else c
        if c:
            key = tuple(tuple(P.index[n] for n in ns) for P, ns in zip(factors, named))
            raw[key] = raw[key] + c if key in raw else c
    return TensorElement.from_raw(factors, raw)
