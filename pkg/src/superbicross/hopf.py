"""Hopf superalgebra structures given on generators, and their verifiers."""

from __future__ import annotations

from typing import Mapping

from .presentation import Element, Presentation, transfer
from .report import DEFAULT_SEED, Check, Report, sample_pairs, sample_words
from .scalars import ONE, ZERO, Scalar, scalar
from .tensor import (
    TensorElement,
    apply_factorwise,
    graded_flip,
    multiply_adjacent_factors,
    tensor,
    transfer_tensor,
)

__all__ = [
    "HopfTableError",
    "HopfStructure",
    "coproduct",
    "counit",
    "antipode",
    "verify_bialgebra",
    "verify_antipode",
    "verify_products",
    "transport",
    "structure_tables",
]


class HopfTableError(ValueError):
    pass


class HopfStructure:
    """Coproduct, counit and antipode tables on the generators of a presentation.

    Tables are keyed by generator name.  Coproduct images are
    :class:`TensorElement` over ``(algebra, algebra)``.
    """

    def __init__(
        self,
        algebra: Presentation,
        coproduct: Mapping[str, TensorElement],
        counit: Mapping[str, Scalar],
        antipode: Mapping[str, Element],
        name: str | None = None,
    ):
        self.algebra = algebra
        self.name = name or algebra.name
        P = algebra
        self.coproduct_table: dict[int, TensorElement] = {}
        self.counit_table: dict[int, Scalar] = {}
        self.antipode_table: dict[int, Element] = {}
        for g in P.names:
            if g not in coproduct or g not in counit or g not in antipode:
                raise HopfTableError(f"incomplete Hopf tables for generator {g!r}")
        for g, d in coproduct.items():
            i = P.index[g]
            if d.factors != (P, P):
                raise HopfTableError(f"coproduct of {g} must live in {P.name} (x) {P.name}")
            for words in d.terms:
                if (P.word_parity(words[0]) + P.word_parity(words[1])) & 1 != P.parities[i]:
                    raise HopfTableError(f"coproduct of {g} does not preserve parity")
            self.coproduct_table[i] = d
        for g, e in counit.items():
            i = P.index[g]
            e = scalar(e)
            if P.parities[i] and e:
                raise HopfTableError(f"counit must vanish on odd generator {g}")
            self.counit_table[i] = e
        for g, s in antipode.items():
            i = P.index[g]
            if s.presentation is not P:
                raise HopfTableError(f"antipode of {g} lives in the wrong algebra")
            if any(P.word_parity(w) != P.parities[i] for w in s.terms):
                raise HopfTableError(f"antipode of {g} does not preserve parity")
            self.antipode_table[i] = s
        self._d_cache: dict[tuple, TensorElement] = {}
        self._e_cache: dict[tuple, Scalar] = {}
        self._s_cache: dict[tuple, Element] = {}

    def __repr__(self) -> str:
        return f"<HopfStructure {self.name}>"

    # -- extensions to words ---------------------------------------------
    def coproduct_word(self, word: tuple) -> TensorElement:
        """Multiplicative extension; ``word`` need not be normal."""
        r = self._d_cache.get(word)
        if r is not None:
            return r
        P = self.algebra
        if not word:
            r = TensorElement.unit((P, P))
        elif len(word) == 1:
            r = self.coproduct_table[word[0]]
        else:
            r = self.coproduct_word(word[:-1]) * self.coproduct_table[word[-1]]
        self._d_cache[word] = r
        return r

    def counit_word(self, word: tuple) -> Scalar:
        r = self._e_cache.get(word)
        if r is None:
            r = ONE
            for g in word:
                r = r * self.counit_table[g]
                if not r:
                    break
            self._e_cache[word] = r
        return r

    def antipode_word(self, word: tuple) -> Element:
        """Graded antihomomorphic extension: ``S(u g) = (-1)^{p(u)p(g)} S(g) S(u)``."""
        r = self._s_cache.get(word)
        if r is not None:
            return r
        P = self.algebra
        if not word:
            r = P.one()
        elif len(word) == 1:
            r = self.antipode_table[word[0]]
        else:
            u, g = word[:-1], word[-1]
            r = self.antipode_table[g] * self.antipode_word(u)
            if P.word_parity(u) and P.parities[g]:
                r = -r
        self._s_cache[word] = r
        return r

    # -- extensions to elements -----------------------------------------
    def coproduct(self, e: Element) -> TensorElement:
        P = self.algebra
        out = TensorElement.zero((P, P))
        for w, c in e.terms.items():
            out = out + self.coproduct_word(w).scale(c)
        return out

    def counit(self, e: Element) -> Scalar:
        out = ZERO
        for w, c in e.terms.items():
            out = out + c * self.counit_word(w)
        return out

    def antipode(self, e: Element) -> Element:
        out = self.algebra.zero()
        for w, c in e.terms.items():
            out = out + self.antipode_word(w).scale(c)
        return out

    def raw_coproduct(self, raw: Mapping[tuple, Scalar]) -> TensorElement:
        P = self.algebra
        out = TensorElement.zero((P, P))
        for w, c in raw.items():
            out = out + self.coproduct_word(tuple(w)).scale(c)
        return out

    def raw_counit(self, raw: Mapping[tuple, Scalar]) -> Scalar:
        out = ZERO
        for w, c in raw.items():
            out = out + c * self.counit_word(tuple(w))
        return out

    def raw_antipode(self, raw: Mapping[tuple, Scalar]) -> Element:
        out = self.algebra.zero()
        for w, c in raw.items():
            out = out + self.antipode_word(tuple(w)).scale(c)
        return out

    # maps usable with apply_factorwise
    def delta_map(self, word):
        return self.coproduct_word(word)

    def eps_map(self, word):
        return self.counit_word(word)

    def s_map(self, word):
        return self.antipode_word(word)

    def tables_signature(self) -> tuple:
        """Rendered tables, for structural comparisons."""
        P = self.algebra
        return (
            P.signature(),
            tuple((P.names[i], str(self.coproduct_table[i])) for i in sorted(self.coproduct_table)),
            tuple((P.names[i], str(self.counit_table[i])) for i in sorted(self.counit_table)),
            tuple((P.names[i], str(self.antipode_table[i])) for i in sorted(self.antipode_table)),
        )


def coproduct(h: HopfStructure, e: Element) -> TensorElement:
    return h.coproduct(e)


def counit(h: HopfStructure, e: Element) -> Scalar:
    return h.counit(e)


def antipode(h: HopfStructure, e: Element) -> Element:
    return h.antipode(e)


def _tag(h: HopfStructure) -> str:
    return f"[{h.name}]"


def verify_bialgebra(h: HopfStructure, degree: int = 2, samples: int = 50, seed: int = DEFAULT_SEED) -> Report:
    P = h.algebra
    words = sample_words(P, degree, samples, seed)
    t = _tag(h)
    coassoc = Check(f"hopf.coassociativity{t}", "(D(x)1)D = (1(x)D)D", seed)
    counit_l = Check(f"hopf.counit_left{t}", "(e(x)1)D(h) = h", seed)
    counit_r = Check(f"hopf.counit_right{t}", "(1(x)e)D(h) = h", seed)
    for w in words:
        name = P.render_word(w)
        d = h.coproduct_word(w)
        coassoc.compare(name, apply_factorwise(d, 1, h.delta_map), apply_factorwise(d, 2, h.delta_map))
        x = P.word_element(w)
        counit_l.compare(name, apply_factorwise(d, 1, h.eps_map), tensor(P.one(), x))
        counit_r.compare(name, apply_factorwise(d, 2, h.eps_map), tensor(x, P.one()))

    hom = Check(f"hopf.coproduct_homomorphism{t}", "D(xy) = D(x)D(y)", seed)
    eps_hom = Check(f"hopf.counit_multiplicative{t}", "e(hh') = e(h)e(h')", seed)
    for u, v in sample_pairs(words, samples, seed):
        name = f"({P.render_word(u)})*({P.render_word(v)})"
        xy = P.word_element(u) * P.word_element(v)
        hom.compare(name, h.coproduct(xy), h.coproduct_word(u) * h.coproduct_word(v))
        eps_hom.compare(name, h.counit(xy), h.counit_word(u) * h.counit_word(v))

    wd_d = Check(f"hopf.well_defined.coproduct{t}", "D respects every defining relation", seed)
    wd_e = Check(f"hopf.well_defined.counit{t}", "e respects every defining relation", seed)
    wd_s = Check(f"hopf.well_defined.antipode{t}", "S respects every defining relation", seed)
    for lhs, rhs in sorted(P.rules.items()):
        name = f"{P.render_word(lhs)} -> {P.element(rhs).render()}"
        wd_d.compare(name, h.coproduct_word(lhs), h.raw_coproduct(rhs))
        wd_e.compare(name, h.counit_word(lhs), h.raw_counit(rhs))
        wd_s.compare(name, h.antipode_word(lhs), h.raw_antipode(rhs))

    rep = Report()
    for c in (coassoc, counit_l, counit_r, hom, eps_hom, wd_d, wd_e, wd_s):
        rep.add(c)
    return rep


def verify_antipode(
    h: HopfStructure,
    degree: int = 2,
    samples: int = 50,
    seed: int = DEFAULT_SEED,
    identity_degree: int | None = None,
) -> Report:
    """Antipode axiom on both sides plus derived identities.

    ``identity_degree`` caps the word length on which the derived
    ``(S(x)S)D = D'S`` identity is checked; it is by far the most expensive
    check on large structures.  ``None`` means no cap.
    """
    P = h.algebra
    words = sample_words(P, degree, samples, seed)
    t = _tag(h)
    left = Check(f"hopf.antipode_left{t}", "m(S(x)1)D(h) = e(h)1", seed)
    right = Check(f"hopf.antipode_right{t}", "m(1(x)S)D(h) = e(h)1", seed)
    opp = Check(f"hopf.antipode_coproduct{t}", "(S(x)S)D(h) = D'(S(h))", seed)
    eps_s = Check(f"hopf.counit_antipode{t}", "e(S(h)) = e(h)", seed)
    for w in words:
        name = P.render_word(w)
        d = h.coproduct_word(w)
        unit = TensorElement.from_raw((P,), {((),): h.counit_word(w)})
        left.compare(name, multiply_adjacent_factors(apply_factorwise(d, 1, h.s_map), 1), unit)
        right.compare(name, multiply_adjacent_factors(apply_factorwise(d, 2, h.s_map), 1), unit)
        s = h.antipode_word(w)
        if identity_degree is None or len(w) <= identity_degree:
            ss = apply_factorwise(apply_factorwise(d, 1, h.s_map), 2, h.s_map)
            opp.compare(name, ss, graded_flip(h.coproduct(s), 1))
        eps_s.compare(name, h.counit(s), h.counit_word(w))

    anti = Check(f"hopf.antipode_antihomomorphism{t}", "S(hh') = (-1)^{p(h)p(h')} S(h')S(h)", seed)
    for u, v in sample_pairs(words, samples, seed):
        name = f"({P.render_word(u)})*({P.render_word(v)})"
        xy = P.word_element(u) * P.word_element(v)
        rhs = h.antipode_word(v) * h.antipode_word(u)
        if P.word_parity(u) and P.word_parity(v):
            rhs = -rhs
        anti.compare(name, h.antipode(xy), rhs)

    rep = Report()
    for c in (left, right, opp, eps_s, anti):
        rep.add(c)
    return rep


def verify_products(h: HopfStructure, pairs, seed: int | None = None, label: str = "products") -> Report:
    """Coalgebra and antipode axioms on explicit products ``x*y``.

    ``pairs`` yields ``(x, y)`` elements.  Besides the axioms on ``x*y``
    this checks ``D(xy) = D(x)D(y)`` with both sides computed independently.
    """
    P = h.algebra
    t = f"[{h.name}:{label}]"
    hom = Check(f"hopf.coproduct_homomorphism{t}", "D(xy) = D(x)D(y)", seed)
    coassoc = Check(f"hopf.coassociativity{t}", "(D(x)1)D = (1(x)D)D", seed)
    counit = Check(f"hopf.counit{t}", "(e(x)1)D(h) = (1(x)e)D(h) = h", seed)
    left = Check(f"hopf.antipode_left{t}", "m(S(x)1)D(h) = e(h)1", seed)
    right = Check(f"hopf.antipode_right{t}", "m(1(x)S)D(h) = e(h)1", seed)
    for x, y in pairs:
        xy = x * y
        name = f"({x})*({y})"
        d = h.coproduct(xy)
        hom.compare(name, d, h.coproduct(x) * h.coproduct(y))
        coassoc.compare(name, apply_factorwise(d, 1, h.delta_map), apply_factorwise(d, 2, h.delta_map))
        counit.compare(name, apply_factorwise(d, 1, h.eps_map), tensor(P.one(), xy))
        counit.compare(name, apply_factorwise(d, 2, h.eps_map), tensor(xy, P.one()))
        unit = TensorElement.from_raw((P,), {((),): h.counit(xy)})
        left.compare(name, multiply_adjacent_factors(apply_factorwise(d, 1, h.s_map), 1), unit)
        right.compare(name, multiply_adjacent_factors(apply_factorwise(d, 2, h.s_map), 1), unit)
    rep = Report()
    for c in (hom, coassoc, counit, left, right):
        rep.add(c)
    return rep


def transport(h: HopfStructure, drop=(), f=None, name: str | None = None) -> HopfStructure:
    """Hopf structure on the quotient by the generators in ``drop``, coefficients mapped by ``f``.

    The generators dropped must span a Hopf ideal; the result is checked
    by the caller, not here.
    """
    P = h.algebra.restricted(drop, f, name)
    src = h.algebra
    co, eps, s = {}, {}, {}
    for g in P.names:
        i = src.index[g]
        co[g] = transfer_tensor(h.coproduct_table[i], (P, P), f)
        c = h.counit_table[i]
        eps[g] = f(c) if f else c
        s[g] = transfer(h.antipode_table[i], P, f)
    return HopfStructure(P, co, eps, s, name=name or h.name)


def structure_tables(h: HopfStructure) -> dict:
    """Name-keyed rendering of rules and Hopf tables, for structural comparison."""
    P = h.algebra

    def elem(e: Element) -> dict:
        return {P.word_names(w): str(c) for w, c in e.terms.items()}

    def tens(t: TensorElement) -> dict:
        return {tuple(F.word_names(w) for F, w in zip(t.factors, ws)): str(c) for ws, c in t.terms.items()}

    return {
        "generators": sorted((g.name, g.parity) for g in P.generators),
        "rules": {P.word_names(lhs): {P.word_names(w): str(c) for w, c in rhs.items()} for lhs, rhs in P.rules.items()},
        "coproduct": {P.names[i]: tens(t) for i, t in h.coproduct_table.items()},
        "counit": {P.names[i]: str(c) for i, c in h.counit_table.items()},
        "antipode": {P.names[i]: elem(e) for i, e in h.antipode_table.items()},
    }
