"""Finitely presented Z2-graded algebras with a terminating rewrite system.

Words are tuples of generator positions, where position order *is* the
normal-ordering order.  Every two-letter left hand side carries a rule; a
word is normal when none of its adjacent pairs is a left hand side.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .render import join_terms, render_term
from .scalars import ONE, ZERO, Scalar, scalar

__all__ = [
    "PresentationError",
    "DuplicateGenerator",
    "NonTerminatingRule",
    "MissingRule",
    "ParityMismatch",
    "MixedPresentation",
    "GeneratorDecl",
    "RewriteRule",
    "Presentation",
    "Element",
    "ConfluenceReport",
    "register_presentation",
    "transfer",
    "normal_form",
    "mul",
    "element_parity",
    "local_confluence_check",
    "monomial_key",
]

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

Word = tuple


class PresentationError(ValueError):
    pass


class DuplicateGenerator(PresentationError):
    pass


class NonTerminatingRule(PresentationError):
    pass


class MissingRule(PresentationError):
    pass


class ParityMismatch(PresentationError):
    pass


class MixedPresentation(PresentationError):
    pass


@dataclass(frozen=True)
class GeneratorDecl:
    name: str
    parity: int
    order_index: int
    weight: int = 1


@dataclass(frozen=True)
class RewriteRule:
    """``lhs -> rhs`` with ``lhs`` a pair of generator names.

    ``rhs`` maps tuples of generator names to coefficients.
    """

    lhs: tuple[str, str]
    rhs: Mapping[tuple[str, ...], Scalar] = field(default_factory=dict)


def monomial_key(word: Sequence[int], weights: Sequence[int]) -> tuple:
    """Weighted degree, then number of misordered pairs, then lexicographic."""
    inversions = sum(1 for i, j in itertools.combinations(range(len(word)), 2) if word[i] > word[j])
    return (sum(weights[g] for g in word), inversions, tuple(word))


class Presentation:
    """A validated presentation.  Build with :func:`register_presentation`."""

    def __init__(self, name: str, generators: Sequence[GeneratorDecl], rules: Mapping[tuple[int, int], dict]):
        self.name = name
        self.generators = tuple(generators)
        self.names = tuple(g.name for g in self.generators)
        self.parities = tuple(g.parity for g in self.generators)
        self.weights = tuple(g.weight for g in self.generators)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.rules = dict(rules)
        self._nf_cache: dict[Word, dict] = {}
        self._app_cache: dict[tuple, dict] = {}
        self._parity_cache: dict[Word, int] = {}

    def __repr__(self) -> str:
        return f"<Presentation {self.name}: {len(self.names)} generators, {len(self.rules)} rules>"

    def __len__(self) -> int:
        return len(self.names)

    # -- elements -----------------------------------------------------
    def gen(self, name: str) -> Element:
        return Element(self, {(self.index[name],): ONE})

    def gens(self) -> dict[str, Element]:
        return {n: self.gen(n) for n in self.names}

    def one(self) -> Element:
        return Element(self, {(): ONE})

    def zero(self) -> Element:
        return Element(self, {})

    def const(self, c) -> Element:
        c = scalar(c)
        return Element(self, {(): c} if c else {})

    def word_element(self, word: Iterable[int], coeff=ONE) -> Element:
        return Element(self, self.nf_terms({tuple(word): scalar(coeff)}))

    def element(self, raw: Mapping[Word, Scalar]) -> Element:
        """Normal form of a raw linear combination of (position) words."""
        return Element(self, self.nf_terms(raw))

    def from_names(self, raw: Mapping[tuple[str, ...], Scalar]) -> Element:
        return self.element({tuple(self.index[n] for n in w): c for w, c in raw.items()})

    # -- words --------------------------------------------------------
    def word_parity(self, word: Iterable[int]) -> int:
        r = self._parity_cache.get(word)
        if r is None:
            word = tuple(word)
            p = self.parities
            r = self._parity_cache[word] = sum(p[g] for g in word) & 1
        return r

    def word_names(self, word: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.names[g] for g in word)

    def is_normal(self, word: Sequence[int]) -> bool:
        rules = self.rules
        return all((word[i], word[i + 1]) not in rules for i in range(len(word) - 1))

    def normal_words(self, degree: int) -> Iterator[Word]:
        """All normal words of exactly ``degree`` letters, in lexicographic order."""
        if degree == 0:
            yield ()
            return
        rules = self.rules
        n = len(self.names)

        def extend(prefix):
            if len(prefix) == degree:
                yield prefix
                return
            last = prefix[-1] if prefix else None
            for g in range(n):
                if last is not None and (last, g) in rules:
                    continue
                yield from extend(prefix + (g,))

        yield from extend(())

    def nf_word(self, word: Word) -> dict:
        """Normal form of a single word (memoized)."""
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        acc = {(): ONE}
        for g in word:
            acc = self._append_all(acc, g)
        self._nf_cache[word] = acc
        return acc

    def _append_all(self, acc: Mapping[Word, Scalar], g: int) -> dict:
        out: dict = {}
        for u, c in acc.items():
            for w, d in self._append(u, g).items():
                v = out.get(w)
                v = c * d if v is None else v + c * d
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return out

    def _append(self, u: Word, g: int) -> dict:
        # u is normal and all rules have two-letter left sides, so the only
        # possible redex sits at the seam
        key = (u, g)
        cached = self._app_cache.get(key)
        if cached is not None:
            return cached
        rhs = self.rules.get((u[-1], g)) if u else None
        if rhs is None:
            out = {u + (g,): ONE}
        else:
            out = {}
            base = u[:-1]
            for rw, c in rhs.items():
                part = {base: c}
                for h in rw:
                    part = self._append_all(part, h)
                for w, d in part.items():
                    v = out.get(w)
                    v = d if v is None else v + d
                    if v:
                        out[w] = v
                    else:
                        out.pop(w, None)
        self._app_cache[key] = out
        return out

    def nf_terms(self, raw: Mapping[Word, Scalar]) -> dict:
        out: dict = {}
        for word, c in raw.items():
            if not c:
                continue
            for w, d in self.nf_word(tuple(word)).items():
                v = out.get(w)
                v = c * d if v is None else v + c * d
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return out

    def restricted(self, drop: Iterable[str] = (), f=None, name: str | None = None) -> Presentation:
        """Quotient by the generators in ``drop`` with rule coefficients mapped through ``f``.

        Words containing a dropped generator are deleted from every tail;
        order and weights of the kept generators are unchanged, so normal
        words stay normal.
        """
        drop = set(drop)
        unknown = drop - set(self.names)
        if unknown:
            raise PresentationError(f"unknown generators {sorted(unknown)}")
        kept = [g for g in self.generators if g.name not in drop]
        gens = [GeneratorDecl(g.name, g.parity, i, g.weight) for i, g in enumerate(kept)]
        rules = []
        for (a, b), rhs in self.rules.items():
            if self.names[a] in drop or self.names[b] in drop:
                continue
            tail = {}
            for w, c in rhs.items():
                if any(self.names[g] in drop for g in w):
                    continue
                c = f(c) if f else c
                if c:
                    tail[self.word_names(w)] = c
            rules.append(RewriteRule((self.names[a], self.names[b]), tail))
        return register_presentation(gens, rules, name or self.name)

    def render_word(self, word: Sequence[int]) -> str:
        return "*".join(self.names[g] for g in word) if word else "1"

    def signature(self) -> tuple:
        """Structural summary used for golden comparisons."""
        gens = tuple((g.name, g.parity, g.weight) for g in self.generators)
        rules = tuple(
            sorted(
                (
                    self.word_names(lhs),
                    tuple(sorted((self.word_names(w), str(c)) for w, c in rhs.items())),
                )
                for lhs, rhs in self.rules.items()
            )
        )
        return gens, rules

    def rule_list(self) -> list[RewriteRule]:
        return [
            RewriteRule(self.word_names(lhs), {self.word_names(w): c for w, c in rhs.items()})
            for lhs, rhs in sorted(self.rules.items())
        ]


class Element:
    """Normal-form linear combination of words over one presentation."""

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation: Presentation, terms: dict):
        self.presentation = presentation
        self.terms = terms

    def _check(self, other: Element) -> None:
        if other.presentation is not self.presentation:
            raise MixedPresentation(
                f"cannot combine elements of {self.presentation.name} and {other.presentation.name}"
            )

    def _coerce(self, other) -> Element:
        if isinstance(other, Element):
            self._check(other)
            return other
        return self.presentation.const(other)

    def __add__(self, other) -> Element:
        other = self._coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            v = c if v is None else v + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return Element(self.presentation, out)

    __radd__ = __add__

    def __neg__(self) -> Element:
        return Element(self.presentation, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> Element:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Element:
        return self._coerce(other) - self

    def scale(self, c) -> Element:
        c = scalar(c)
        if not c:
            return self.presentation.zero()
        return Element(self.presentation, {w: c * d for w, d in self.terms.items()})

    def __mul__(self, other) -> Element:
        if not isinstance(other, Element):
            return self.scale(other)
        return mul(self, other)

    def __rmul__(self, other) -> Element:
        return self.scale(other)

    def __pow__(self, n: int) -> Element:
        out = self.presentation.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return other.presentation is self.presentation and self.terms == other.terms
        if isinstance(other, (int, Scalar)):
            return self.terms == self.presentation.const(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def parity(self) -> str:
        return element_parity(self)

    def map_coefficients(self, f) -> Element:
        return self.presentation.element({w: f(c) for w, c in self.terms.items()})

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Word, Scalar]]:
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def render(self) -> str:
        P = self.presentation
        parts = []
        for w, c in self.sorted_terms():
            names = P.word_names(w)
            for e in sorted(c._terms, reverse=True):
                re, im = c._terms[e]
                parts.append(render_term(e, re, im, names))
        return join_terms(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Element({self.render()})"


def _rule_table(gens: Sequence[GeneratorDecl], rules: Iterable[RewriteRule]) -> tuple[list, dict]:
    ordered = sorted(gens, key=lambda g: g.order_index)
    names = [g.name for g in ordered]
    if len(set(names)) != len(names):
        dup = sorted(n for n in names if names.count(n) > 1)[0]
        raise DuplicateGenerator(f"generator {dup!r} declared twice")
    orders = [g.order_index for g in ordered]
    if len(set(orders)) != len(orders):
        raise DuplicateGenerator("order_index values must be unique")
    for g in ordered:
        if g.parity not in (0, 1):
            raise ParityMismatch(f"generator {g.name!r} has parity {g.parity}")
    index = {n: i for i, n in enumerate(names)}
    parities = [g.parity for g in ordered]
    weights = [g.weight for g in ordered]

    def pos(name):
        try:
            return index[name]
        except KeyError:
            raise PresentationError(f"undeclared generator {name!r} in rule") from None

    table: dict[tuple[int, int], dict] = {}
    for rule in rules:
        if len(rule.lhs) != 2:
            raise PresentationError(f"rule lhs {rule.lhs} must have two letters")
        lhs = (pos(rule.lhs[0]), pos(rule.lhs[1]))
        if lhs in table:
            raise PresentationError(f"two rules for {'*'.join(rule.lhs)}")
        lkey = monomial_key(lhs, weights)
        lpar = (parities[lhs[0]] + parities[lhs[1]]) & 1
        rhs: dict = {}
        for w, c in rule.rhs.items():
            c = scalar(c)
            if not c:
                continue
            pw = tuple(pos(n) for n in w)
            if monomial_key(pw, weights) >= lkey:
                raise NonTerminatingRule(
                    f"rule {'*'.join(rule.lhs)} -> ... contains {'*'.join(w) or '1'}, not smaller than the lhs"
                )
            if sum(parities[g] for g in pw) & 1 != lpar:
                raise ParityMismatch(f"rule for {'*'.join(rule.lhs)} mixes parities")
            rhs[pw] = rhs[pw] + c if pw in rhs else c
        table[lhs] = {w: c for w, c in rhs.items() if c}
    for a in range(len(names)):
        for b in range(a):
            if (a, b) not in table:
                raise MissingRule(f"no rule for misordered pair {names[a]}*{names[b]}")
        if parities[a] and (a, a) not in table:
            raise MissingRule(f"no square rule for odd generator {names[a]}")
    return ordered, table


def register_presentation(gens: Sequence[GeneratorDecl], rules: Iterable[RewriteRule], name: str = "algebra") -> Presentation:
    ordered, table = _rule_table(gens, rules)
    return Presentation(name, ordered, table)


def transfer(e: Element, target: Presentation, f=None) -> Element:
    """Re-home ``e`` by generator names; words with letters unknown to ``target`` vanish."""
    src = e.presentation
    raw: dict = {}
    for w, c in e.terms.items():
        names = src.word_names(w)
        if any(n not in target.index for n in names):
            continue
        c = f(c) if f else c
        if c:
            key = tuple(target.index[n] for n in names)
            raw[key] = raw[key] + c if key in raw else c
    return target.element(raw)


def normal_form(e: Element | Mapping[Word, Scalar], presentation: Presentation | None = None) -> Element:
    if isinstance(e, Element):
        return e.presentation.element(e.terms)
    if presentation is None:
        raise TypeError("a raw sum needs its presentation")
    return presentation.element(e)


def mul(a: Element, b: Element) -> Element:
    a._check(b)
    P = a.presentation
    out: dict = {}
    for u, c in a.terms.items():
        for v, d in b.terms.items():
            cd = c * d
            for w, e in P.nf_word(u + v).items():
                x = out.get(w)
                x = cd * e if x is None else x + cd * e
                if x:
                    out[w] = x
                else:
                    out.pop(w, None)
    return Element(P, out)


def element_parity(e: Element) -> str:
    if not e.terms:
        return "zero"
    ps = {e.presentation.word_parity(w) for w in e.terms}
    if len(ps) == 2:
        return "mixed"
    return "odd" if ps.pop() else "even"


@dataclass
class ConfluenceReport:
    presentation: str
    overlaps_checked: int
    mismatches: list[dict]
    mismatch_count: int = 0

    @property
    def ok(self) -> bool:
        return not self.mismatches


def local_confluence_check(p: Presentation, report_limit: int = 20) -> ConfluenceReport:
    """Resolve every overlap ``a*b*c`` of two left hand sides both ways."""
    by_first: dict[int, list[tuple[int, int]]] = {}
    for lhs in p.rules:
        by_first.setdefault(lhs[0], []).append(lhs)
    mismatches = []
    checked = total = 0
    for (a, b), rhs_ab in sorted(p.rules.items()):
        for (_, c) in sorted(by_first.get(b, [])):
            checked += 1
            left = p.element({w + (c,): k for w, k in rhs_ab.items()})
            rhs_bc = p.rules[(b, c)]
            right = p.element({(a,) + w: k for w, k in rhs_bc.items()})
            if left != right:
                total += 1
                if len(mismatches) < report_limit:
                    mismatches.append(
                        {
                            "overlap": p.render_word((a, b, c)),
                            "left": left.render(),
                            "right": right.render(),
                            "difference": (left - right).render(),
                        }
                    )
    return ConfluenceReport(p.name, checked, mismatches, total)
