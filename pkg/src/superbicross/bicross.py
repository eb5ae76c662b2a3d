"""Right-left graded bicrossproducts.

Conventions: ``H1`` acts (left tensor factor, letters ``h, g``), ``H2`` is
acted upon (right tensor factor, letters ``a, b``).  The action
``a <| h`` lands in ``H2``; the coaction ``beta(h) = h^(1) (x) h^(2)`` lands
in ``H2 (x) H1``.  Every Sweedler sum below is an explicit loop over the
terms of a :class:`TensorElement`.
"""

from __future__ import annotations

import random
from typing import Any, Mapping

from .hopf import HopfStructure, transport, verify_antipode, verify_bialgebra
from .presentation import Element, GeneratorDecl, Presentation, RewriteRule, register_presentation, transfer
from .report import DEFAULT_SEED, Check, CheckRecord, Report, sample_pairs, sample_words
from .scalars import ONE, ZERO, Scalar
from .tensor import (
    TensorElement,
    apply_factorwise,
    graded_flip,
    multiply_adjacent_factors,
    tensor,
    transfer_tensor,
)

__all__ = [
    "BicrossError",
    "CompatibilityFailed",
    "BicrossData",
    "BuiltBicross",
    "act",
    "coact",
    "check_module_algebra",
    "check_comodule_coalgebra",
    "check_compatibility",
    "check_all",
    "build_bicrossproduct",
    "verify_built",
    "mixed_products",
]


class BicrossError(ValueError):
    pass


class CompatibilityFailed(BicrossError):
    def __init__(self, message: str, report: Report):
        super().__init__(message)
        self.report = report


def _acc(out: dict, key, c: Scalar) -> None:
    v = out.get(key)
    v = c if v is None else v + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class BicrossData:
    """Two Hopf superalgebras with an action table and a coaction table.

    ``action`` maps ``(a, h)`` generator-name pairs to elements of ``H2``;
    ``coaction`` maps generator names of ``H1`` to tensors over
    ``(H2, H1)``.  ``koszul_action=False`` drops the module-algebra sign
    in the extension (only useful for mutation tests).
    """

    def __init__(
        self,
        h1: HopfStructure,
        h2: HopfStructure,
        action: Mapping[tuple[str, str], Element],
        coaction: Mapping[str, TensorElement],
        name: str = "bicross",
        metadata: Mapping[str, Any] | None = None,
        koszul_action: bool = True,
    ):
        self.h1, self.h2 = h1, h2
        self.name = name
        self.metadata = dict(metadata or {})
        self.koszul_action = koszul_action
        P1, P2 = h1.algebra, h2.algebra
        self.action: dict[tuple[int, int], Element] = {}
        for a in P2.names:
            for h in P1.names:
                if (a, h) not in action:
                    raise BicrossError(f"missing action entry {a} <| {h}")
        for (a, h), e in action.items():
            ia, ih = P2.index[a], P1.index[h]
            if e.presentation is not P2:
                raise BicrossError(f"{a} <| {h} must lie in {P2.name}")
            want = (P2.parities[ia] + P1.parities[ih]) & 1
            if any(P2.word_parity(w) != want for w in e.terms):
                raise BicrossError(f"{a} <| {h} breaks parity additivity")
            self.action[(ia, ih)] = e
        self.coaction: dict[int, TensorElement] = {}
        for h in P1.names:
            if h not in coaction:
                raise BicrossError(f"missing coaction entry for {h}")
        for h, t in coaction.items():
            ih = P1.index[h]
            if t.factors != (P2, P1):
                raise BicrossError(f"beta({h}) must lie in {P2.name} (x) {P1.name}")
            for w1, w2 in t.terms:
                if (P2.word_parity(w1) + P1.word_parity(w2)) & 1 != P1.parities[ih]:
                    raise BicrossError(f"beta({h}) does not preserve parity")
            self.coaction[ih] = t
        self._act_cache: dict = {}
        self._coact_cache: dict = {}

    @property
    def P1(self) -> Presentation:
        return self.h1.algebra

    @property
    def P2(self) -> Presentation:
        return self.h2.algebra

    def with_tables(self, action=None, coaction=None, name=None, **kw) -> BicrossData:
        """Copy with some table entries replaced (keys by name)."""
        act_t = self.action_table()
        act_t.update(action or {})
        co_t = self.coaction_table()
        co_t.update(coaction or {})
        return BicrossData(self.h1, self.h2, act_t, co_t, name or self.name, self.metadata, **kw)

    def transported(self, drop1=(), drop2=(), f=None, name: str | None = None) -> BicrossData:
        """Restrict both factors (quotient by dropped generators) and map coefficients by ``f``."""
        h1 = transport(self.h1, drop1, f)
        h2 = transport(self.h2, drop2, f)
        P1, P2 = h1.algebra, h2.algebra
        action = {
            (a, h): transfer(e, P2, f) for (a, h), e in self.action_table().items() if a in P2.index and h in P1.index
        }
        coaction = {h: transfer_tensor(t, (P2, P1), f) for h, t in self.coaction_table().items() if h in P1.index}
        return BicrossData(h1, h2, action, coaction, name or self.name, self.metadata, self.koszul_action)

    def action_table(self) -> dict[tuple[str, str], Element]:
        P1, P2 = self.P1, self.P2
        return {(P2.names[a], P1.names[h]): e for (a, h), e in self.action.items()}

    def coaction_table(self) -> dict[str, TensorElement]:
        return {self.P1.names[h]: t for h, t in self.coaction.items()}

    # -- action -------------------------------------------------------
    def act_word(self, aw: tuple, hw: tuple) -> Element:
        """``a <| h`` for (not necessarily normal) words."""
        key = (aw, hw)
        r = self._act_cache.get(key)
        if r is not None:
            return r
        P1, P2 = self.P1, self.P2
        if not hw:
            r = P2.word_element(aw)
        elif len(hw) > 1:
            # a <| (h g) = (a <| h) <| g
            r = self.act_elem(self.act_word(aw, hw[:1]), hw[1:])
        elif not aw:
            r = P2.const(self.h1.counit_word(hw))
        elif len(aw) == 1:
            r = self.action[(aw[0], hw[0])]
        else:
            # ab <| h = (-1)^{p(h_(1))p(b)} (a <| h_(1))(b <| h_(2))
            a, b = aw[:-1], aw[-1:]
            pb = P2.parities[b[0]]
            out = P2.zero()
            for (g1, g2), c in self.h1.coproduct_word(hw).terms.items():
                t = self.act_word(a, g1) * self.act_word(b, g2)
                if self.koszul_action and pb and P1.word_parity(g1):
                    c = -c
                out = out + t.scale(c)
            r = out
        self._act_cache[key] = r
        return r

    def act_elem(self, a: Element, hw: tuple) -> Element:
        out = self.P2.zero()
        for w, c in a.terms.items():
            out = out + self.act_word(w, hw).scale(c)
        return out

    def act(self, a: Element, h: Element) -> Element:
        out = self.P2.zero()
        for aw, c in a.terms.items():
            for hw, d in h.terms.items():
                out = out + self.act_word(aw, hw).scale(c * d)
        return out

    # -- coaction -----------------------------------------------------
    def coact_product(self, hw: tuple, gw: tuple) -> TensorElement:
        """Right side of the product rule for ``beta(hg)``::

            (-1)^{p(h^(2))[p(g_(1)) + p(g_(2)^(1))]} (h^(1) <| g_(1)) g_(2)^(1) (x) h^(2) g_(2)^(2)
        """
        P1, P2 = self.P1, self.P2
        out: dict = {}
        bh = self.coact_word(hw)
        dg = self.h1.coproduct_word(gw)
        for (x1, x2), c in bh.terms.items():
            px2 = P1.word_parity(x2)
            for (g1, g2), d in dg.terms.items():
                pg1 = P1.word_parity(g1)
                left_act = self.act_word(x1, g1)
                if not left_act:
                    continue
                for (y1, y2), e in self.coact_word(g2).terms.items():
                    k = c * d * e
                    if px2 and (pg1 + P2.word_parity(y1)) & 1:
                        k = -k
                    right = P1.nf_word(x2 + y2)
                    for lw, lc in left_act.terms.items():
                        for w1, f1 in P2.nf_word(lw + y1).items():
                            for w2, f2 in right.items():
                                _acc(out, (w1, w2), k * lc * f1 * f2)
        return TensorElement((P2, P1), out)

    def coact_word(self, hw: tuple) -> TensorElement:
        r = self._coact_cache.get(hw)
        if r is not None:
            return r
        P1, P2 = self.P1, self.P2
        if not hw:
            r = TensorElement.unit((P2, P1))
        elif len(hw) == 1:
            r = self.coaction[hw[0]]
        else:
            r = self.coact_product(hw[:-1], hw[-1:])
        self._coact_cache[hw] = r
        return r

    def coact(self, h: Element) -> TensorElement:
        out = TensorElement.zero((self.P2, self.P1))
        for w, c in h.terms.items():
            out = out + self.coact_word(w).scale(c)
        return out

    def coact_map(self, word):
        return self.coact_word(word)

    def coact_raw(self, raw) -> TensorElement:
        out = TensorElement.zero((self.P2, self.P1))
        for w, c in raw.items():
            out = out + self.coact_word(tuple(w)).scale(c)
        return out


def act(d: BicrossData, a: Element, h: Element) -> Element:
    return d.act(a, h)


def coact(d: BicrossData, h: Element) -> TensorElement:
    return d.coact(h)


def _tag(d: BicrossData) -> str:
    return f"[{d.name}]"


def check_module_algebra(d: BicrossData, degree: int = 2, samples: int = 30, seed: int = DEFAULT_SEED) -> Report:
    P1, P2 = d.P1, d.P2
    t = _tag(d)
    words2 = sample_words(P2, degree, samples, seed)
    words1 = sample_words(P1, degree, samples, seed)
    ma = Check(f"bicross.module_algebra{t}", "ab<|h = (-1)^{p(h_(1))p(b)} (a<|h_(1))(b<|h_(2))", seed)
    for aw, bw in sample_pairs(words2, samples, seed) + [((a,), (b,)) for a in range(len(P2)) for b in range(len(P2))]:
        pb = P2.word_parity(bw)
        ab = P2.word_element(aw) * P2.word_element(bw)
        for h in range(len(P1)):
            name = f"({P2.render_word(aw)})*({P2.render_word(bw)}) <| {P1.names[h]}"
            rhs = P2.zero()
            for (g1, g2), c in d.h1.coproduct_word((h,)).terms.items():
                if pb and P1.word_parity(g1):
                    c = -c
                rhs = rhs + (d.act_word(aw, g1) * d.act_word(bw, g2)).scale(c)
            ma.compare(name, d.act_elem(ab, (h,)), rhs)

    mb = Check(f"bicross.module_associativity{t}", "a<|(hg) = (a<|h)<|g", seed)
    targets = [(a,) for a in range(len(P2))] + words2[: max(1, samples // 4)]
    for hw, gw in sample_pairs(words1, samples, seed) + [((h,), (g,)) for h in range(len(P1)) for g in range(len(P1))]:
        hg = P1.word_element(hw) * P1.word_element(gw)
        for aw in targets:
            name = f"{P2.render_word(aw)} <| ({P1.render_word(hw)})*({P1.render_word(gw)})"
            lhs = d.act(P2.word_element(aw), hg)
            rhs = d.act_elem(d.act_word(aw, hw), gw)
            mb.compare(name, lhs, rhs)

    r2 = Check(f"bicross.action_respects_relations.H2{t}", "module algebra law on every defining relation of H2", seed)
    for lhs, rhs in sorted(P2.rules.items()):
        for h in range(len(P1)):
            name = f"({P2.render_word(lhs)}) <| {P1.names[h]}"
            right = P2.zero()
            for w, c in rhs.items():
                right = right + d.act_word(w, (h,)).scale(c)
            r2.compare(name, d.act_word(lhs, (h,)), right)

    r1 = Check(f"bicross.action_respects_relations.H1{t}", "module associativity on every defining relation of H1", seed)
    for lhs, rhs in sorted(P1.rules.items()):
        for a in range(len(P2)):
            name = f"{P2.names[a]} <| ({P1.render_word(lhs)})"
            right = P2.zero()
            for w, c in rhs.items():
                right = right + d.act_word((a,), w).scale(c)
            r1.compare(name, d.act_word((a,), lhs), right)

    rep = Report()
    for c in (ma, mb, r2, r1):
        rep.add(c)
    return rep


def check_comodule_coalgebra(d: BicrossData, degree: int = 2, samples: int = 30, seed: int = DEFAULT_SEED) -> Report:
    P1, P2 = d.P1, d.P2
    t = _tag(d)
    words1 = sample_words(P1, degree, samples, seed)
    ca = Check(f"bicross.comodule_coassociativity{t}", "(1(x)beta)beta = (D(x)1)beta", seed)
    cb = Check(f"bicross.comodule_counit{t}", "(e(x)1)beta(h) = 1(x)h", seed)
    cc = Check(f"bicross.comodule_coalgebra{t}", "(1(x)D)beta(h) = m_12 s_23 (beta(x)beta)D(h)", seed)
    unit = d.coact_word(())
    cb.compare("1", unit, TensorElement.unit((P2, P1)))
    for w in words1:
        name = P1.render_word(w)
        b = d.coact_word(w)
        ca.compare(name, apply_factorwise(b, 2, d.coact_map), apply_factorwise(b, 1, d.h2.delta_map))
        cb.compare(name, apply_factorwise(b, 1, d.h2.eps_map), tensor(P2.one(), P1.word_element(w)))
        lhs = apply_factorwise(b, 2, d.h1.delta_map)
        bb = apply_factorwise(apply_factorwise(d.h1.coproduct_word(w), 1, d.coact_map), 3, d.coact_map)
        rhs = multiply_adjacent_factors(graded_flip(bb, 2), 1)
        cc.compare(name, lhs, rhs)
    rep = Report()
    for c in (ca, cb, cc):
        rep.add(c)
    return rep


def _compat_b_rhs(d: BicrossData, aw: tuple, hw: tuple) -> TensorElement:
    """``(-1)^{p(a_(2))[p(h_(1))+p(h_(2)^(1))]} (a_(1)<|h_(1)) h_(2)^(1) (x) a_(2)<|h_(2)^(2)``."""
    P1, P2 = d.P1, d.P2
    out: dict = {}
    for (a1, a2), c in d.h2.coproduct_word(aw).terms.items():
        pa2 = P2.word_parity(a2)
        for (h1, h2), e in d.h1.coproduct_word(hw).terms.items():
            left = d.act_word(a1, h1)
            if not left:
                continue
            ph1 = P1.word_parity(h1)
            for (y1, y2), f in d.coact_word(h2).terms.items():
                k = c * e * f
                if pa2 and (ph1 + P2.word_parity(y1)) & 1:
                    k = -k
                right = d.act_word(a2, y2)
                for lw, lc in left.terms.items():
                    for w1, g1 in P2.nf_word(lw + y1).items():
                        for w2, g2 in right.terms.items():
                            _acc(out, (w1, w2), k * lc * g1 * g2)
    return TensorElement((P2, P2), out)


def _compat_d_sides(d: BicrossData, aw: tuple, hw: tuple) -> tuple[TensorElement, TensorElement]:
    """Both sides of the compat_d identity, as tensors over ``(H2, H1)``."""
    P1, P2 = d.P1, d.P2
    pa = P2.word_parity(aw)
    lhs: dict = {}
    rhs: dict = {}
    for (h1, h2), c in d.h1.coproduct_word(hw).terms.items():
        # h_(1)^(1) (a <| h_(2)) (x) h_(1)^(2)
        act2 = d.act_word(aw, h2)
        if act2:
            for (x1, x2), e in d.coact_word(h1).terms.items():
                for lw, lc in act2.terms.items():
                    for w1, g in P2.nf_word(x1 + lw).items():
                        _acc(lhs, (w1, x2), c * e * lc * g)
        # (-1)^{p(a)p(h_(2)^(1)) + p(h_(1))p(h_(2)^(2))} (a <| h_(1)) h_(2)^(1) (x) h_(2)^(2)
        act1 = d.act_word(aw, h1)
        if act1:
            ph1 = P1.word_parity(h1)
            for (y1, y2), e in d.coact_word(h2).terms.items():
                k = c * e
                if (pa * P2.word_parity(y1) + ph1 * P1.word_parity(y2)) & 1:
                    k = -k
                for lw, lc in act1.terms.items():
                    for w1, g in P2.nf_word(lw + y1).items():
                        _acc(rhs, (w1, y2), k * lc * g)
    return TensorElement((P2, P1), lhs), TensorElement((P2, P1), rhs)


def check_compatibility(d: BicrossData, degree: int = 2, samples: int = 30, seed: int = DEFAULT_SEED) -> Report:
    P1, P2 = d.P1, d.P2
    t = _tag(d)
    words1 = sample_words(P1, degree, samples, seed)
    words2 = sample_words(P2, degree, samples, seed)
    gens_pairs = [((a,), (h,)) for a in range(len(P2)) for h in range(len(P1))]
    mixed = gens_pairs + list(zip(sample_pairs(words2, samples, seed), sample_pairs(words1, samples, seed + 7)))
    mixed = gens_pairs + [(p[0], q[0]) for p, q in mixed[len(gens_pairs):]]

    ca = Check(f"bicross.compat_a{t}", "e(a<|h) = e(a)e(h)", seed)
    cb = Check(f"bicross.compat_b{t}", "D(a<|h) = (-1)^{...} (a_(1)<|h_(1))h_(2)^(1) (x) a_(2)<|h_(2)^(2)", seed)
    cd = Check(f"bicross.compat_d{t}", "h_(1)^(1)(a<|h_(2)) (x) h_(1)^(2) = (-1)^{...} (a<|h_(1))h_(2)^(1) (x) h_(2)^(2)", seed)
    for aw, hw in mixed:
        name = f"{P2.render_word(aw)} <| {P1.render_word(hw)}"
        x = d.act_word(aw, hw)
        ca.compare(name, d.h2.counit(x), d.h2.counit_word(aw) * d.h1.counit_word(hw))
        cb.compare(name, d.h2.coproduct(x), _compat_b_rhs(d, aw, hw))
        cd.compare(name, *_compat_d_sides(d, aw, hw))

    cc = Check(f"bicross.compat_c{t}", "beta(hg) = (-1)^{...} (h^(1)<|g_(1))g_(2)^(1) (x) h^(2)g_(2)^(2)", seed)
    pairs = [((h,), (g,)) for h in range(len(P1)) for g in range(len(P1))] + sample_pairs(words1, samples, seed)
    for hw, gw in pairs:
        name = f"beta(({P1.render_word(hw)})*({P1.render_word(gw)}))"
        hg = P1.word_element(hw) * P1.word_element(gw)
        cc.compare(name, d.coact(hg), d.coact_product(hw, gw))

    wd = Check(f"bicross.coaction_respects_relations{t}", "beta is well defined on the quotient", seed)
    for lhs, rhs in sorted(P1.rules.items()):
        name = f"beta({P1.render_word(lhs)})"
        wd.compare(name, d.coact_word(lhs), d.coact_raw(rhs))
    cu = Check(f"bicross.coaction_unit{t}", "beta(1) = 1(x)1", seed)
    cu.compare("1", d.coact_word(()), TensorElement.unit((P2, P1)))

    rep = Report()
    for c in (ca, cb, cc, cd, wd, cu):
        rep.add(c)
    return rep


def check_all(d: BicrossData, degree: int = 2, samples: int = 30, seed: int = DEFAULT_SEED) -> Report:
    rep = Report()
    rep.extend(check_module_algebra(d, degree, samples, seed))
    rep.extend(check_comodule_coalgebra(d, degree, samples, seed))
    rep.extend(check_compatibility(d, degree, samples, seed))
    return rep


class BuiltBicross(HopfStructure):
    """Hopf structure on ``H1 (x) H2``; words are an H1 word then an H2 word."""

    data: BicrossData
    n1: int

    def split(self, word: tuple) -> tuple[tuple, tuple]:
        n1 = self.n1
        k = 0
        while k < len(word) and word[k] < n1:
            k += 1
        return word[:k], tuple(g - n1 for g in word[k:])

    def join(self, hw: tuple, aw: tuple) -> tuple:
        return tuple(hw) + tuple(g + self.n1 for g in aw)

    def embed1(self, e: Element) -> Element:
        return self.algebra.element({w: c for w, c in e.terms.items()})

    def embed2(self, e: Element) -> Element:
        return self.algebra.element({self.join((), w): c for w, c in e.terms.items()})

    def pure(self, word: tuple) -> bool:
        hw, aw = self.split(word)
        return self.join(hw, aw) == word


def _crossing_rules(d: BicrossData) -> dict[tuple[int, int], dict]:
    """``(1(x)a)(g(x)1) = (-1)^{p(a)p(g_(1))} g_(1) (x) (a <| g_(2))`` as big-word sums."""
    P1, P2 = d.P1, d.P2
    n1 = len(P1)
    out = {}
    for a in range(len(P2)):
        pa = P2.parities[a]
        for g in range(n1):
            rhs: dict = {}
            for (g1, g2), c in d.h1.coproduct_word((g,)).terms.items():
                if pa and P1.word_parity(g1):
                    c = -c
                for w, e in d.act_word((a,), g2).terms.items():
                    _acc(rhs, g1 + tuple(x + n1 for x in w), c * e)
            out[(a + n1, g)] = rhs
    return out


def build_bicrossproduct(
    d: BicrossData,
    check: bool = True,
    degree: int = 2,
    samples: int = 20,
    seed: int = DEFAULT_SEED,
    name: str | None = None,
) -> BuiltBicross:
    """Hopf superalgebra on ``H1 (x) H2`` from the product, coproduct, counit and antipode formulas."""
    if check:
        rep = check_all(d, degree, samples, seed)
        if not rep.ok:
            raise CompatibilityFailed(f"{d.name}: {len(rep.failed)} failing checks", rep)
    P1, P2 = d.P1, d.P2
    n1 = len(P1)
    if set(P1.names) & set(P2.names):
        raise BicrossError("generator names of H1 and H2 must be disjoint")
    cross = _crossing_rules(d)
    # H1 letters get a weight large enough that every crossing rule decreases
    tail = 0
    for rhs in cross.values():
        for w in rhs:
            if all(x >= n1 for x in w):
                tail = max(tail, sum(P2.weights[x - n1] for x in w))
    scale = max(tail, max(P2.weights, default=1)) + 1
    gens = [GeneratorDecl(g.name, g.parity, i, g.weight * scale) for i, g in enumerate(P1.generators)]
    gens += [GeneratorDecl(g.name, g.parity, n1 + i, g.weight) for i, g in enumerate(P2.generators)]
    names = [g.name for g in gens]

    def named(rhs: Mapping[tuple, Scalar], shift: int = 0) -> dict:
        return {tuple(names[x + shift] for x in w): c for w, c in rhs.items()}

    rules = [RewriteRule((names[a], names[b]), named(r)) for (a, b), r in P1.rules.items()]
    rules += [RewriteRule((names[a + n1], names[b + n1]), named(r, n1)) for (a, b), r in P2.rules.items()]
    rules += [RewriteRule((names[a], names[b]), named(r)) for (a, b), r in cross.items()]
    big = register_presentation(gens, rules, name or f"{P1.name}|><{P2.name}")

    def lift2(e: Element) -> Element:
        return big.element({tuple(x + n1 for x in w): c for w, c in e.terms.items()})

    def lift1(e: Element) -> Element:
        return big.element(dict(e.terms))

    coproduct: dict[str, TensorElement] = {}
    counit: dict[str, Scalar] = {}
    antipode: dict[str, Element] = {}
    for h in range(n1):
        # D(h(x)1) = h_(1) h_(2)^(1) (x) h_(2)^(2)
        raw: dict = {}
        for (h1, h2), c in d.h1.coproduct_word((h,)).terms.items():
            for (y1, y2), e in d.coact_word(h2).terms.items():
                _acc(raw, (h1 + tuple(x + n1 for x in y1), y2), c * e)
        coproduct[names[h]] = TensorElement.from_raw((big, big), raw)
        counit[names[h]] = d.h1.counit_table[h]
        # S(h(x)1) = (1(x)S(h^(1))) (S(h^(2))(x)1)
        s = big.zero()
        for (y1, y2), c in d.coact_word((h,)).terms.items():
            s = s + (lift2(d.h2.antipode_word(y1)) * lift1(d.h1.antipode_word(y2))).scale(c)
        antipode[names[h]] = s
    for a in range(len(P2)):
        da = d.h2.coproduct_table[a]
        coproduct[names[a + n1]] = TensorElement.from_raw(
            (big, big), {(tuple(x + n1 for x in w1), tuple(x + n1 for x in w2)): c for (w1, w2), c in da.terms.items()}
        )
        counit[names[a + n1]] = d.h2.counit_table[a]
        antipode[names[a + n1]] = lift2(d.h2.antipode_table[a])

    built = BuiltBicross(big, coproduct, counit, antipode, name=big.name)
    built.data = d
    built.n1 = n1
    return built


def _coproduct_formula(b: BuiltBicross, hw: tuple, aw: tuple, last: str = "a2") -> TensorElement:
    """Coproduct formula of the built structure; ``last`` picks which leg of ``D(a)`` ends the tensor."""
    d = b.data
    P1, P2 = d.P1, d.P2
    big = b.algebra
    raw: dict = {}
    for (h1, h2), c in d.h1.coproduct_word(hw).terms.items():
        for (y1, y2), e in d.coact_word(h2).terms.items():
            py2 = P1.word_parity(y2)
            for (a1, a2), f in d.h2.coproduct_word(aw).terms.items():
                k = c * e * f
                if py2 and P2.word_parity(a1):
                    k = -k
                tail = a2 if last == "a2" else a1
                for m, g in P2.nf_word(y1 + a1).items():
                    _acc(raw, (b.join(h1, m), b.join(y2, tail)), k * g)
    return TensorElement.from_raw((big, big), raw)


def _antipode_formula(b: BuiltBicross, hw: tuple, aw: tuple, alternate: bool = False) -> Element:
    """``(-1)^{p(h^(2))p(a)} (1(x)S(h^(1)a)) (S(h^(2))(x)1)``.

    ``alternate=True`` uses the sign ``(-1)^{p(h^(2))[p(h^(1))+p(a)]}`` instead.
    """
    d = b.data
    P1, P2 = d.P1, d.P2
    big = b.algebra
    pa = P2.word_parity(aw)
    out = big.zero()
    for (y1, y2), c in d.coact_word(hw).terms.items():
        e = pa + (P2.word_parity(y1) if alternate else 0)
        if P1.word_parity(y2) and e & 1:
            c = -c
        s_left = d.h2.raw_antipode(P2.nf_word(y1 + aw))
        left = big.element({b.join((), w): k for w, k in s_left.terms.items()})
        right = big.element(dict(d.h1.antipode_word(y2).terms))
        out = out + (left * right).scale(c)
    return out


def verify_built(
    b: BuiltBicross,
    degree: int = 2,
    samples: int = 30,
    seed: int = DEFAULT_SEED,
    identity_degree: int | None = None,
) -> Report:
    big = b.algebra
    t = f"[{b.data.name}]"
    rep = Report()
    rep.extend(verify_bialgebra(b, degree, samples, seed))
    rep.extend(verify_antipode(b, degree, samples, seed, identity_degree))

    words = sample_words(big, degree, samples, seed)
    assoc = Check(f"built.associativity{t}", "[(h(x)a)(g(x)b)](f(x)c) = (h(x)a)[(g(x)b)(f(x)c)]", seed)
    rng = random.Random(seed + 3)
    for _ in range(samples):
        x, y, z = (big.word_element(rng.choice(words)) for _ in range(3))
        assoc.compare(f"({x})({y})({z})", (x * y) * z, x * (y * z))
    rep.add(assoc)

    hom = Check(f"built.coproduct_homomorphism{t}", "D((h(x)a)(g(x)b)) = D(h(x)a)D(g(x)b)", seed)
    for u, v in sample_pairs(words, samples, seed + 5):
        x, y = big.word_element(u), big.word_element(v)
        hom.compare(f"({x})*({y})", b.coproduct(x * y), b.coproduct_word(u) * b.coproduct_word(v))
    rep.add(hom)

    dform = Check(f"built.coproduct_formula{t}", "coproduct formula with the last leg read as a_(2)", seed)
    alt = Check(f"built.coproduct_formula_alt{t}", "coproduct formula, alternate reading with last leg a_(1)", seed)
    eform = Check(f"built.counit_formula{t}", "e(h(x)a) = e(h)e(a)", seed)
    sform = Check(f"built.antipode_formula{t}", "S(h(x)a) with the sign (-1)^{p(h^(2))p(a)}", seed)
    salt = Check(f"built.antipode_formula_alt{t}", "antipode formula, alternate sign (-1)^{p(h^(2))[p(h^(1))+p(a)]}", seed)
    for w in words:
        hw, aw = b.split(w)
        name = big.render_word(w)
        dw = b.coproduct_word(w)
        dform.compare(name, dw, _coproduct_formula(b, hw, aw, "a2"))
        alt.compare(name, dw, _coproduct_formula(b, hw, aw, "a1"))
        eform.compare(name, b.counit_word(w), b.data.h1.counit_word(hw) * b.data.h2.counit_word(aw))
        sw = b.antipode_word(w)
        sform.compare(name, sw, _antipode_formula(b, hw, aw))
        salt.compare(name, sw, _antipode_formula(b, hw, aw, alternate=True))
    rec = dform.record()
    rec.detail["alternate_a1_reading"] = {"checked": alt.checked, "failures": alt.failure_count}
    rep.add(rec)
    rep.add(eform)
    rec = sform.record()
    rec.detail["alternate_sign_reading"] = {"checked": salt.checked, "failures": salt.failure_count}
    rep.add(rec)
    return rep


def mixed_products(b: BuiltBicross) -> list[tuple[Element, Element]]:
    """Every degree-2 product of an ``H1`` generator with an ``H2`` generator, both orders."""
    big = b.algebra
    hs = [big.word_element((i,)) for i in range(b.n1)]
    as_ = [big.word_element((i,)) for i in range(b.n1, len(big.names))]
    return [(h, a) for h in hs for a in as_] + [(a, h) for h in hs for a in as_]
