"""Turning a :class:`PresentationDoc` into structures, and structures back into docs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..bicross import (
    BicrossData,
    BicrossError,
    BuiltBicross,
    build_bicrossproduct,
    check_all,
    mixed_products,
    verify_built,
)
from ..hopf import HopfStructure, HopfTableError, verify_antipode, verify_bialgebra, verify_products
from ..presentation import (
    Element,
    GeneratorDecl,
    Presentation,
    PresentationError,
    RewriteRule,
    local_confluence_check,
    monomial_key,
    register_presentation,
)
from ..report import DEFAULT_SEED, CheckRecord, Report
from ..scalars import I, KAPPA, ONE, ZERO, Scalar, ScalarError, invert_monomial
from ..tensor import TensorElement
from .syntax import (
    IMPLICIT_HANDLE,
    RESERVED,
    AlgebraBlock,
    BicrossBlock,
    CheckDirective,
    DslError,
    DslSemanticError,
    GenDecl,
    Name,
    Num,
    ParityMismatch,
    Pow,
    PresentationDoc,
    Prod,
    Quot,
    Relation,
    Sum,
    TableEntry,
    ActionEntry,
    TensorSum,
    UndeclaredGenerator,
    parse_expression,
    parse_tensor_expression,
)

__all__ = [
    "DslModel",
    "build_model",
    "evaluate",
    "doc_from_hopf",
    "doc_from_bicross",
    "run_checks",
    "DEFAULT_DEGREE",
    "DEFAULT_SAMPLES",
]

DEFAULT_DEGREE = 2
DEFAULT_SAMPLES = 20
_HOPF_KINDS = ("coproduct", "counit", "antipode")


# -- evaluation in the free algebra -----------------------------------------------
# Raw polynomials are {word of generator positions: Scalar}; products concatenate.

def _raw_add(x: dict, y: dict, sign: int = 1) -> dict:
    out = dict(x)
    for w, c in y.items():
        c = c if sign > 0 else -c
        v = out.get(w)
        v = c if v is None else v + c
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


def _raw_mul(x: dict, y: dict) -> dict:
    out: dict = {}
    for u, c in x.items():
        for v, d in y.items():
            w = u + v
            e = c * d
            s = out.get(w)
            s = e if s is None else s + e
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out


def _constant(raw: dict, node) -> Scalar:
    if not raw:
        return ZERO
    if set(raw) != {()}:
        raise DslSemanticError("divisor and negative powers must be scalars", *node.pos)
    return raw[()]


def _invert(c: Scalar, node) -> Scalar:
    try:
        return invert_monomial(c)
    except (ScalarError, ZeroDivisionError) as exc:
        raise DslSemanticError(f"cannot invert {c}: {exc}", *node.pos) from None


def evaluate(node, index: dict[str, int]) -> dict:
    """Free-algebra value of an expression; ``index`` maps generator names to positions."""
    if isinstance(node, Num):
        return {(): Scalar.const(node.value)} if node.value else {}
    if isinstance(node, Name):
        if node.id == "i":
            return {(): I}
        if node.id == "k":
            return {(): KAPPA}
        if node.id not in index:
            raise UndeclaredGenerator(f"undeclared generator {node.id!r}", *node.pos)
        return {(index[node.id],): ONE}
    if isinstance(node, Sum):
        out: dict = {}
        for sign, t in node.terms:
            out = _raw_add(out, evaluate(t, index), 1 if sign == "+" else -1)
        return out
    if isinstance(node, Prod):
        out = {(): ONE}
        for f in node.factors:
            out = _raw_mul(out, evaluate(f, index))
            if not out:
                return {}
        return out
    if isinstance(node, Quot):
        c = _constant(evaluate(node.den, index), node)
        if not c:
            raise DslSemanticError("division by zero", *node.pos)
        inv = _invert(c, node)
        return {w: v * inv for w, v in evaluate(node.num, index).items()}
    if isinstance(node, Pow):
        base = evaluate(node.base, index)
        if node.exp < 0:
            c = _constant(base, node)
            if not c:
                raise DslSemanticError("zero to a negative power", *node.pos)
            return {(): _invert(c, node) ** (-node.exp)}
        if node.exp > 64:
            raise DslSemanticError("exponent too large", *node.pos)
        out = {(): ONE}
        for _ in range(node.exp):
            out = _raw_mul(out, base)
        return out
    raise DslSemanticError(f"unexpected node {type(node).__name__}", *getattr(node, "pos", (0, 0)))


def _evaluate_tensor(node: TensorSum, indices: tuple[dict, ...]) -> dict:
    out: dict = {}
    for sign, term in node.terms:
        if len(term.slots) != len(indices):
            raise DslSemanticError(f"expected {len(indices)} tensor factors, got {len(term.slots)}", *term.pos)
        acc = {tuple(() for _ in indices): ONE}
        for n, (slot, index) in enumerate(zip(term.slots, indices)):
            val = evaluate(slot, index)
            nxt: dict = {}
            for words, c in acc.items():
                for w, d in val.items():
                    key = words[:n] + (w,) + words[n + 1 :]
                    v = nxt.get(key)
                    v = c * d if v is None else v + c * d
                    if v:
                        nxt[key] = v
                    else:
                        nxt.pop(key, None)
            acc = nxt
        out = _raw_add(out, acc, 1 if sign == "+" else -1)
    return out


# -- building ------------------------------------------------------------------

@dataclass
class DslModel:
    doc: PresentationDoc
    algebras: dict[str, Presentation] = field(default_factory=dict)
    hopf: dict[str, HopfStructure] = field(default_factory=dict)
    bicross: dict[str, BicrossData] = field(default_factory=dict)
    built: dict[str, BuiltBicross] = field(default_factory=dict)

    def build(self, handle: str) -> BuiltBicross:
        if handle not in self.built:
            self.built[handle] = build_bicrossproduct(self.bicross[handle], check=False)
        return self.built[handle]


def _declarations(block: AlgebraBlock) -> list[GeneratorDecl]:
    decls, seen = [], set()
    for g in block.gens:
        for name in g.names:
            if name in RESERVED:
                raise DslSemanticError(f"{name!r} is reserved for a scalar", *g.pos)
            if name in seen:
                raise DslSemanticError(f"generator {name!r} declared twice", *g.pos)
            seen.add(name)
            decls.append(GeneratorDecl(name, g.parity, len(decls), g.weight or 1))
    return decls


def _orient(rel: Relation, decls: list[GeneratorDecl], index: dict) -> RewriteRule:
    raw = _raw_add(evaluate(rel.lhs, index), evaluate(rel.rhs, index), -1)
    if not raw:
        raise DslSemanticError("relation is trivial", *rel.pos)
    parities = {sum(decls[g].parity for g in w) & 1 for w in raw}
    if len(parities) > 1:
        raise ParityMismatch("relation mixes even and odd terms", *rel.pos)
    weights = [d.weight for d in decls]
    lead = max(raw, key=lambda w: monomial_key(w, weights))
    if len(lead) != 2:
        raise DslSemanticError(
            f"leading word {'*'.join(decls[g].name for g in lead) or '1'} of a relation must have two letters", *rel.pos
        )
    inv = invert_monomial(raw[lead]) if len(raw[lead]._terms) == 1 else None
    if inv is None:
        raise DslSemanticError("leading coefficient must be a monomial in k", *rel.pos)
    rhs = {tuple(decls[g].name for g in w): -(c * inv) for w, c in raw.items() if w != lead}
    return RewriteRule((decls[lead[0]].name, decls[lead[1]].name), rhs)


def _presentation(block: AlgebraBlock) -> Presentation:
    decls = _declarations(block)
    index = {d.name: d.order_index for d in decls}
    rules: dict[tuple, RewriteRule] = {}
    for rel in block.relations:
        r = _orient(rel, decls, index)
        if r.lhs in rules:
            raise DslSemanticError(f"second relation with leading word {'*'.join(r.lhs)}", *rel.pos)
        rules[r.lhs] = r
    if block.supercommutative:
        par = {d.name: d.parity for d in decls}
        for i, a in enumerate(decls):
            for b in decls[:i]:
                if (a.name, b.name) not in rules:
                    sign = -ONE if par[a.name] and par[b.name] else ONE
                    rules[(a.name, b.name)] = RewriteRule((a.name, b.name), {(b.name, a.name): sign})
            if a.parity and (a.name, a.name) not in rules:
                rules[(a.name, a.name)] = RewriteRule((a.name, a.name), {})
    try:
        return register_presentation(decls, list(rules.values()), block.label or block.handle)
    except PresentationError as exc:
        raise DslSemanticError(str(exc), *block.pos) from None


def _hopf(block: AlgebraBlock, P: Presentation) -> HopfStructure | None:
    entries = [t for t in block.tables if t.kind in _HOPF_KINDS]
    if not entries:
        return None
    index = P.index
    tables: dict[str, dict] = {k: {} for k in _HOPF_KINDS}
    for t in entries:
        if t.gen not in index:
            raise UndeclaredGenerator(f"undeclared generator {t.gen!r}", *t.pos)
        if t.gen in tables[t.kind]:
            raise DslSemanticError(f"second {t.kind} entry for {t.gen}", *t.pos)
        if t.kind == "coproduct":
            tables[t.kind][t.gen] = TensorElement.from_raw((P, P), _evaluate_tensor(t.value, (index, index)))
        elif t.kind == "counit":
            raw = evaluate(t.value, index)
            tables[t.kind][t.gen] = _constant(raw, t.value) if raw else ZERO
        else:
            tables[t.kind][t.gen] = P.element(evaluate(t.value, index))
    try:
        return HopfStructure(P, tables["coproduct"], tables["counit"], tables["antipode"], name=block.label or block.handle)
    except HopfTableError as exc:
        raise DslSemanticError(str(exc), *block.pos) from None


def _bicross(block: BicrossBlock, model: DslModel) -> BicrossData:
    for h in (block.acting, block.acted):
        if h not in model.hopf:
            raise DslSemanticError(f"{h!r} is not a Hopf algebra block", *block.pos)
    h1, h2 = model.hopf[block.acting], model.hopf[block.acted]
    P1, P2 = h1.algebra, h2.algebra
    action, coaction = {}, {}
    for a in block.actions:
        for n, P in ((a.acted, P2), (a.acting, P1)):
            if n not in P.index:
                raise UndeclaredGenerator(f"undeclared generator {n!r}", *a.pos)
        action[(a.acted, a.acting)] = P2.element(evaluate(a.value, P2.index))
    for c in block.coactions:
        if c.gen not in P1.index:
            raise UndeclaredGenerator(f"undeclared generator {c.gen!r}", *c.pos)
        coaction[c.gen] = TensorElement.from_raw((P2, P1), _evaluate_tensor(c.value, (P2.index, P1.index)))
    # unlisted entries are zero action / trivial coaction
    for a in P2.names:
        for h in P1.names:
            action.setdefault((a, h), P2.zero())
    for h in P1.names:
        coaction.setdefault(h, TensorElement.from_raw((P2, P1), {((), (P1.index[h],)): ONE}))
    try:
        return BicrossData(h1, h2, action, coaction, name=block.label or block.handle)
    except BicrossError as exc:
        raise DslSemanticError(str(exc), *block.pos) from None


def build_model(doc: PresentationDoc) -> DslModel:
    """Build every block; raises :class:`DslError` at the first problem."""
    model = DslModel(doc)
    for block in doc.algebras:
        if block.handle in model.algebras:
            raise DslSemanticError(f"algebra {block.handle!r} defined twice", *block.pos)
        P = _presentation(block)
        model.algebras[block.handle] = P
        h = _hopf(block, P)
        if h is not None:
            model.hopf[block.handle] = h
    for block in doc.bicross:
        if block.handle in model.bicross or block.handle in model.algebras:
            raise DslSemanticError(f"name {block.handle!r} used twice", *block.pos)
        model.bicross[block.handle] = _bicross(block, model)
    return model


# -- structures back to documents ---------------------------------------------------

def _expr(e: Element):
    return parse_expression(e.render())


def _texpr(t: TensorElement):
    return parse_tensor_expression(t.render())


def _scalar_expr(c: Scalar):
    return parse_expression(str(c))


def _default_rule(P: Presentation, lhs: tuple, rhs: dict) -> bool:
    a, b = lhs
    if a == b:
        return P.parities[a] == 1 and not rhs
    sign = -ONE if P.parities[a] and P.parities[b] else ONE
    return rhs == {(b, a): sign}


def _gen_decls(P: Presentation, weights: bool = True) -> list[GenDecl]:
    out: list[GenDecl] = []
    for g in P.generators:
        w = g.weight if weights and g.weight != 1 else None
        if out and out[-1].parity == g.parity and out[-1].weight == w:
            last = out[-1]
            out[-1] = GenDecl(last.names + (g.name,), g.parity, w)
        else:
            out.append(GenDecl((g.name,), g.parity, w))
    return out


def algebra_block(P: Presentation, handle: str, h: HopfStructure | None = None, compact: bool = True) -> AlgebraBlock:
    """Doc block for a presentation; ``compact`` folds graded-commutation rules into ``supercommutative``."""
    block = AlgebraBlock(handle, P.name, _gen_decls(P))
    folded = False
    for lhs, rhs in sorted(P.rules.items()):
        if compact and _default_rule(P, lhs, rhs):
            folded = True
            continue
        block.relations.append(Relation(parse_expression(P.render_word(lhs)), _expr(P.element(rhs))))
    block.supercommutative = folded
    if h is not None:
        for i, g in enumerate(P.names):
            block.tables.append(TableEntry("coproduct", g, _texpr(h.coproduct_table[i])))
        for i, g in enumerate(P.names):
            block.tables.append(TableEntry("counit", g, _scalar_expr(h.counit_table[i])))
        for i, g in enumerate(P.names):
            block.tables.append(TableEntry("antipode", g, _expr(h.antipode_table[i])))
    return block


def doc_from_hopf(h: HopfStructure, handle: str = "H", name: str | None = None, compact: bool = True) -> PresentationDoc:
    doc = PresentationDoc(name=name or h.name)
    doc.algebras.append(algebra_block(h.algebra, handle, h, compact))
    return doc


def doc_from_bicross(
    d: BicrossData, handles: tuple[str, str, str] = ("H1", "H2", "B"), name: str | None = None
) -> PresentationDoc:
    """Doc with both factors and the action/coaction tables; zero actions are omitted."""
    h1n, h2n, bn = handles
    doc = PresentationDoc(name=name or d.name)
    doc.algebras.append(algebra_block(d.P1, h1n, d.h1))
    doc.algebras.append(algebra_block(d.P2, h2n, d.h2))
    block = BicrossBlock(bn, h1n, h2n, d.name)
    P1, P2 = d.P1, d.P2
    for a in range(len(P2)):
        for h in range(len(P1)):
            e = d.action[(a, h)]
            if not e.is_zero():
                block.actions.append(ActionEntry(P2.names[a], P1.names[h], _expr(e)))
    for h in range(len(P1)):
        block.coactions.append(TableEntry("coact", P1.names[h], _texpr(d.coaction[h])))
    doc.bicross.append(block)
    return doc


# -- running checks -------------------------------------------------------------------

def _setup_failure(directive: CheckDirective, exc: Exception) -> CheckRecord:
    detail: dict[str, Any] = {"error": str(exc), "type": type(exc).__name__}
    if isinstance(exc, DslError):
        detail.update(exc.to_dict())
    return CheckRecord(f"setup.{directive.suite}[{directive.target}]", "build", "fail", detail, None)


def _default_checks(model: DslModel) -> list[CheckDirective]:
    out = [CheckDirective("confluence", h) for h in model.algebras]
    out += [CheckDirective("hopf", h) for h in model.hopf]
    out += [CheckDirective("bicross", h) for h in model.bicross]
    return out


def _run_one(model: DslModel, c: CheckDirective, degree: int, samples: int, seed: int) -> Report:
    rep = Report()
    if c.suite == "confluence":
        P = model.algebras[c.target]
        conf = local_confluence_check(P)
        detail = {"checked": conf.overlaps_checked, "failures": conf.mismatch_count}
        if conf.mismatches:
            detail["counterexamples"] = conf.mismatches[:5]
        rep.add(CheckRecord(f"presentation.confluence[{P.name}]", "overlap ambiguities resolve", "pass" if conf.ok else "fail", detail, None))
    elif c.suite == "hopf":
        h = model.hopf[c.target]
        rep.extend(verify_bialgebra(h, degree, samples, seed))
        rep.extend(verify_antipode(h, degree, samples, seed, c.option("identity_degree")))
    elif c.suite == "bicross":
        rep.extend(check_all(model.bicross[c.target], degree, samples, seed))
    elif c.suite == "built":
        rep.extend(verify_built(model.build(c.target), degree, samples, seed, c.option("identity_degree")))
    elif c.suite == "mixed":
        b = model.build(c.target)
        rep.extend(verify_products(b, mixed_products(b), seed, label="mixed"))
    return rep


def run_checks(
    doc: PresentationDoc,
    max_degree: int | None = None,
    samples: int | None = None,
    seed: int | None = None,
) -> Report:
    """Build the doc and run its check directives (or a default suite when none are declared).

    Build errors become failed ``setup.*`` records.  Overrides: ``max_degree``
    caps every directive's degree; ``samples`` and ``seed`` replace theirs.
    """
    rep = Report(header={"name": doc.name, "conventions": dict(doc.conventions), "symbols": dict(doc.symbols)})
    try:
        model = build_model(doc)
    except DslError as exc:
        rep.add(_setup_failure(CheckDirective("build", doc.name or IMPLICIT_HANDLE), exc))
        return rep
    checks = doc.checks or _default_checks(model)
    seeds = set()
    for c in checks:
        degree = c.option("degree", DEFAULT_DEGREE)
        if max_degree is not None:
            degree = min(degree, max_degree)
        n = samples if samples is not None else c.option("samples", DEFAULT_SAMPLES)
        s = seed if seed is not None else c.option("seed", DEFAULT_SEED)
        seeds.add(s)
        known = {
            "confluence": model.algebras,
            "hopf": model.hopf,
            "bicross": model.bicross,
            "built": model.bicross,
            "mixed": model.bicross,
        }[c.suite]
        if c.target not in known:
            rep.add(_setup_failure(c, DslSemanticError(f"no {c.suite} target named {c.target!r}", *c.pos)))
            continue
        try:
            rep.extend(_run_one(model, c, degree, n, s))
        except (DslError, PresentationError, HopfTableError, BicrossError, ScalarError, ValueError, KeyError) as exc:
            rep.add(_setup_failure(c, exc))
    rep.header["seeds"] = sorted(seeds)
    return rep.sorted()
