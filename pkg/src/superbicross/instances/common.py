"""Small builders shared by the bundled instances."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from ..bicross import BicrossData, BuiltBicross
from ..hopf import HopfStructure
from ..presentation import Element, GeneratorDecl, Presentation, RewriteRule, register_presentation
from ..report import Report
from ..scalars import ONE, ZERO, Scalar
from ..tensor import TensorElement, tensor

GenSpec = tuple  # (name, parity) or (name, parity, weight)


def graded_algebra(
    name: str,
    gens: Sequence[GenSpec],
    rules: Mapping[tuple[str, str], Mapping[tuple[str, ...], Scalar]] | None = None,
) -> Presentation:
    """Presentation whose unlisted pairs (graded-)commute and odd squares vanish.

    ``rules`` overrides individual pairs; keys are ``(left, right)`` names
    of the lhs word.
    """
    decls = [GeneratorDecl(g[0], g[1], i, g[2] if len(g) > 2 else 1) for i, g in enumerate(gens)]
    par = {d.name: d.parity for d in decls}
    given = dict(rules or {})
    out = [RewriteRule(lhs, dict(rhs)) for lhs, rhs in given.items()]
    for i, a in enumerate(decls):
        for b in decls[:i]:
            if (a.name, b.name) not in given:
                sign = -ONE if par[a.name] and par[b.name] else ONE
                out.append(RewriteRule((a.name, b.name), {(b.name, a.name): sign}))
        if a.parity and (a.name, a.name) not in given:
            out.append(RewriteRule((a.name, a.name), {}))
    return register_presentation(decls, out, name)


def primitive_hopf(P: Presentation, name: str | None = None) -> HopfStructure:
    """Every generator primitive: ``D(x) = x(x)1 + 1(x)x``, ``e = 0``, ``S = -id``."""
    g = P.gens()
    one = P.one()
    return HopfStructure(
        P,
        {n: tensor(x, one) + tensor(one, x) for n, x in g.items()},
        {n: ZERO for n in g},
        {n: -x for n, x in g.items()},
        name=name,
    )


def tensor_sum(pairs, factors) -> TensorElement:
    """``sum x (x) y`` over ``(x, y)`` element pairs."""
    out = TensorElement.zero(factors)
    for x, y in pairs:
        out = out + tensor(x, y)
    return out


def element_from_names(P: Presentation, raw: Mapping[tuple[str, ...], Scalar]) -> Element:
    return P.from_names(raw)


@dataclass
class InstanceBundle:
    """Named bicrossproduct data with its built structure and check report."""

    name: str
    data: BicrossData
    built: BuiltBicross | None = None
    report: Report = field(default_factory=Report)
    metadata: dict[str, Any] = field(default_factory=dict)
