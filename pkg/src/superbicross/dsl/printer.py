"""Canonical ``.hsa`` rendering of a :class:`PresentationDoc`."""

from __future__ import annotations

from .syntax import (
    AlgebraBlock,
    BicrossBlock,
    Name,
    Num,
    Pow,
    PresentationDoc,
    Prod,
    Quot,
    Sum,
    TensorSum,
)

__all__ = ["print_presentation", "print_expression", "print_tensor_expression", "SKELETON"]

SKELETON = "# superbicross presentation\n"
_INDENT = "  "


def _atomic(node) -> bool:
    return isinstance(node, (Num, Name, Pow))


def _item(node) -> str:
    """A factor inside a product; quotients keep their parentheses, as in ``(i/2)*k^-1``."""
    if _atomic(node):
        return print_expression(node)
    return f"({print_expression(node)})"


def print_expression(node) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Name):
        return node.id
    if isinstance(node, Pow):
        base = print_expression(node.base) if isinstance(node.base, (Num, Name)) else f"({print_expression(node.base)})"
        return f"{base}^{node.exp}"
    if isinstance(node, Prod):
        return "*".join(_item(f) for f in node.factors)
    if isinstance(node, Quot):
        num = node.num
        left = print_expression(num) if isinstance(num, (Num, Name, Pow, Prod, Quot)) else f"({print_expression(num)})"
        right = print_expression(node.den) if _atomic(node.den) else f"({print_expression(node.den)})"
        return f"{left}/{right}"
    if isinstance(node, Sum):
        out = []
        for n, (sign, t) in enumerate(node.terms):
            body = f"({print_expression(t)})" if isinstance(t, Sum) else print_expression(t)
            if n == 0:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)
    raise TypeError(f"not an expression node: {node!r}")


def _slot(node) -> str:
    return f"({print_expression(node)})" if isinstance(node, Sum) else print_expression(node)


def print_tensor_expression(node: TensorSum) -> str:
    out = []
    for n, (sign, term) in enumerate(node.terms):
        body = " @ ".join(_slot(s) for s in term.slots)
        if n == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def _string(s: str) -> str:
    return f'"{s}"'


def _algebra_items(block: AlgebraBlock, indent: str) -> list[str]:
    lines = []
    for g in block.gens:
        parity = "odd" if g.parity else "even"
        weight = f" weight {g.weight}" if g.weight is not None else ""
        lines.append(f"{indent}gen {', '.join(g.names)} : {parity}{weight};")
    if block.supercommutative:
        lines.append(f"{indent}supercommutative;")
    for r in block.relations:
        lines.append(f"{indent}rel {print_expression(r.lhs)} = {print_expression(r.rhs)};")
    for t in block.tables:
        value = print_tensor_expression(t.value) if t.kind == "coproduct" else print_expression(t.value)
        lines.append(f"{indent}{t.kind} {t.gen} = {value};")
    return lines


def _bicross(block: BicrossBlock) -> list[str]:
    label = f" {_string(block.label)}" if block.label is not None else ""
    lines = [f"bicross {block.handle}{label} ({block.acting}, {block.acted}) {{"]
    for a in block.actions:
        lines.append(f"{_INDENT}act {a.acted} <| {a.acting} = {print_expression(a.value)};")
    for c in block.coactions:
        lines.append(f"{_INDENT}coact {c.gen} = {print_tensor_expression(c.value)};")
    lines.append("}")
    return lines


def print_presentation(doc: PresentationDoc) -> str:
    """Canonical text; ``parse_presentation(print_presentation(d)) == d``."""
    sections: list[list[str]] = []
    head = []
    if doc.name is not None:
        head.append(f"name {_string(doc.name)};")
    head.extend(f"convention {k} = {_string(v)};" for k, v in doc.conventions)
    head.extend(f"symbol {k} = {_string(v)};" for k, v in doc.symbols)
    if head:
        sections.append(head)
    for block in doc.algebras:
        if block.implicit:
            sections.append(_algebra_items(block, ""))
            continue
        label = f" {_string(block.label)}" if block.label is not None else ""
        sections.append([f"algebra {block.handle}{label} {{", *_algebra_items(block, _INDENT), "}"])
    for block in doc.bicross:
        sections.append(_bicross(block))
    if doc.checks:
        sections.append(
            [
                f"check {c.suite} {c.target}" + "".join(f" {k} {v}" for k, v in c.options) + ";"
                for c in doc.checks
            ]
        )
    if not sections:
        return SKELETON
    return "\n\n".join("\n".join(s) for s in sections) + "\n"
