"""Single-sign and single-term mutations of the bundled files.

Each mutation must make at least one named check fail; the shipped files
under ``data/mutations`` are regenerated from this table.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .bundled import bundled_text
from .syntax import PresentationDoc, parse_presentation

__all__ = ["Mutation", "MUTATIONS", "mutated_text", "mutation_text", "load_mutation", "write_mutations"]


@dataclass(frozen=True)
class Mutation:
    name: str
    base: str
    old: str
    new: str
    expect: str  # id prefix of a check that must fail
    note: str


MUTATIONS = (
    Mutation(
        "classical_action_sign", "classical_poincare",
        "act P0 <| M01 = -i*P1;", "act P0 <| M01 = i*P1;",
        "bicross.action_respects_relations.H1", "sign flip in one action entry",
    ),
    Mutation(
        "classical_coaction_term", "classical_poincare",
        "coact M01 = 1 @ M01;", "coact M01 = 1 @ M01 + 1 @ M02;",
        "bicross.comodule_counit", "extra term in one coaction entry",
    ),
    Mutation(
        "superspace_counit", "kappa_superspace",
        "counit z0 = 0;", "counit z0 = 1;",
        "hopf.counit_left", "counit of a primitive generator set to 1",
    ),
    Mutation(
        "superspace_antipode_sign", "kappa_superspace",
        "antipode th1 = -th1;", "antipode th1 = th1;",
        "hopf.antipode_left", "sign flip in one antipode entry",
    ),
    Mutation(
        "superspace_coproduct_term", "kappa_superspace",
        "coproduct z0 = 1 @ z0 + z0 @ 1;", "coproduct z0 = z0 @ 1;",
        "hopf.counit_left", "one coproduct term dropped",
    ),
    Mutation(
        "lorentz_det_sign", "super_lorentz",
        "rel A11*A22 = 1 + A12*A21;", "rel A11*A22 = -1 + A12*A21;",
        "hopf.well_defined.coproduct", "sign flip of the unit term in det A = 1",
    ),
    Mutation(
        "lorentz_thetabar_coproduct_sign", "super_lorentz",
        "coproduct tb1 = -Ab21 @ tb2 + Ab22 @ tb1 + tb1 @ 1;", "coproduct tb1 = Ab21 @ tb2 + Ab22 @ tb1 + tb1 @ 1;",
        "hopf.coassociativity", "sign flip in the thetabar coproduct",
    ),
    Mutation(
        "lorentz_antipode_sign", "super_lorentz",
        "antipode A11 = A22;", "antipode A11 = -A22;",
        "hopf.antipode_left", "sign flip in one antipode entry",
    ),
    Mutation(
        "kappa_action_sign", "kappa_poincare_supergroup",
        "act tb1 <| th1 = (i/2)*k^-1 - ", "act tb1 <| th1 = -(i/2)*k^-1 - ",
        "bicross.compat", "sign flip in one action entry",
    ),
    Mutation(
        "kappa_coaction_sign", "kappa_poincare_supergroup",
        "coact th1 = -A21 @ th2 + A22 @ th1;", "coact th1 = A21 @ th2 + A22 @ th1;",
        "bicross.comodule", "sign flip in one coaction entry",
    ),
)


def _by_name(name: str) -> Mutation:
    for m in MUTATIONS:
        if m.name == name:
            return m
    raise KeyError(f"unknown mutation {name!r}")


def mutated_text(m: Mutation) -> str:
    """Apply ``m`` to its base file; the edited text must occur exactly once."""
    text = bundled_text(m.base)
    if text.count(m.old) != 1:
        raise ValueError(f"mutation {m.name}: {m.old!r} occurs {text.count(m.old)} times in {m.base}")
    return text.replace(m.old, m.new).replace(f'name "{m.base}";', f'name "{m.base}:{m.name}";', 1)


def mutation_text(name: str) -> str:
    """Shipped text of a mutation file."""
    return resources.files("superbicross").joinpath("data", "mutations", f"{name}.hsa").read_text(encoding="utf-8")


def load_mutation(name: str) -> tuple[Mutation, PresentationDoc]:
    return _by_name(name), parse_presentation(mutation_text(name))


def write_mutations(directory: Path | str | None = None) -> list[Path]:
    root = Path(directory) if directory else Path(str(resources.files("superbicross").joinpath("data", "mutations")))
    root.mkdir(parents=True, exist_ok=True)
    out = []
    for m in MUTATIONS:
        path = root / f"{m.name}.hsa"
        path.write_text(mutated_text(m), encoding="utf-8")
        out.append(path)
    return out
