"""Bundled ``.hsa`` instance files and the programmatic documents they are generated from."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..bicross import BicrossData
from ..hopf import HopfStructure
from ..instances.classical import CONVENTION, make_classical_poincare
from ..instances.kpoincare import (
    COACTION_ODD_COEFFICIENT,
    NAME_MAP,
    make_chiral_superspace,
    make_kappa_action_coaction,
    make_super_lorentz,
)
from ..instances.spinors import SpinorConventions
from .printer import print_presentation
from .semantics import doc_from_bicross, doc_from_hopf
from .syntax import CheckDirective, PresentationDoc, parse_presentation

__all__ = ["BUNDLED", "bundled_path", "bundled_text", "load_bundled", "programmatic", "generate", "write_bundled"]

BUNDLED = ("kappa_superspace", "super_lorentz", "classical_poincare", "kappa_poincare_supergroup")

_PREFIXES = (("Ab", "Abar_"), ("A", "A_"), ("th", "theta_"), ("tb", "thetabar_"), ("z", "z_"))

_CHECKS = {
    "kappa_superspace": [("confluence", "H", ()), ("hopf", "H", (("degree", 3),))],
    "super_lorentz": [("confluence", "H", ()), ("hopf", "H", (("degree", 2), ("samples", 20)))],
    "classical_poincare": [
        ("confluence", "H1", ()),
        ("confluence", "H2", ()),
        ("hopf", "H1", (("degree", 3), ("samples", 30))),
        ("hopf", "H2", (("degree", 3), ("samples", 30))),
        ("bicross", "B", (("degree", 2), ("samples", 30))),
        ("built", "B", (("degree", 3), ("samples", 50))),
    ],
    "kappa_poincare_supergroup": [
        ("confluence", "H1", ()),
        ("confluence", "H2", ()),
        ("bicross", "B", (("degree", 2), ("samples", 10))),
        ("built", "B", (("degree", 2), ("samples", 20), ("identity_degree", 1))),
        ("mixed", "B", ()),
    ],
}


def programmatic(name: str) -> HopfStructure | BicrossData:
    """The constructor-built structure a bundled file must reproduce."""
    makers = {
        "kappa_superspace": make_chiral_superspace,
        "super_lorentz": make_super_lorentz,
        "classical_poincare": make_classical_poincare,
        "kappa_poincare_supergroup": make_kappa_action_coaction,
    }
    if name not in makers:
        raise KeyError(f"unknown bundled instance {name!r}; choose from {', '.join(BUNDLED)}")
    return makers[name]()


def _kappa_header(doc: PresentationDoc, symbols: dict) -> None:
    flags = SpinorConventions().flags()
    doc.conventions = [(k, str(v)) for k, v in flags.items()]
    doc.conventions.append(("coaction_odd_coefficient", str(COACTION_ODD_COEFFICIENT)))
    doc.symbols = sorted(symbols.items())


def generate(name: str) -> PresentationDoc:
    """Document for a bundled instance, derived from its programmatic constructor."""
    obj = programmatic(name)
    if isinstance(obj, BicrossData):
        doc = doc_from_bicross(obj, name=name)
    else:
        doc = doc_from_hopf(obj, name=name)
    if name == "classical_poincare":
        doc.conventions = [("action", CONVENTION), ("metric", "diag(+1,-1,-1,-1)")]
    else:
        _kappa_header(doc, _symbols(doc))
    doc.checks = [CheckDirective(s, t, opts) for s, t, opts in _CHECKS[name]]
    return doc


def _symbols(doc: PresentationDoc) -> dict[str, str]:
    """ASCII generator names mapped to the symbols used in reports."""
    out = {"k": NAME_MAP["k"]}
    for block in doc.algebras:
        for g in block.gens:
            for n in g.names:
                prefix, sym = next((p, s) for p, s in _PREFIXES if n.startswith(p))
                out[n] = sym + n[len(prefix):]
    return out


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("superbicross").joinpath("data", f"{name}.hsa")))


def bundled_text(name: str) -> str:
    return resources.files("superbicross").joinpath("data", f"{name}.hsa").read_text(encoding="utf-8")


def load_bundled(name: str) -> PresentationDoc:
    return parse_presentation(bundled_text(name))


def write_bundled(directory: Path | str | None = None) -> list[Path]:
    """Regenerate every bundled file; returns the written paths."""
    out = []
    for name in BUNDLED:
        path = Path(directory) / f"{name}.hsa" if directory else bundled_path(name)
        path.write_text(print_presentation(generate(name)), encoding="utf-8")
        out.append(path)
    return out
