"""Undeformed Poincare group as a bicrossproduct of U(so(3,1)) acting on momenta.

Convention: ``P_rho <| M_{mu nu} = i(eta_{nu rho} P_mu - eta_{mu rho} P_nu)``,
so that ``P_0 <| M_01 = -i P_1``.  The brackets of the ``M`` are read off
from the commutators of the action matrices, which makes the right action
automatically compatible with the enveloping-algebra relations.
"""

from __future__ import annotations

import itertools

from ..bicross import BicrossData
from ..hopf import HopfStructure
from ..presentation import Presentation
from ..scalars import I, ONE, ZERO, Scalar
from ..tensor import TensorElement, tensor
from .common import graded_algebra, primitive_hopf

ETA = (1, -1, -1, -1)
LORENTZ_PAIRS = [(m, n) for m, n in itertools.combinations(range(4), 2)]
CONVENTION = "P_rho <| M_{mu nu} = i(eta_{nu rho} P_mu - eta_{mu rho} P_nu)"


def m_name(m: int, n: int) -> str:
    return f"M{m}{n}"


def action_matrix(m: int, n: int) -> list[list[Scalar]]:
    """``P_rho <| M_{mn} = sum_s R[rho][s] P_s``."""
    R = [[ZERO] * 4 for _ in range(4)]
    for rho in range(4):
        if n == rho:
            R[rho][m] = R[rho][m] + I * ETA[n]
        if m == rho:
            R[rho][n] = R[rho][n] - I * ETA[m]
    return R


def _mat_mul(x, y):
    return [[sum((x[i][k] * y[k][j] for k in range(4)), ZERO) for j in range(4)] for i in range(4)]


def structure_constants() -> dict[tuple[int, int], dict[int, Scalar]]:
    """``[M_a, M_b] = sum_c f_ab^c M_c`` with the action a homomorphism of matrices."""
    mats = [action_matrix(*p) for p in LORENTZ_PAIRS]
    out = {}
    for a, b in itertools.combinations(range(len(mats)), 2):
        x, y = _mat_mul(mats[a], mats[b]), _mat_mul(mats[b], mats[a])
        comm = [[x[i][j] - y[i][j] for j in range(4)] for i in range(4)]
        coeffs = {}
        for c, (m, n) in enumerate(LORENTZ_PAIRS):
            # M_{mn} is the only basis matrix with a nonzero (n, m) entry
            v = comm[n][m] / mats[c][n][m]
            if v:
                coeffs[c] = v
        recon = [[sum((coeffs.get(c, ZERO) * mats[c][i][j] for c in range(len(mats))), ZERO) for j in range(4)] for i in range(4)]
        if recon != comm:
            raise AssertionError("Lorentz commutator outside the span of the generators")
        out[(a, b)] = coeffs
    return out


def make_lorentz_enveloping() -> HopfStructure:
    names = [m_name(*p) for p in LORENTZ_PAIRS]
    rules = {}
    for (a, b), coeffs in structure_constants().items():
        # M_b M_a -> M_a M_b - [M_a, M_b]
        rhs = {(names[a], names[b]): ONE}
        for c, v in coeffs.items():
            rhs[(names[c],)] = -v
        rules[(names[b], names[a])] = rhs
    P = graded_algebra("U(so(3,1))", [(n, 0) for n in names], rules)
    return primitive_hopf(P)


def make_momenta() -> HopfStructure:
    P = graded_algebra("C(T4)", [(f"P{m}", 0) for m in range(4)])
    return primitive_hopf(P)


def make_classical_poincare() -> BicrossData:
    h1 = make_lorentz_enveloping()
    h2 = make_momenta()
    P1: Presentation = h1.algebra
    P2: Presentation = h2.algebra
    p = [P2.gen(f"P{m}") for m in range(4)]
    action = {}
    for m, n in LORENTZ_PAIRS:
        R = action_matrix(m, n)
        for rho in range(4):
            e = P2.zero()
            for s in range(4):
                e = e + p[s].scale(R[rho][s])
            action[(f"P{rho}", m_name(m, n))] = e
    coaction = {g: tensor(P2.one(), P1.gen(g)) for g in P1.names}
    return BicrossData(
        h1,
        h2,
        action,
        coaction,
        name="classical_poincare",
        metadata={"convention": CONVENTION, "metric": "diag(+1,-1,-1,-1)"},
    )
