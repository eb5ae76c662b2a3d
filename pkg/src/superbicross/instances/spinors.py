"""Two-component spinor conventions and 2x2 matrices over presented algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from ..presentation import Element, Presentation
from ..scalars import I, ONE, ZERO, Scalar

Matrix = list  # list of rows

_PAULI = (
    ((ONE, ZERO), (ZERO, ONE)),
    ((ZERO, ONE), (ONE, ZERO)),
    ((ZERO, -I), (I, ZERO)),
    ((ONE, ZERO), (ZERO, -ONE)),
)


@dataclass(frozen=True)
class SpinorConventions:
    """``sigma^mu = (1, pauli)``, ``sigma_bar^mu = (1, -pauli)``, ``eps_12 = +1``, metric ``(+,-,-,-)``."""

    sigma: tuple = _PAULI
    sigma_bar: tuple = field(
        default_factory=lambda: tuple(
            m if mu == 0 else tuple(tuple(-c for c in row) for row in m) for mu, m in enumerate(_PAULI)
        )
    )
    epsilon: tuple = ((ZERO, ONE), (-ONE, ZERO))
    metric: tuple = (1, -1, -1, -1)

    def flags(self) -> dict:
        return {"metric": "diag(+1,-1,-1,-1)", "sigma": "(1, pauli)", "sigma_bar": "(1, -pauli)", "epsilon_12": 1}

    def sigma_lower(self, mu: int) -> tuple:
        """``sigma_mu = eta_{mu mu} sigma^mu``."""
        return self.sigma[mu] if self.metric[mu] > 0 else tuple(tuple(-c for c in row) for row in self.sigma[mu])


def scalar_matrix_check(conv: SpinorConventions) -> bool:
    """``sigma^i sigma^j + sigma^j sigma^i = 2 delta^ij``."""
    for i in range(1, 4):
        for j in range(1, 4):
            s = conv.sigma
            for a in range(2):
                for b in range(2):
                    v = sum((s[i][a][c] * s[j][c][b] + s[j][a][c] * s[i][c][b] for c in range(2)), ZERO)
                    if v != (2 * ONE if i == j and a == b else ZERO):
                        return False
    return True


def lift(P: Presentation, m) -> Matrix:
    """Scalar matrix as a matrix of constant elements."""
    return [[P.const(c) for c in row] for row in m]


def gen_matrix(P: Presentation, prefix: str) -> Matrix:
    return [[P.gen(f"{prefix}{a}{b}") for b in (1, 2)] for a in (1, 2)]


def matmul(x: Matrix, y: Matrix) -> Matrix:
    n, k, m = len(x), len(y), len(y[0])
    return [[sum((x[i][l] * y[l][j] for l in range(1, k)), x[i][0] * y[0][j]) for j in range(m)] for i in range(n)]


def transpose(x: Matrix) -> Matrix:
    return [list(col) for col in zip(*x)]


def adjugate(x: Matrix) -> Matrix:
    """Inverse of a 2x2 matrix of commuting entries with unit determinant."""
    return [[x[1][1], -x[0][1]], [-x[1][0], x[0][0]]]


def trace(x: Matrix):
    return x[0][0] + x[1][1]


def det(x: Matrix):
    return x[0][0] * x[1][1] - x[0][1] * x[1][0]


def identity(P: Presentation, n: int = 2) -> Matrix:
    return [[P.one() if i == j else P.zero() for j in range(n)] for i in range(n)]


def mat_map(f: Callable, x: Matrix) -> Matrix:
    return [[f(c) for c in row] for row in x]


def mat_sub(x: Matrix, y: Matrix) -> Matrix:
    return [[a - b for a, b in zip(r, s)] for r, s in zip(x, y)]
