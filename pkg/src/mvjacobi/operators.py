"""Problem data and the operators it induces on the coefficient space.

A problem instance is a pair of d x d rational residue matrices (A, B)
for a first-order system with singularities at +1 and -1, plus the
degree n of the polynomial space the system acts on.  The sum A + B
must be diagonal: the whole construction reads its eigenvalues off the
diagonal, and any input with diagonalizable sum can be conjugated into
this form beforehand.

Two derived operators drive everything downstream:

  build_D(spec, space, i)   the derivation q |-> dq(w) . (M_i w) - M_i q(w)
                            as an N x N matrix over the monomial basis,
                            where M_1 = A + B and M_2 = A - B;
  induced_action(Y, space)  the substitution q |-> Y^{-1} q(Y w), the
                            finite-dimensional image of the group action
                            (note it reverses products: the image of a
                            product Y C is image(C) @ image(Y)).

D_1 is diagonal whenever M_1 is, which is what makes the diagonality
requirement on A + B worth enforcing at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, cached_property
from typing import Optional, Sequence

from .polyspace import PolySpace, enumerate_basis
from .ratmat import RatMatrix, RatVector
from .rational import ONE, Rat, ZERO

OperatorMatrix = RatMatrix


@dataclass(frozen=True)
class ProblemSpec:
    """Residue matrices (A at +1, B at -1) and the polynomial degree n."""

    d: int
    n: int
    A: RatMatrix
    B: RatMatrix

    def __post_init__(self):
        if self.d < 1 or self.n < 1:
            raise ValueError(f"need d >= 1 and n >= 1, got d={self.d}, n={self.n}")
        for name, m in (("A", self.A), ("B", self.B)):
            if m.shape != (self.d, self.d):
                raise ValueError(f"{name} has shape {m.shape}, expected ({self.d}, {self.d})")
        if (self.A + self.B).diag is None:
            raise ValueError(
                "A + B must be diagonal; conjugate A and B by an eigenbasis "
                "of A + B before constructing the problem"
            )

    @cached_property
    def M1(self) -> RatMatrix:
        return self.A + self.B

    @cached_property
    def M2(self) -> RatMatrix:
        return self.A - self.B

    @cached_property
    def space(self) -> PolySpace:
        return enumerate_basis(self.d, self.n)


@lru_cache(maxsize=None)
def build_D(spec: ProblemSpec, space: PolySpace, which: int) -> OperatorMatrix:
    """Matrix of the derivation induced by M_which on the monomial basis.

    On a basis element w^m e_j the derivation produces
        sum_{s,t} m_s (M)_{st} w^{m - e_s + e_t} e_j  -  sum_r (M)_{rj} w^m e_r,
    both sums staying inside the same homogeneous degree.
    """
    if which not in (1, 2):
        raise ValueError(f"which must be 1 or 2, got {which}")
    M = spec.M1 if which == 1 else spec.M2
    N = space.N
    cols: list[list] = [[ZERO] * N for _ in range(N)]
    for cpos, b in enumerate(space.basis):
        col = cols[cpos]
        for s, ms in enumerate(b.m):
            if not ms:
                continue
            for t in range(space.d):
                entry = M.rows[s][t]
                if not entry:
                    continue
                if s == t:
                    col[cpos] += ms * entry
                else:
                    shifted = list(b.m)
                    shifted[s] -= 1
                    shifted[t] += 1
                    col[space.index_of(tuple(shifted), b.j)] += ms * entry
        for r in range(1, space.d + 1):
            entry = M.rows[r - 1][b.j - 1]
            if entry:
                col[space.index_of(b.m, r)] -= entry
    return RatMatrix(tuple(cols[c][r] for c in range(N)) for r in range(N))


def dominant_coefficient(D1: OperatorMatrix, k: int) -> OperatorMatrix:
    """Leading coefficient (D1 + k + 1)(D1 + k + 2) ... (D1 + 2k) of the
    degree-k member; identity for k = 0."""
    if k < 0:
        raise ValueError("k must be >= 0")
    out = RatMatrix.identity(D1.nrows)
    for i in range(k + 1, 2 * k + 1):
        out = out @ D1.plus_scalar(i)
    return out


@dataclass(frozen=True)
class InvertibilityCertificate:
    invertible: bool
    rank: int
    size: int
    kernel: Optional[RatVector]


def check_invertibility(op: OperatorMatrix) -> InvertibilityCertificate:
    """Exact rank test with a kernel witness when the operator is singular."""
    if not op.is_square:
        raise ValueError("invertibility check needs a square matrix")
    rank, kernel = op.rank_kernel()
    return InvertibilityCertificate(kernel is None, rank, op.nrows, kernel)


def describe_kernel(space: PolySpace, kernel: Sequence) -> str:
    """Render a coefficient vector as a readable combination of w^m e_j."""
    parts = []
    for coeff, b in zip(kernel, space.basis):
        if coeff:
            parts.append(f"({coeff})*w^{b.m}.e{b.j}")
    return " + ".join(parts) if parts else "0"


# -- induced substitution action ------------------------------------------


def _monomial_image(Y_rows: Sequence[Sequence], m: Sequence[int], zero, one) -> dict:
    """Expand prod_s (row_s . w)^{m_s} into {multi-index: coefficient}."""
    d = len(Y_rows)
    acc = {(0,) * d: one}
    for s, power in enumerate(m):
        row = Y_rows[s]
        for _ in range(power):
            nxt: dict = {}
            for mm, c in acc.items():
                for t, yst in enumerate(row):
                    if not yst:
                        continue
                    key = mm[:t] + (mm[t] + 1,) + mm[t + 1:]
                    if key in nxt:
                        nxt[key] += c * yst
                    else:
                        nxt[key] = c * yst
            acc = nxt
    return acc


def _induced_rows(Y_rows, Yinv_rows, space: PolySpace, zero, one) -> list[list]:
    N = space.N
    cols: list[list] = []
    for b in space.basis:
        col = [zero] * N
        img = _monomial_image(Y_rows, b.m, zero, one)
        for mm, c in img.items():
            if not c:
                continue
            for r in range(1, space.d + 1):
                e = Yinv_rows[r - 1][b.j - 1]
                if e:
                    col[space.index_of(mm, r)] += c * e
        cols.append(col)
    return [[cols[c][r] for c in range(N)] for r in range(N)]


def induced_action(Y: RatMatrix, space: PolySpace) -> OperatorMatrix:
    """Exact matrix of q |-> Y^{-1} q(Y w) on the monomial basis."""
    if Y.shape != (space.d, space.d):
        raise ValueError(f"Y has shape {Y.shape}, expected ({space.d}, {space.d})")
    Yinv = Y.inverse()
    return RatMatrix(_induced_rows(Y.rows, Yinv.rows, space, ZERO, ONE))


def induced_action_float(Y_rows: Sequence[Sequence[float]], space: PolySpace) -> list[list[float]]:
    """Float twin of induced_action for numerically integrated group elements."""
    rows = [list(map(float, r)) for r in Y_rows]
    if len(rows) != space.d or any(len(r) != space.d for r in rows):
        raise ValueError(f"Y must be {space.d} x {space.d}")
    return _induced_rows(rows, _float_inverse(rows), space, 0.0, 1.0)


def _float_inverse(rows: list[list[float]]) -> list[list[float]]:
    n = len(rows)
    work = [list(r) + [1.0 if i == j else 0.0 for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(work[r][col]))
        if work[piv][col] == 0.0:
            raise ValueError("singular matrix in float inverse")
        work[col], work[piv] = work[piv], work[col]
        inv = 1.0 / work[col][col]
        work[col] = [e * inv for e in work[col]]
        prow = work[col]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [e - f * p for e, p in zip(work[r], prow)]
    return [row[n:] for row in work]
