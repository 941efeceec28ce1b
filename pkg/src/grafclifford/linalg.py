"""Exact rational linear algebra for the representation layer.

Matrices are immutable tuples of row tuples with int or Fraction
entries.  Every generator this package constructs is a signed
permutation matrix (one nonzero entry, +1 or -1, per row and column),
which makes blade products, vector actions, and intertwiner systems
cheap; dense fallbacks cover imported data that lacks the structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exterior import Rational, _norm

Matrix = tuple[tuple[Rational, ...], ...]
Vector = tuple[Rational, ...]


def as_matrix(rows) -> Matrix:
    return tuple(tuple(_norm(v) for v in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(n: int, m: int) -> Matrix:
    return tuple(tuple(0 for _ in range(m)) for _ in range(n))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(_norm(x + y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(_norm(x - y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in row) for row in a)


def mat_scale(a: Matrix, c: Rational) -> Matrix:
    return tuple(tuple(_norm(x * c) for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    return tuple(
        tuple(_norm(sum(x * y for x, y in zip(row, col))) for col in bt) for row in a
    )


def mat_vec(a: Matrix, v: Sequence[Rational]) -> Vector:
    return tuple(_norm(sum(x * y for x, y in zip(row, v))) for row in a)


def vec_dot(u: Sequence[Rational], v: Sequence[Rational]) -> Rational:
    return _norm(sum(x * y for x, y in zip(u, v)))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_trace(a: Matrix) -> Rational:
    return _norm(sum(a[i][i] for i in range(len(a))))


def is_zero_matrix(a: Matrix) -> bool:
    return all(all(v == 0 for v in row) for row in a)


def is_identity(a: Matrix) -> bool:
    return all(a[i][j] == (1 if i == j else 0) for i in range(len(a)) for j in range(len(a)))


def is_scalar_matrix(a: Matrix) -> Rational | None:
    """Return c if a == c*Id, else None."""
    n = len(a)
    c = a[0][0]
    for i in range(n):
        for j in range(n):
            if a[i][j] != (c if i == j else 0):
                return None
    return c


def mat_inverse(a: Matrix) -> Matrix:
    n = len(a)
    work = [
        [Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(a)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = 1 / work[col][col]
        work[col] = [v * inv for v in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return as_matrix(row[n:] for row in work)


# -- reduced row echelon and nullspace -------------------------------------------


def rref(rows: list[list[Rational]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place style reduced row echelon form; returns (matrix, pivot columns)."""
    mat = [[Fraction(v) for v in row] for row in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pivot = next((i for i in range(r, nrows) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return mat, pivots


def nullspace(rows: list[list[Rational]], ncols: int) -> list[Vector]:
    """Basis of the right nullspace of the given constraint rows."""
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    mat, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -mat[r][fc]
        basis.append(tuple(_norm(v) for v in vec))
    return basis


# -- signed permutation matrices --------------------------------------------------


@dataclass(frozen=True)
class SignedPerm:
    """Matrix with exactly one nonzero entry (+1/-1) per row and column.

    Row i holds its nonzero at column col[i] with value sign[i].
    """

    col: tuple[int, ...]
    sign: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.col)
        if sorted(self.col) != list(range(n)):
            raise ValueError("signed permutation columns must be a permutation")
        if any(s not in (1, -1) for s in self.sign):
            raise ValueError("signed permutation entries must be +1 or -1")

    @property
    def dim(self) -> int:
        return len(self.col)

    @classmethod
    def identity(cls, n: int) -> "SignedPerm":
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def from_dense(cls, a: Matrix) -> "SignedPerm | None":
        n = len(a)
        col = []
        sign = []
        for row in a:
            hits = [(j, v) for j, v in enumerate(row) if v != 0]
            if len(hits) != 1 or hits[0][1] not in (1, -1):
                return None
            col.append(hits[0][0])
            sign.append(1 if hits[0][1] == 1 else -1)
        if sorted(col) != list(range(n)):
            return None
        return cls(tuple(col), tuple(sign))

    def to_dense(self) -> Matrix:
        n = self.dim
        return tuple(
            tuple(self.sign[i] if j == self.col[i] else 0 for j in range(n)) for i in range(n)
        )

    def apply(self, v: Sequence[Rational]) -> Vector:
        return tuple(s * v[c] for s, c in zip(self.sign, self.col))

    def compose(self, other: "SignedPerm") -> "SignedPerm":
        """Matrix product self @ other."""
        col = tuple(other.col[c] for c in self.col)
        sign = tuple(s * other.sign[c] for s, c in zip(self.sign, self.col))
        return SignedPerm(col, sign)

    def transpose(self) -> "SignedPerm":
        n = self.dim
        col = [0] * n
        sign = [1] * n
        for i in range(n):
            col[self.col[i]] = i
            sign[self.col[i]] = self.sign[i]
        return SignedPerm(tuple(col), tuple(sign))

    def neg(self) -> "SignedPerm":
        return SignedPerm(self.col, tuple(-s for s in self.sign))

    def scalar_value(self) -> int | None:
        """Return c if this equals c*Id with c = +1/-1, else None."""
        if any(c != i for i, c in enumerate(self.col)):
            return None
        s0 = self.sign[0]
        if any(s != s0 for s in self.sign):
            return None
        return s0


# -- intertwiner systems -----------------------------------------------------------


class _SignedUnionFind:
    """Union-find over matrix entries with a relative sign to the root.

    Tracks equalities val[u] = s * val[parent[u]]; a sign contradiction
    forces the whole component to zero.
    """

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.sign = [1] * n
        self.rank = [0] * n
        self.dead = [False] * n

    def find(self, u: int) -> tuple[int, int]:
        """Return (root, s) with val[u] = s * val[root], compressing the path."""
        path = []
        while self.parent[u] != u:
            path.append(u)
            u = self.parent[u]
        # walk from the node nearest the root outward, accumulating signs
        cum = 1
        for node in reversed(path):
            cum = cum * self.sign[node]
            self.parent[node] = u
            self.sign[node] = cum
        return (u, cum) if path else (u, 1)

    def union(self, u: int, v: int, s: int) -> None:
        """Record val[u] = s * val[v]."""
        ru, su = self.find(u)
        rv, sv = self.find(v)
        if ru == rv:
            if su != s * sv:
                self.dead[ru] = True
            return
        # val[ru] = su*s*sv * val[rv]  (signs are their own inverses)
        rel = su * s * sv
        if self.rank[ru] > self.rank[rv]:
            ru, rv = rv, ru
        self.parent[ru] = rv
        self.sign[ru] = rel
        self.dead[rv] = self.dead[rv] or self.dead[ru]
        if self.rank[ru] == self.rank[rv]:
            self.rank[rv] += 1


def solve_twisted_system(
    d: int, constraints: list[tuple[SignedPerm, SignedPerm, int]]
) -> list[Matrix]:
    """Basis of {M : M S = eps T M} for signed-permutation S, T.

    Each constraint links entry (a, b) to (colT[a], colS[b]) with a sign,
    so the solution space decomposes into orbit components; components
    with a sign contradiction vanish, the rest contribute one basis
    matrix each.
    """
    uf = _SignedUnionFind(d * d)
    for S, T, eps in constraints:
        if eps not in (1, -1):
            raise ValueError("twist sign must be +1 or -1")
        for a in range(d):
            ta = T.col[a]
            st_a = T.sign[a]
            for b in range(d):
                # (M S)[a][col_S[b]] = sign_S[b] M[a][b]
                # (T M)[a][col_S[b]] = sign_T[a] M[col_T[a]][col_S[b]]
                # => M[a][b] = eps sign_T[a] sign_S[b] M[col_T[a]][col_S[b]]
                u = a * d + b
                v = ta * d + S.col[b]
                uf.union(u, v, eps * st_a * S.sign[b])
    comps: dict[int, list[tuple[int, int]]] = {}
    for u in range(d * d):
        root, s = uf.find(u)
        if uf.dead[root]:
            continue
        comps.setdefault(root, []).append((u, s))
    basis = []
    for root in sorted(comps):
        rows = [[0] * d for _ in range(d)]
        for u, s in comps[root]:
            rows[u // d][u % d] = s
        basis.append(as_matrix(rows))
    return basis


def solve_twisted_system_dense(
    d: int, constraints: list[tuple[Matrix, Matrix, int]]
) -> list[Matrix]:
    """Dense fallback: nullspace of the stacked linear system M S = eps T M."""
    rows: list[list[Rational]] = []
    for S, T, eps in constraints:
        for a in range(d):
            for b in range(d):
                row = [0] * (d * d)
                for k in range(d):
                    row[a * d + k] += S[k][b]
                    row[k * d + b] -= eps * T[a][k]
                if any(row):
                    rows.append(row)
    vecs = nullspace(rows, d * d)
    return [as_matrix([vec[i * d : (i + 1) * d] for i in range(d)]) for vec in vecs]


# -- congruence reduction of symmetric matrices ------------------------------------


def rational_sqrt(x: Rational) -> Rational | None:
    """Exact square root of a nonnegative rational, or None."""
    f = Fraction(x)
    if f < 0:
        return None
    num = _isqrt_exact(f.numerator)
    den = _isqrt_exact(f.denominator)
    if num is None or den is None:
        return None
    return _norm(Fraction(num, den))


def _isqrt_exact(n: int) -> int | None:
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


def orthonormal_congruence(gram: Matrix) -> tuple[Matrix, tuple[int, ...]] | None:
    """Find rational C and unit signs eps with gram = C^T diag(eps) C.

    Uses symmetric pivoting; pivots whose absolute value is not a
    rational square make the reduction fail (None), in which case the
    caller refuses the metric.
    """
    n = len(gram)
    a = [[Fraction(v) for v in row] for row in gram]
    # E collects the row operations: starts as identity, ends with E gram E^T diagonal.
    e = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
            if j is None:
                return None
            for c in range(n):
                a[k][c] += a[j][c]
            for r in range(n):
                a[r][k] += a[r][j]
            for c in range(n):
                e[k][c] += e[j][c]
        piv = a[k][k]
        for r in range(k + 1, n):
            if a[r][k]:
                f = a[r][k] / piv
                for c in range(n):
                    a[r][c] -= f * a[k][c]
                for c in range(n):
                    a[c][r] -= f * a[c][k]
                for c in range(n):
                    e[r][c] -= f * e[k][c]
    signs = []
    scale = []
    for k in range(n):
        piv = a[k][k]
        if piv == 0:
            return None
        root = rational_sqrt(abs(piv))
        if root is None:
            return None
        signs.append(1 if piv > 0 else -1)
        scale.append(root)
    # E gram E^T = diag(s_k * scale_k^2); with F = diag(1/scale) E:
    # F gram F^T = diag(signs), i.e. gram = F^{-1} diag(signs) F^{-T}.
    f_rows = [[e[k][c] / scale[k] for c in range(n)] for k in range(n)]
    f_inv = mat_inverse(as_matrix(f_rows))
    c_mat = transpose(f_inv)
    return c_mat, tuple(signs)
