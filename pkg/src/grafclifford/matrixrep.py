"""Exact real matrix representations of the form algebra.

For each signature the algebra is, up to isomorphism, a matrix algebra
over R, C, or H (or a double of one) determined by (p - q) mod 8.  The
generators built here are real signed-permutation matrices produced by
recursion from rank-one and rank-two seeds:

* quaternion and octonion left-multiplication tables give the definite
  negative signatures up to rank seven, with explicit doublings for
  ranks eight and nine;
* a two-step positive extension turns a definite negative algebra into
  the definite positive one two ranks higher;
* a mixed-pair extension adds one plus and one minus direction at once.

Every constructed representation is verified on the spot: generator
relations, real dimension, commutant dimension, and the scalar value of
the volume element where one exists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, StructureError, UnsupportedSignature
from .exterior import (
    Form,
    Metric,
    Signature,
    rational_from_str,
    rational_to_str,
)
from .linalg import (
    Matrix,
    SignedPerm,
    as_matrix,
    identity,
    is_scalar_matrix,
    mat_add,
    mat_mul,
    mat_neg,
    mat_scale,
    mat_sub,
    mat_trace,
    mat_vec,
    rational_sqrt,
    solve_twisted_system,
    solve_twisted_system_dense,
    zeros,
)

CASE_NORMAL = "normal"
CASE_ALMOST_COMPLEX = "almost_complex"
CASE_QUATERNIONIC = "quaternionic"


@dataclass(frozen=True)
class AbsType:
    """Matrix-algebra type of a signature: division ring, size, dimensions."""

    pq_class: int
    field: str
    is_double: bool
    matrix_size: int
    rep_dim: int
    commutant_dim: int
    case: str

    @property
    def k_const(self) -> int:
        """Normalization constant for covariant expansions."""
        return self.matrix_size


def abs_type(signature: Signature) -> AbsType:
    n = signature.n
    cls = signature.pq_class()
    half = n // 2
    if cls in (0, 1, 2):
        field, csize = "R", 1
        size = 1 << half
        d = size
    elif cls in (3, 7):
        field, csize = "C", 2
        size = 1 << half
        d = 2 * size
    else:
        field, csize = "H", 4
        size = 1 << (half - 1) if half >= 1 else 0
        d = 4 * size
    if size < 1:
        raise UnsupportedSignature(f"no matrix model for signature ({signature.p},{signature.q})")
    is_double = cls in (1, 5)
    case = (
        CASE_NORMAL
        if cls in (0, 1, 2)
        else CASE_ALMOST_COMPLEX
        if cls in (3, 7)
        else CASE_QUATERNIONIC
    )
    return AbsType(cls, field, is_double, size, d, csize, case)


# -- Cayley-Dickson left multiplications ------------------------------------------


def _cd_mult(level: int, x: int, y: int) -> tuple[int, int]:
    """Sign and basis index of e_x e_y in the 2^level dimensional algebra."""
    if level == 0:
        return 1, 0
    h = 1 << (level - 1)
    if x < h and y < h:
        return _cd_mult(level - 1, x, y)
    if x < h:
        # (a,0)(0,d) = (0, d a)
        s, z = _cd_mult(level - 1, y - h, x)
        return s, z + h
    if y < h:
        # (0,b)(c,0) = (0, b conj(c))
        s, z = _cd_mult(level - 1, x - h, y)
        return (s, z + h) if y == 0 else (-s, z + h)
    # (0,b)(0,d) = (-conj(d) b, 0)
    b, dd = x - h, y - h
    s, z = _cd_mult(level - 1, dd, b)
    return (-s, z) if dd == 0 else (s, z)


def _cd_left_mult(level: int, x: int) -> SignedPerm:
    """Left multiplication by basis unit e_x as a signed permutation."""
    dim = 1 << level
    col = [0] * dim
    sign = [1] * dim
    for y in range(dim):
        s, z = _cd_mult(level, x, y)
        col[z] = y
        sign[z] = s
    return SignedPerm(tuple(col), tuple(sign))


# -- seed representations and extension moves --------------------------------------


def _sp_block_diag(g: SignedPerm, negate_second: bool) -> SignedPerm:
    d = g.dim
    col = list(g.col) + [c + d for c in g.col]
    sign = list(g.sign) + [(-s if negate_second else s) for s in g.sign]
    return SignedPerm(tuple(col), tuple(sign))


def _sp_off_diag(g: SignedPerm, negate_upper: bool) -> SignedPerm:
    """Block matrix [[0, +-g], [g, 0]]."""
    d = g.dim
    col = [c + d for c in g.col] + list(g.col)
    sign = [(-s if negate_upper else s) for s in g.sign] + list(g.sign)
    return SignedPerm(tuple(col), tuple(sign))


def _sp_swap(d: int, negate_lower: bool) -> SignedPerm:
    """Block matrix [[0, I], [+-I, 0]]."""
    col = [i + d for i in range(d)] + list(range(d))
    sign = [1] * d + ([-1] * d if negate_lower else [1] * d)
    return SignedPerm(tuple(col), tuple(sign))


def _mixed_pair_extend(gens: list[SignedPerm], d: int) -> tuple[list[SignedPerm], SignedPerm, SignedPerm]:
    """Double the space, adding one positive and one negative direction."""
    doubled = [_sp_block_diag(g, negate_second=True) for g in gens]
    e_pos = _sp_swap(d, negate_lower=False)
    e_neg = _sp_swap(d, negate_lower=True)
    return doubled, e_pos, e_neg


def _positive_pair_extend(gens: list[SignedPerm], d: int) -> list[SignedPerm]:
    """From k negative-square generators build k+2 positive-square ones."""
    e1 = _sp_swap(d, negate_lower=False)  # sigma_x tensor I
    # sigma_z tensor I
    e2 = SignedPerm(tuple(range(2 * d)), tuple([1] * d + [-1] * d))
    rotated = [_sp_off_diag(g, negate_upper=True) for g in gens]
    return [e1, e2] + rotated


def _definite_negative_gens(q: int) -> list[SignedPerm]:
    if q == 0:
        return []
    if q == 1:
        return [_cd_left_mult(1, 1)]
    if q <= 3:
        return [_cd_left_mult(2, i) for i in range(1, q + 1)]
    if q <= 7:
        return [_cd_left_mult(3, i) for i in range(1, q + 1)]
    if q == 8:
        octs = [_cd_left_mult(3, i) for i in range(1, 8)]
        gens = [_sp_off_diag(g, negate_upper=False) for g in octs]
        gens.append(_sp_swap(8, negate_lower=True))
        return gens
    if q == 9:
        pos = _definite_positive_gens(9)
        return [_sp_off_diag(g, negate_upper=True) for g in pos]
    raise UnsupportedSignature(f"no seed construction for signature (0,{q})")


def _definite_positive_gens(p: int) -> list[SignedPerm]:
    if p == 0:
        return []
    if p == 1:
        return [SignedPerm((0,), (1,))]
    if p == 2:
        return [_sp_swap(1, negate_lower=False), SignedPerm((0, 1), (1, -1))]
    inner = _definite_negative_gens(p - 2)
    return _positive_pair_extend(inner, inner[0].dim)


def _build_sp_generators(p: int, q: int) -> list[SignedPerm]:
    if p >= 1 and q >= 1:
        inner = _build_sp_generators(p - 1, q - 1)
        if inner:
            d = inner[0].dim
        else:
            d = abs_type(Signature(p - 1, q - 1)).rep_dim
        doubled, e_pos, e_neg = _mixed_pair_extend(inner, d)
        return doubled[: p - 1] + [e_pos] + doubled[p - 1 :] + [e_neg]
    if q == 0:
        return _definite_positive_gens(p)
    return _definite_negative_gens(q)


# -- representation object ----------------------------------------------------------


class Rep:
    """Verified matrix representation of the form algebra for one signature."""

    __slots__ = ("signature", "metric", "volume_sign", "generators", "abs", "_sp", "_cache_sp", "_cache_dense")

    def __init__(
        self,
        signature: Signature,
        metric: Metric,
        volume_sign: int,
        generators: tuple[Matrix, ...],
        verified: bool = False,
    ):
        self.signature = signature
        self.metric = metric
        self.volume_sign = volume_sign
        self.generators = tuple(as_matrix(g) for g in generators)
        self.abs = abs_type(signature)
        sp = [SignedPerm.from_dense(g) for g in self.generators]
        self._sp = sp if all(s is not None for s in sp) else None
        self._cache_sp: dict[int, SignedPerm] = {}
        self._cache_dense: dict[int, Matrix] = {}
        if not verified:
            verify_generators(self.generators, metric)

    @property
    def d(self) -> int:
        return self.abs.rep_dim

    @property
    def is_signed_perm(self) -> bool:
        return self._sp is not None

    # -- blade action ---------------------------------------------------------

    @property
    def _fast(self) -> list[SignedPerm] | None:
        # the lowest-index peel below is only a blade product when distinct
        # frame directions do not contract, i.e. for diagonal metrics
        return self._sp if self._sp is not None and self.metric.is_diagonal else None

    def blade_sp(self, mask: int) -> SignedPerm:
        sp = self._fast
        if sp is None:
            raise StructureError("no signed-permutation blade action for this representation")
        cached = self._cache_sp.get(mask)
        if cached is not None:
            return cached
        if mask == 0:
            out = SignedPerm.identity(self.d)
        else:
            low = mask & (-mask)
            rest = self.blade_sp(mask ^ low)
            out = sp[low.bit_length() - 1].compose(rest)
        self._cache_sp[mask] = out
        return out

    def blade_matrix(self, mask: int) -> Matrix:
        """Dense matrix of the canonical blade with the given index mask."""
        if self._fast is not None:
            return self.blade_sp(mask).to_dense()
        cached = self._cache_dense.get(mask)
        if cached is None:
            if mask == 0:
                cached = identity(self.d)
            else:
                low = mask & (-mask)
                rest = mask ^ low
                i = low.bit_length()
                cached = mat_mul(self.generators[i - 1], self.blade_matrix(rest))
                if not self.metric.is_diagonal:
                    # peel is a product of one-forms; subtract contractions
                    # of direction i against the remaining indices
                    pos = 0
                    r = rest
                    while r:
                        lb = r & (-r)
                        r ^= lb
                        pos += 1
                        gib = self.metric.entry(i, lb.bit_length())
                        if gib:
                            term = self.blade_matrix(rest ^ lb)
                            scale = gib if pos % 2 == 1 else -gib
                            cached = mat_sub(cached, mat_scale(term, scale))
            self._cache_dense[mask] = cached
        return cached

    def apply_blade(self, mask: int, vec):
        if self._fast is not None:
            return self.blade_sp(mask).apply(vec)
        return mat_vec(self.blade_matrix(mask), vec)

    def lambda_form(self, f: Form) -> Matrix:
        """Image of a form under the representation morphism."""
        if f.signature != self.signature:
            raise DimensionMismatch("form signature does not match the representation")
        d = self.d
        rows = [[0] * d for _ in range(d)]
        for mask, c in f.mask_items():
            if self._fast is not None:
                sp = self.blade_sp(mask)
                for i in range(d):
                    rows[i][sp.col[i]] += c * sp.sign[i]
            else:
                m = self.blade_matrix(mask)
                for i in range(d):
                    row = m[i]
                    out = rows[i]
                    for j in range(d):
                        if row[j]:
                            out[j] += c * row[j]
        return as_matrix(rows)

    def volume_matrix(self) -> Matrix:
        return self.blade_matrix((1 << self.signature.n) - 1)

    def to_json_obj(self) -> dict:
        return {
            "signature": [self.signature.p, self.signature.q],
            "volume_sign": self.volume_sign,
            "metric": self.metric.to_json_obj(),
            "generators": [
                [[rational_to_str(v) for v in row] for row in g] for g in self.generators
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))


def lambda_form(rep: Rep, f: Form) -> Matrix:
    return rep.lambda_form(f)


def verify_generators(generators: tuple[Matrix, ...], metric: Metric) -> None:
    """Check the generator relations against the metric, raising on failure."""
    n = metric.signature.n
    if len(generators) != n:
        raise StructureError(f"expected {n} generators, got {len(generators)}")
    if n == 0:
        return
    d = len(generators[0])
    for g in generators:
        if len(g) != d or any(len(row) != d for row in g):
            raise StructureError("generators must be square matrices of equal size")
    for i in range(n):
        gi = generators[i]
        for j in range(i, n):
            gj = generators[j]
            anti = mat_add(mat_mul(gi, gj), mat_mul(gj, gi))
            target = mat_scale(identity(d), 2 * metric.entry(i + 1, j + 1))
            if anti != target:
                raise StructureError(f"generator relation failed for indices ({i + 1},{j + 1})")


def commutant_basis(rep: Rep) -> list[Matrix]:
    """Basis of matrices commuting with every generator."""
    if rep.signature.n == 0:
        return [identity(rep.d)]
    if rep.is_signed_perm:
        cons = [(sp, sp, 1) for sp in rep._sp]
        return solve_twisted_system(rep.d, cons)
    cons = [(g, g, 1) for g in rep.generators]
    return solve_twisted_system_dense(rep.d, cons)


def build_rep(signature: Signature, volume_sign: int = 1, metric: Metric | None = None) -> Rep:
    """Construct and verify a representation for the signature.

    For odd dimensions where the volume element acts as a scalar the
    sign of that scalar is normalized to `volume_sign` by negating all
    generators when needed.  Non-orthonormal metrics are handled by a
    rational congruence onto an orthonormal frame when one exists.
    """
    if volume_sign not in (1, -1):
        raise ValueError("volume_sign must be +1 or -1")
    metric = metric if metric is not None else Metric.standard(signature)
    if metric.signature != signature:
        raise DimensionMismatch("metric signature mismatch")
    at = abs_type(signature)
    if not metric.is_orthonormal:
        return _build_rep_congruence(signature, volume_sign, metric)
    sp_gens = _build_sp_generators(signature.p, signature.q)
    if sp_gens and sp_gens[0].dim != at.rep_dim:
        raise StructureError(
            f"construction produced dimension {sp_gens[0].dim}, expected {at.rep_dim}"
        )
    if signature.n % 2 == 1:
        sv = _volume_scalar_sp(sp_gens)
        if at.is_double:
            if sv is None:
                raise StructureError("volume element is not scalar in a double algebra")
            if sv != volume_sign:
                sp_gens = [g.neg() for g in sp_gens]
        elif sv is not None:
            raise StructureError("volume element unexpectedly scalar")
    rep = Rep(
        signature,
        metric,
        volume_sign,
        tuple(g.to_dense() for g in sp_gens),
    )
    _verify_commutant_dim(rep)
    return rep


def _volume_scalar_sp(gens: list[SignedPerm]) -> int | None:
    if not gens:
        return 1
    acc = gens[0]
    for g in gens[1:]:
        acc = acc.compose(g)
    return acc.scalar_value()


def _verify_commutant_dim(rep: Rep) -> None:
    want = rep.abs.commutant_dim
    got = len(commutant_basis(rep))
    if got != want:
        raise StructureError(f"commutant dimension {got}, expected {want}")


def _build_rep_congruence(signature: Signature, volume_sign: int, metric: Metric) -> Rep:
    from .linalg import orthonormal_congruence

    reduction = orthonormal_congruence(metric.gram)
    if reduction is None:
        raise UnsupportedSignature(
            "metric admits no rational congruence onto an orthonormal frame"
        )
    c_mat, eps = reduction
    p = sum(1 for s in eps if s == 1)
    q = len(eps) - p
    base = _build_sp_generators(p, q)
    # reorder the sorted generators onto the sign pattern eps
    pos_iter = iter(range(0, p))
    neg_iter = iter(range(p, p + q))
    ordered = []
    for s in eps:
        ordered.append(base[next(pos_iter)] if s == 1 else base[next(neg_iter)])
    d = ordered[0].dim if ordered else abs_type(signature).rep_dim
    dense = [g.to_dense() for g in ordered]
    n = signature.n
    gens = []
    for i in range(n):
        acc = zeros(d, d)
        for a in range(n):
            coeff = c_mat[a][i]
            if coeff:
                acc = mat_add(acc, mat_scale(dense[a], coeff))
        gens.append(acc)
    rep = Rep(signature, metric, volume_sign, tuple(gens))
    if n % 2 == 1 and abs_type(signature).is_double:
        # the top blade scalar carries the frame volume; only its sign is
        # normalized, the magnitude is the congruence determinant
        sv = is_scalar_matrix(rep.volume_matrix())
        if sv is None or sv == 0:
            raise StructureError("volume element is not scalar in a double algebra")
        if (sv > 0 and volume_sign < 0) or (sv < 0 and volume_sign > 0):
            # the volume blade is odd, so negating every generator flips it
            rep = Rep(signature, metric, volume_sign, tuple(mat_neg(g) for g in gens))
    _verify_commutant_dim(rep)
    return rep


def rep_from_json_obj(obj: dict) -> Rep:
    try:
        p, q = (int(v) for v in obj["signature"])
        volume_sign = int(obj["volume_sign"])
        gen_rows = obj["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureError(f"bad representation JSON: {exc}") from exc
    signature = Signature(p, q)
    metric = Metric.from_json_obj(obj.get("metric", {"p": p, "q": q}))
    gens = tuple(
        as_matrix(
            [
                [rational_from_str(v) if isinstance(v, str) else v for v in row]
                for row in g
            ]
        )
        for g in gen_rows
    )
    rep = Rep(signature, metric, volume_sign, gens)
    if signature.n % 2 == 1 and rep.abs.is_double:
        sv = is_scalar_matrix(rep.volume_matrix())
        if sv != volume_sign:
            raise StructureError("volume scalar does not match the declared volume sign")
    return rep


def rep_from_json(text: str) -> Rep:
    return rep_from_json_obj(json.loads(text))


# -- main subalgebra structures ------------------------------------------------------


@dataclass(frozen=True)
class MainSubalgebra:
    """Commutant structure of a representation: the case decides the fields.

    normal: commutant is scalars; J, D, H are all None.
    almost_complex: J realizes the action of the volume element
    (square -Id) and D is a real-linear map anticommuting with J and
    with every generator, normalized so D^2 = +-Id per the mod-8 class.
    quaternionic: H is a triple of commuting-with-everything complex
    structures multiplying like quaternion units.
    """

    case: str
    J: Matrix | None = None
    D: Matrix | None = None
    H: tuple[Matrix, Matrix, Matrix] | None = None

    @property
    def d_square_sign(self) -> int | None:
        if self.D is None:
            return None
        return 1 if is_scalar_matrix(mat_mul(self.D, self.D)) == 1 else -1


def d_square_target(signature: Signature) -> int:
    """Required sign of D^2 in the almost-complex case.

    The exponent (p - q + 1)/4 is an integer of class-invariant parity
    here: even when p - q = 7 mod 8, odd when p - q = 3 mod 8.
    """
    cls = signature.pq_class()
    if cls == 7:
        return 1
    if cls == 3:
        return -1
    raise StructureError("D exists only in the almost-complex case")


def _unit_scale_search(basis: list[Matrix], target: int, span: int = 3):
    """Search small rational combinations X of basis with X^2 = target*Id."""
    d = len(basis[0])
    combos = []
    if len(basis) == 1:
        combos = [(1,)]
    else:
        combos = [
            (x, y)
            for x in range(-span, span + 1)
            for y in range(-span, span + 1)
            if x or y
        ]
    for coeffs in combos:
        x = zeros(d, d)
        for c, b in zip(coeffs, basis):
            if c:
                x = mat_add(x, mat_scale(b, c))
        sq = is_scalar_matrix(mat_mul(x, x))
        if sq is None or sq == 0:
            continue
        if (sq > 0) != (target > 0):
            continue
        root = rational_sqrt(abs(sq))
        if root is None:
            continue
        return mat_scale(x, Fraction(1, 1) / root)
    return None


def build_structure(rep: Rep) -> MainSubalgebra:
    """Construct the case-specific commutant structure maps."""
    at = rep.abs
    basis = commutant_basis(rep)
    if len(basis) != at.commutant_dim:
        raise StructureError(f"commutant dimension {len(basis)}, expected {at.commutant_dim}")
    if at.case == CASE_NORMAL:
        return MainSubalgebra(CASE_NORMAL)
    if at.case == CASE_ALMOST_COMPLEX:
        jmat = rep.volume_matrix()
        if is_scalar_matrix(mat_mul(jmat, jmat)) != -1:
            raise StructureError("volume square is not -Id in the almost-complex case")
        dmat = _solve_d(rep, jmat)
        return MainSubalgebra(CASE_ALMOST_COMPLEX, J=jmat, D=dmat)
    hs = _solve_quaternion_units(rep, basis)
    return MainSubalgebra(CASE_QUATERNIONIC, H=hs)


def _solve_d(rep: Rep, jmat: Matrix) -> Matrix:
    target = d_square_target(rep.signature)
    if rep.is_signed_perm:
        jsp = SignedPerm.from_dense(jmat)
        cons = [(sp, sp.neg(), 1) for sp in rep._sp]
        cons.append((jsp, jsp.neg(), 1))
        basis = solve_twisted_system(rep.d, cons)
    else:
        cons = [(g, mat_neg(g), 1) for g in rep.generators]
        cons.append((jmat, mat_neg(jmat), 1))
        basis = solve_twisted_system_dense(rep.d, cons)
    if len(basis) != 2:
        raise StructureError(f"D intertwiner space has dimension {len(basis)}, expected 2")
    dmat = _unit_scale_search(basis, target)
    if dmat is None:
        raise StructureError("no rational scaling achieves the required D square")
    return dmat


def _pure_commutant_basis(basis: list[Matrix], d: int) -> list[Matrix]:
    """Trace-free part of the commutant, as an independent spanning set."""
    from .linalg import rref

    rows = []
    mats = []
    for b in basis:
        tr = mat_trace(b)
        pure = mat_sub(b, mat_scale(identity(d), Fraction(tr, d))) if tr else b
        if any(any(v for v in row) for row in pure):
            rows.append([pure[i][j] for i in range(d) for j in range(d)])
            mats.append(pure)
    reduced, pivots = rref(rows)
    out = []
    for r in reduced[: len(pivots)]:
        out.append(as_matrix([[r[i * d + j] for j in range(d)] for i in range(d)]))
    return out


def _normalize_anticomplex(x: Matrix) -> Matrix | None:
    """Scale x so its square is -Id, if a rational scale exists."""
    sq = is_scalar_matrix(mat_mul(x, x))
    if sq is None or sq >= 0:
        return None
    root = rational_sqrt(-sq)
    if root is None:
        return None
    return mat_scale(x, Fraction(1, 1) / root)


def _solve_quaternion_units(rep: Rep, basis: list[Matrix]) -> tuple[Matrix, Matrix, Matrix]:
    d = rep.d
    pure = _pure_commutant_basis(basis, d)
    if len(pure) != 3:
        raise StructureError(f"pure commutant has dimension {len(pure)}, expected 3")
    h1 = None
    for cand in pure:
        h1 = _normalize_anticomplex(cand)
        if h1 is not None:
            break
    if h1 is None:
        for x in range(-3, 4):
            for y in range(-3, 4):
                for z in range(-3, 4):
                    if not (x or y or z):
                        continue
                    cand = mat_add(
                        mat_add(mat_scale(pure[0], x), mat_scale(pure[1], y)),
                        mat_scale(pure[2], z),
                    )
                    h1 = _normalize_anticomplex(cand)
                    if h1 is not None:
                        break
                if h1 is not None:
                    break
            if h1 is not None:
                break
    if h1 is None:
        raise StructureError("no rational scaling yields a commutant complex structure")
    h2 = None
    for cand in pure:
        # remove the h1 component: {X, h1} = m Id fixes the coefficient
        anti = mat_add(mat_mul(cand, h1), mat_mul(h1, cand))
        m = is_scalar_matrix(anti)
        if m is None:
            raise StructureError("commutant anticommutator is not scalar")
        ortho = mat_add(cand, mat_scale(h1, Fraction(m, 2)))
        h2 = _normalize_anticomplex(ortho)
        if h2 is not None:
            break
    if h2 is None:
        raise StructureError("no second quaternion unit found in the commutant")
    h3 = mat_mul(h1, h2)
    _verify_quaternion_units(d, (h1, h2, h3))
    return (h1, h2, h3)


def _verify_quaternion_units(d: int, hs: tuple[Matrix, Matrix, Matrix]) -> None:
    eps = {
        (0, 1): (1, 2),
        (1, 0): (-1, 2),
        (1, 2): (1, 0),
        (2, 1): (-1, 0),
        (2, 0): (1, 1),
        (0, 2): (-1, 1),
    }
    ident = identity(d)
    for j in range(3):
        for k in range(3):
            prod = mat_mul(hs[j], hs[k])
            if j == k:
                want = mat_neg(ident)
            else:
                s, l = eps[(j, k)]
                want = mat_scale(hs[l], s)
            if prod != want:
                raise StructureError(f"quaternion unit relation failed at ({j + 1},{k + 1})")
