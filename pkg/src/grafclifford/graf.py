"""Clifford product on exterior forms and the induced volume operators.

The product expands a graded left factor against the right factor
through metric-contracted wedges:

    product(f, g) = sum_k (1/k!) (-1)^(k(m-k) + floor(k/2)) cw_k(f, g)

for a grade-m left component, extended bilinearly.  On covectors this
reproduces the Clifford relation e^i * e^j + e^j * e^i = 2 g^ij.

For diagonal metrics the k-sum collapses per blade pair: only the term
contracting the full shared index set survives (every smaller
contraction leaves a repeated index in the wedge).  The diagonal kernel
used here evaluates that single term from permutation parity and the
shared metric factors; the generic graded expansion above is kept for
non-diagonal metrics and mirrored by an independent recursion in the
test suite.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch
from .exterior import (
    Form,
    Metric,
    Rational,
    Signature,
    _factorial,
    contracted_wedge,
    grade_project,
    merge_sign,
)


class TruncationRegimeWarning(UserWarning):
    """Truncated products are only an isomorphic model in certain signatures."""


def _resolve_metric(f: Form, metric: Metric | None) -> Metric:
    m = metric if metric is not None else Metric.standard(f.signature)
    if m.signature != f.signature:
        raise DimensionMismatch("metric signature does not match the forms")
    return m


# -- diagonal fast kernel --------------------------------------------------------


class _DiagKernel:
    """Per-metric table of blade-pair product factors, built lazily by row."""

    __slots__ = ("n", "diag", "_rows")

    def __init__(self, n: int, diag: tuple[Rational, ...]):
        self.n = n
        self.diag = diag
        self._rows: dict[int, list] = {}

    def row(self, ma: int):
        cached = self._rows.get(ma)
        if cached is not None:
            return cached
        n = self.n
        size = 1 << n
        # Multiplicative build over the bits of mb: adding index y to mb
        # multiplies by the parity of a-indices above y, and by g^yy when
        # y is shared.
        factors = []
        for y in range(n):
            above = ma >> (y + 1)
            s = -1 if above.bit_count() & 1 else 1
            if ma & (1 << y):
                s = s * self.diag[y]
            factors.append(s)
        row = [0] * size
        row[0] = 1
        for mb in range(1, size):
            low = mb & (-mb)
            row[mb] = row[mb ^ low] * factors[low.bit_length() - 1]
        self._rows[ma] = row
        return row


_KERNELS: dict[tuple[int, tuple], _DiagKernel] = {}


def _kernel_for(metric: Metric) -> _DiagKernel:
    key = (metric.signature.n, metric.diagonal)
    kern = _KERNELS.get(key)
    if kern is None:
        kern = _KERNELS[key] = _DiagKernel(metric.signature.n, metric.diagonal)
    return kern


def _product_terms_diag(ta, tb, kern: _DiagKernel) -> dict[int, Rational]:
    acc: dict[int, Rational] = {}
    row_of = kern.row
    for ma, ca in ta:
        row = row_of(ma)
        for mb, cb in tb:
            key = ma ^ mb
            acc[key] = acc.get(key, 0) + ca * cb * row[mb]
    return {m: c for m, c in acc.items() if c}


def _graf_sign(k: int, m: int) -> int:
    return -1 if (k * (m - k) + k // 2) & 1 else 1


def _product_general(f: Form, g: Form, metric: Metric) -> Form:
    """Graded expansion used for non-diagonal metrics."""
    out = Form.zero(f.signature)
    for m in sorted(f.grades()):
        fm = grade_project(f, m)
        for k in range(m + 1):
            term = contracted_wedge(fm, g, k, metric)
            if term.is_zero():
                continue
            out = out + term.scale(_frac(_graf_sign(k, m), _factorial(k)))
    return out


def _frac(num: int, den: int):

    if den == 1:
        return num
    return Fraction(num, den)


def graf_product(f: Form, g: Form, metric: Metric | None = None) -> Form:
    """Associative Clifford product of two forms.

    On covectors: graf_product(e^i, e^j) = e^i ^ e^j + g^ij.
    """
    f._check_same(g)
    metric = _resolve_metric(f, metric)
    if metric.is_diagonal:
        terms = _product_terms_diag(
            list(f.mask_items()), list(g.mask_items()), _kernel_for(metric)
        )
        return Form.from_mask_dict(f.signature, terms)
    return _product_general(f, g, metric)


def graf_product_reversed_check(f: Form, g: Form, metric: Metric | None = None) -> bool:
    """Check the reversed-order expansion against the direct product.

    For homogeneous f (grade m) and g (grade r) with m <= r, the product
    g * f admits an expansion over contractions of (f, g) with a global
    (-1)^(mr) and per-term sign (-1)^(k(m-k+1) + floor(k/2)).
    """
    f._check_same(g)
    if not (f.is_homogeneous() and g.is_homogeneous()):
        raise ValueError("reversed-order check requires homogeneous inputs")
    metric = _resolve_metric(f, metric)
    if f.is_zero() or g.is_zero():
        return True
    m = next(iter(f.grades()), 0)
    r = next(iter(g.grades()), 0)
    if m > r:
        raise ValueError(f"reversed-order check requires left grade <= right grade, got {m} > {r}")
    rhs = Form.zero(f.signature)
    for k in range(m + 1):
        term = contracted_wedge(f, g, k, metric)
        if term.is_zero():
            continue
        sign = -1 if (k * (m - k + 1) + k // 2) & 1 else 1
        rhs = rhs + term.scale(_frac(sign, _factorial(k)))
    if (m * r) & 1:
        rhs = -rhs
    return graf_product(g, f, metric) == rhs


# -- volume form and Hodge-type operators ----------------------------------------


def volume_square_sign(p: int, q: int) -> int:
    """Square of the volume form under the product: +1 iff p-q = 0,1,4,5 mod 8."""
    return 1 if (p - q) % 8 in (0, 1, 4, 5) else -1


@dataclass(frozen=True)
class VolumeForm:
    """Unit-square top form together with its product square (+1 or -1)."""

    form: Form
    vsquare: Rational

    @classmethod
    def for_metric(cls, metric: Metric) -> "VolumeForm":
        from .linalg import rational_sqrt

        sig = metric.signature
        v = Form.blade(sig, (1 << sig.n) - 1)
        prod = graf_product(v, v, metric)
        sq = prod.scalar_part()
        if prod != Form.scalar(sig, sq) or sq == 0:
            raise ValueError("volume form does not square to a scalar under this metric")
        if sq not in (1, -1):
            # rescale the top blade to unit square when rationally possible
            root = rational_sqrt(abs(sq))
            if root is None:
                raise ValueError("volume square admits no rational normalization")
            v = v.scale(Fraction(1, 1) / root)
            sq = 1 if sq > 0 else -1
        return cls(v, sq)

    @classmethod
    def standard(cls, signature: Signature) -> "VolumeForm":
        vf = cls.for_metric(Metric.standard(signature))
        assert vf.vsquare == volume_square_sign(signature.p, signature.q)
        return vf


def volume_form(signature: Signature) -> Form:
    return Form.blade(signature, (1 << signature.n) - 1)


def hodge(f: Form, metric: Metric | None = None) -> Form:
    """Right product with the volume form."""
    metric = _resolve_metric(f, metric)
    return graf_product(f, volume_form(f.signature), metric)


def projector_pm(f: Form, sign: int, metric: Metric | None = None) -> Form:
    """Half of (identity plus-or-minus the volume product)."""
    if sign not in (1, -1):
        raise ValueError("projector sign must be +1 or -1")
    metric = _resolve_metric(f, metric)

    half = Fraction(1, 2)
    if sign == 1:
        return (f + hodge(f, metric)).scale(half)
    return (f - hodge(f, metric)).scale(half)


# -- truncation --------------------------------------------------------------------


@dataclass(frozen=True)
class TruncationSplit:
    """Split of a form into grades <= floor(n/2) and the rest."""

    lower: Form
    upper: Form


def truncate(f: Form) -> TruncationSplit:
    half = f.signature.n // 2
    lower = {m: c for m, c in f.mask_items() if m.bit_count() <= half}
    upper = {m: c for m, c in f.mask_items() if m.bit_count() > half}
    return TruncationSplit(
        Form.from_mask_dict(f.signature, lower), Form.from_mask_dict(f.signature, upper)
    )


def lower_projection(f: Form) -> Form:
    return truncate(f).lower


def in_truncation_regime(signature: Signature) -> bool:
    """Whether the lower-grade model is a faithful product isomorphism."""
    return signature.n % 2 == 1 and volume_square_sign(signature.p, signature.q) == 1


def truncated_product(f: Form, g: Form, sign: int = 1, metric: Metric | None = None) -> Form:
    """Product induced on lower-grade truncations: 2 P_L(P_s(f) * P_s(g)).

    Outside odd dimensions with volume square +1 this is still computed
    literally, but a TruncationRegimeWarning is attached because the
    truncation is no longer an isomorphism onto an ideal.
    """
    f._check_same(g)
    metric = _resolve_metric(f, metric)
    if in_truncation_regime(f.signature) and metric.is_orthonormal:
        # v is central with unit square here, so P_s commutes with the
        # product and one product call suffices: 2 P_L(P_s(f*g)).
        fg = graf_product(f, g, metric)
        return lower_projection(fg + hodge(fg, metric).scale(sign))
    if not in_truncation_regime(f.signature):
        warnings.warn(
            f"signature ({f.signature.p},{f.signature.q}) is outside the truncation "
            "isomorphism regime (odd n with volume square +1)",
            TruncationRegimeWarning,
            stacklevel=2,
        )
    pf = projector_pm(f, sign, metric)
    pg = projector_pm(g, sign, metric)
    return lower_projection(graf_product(pf, pg, metric)).scale(2)
