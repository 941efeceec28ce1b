"""Independent reference implementations used to cross-check the library.

Each oracle recomputes a library operation through a structurally
different algorithm: permutation signs by explicit inversion counting
instead of bitmask parity tricks, Clifford products by pushing one
generator at a time through a sorted index list instead of precomputed
mask tables, contracted wedges by their one-pair-at-a-time recursion
instead of subset enumeration, and covariant expansions by ordered index
tuples weighted with 1/k! instead of ascending blade sums.  Agreement is
always exact; no tolerances appear anywhere.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from grafclifford.exterior import Form, Metric, Signature
from grafclifford.linalg import mat_vec
from grafclifford.matrixrep import (
    CASE_ALMOST_COMPLEX,
    CASE_NORMAL,
    MainSubalgebra,
    Rep,
    d_square_target,
)

# -- tuple-based exterior algebra --------------------------------------------------------
#
# Oracle forms are dicts mapping strictly ascending 1-based index tuples
# to coefficients.  () is the scalar blade.


def sort_with_sign(seq):
    """Insertion-sort a tuple of indices, counting swaps.

    Returns (sorted_tuple, sign) with sign = (-1)^swaps, or (None, 0)
    when the sequence repeats an index.
    """
    items = list(seq)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and items[j - 1] == items[j]:
            return None, 0
    return tuple(items), sign


def to_tuples(f: Form) -> dict:
    out = {}
    for mask, c in f.mask_items():
        tup = tuple(i + 1 for i in range(f.signature.n) if mask >> i & 1)
        out[tup] = c
    return out


def from_tuples(sig: Signature, terms: dict) -> Form:
    acc = {}
    for tup, c in terms.items():
        mask = 0
        for i in tup:
            mask |= 1 << (i - 1)
        acc[mask] = acc.get(mask, 0) + c
    return Form.from_mask_dict(sig, acc)


def wedge_oracle(f: Form, g: Form) -> Form:
    """Exterior product computed by concatenate-then-sort inversion signs."""
    acc = {}
    for ta, ca in to_tuples(f).items():
        for tb, cb in to_tuples(g).items():
            tup, sign = sort_with_sign(ta + tb)
            if sign == 0:
                continue
            acc[tup] = acc.get(tup, 0) + ca * cb * sign
    return from_tuples(f.signature, acc)


def interior_oracle(i: int, f: Form) -> Form:
    """Contraction with frame vector i via explicit position counting."""
    acc = {}
    for tup, c in to_tuples(f).items():
        if i not in tup:
            continue
        pos = tup.index(i)
        rest = tup[:pos] + tup[pos + 1 :]
        sign = -1 if pos % 2 else 1
        acc[rest] = acc.get(rest, 0) + c * sign
    return from_tuples(f.signature, acc)


def contracted_wedge_oracle(f: Form, g: Form, k: int, metric: Metric) -> Form:
    """Direct recursion: one metric contraction at a time down to a wedge."""
    if k == 0:
        return wedge_oracle(f, g)
    n = f.signature.n
    acc = Form.zero(f.signature)
    for i in range(1, n + 1):
        fi = interior_oracle(i, f)
        if fi.is_zero():
            continue
        for j in range(1, n + 1):
            gij = metric.entry(i, j)
            if not gij:
                continue
            gj = interior_oracle(j, g)
            if gj.is_zero():
                continue
            acc = acc + contracted_wedge_oracle(fi, gj, k - 1, metric).scale(gij)
    return acc


# -- sequential-generator Clifford product ------------------------------------------------


def clifford_blade_product(ta, tb, diag):
    """Multiply ascending blades by pushing each right factor through.

    Walks every generator of `tb` leftwards through a working index
    list, flipping the sign per transposition and contracting equal
    indices against the metric diagonal.
    """
    coeff = Fraction(1)
    out = list(ta)
    for j in tb:
        pos = len(out)
        sign = 1
        while pos > 0 and out[pos - 1] > j:
            pos -= 1
            sign = -sign
        if pos > 0 and out[pos - 1] == j:
            coeff *= sign * diag[j - 1]
            del out[pos - 1]
        else:
            coeff *= sign
            out.insert(pos, j)
    return tuple(out), coeff


def graf_product_oracle(f: Form, g: Form, metric: Metric) -> Form:
    """Bilinear extension of the sequential blade product (diagonal metrics)."""
    diag = metric.diagonal
    if diag is None:
        raise ValueError("the sequential oracle needs a diagonal metric")
    acc = {}
    for ta, ca in to_tuples(f).items():
        for tb, cb in to_tuples(g).items():
            tup, c = clifford_blade_product(ta, tb, diag)
            if c:
                acc[tup] = acc.get(tup, 0) + ca * cb * c
    return from_tuples(f.signature, acc)


# -- ordered-tuple covariant expansion -----------------------------------------------------


def _apply_index_tuple(rep: Rep, vec, tup):
    """Apply the ordered generator word for `tup`, rightmost factor first."""
    out = tuple(vec)
    for i in reversed(tup):
        out = mat_vec(rep.generators[i - 1], out)
    return out


def _pairing_value(pairing, x, y):
    gy = mat_vec(pairing.gram, tuple(y))
    return sum(a * b for a, b in zip(x, gy))


def _tuple_component(rep: Rep, pairing, alpha, w, scale, parity_weight: int) -> Form:
    n = rep.signature.n
    diag = rep.metric.diagonal
    acc = {}
    for k in range(n + 1):
        weight = Fraction(1, math.factorial(k))
        for tup in itertools.permutations(range(1, n + 1), k):
            val = _pairing_value(pairing, alpha, _apply_index_tuple(rep, w, tup))
            if not val:
                continue
            sorted_tup, sign = sort_with_sign(tup)
            lower = 1
            for i in tup:
                lower *= diag[i - 1]
            c = scale * weight * val * lower * sign
            if parity_weight == -1 and k % 2 == 1:
                c = -c
            acc[sorted_tup] = acc.get(sorted_tup, 0) + c
    return from_tuples(rep.signature, acc)


def ordered_tuple_covariant(
    rep: Rep, structure: MainSubalgebra, pairing, alpha, beta
) -> tuple[Form, ...]:
    """Covariant components summed over ordered index tuples with 1/k!.

    Mirrors the library's ascending-blade construction for the normal
    and almost-complex cases; the two must agree because every index set
    has exactly k! orderings.
    """
    pref = Fraction(rep.abs.k_const, 1 << rep.signature.n)
    if structure.case == CASE_NORMAL:
        return (_tuple_component(rep, pairing, alpha, beta, pref, pairing.tau),)
    if structure.case == CASE_ALMOST_COMPLEX:
        dsign = d_square_target(rep.signature)
        dbeta = mat_vec(structure.D, tuple(beta))
        return (
            _tuple_component(rep, pairing, alpha, beta, pref, -1),
            _tuple_component(rep, pairing, alpha, dbeta, pref * dsign, 1),
        )
    raise ValueError("tuple expansion oracle covers the normal and almost-complex cases")


# -- seeded random inputs ------------------------------------------------------------------


def rand_form(rng: random.Random, sig: Signature, terms: int = 5, box: int = 4) -> Form:
    size = 1 << sig.n
    chosen = rng.sample(range(size), min(terms, size))
    return Form.from_mask_dict(sig, {m: rng.randint(-box, box) for m in chosen})


def rand_homogeneous(
    rng: random.Random, sig: Signature, k: int, terms: int = 3, box: int = 3
) -> Form:
    masks = [m for m in range(1 << sig.n) if m.bit_count() == k]
    chosen = rng.sample(masks, min(terms, len(masks)))
    return Form.from_mask_dict(sig, {m: rng.randint(-box, box) for m in chosen})


def rand_vector(rng: random.Random, dim: int, box: int = 5) -> tuple:
    return tuple(rng.randint(-box, box) for _ in range(dim))
