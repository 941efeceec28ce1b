"""Exterior algebra over an exact rational metric.

Forms are finite sums of canonical blades ``e{i1,...,ik}`` (strictly
ascending 1-based frame indices) with rational coefficients.  All
arithmetic is exact: coefficients are Python ints or Fractions, never
floats.  Blades are carried as index bitmasks, signs come from
permutation parity, and the metric enters only through the contracted
wedge.
"""

from __future__ import annotations

import itertools
import json
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

from .errors import DimensionMismatch, FormParseError

Rational = Union[int, Fraction]

DEFAULT_MAX_DIM = 12


def max_dim() -> int:
    """Dimension cap for signatures, overridable via GRAF_MAX_DIM."""
    raw = os.environ.get("GRAF_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"GRAF_MAX_DIM must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"GRAF_MAX_DIM must be positive, got {value}")
    return value


def _norm(c: Rational) -> Rational:
    """Collapse integral Fractions to int so hot paths stay on int ops."""
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return c.numerator
        return c
    if isinstance(c, int):
        return c
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def rational_from_str(text: str) -> Rational:
    """Parse 'num' or 'num/den' into an exact rational."""
    try:
        return _norm(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormParseError(f"bad rational literal {text!r}") from exc


def rational_to_str(c: Rational) -> str:
    f = Fraction(c)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class Signature:
    """Pseudo-Riemannian signature with p plus-squares and q minus-squares."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0:
            raise ValueError(f"signature counts must be nonnegative, got ({self.p},{self.q})")
        n = self.p + self.q
        cap = max_dim()
        if n > cap:
            raise ValueError(f"dimension {n} exceeds cap {cap} (set GRAF_MAX_DIM to raise it)")

    @property
    def n(self) -> int:
        return self.p + self.q

    def pq_class(self) -> int:
        """(p - q) mod 8, the invariant steering every case split."""
        return (self.p - self.q) % 8


@dataclass(frozen=True)
class Blade:
    """Canonical basis blade: strictly ascending 1-based indices."""

    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        idx = tuple(self.indices)
        object.__setattr__(self, "indices", idx)
        if any(i < 1 for i in idx):
            raise ValueError(f"blade indices are 1-based, got {idx}")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"blade indices must be strictly ascending, got {idx}")

    @classmethod
    def from_mask(cls, mask: int) -> "Blade":
        out = []
        i = 1
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return cls(tuple(out))

    @property
    def mask(self) -> int:
        m = 0
        for i in self.indices:
            m |= 1 << (i - 1)
        return m

    @property
    def grade(self) -> int:
        return len(self.indices)


def _mask_of(key) -> int:
    if isinstance(key, Blade):
        return key.mask
    if isinstance(key, int):
        if key < 0:
            raise ValueError(f"blade mask must be nonnegative, got {key}")
        return key
    return Blade(tuple(key)).mask


def _indices_of_mask(mask: int) -> tuple[int, ...]:
    return Blade.from_mask(mask).indices


class Form:
    """Immutable exterior form: sparse map from blades to rational coefficients."""

    __slots__ = ("signature", "_terms", "_hash")

    def __init__(self, signature: Signature, terms: Mapping | Iterable = ()):
        self.signature = signature
        full = (1 << signature.n) - 1
        data: dict[int, Rational] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            mask = _mask_of(key)
            if mask & ~full:
                raise ValueError(
                    f"blade {Blade.from_mask(mask).indices} exceeds dimension {signature.n}"
                )
            c = data.get(mask, 0) + _norm(coeff)
            if c:
                data[mask] = _norm(c)
            elif mask in data:
                del data[mask]
        self._terms = data
        self._hash = None

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, signature: Signature) -> "Form":
        return cls(signature)

    @classmethod
    def unit(cls, signature: Signature) -> "Form":
        """The algebra unit: the empty blade with coefficient 1."""
        return cls(signature, {0: 1})

    @classmethod
    def blade(cls, signature: Signature, key, coeff: Rational = 1) -> "Form":
        return cls(signature, {_mask_of(key): coeff})

    @classmethod
    def scalar(cls, signature: Signature, value: Rational) -> "Form":
        return cls(signature, {0: value})

    @classmethod
    def from_mask_dict(cls, signature: Signature, terms: Mapping[int, Rational]) -> "Form":
        return cls(signature, terms)

    # -- inspection -----------------------------------------------------------

    def items(self) -> Iterator[tuple[Blade, Rational]]:
        for mask in sorted(self._terms):
            yield Blade.from_mask(mask), self._terms[mask]

    def mask_items(self) -> Iterator[tuple[int, Rational]]:
        return iter(self._terms.items())

    def mask_dict(self) -> dict[int, Rational]:
        return dict(self._terms)

    def coeff(self, key) -> Rational:
        return self._terms.get(_mask_of(key), 0)

    def scalar_part(self) -> Rational:
        return self._terms.get(0, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def grades(self) -> set[int]:
        return {mask.bit_count() for mask in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    def num_terms(self) -> int:
        return len(self._terms)

    # -- linear structure -----------------------------------------------------

    def _check_same(self, other: "Form") -> None:
        if self.signature != other.signature:
            raise DimensionMismatch(
                f"forms over different signatures: {self.signature} vs {other.signature}"
            )

    def __add__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        self._check_same(other)
        data = dict(self._terms)
        for mask, c in other._terms.items():
            v = data.get(mask, 0) + c
            if v:
                data[mask] = _norm(v)
            elif mask in data:
                del data[mask]
        out = Form.__new__(Form)
        out.signature = self.signature
        out._terms = data
        out._hash = None
        return out

    def __sub__(self, other: "Form") -> "Form":
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Form":
        out = Form.__new__(Form)
        out.signature = self.signature
        out._terms = {m: -c for m, c in self._terms.items()}
        out._hash = None
        return out

    def scale(self, c: Rational) -> "Form":
        c = _norm(c)
        if not c:
            return Form.zero(self.signature)
        out = Form.__new__(Form)
        out.signature = self.signature
        out._terms = {m: _norm(v * c) for m, v in self._terms.items()}
        out._hash = None
        return out

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Form)
            and self.signature == other.signature
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.signature, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Form({self.signature.p},{self.signature.q}; {self.to_text()})"

    # -- serialization ----------------------------------------------------------

    def to_text(self) -> str:
        """Render as 'c*e{i,j} + ...' with rational c; the zero form is '0'."""
        if not self._terms:
            return "0"
        parts = []
        for mask in sorted(self._terms, key=lambda m: (m.bit_count(), m)):
            idx = ",".join(str(i) for i in _indices_of_mask(mask))
            parts.append(f"{rational_to_str(self._terms[mask])}*e{{{idx}}}")
        return " + ".join(parts)

    @classmethod
    def from_text(cls, signature: Signature, text: str) -> "Form":
        body = text.strip()
        if body in ("0", ""):
            return cls.zero(signature)
        terms: list[tuple[int, Rational]] = []
        for chunk in body.split("+"):
            chunk = chunk.strip()
            m = re.fullmatch(r"(?P<c>-?\d+(?:/\d+)?)\s*\*\s*e\{(?P<idx>[\d,\s]*)\}", chunk)
            if m is None:
                raise FormParseError(f"bad form term {chunk!r}")
            coeff = rational_from_str(m.group("c"))
            idx_text = m.group("idx").strip()
            indices = tuple(int(t) for t in idx_text.split(",")) if idx_text else ()
            terms.append((Blade(indices).mask, coeff))
        return cls(signature, terms)

    def to_json_obj(self) -> list[dict]:
        return [
            {"blade": list(_indices_of_mask(mask)), "coeff": rational_to_str(self._terms[mask])}
            for mask in sorted(self._terms, key=lambda m: (m.bit_count(), m))
        ]

    @classmethod
    def from_json_obj(cls, signature: Signature, obj) -> "Form":
        if not isinstance(obj, list):
            raise FormParseError("form JSON must be a list of terms")
        terms = []
        for entry in obj:
            try:
                blade = Blade(tuple(int(i) for i in entry["blade"]))
                coeff = entry["coeff"]
            except (KeyError, TypeError, ValueError) as exc:
                raise FormParseError(f"bad form term {entry!r}") from exc
            if isinstance(coeff, str):
                coeff = rational_from_str(coeff)
            elif isinstance(coeff, int):
                coeff = coeff
            else:
                raise FormParseError(f"bad coefficient {coeff!r}")
            terms.append((blade.mask, coeff))
        return cls(signature, terms)

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))


class Metric:
    """Symmetric invertible rational coefficient matrix for frame contractions.

    The default for a signature is the orthonormal diagonal
    (+1 x p, -1 x q).  The inverse is computed eagerly so singular input
    fails at construction time.
    """

    __slots__ = ("signature", "gram", "inverse", "_diag")

    def __init__(self, signature: Signature, gram=None):
        n = signature.n
        self.signature = signature
        if gram is None:
            rows = tuple(
                tuple((1 if i == j and i < signature.p else (-1 if i == j else 0)) for j in range(n))
                for i in range(n)
            )
        else:
            rows = tuple(tuple(_norm(v) for v in row) for row in gram)
            if len(rows) != n or any(len(r) != n for r in rows):
                raise DimensionMismatch(f"gram matrix must be {n}x{n}")
            for i in range(n):
                for j in range(i + 1, n):
                    if rows[i][j] != rows[j][i]:
                        raise ValueError("gram matrix must be symmetric")
        self.gram = rows
        self.inverse = _invert(rows)
        if all(rows[i][j] == 0 for i in range(n) for j in range(n) if i != j):
            self._diag = tuple(rows[i][i] for i in range(n))
        else:
            self._diag = None
        if gram is not None:
            pos, neg = _inertia(rows)
            if (pos, neg) != (signature.p, signature.q):
                raise ValueError(
                    f"gram matrix has inertia ({pos},{neg}), signature says ({signature.p},{signature.q})"
                )

    @staticmethod
    @lru_cache(maxsize=None)
    def standard(signature: Signature) -> "Metric":
        return Metric(signature)

    @property
    def is_diagonal(self) -> bool:
        return self._diag is not None

    @property
    def diagonal(self) -> tuple[Rational, ...] | None:
        return self._diag

    @property
    def is_orthonormal(self) -> bool:
        return self._diag is not None and all(v in (1, -1) for v in self._diag)

    def entry(self, i: int, j: int) -> Rational:
        """Contraction coefficient for frame indices i, j (1-based)."""
        return self.gram[i - 1][j - 1]

    def to_json_obj(self) -> dict:
        obj = {"p": self.signature.p, "q": self.signature.q}
        if not self.is_orthonormal or self._diag != Metric.standard(self.signature)._diag:
            obj["gram"] = [[rational_to_str(v) for v in row] for row in self.gram]
        return obj

    @classmethod
    def from_json_obj(cls, obj) -> "Metric":
        try:
            sig = Signature(int(obj["p"]), int(obj["q"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormParseError(f"bad metric JSON {obj!r}") from exc
        gram = obj.get("gram")
        if gram is None:
            return cls.standard(sig)
        parsed = [
            [rational_from_str(v) if isinstance(v, str) else _norm(v) for v in row] for row in gram
        ]
        return cls(sig, parsed)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Metric)
            and self.signature == other.signature
            and self.gram == other.gram
        )

    def __hash__(self) -> int:
        return hash((self.signature, self.gram))

    def __repr__(self) -> str:
        return f"Metric({self.signature.p},{self.signature.q})"


def _invert(rows: tuple[tuple[Rational, ...], ...]):
    """Exact inverse by Gauss-Jordan; raises on singular input."""
    n = len(rows)
    work = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise ValueError("gram matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = 1 / work[col][col]
        work[col] = [v * inv for v in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    return tuple(tuple(_norm(work[i][n + j]) for j in range(n)) for i in range(n))


def _inertia(rows) -> tuple[int, int]:
    """Signs of a symmetric matrix via congruence pivoting (Sylvester counts)."""
    n = len(rows)
    a = [[Fraction(v) for v in row] for row in rows]
    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
            if j is None:
                continue
            for r in range(n):
                a[r][k] += a[r][j]
            for c in range(n):
                a[k][c] += a[j][c]
        if a[k][k] > 0:
            pos += 1
        elif a[k][k] < 0:
            neg += 1
        else:
            continue
        for r in range(k + 1, n):
            if a[r][k]:
                factor = a[r][k] / a[k][k]
                for c in range(k, n):
                    a[r][c] -= factor * a[k][c]
                for c in range(k, n):
                    a[c][r] -= factor * a[c][k]
    return pos, neg


# -- permutation signs ---------------------------------------------------------


def merge_sign(mask_a: int, mask_b: int) -> int:
    """Parity sign for sorting the concatenation of two ascending blades.

    Counts pairs (a in A, b in B) with a > b; the blades need not be
    disjoint (shared indices are handled by the caller).
    """
    sign = 1
    b = mask_b
    while b:
        low = b & (-b)
        above = mask_a & ~((low << 1) - 1)
        if above.bit_count() & 1:
            sign = -sign
        b ^= low
    return sign


def interior_sign(mask: int, index: int) -> int:
    """Sign for removing `index` from an ascending blade: (-1)^(position-1)."""
    below = mask & ((1 << (index - 1)) - 1)
    return -1 if below.bit_count() & 1 else 1


# -- exterior operations -------------------------------------------------------


def wedge(f: Form, g: Form) -> Form:
    """Exterior product; blades sharing an index annihilate."""
    f._check_same(g)
    acc: dict[int, Rational] = {}
    for ma, ca in f.mask_items():
        for mb, cb in g.mask_items():
            if ma & mb:
                continue
            v = ca * cb * merge_sign(ma, mb)
            key = ma | mb
            acc[key] = acc.get(key, 0) + v
    return Form.from_mask_dict(f.signature, acc)


def interior(i: int, f: Form) -> Form:
    """Contraction with the i-th frame vector (grade-lowering antiderivation)."""
    n = f.signature.n
    if not 1 <= i <= n:
        raise ValueError(f"frame index {i} out of range 1..{n}")
    bit = 1 << (i - 1)
    acc: dict[int, Rational] = {}
    for mask, c in f.mask_items():
        if mask & bit:
            acc[mask ^ bit] = c * interior_sign(mask, i)
    return Form.from_mask_dict(f.signature, acc)


def grade_project(f: Form, k: int) -> Form:
    return Form.from_mask_dict(
        f.signature, {m: c for m, c in f.mask_items() if m.bit_count() == k}
    )


def grade_involution(f: Form) -> Form:
    """Multiply each grade-k component by (-1)^k."""
    return Form.from_mask_dict(
        f.signature, {m: (-c if m.bit_count() & 1 else c) for m, c in f.mask_items()}
    )


def reversal(f: Form) -> Form:
    """Multiply each grade-k component by (-1)^(k(k-1)/2)."""
    out = {}
    for m, c in f.mask_items():
        k = m.bit_count()
        out[m] = -c if (k * (k - 1) // 2) & 1 else c
    return Form.from_mask_dict(f.signature, out)


def _contract_subset_sign(mask: int, subset: int) -> int:
    """Sign from contracting all of `subset` out of `mask`, largest index first."""
    sign = 1
    s = subset
    while s:
        low = s & (-s)
        below = mask & (low - 1)
        if below.bit_count() & 1:
            sign = -sign
        s ^= low
    return sign


def _subsets_of_size(mask: int, k: int) -> Iterator[int]:
    bits = []
    m = mask
    while m:
        low = m & (-m)
        bits.append(low)
        m ^= low
    if k > len(bits):
        return
    for combo in itertools.combinations(bits, k):
        sub = 0
        for b in combo:
            sub |= b
        yield sub


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _cw_blades_diagonal(ma: int, mb: int, k: int, diag) -> Iterator[tuple[int, Rational]]:
    """Blade-level k-fold contraction for a diagonal metric.

    Every ordering of the k contracted index pairs contributes the same
    signed term, which yields a k! multiplicity over subsets of the
    shared index set.
    """
    common = ma & mb
    fact = _factorial(k)
    for sub in _subsets_of_size(common, k):
        ra, rb = ma ^ sub, mb ^ sub
        if ra & rb:
            continue
        metric = 1
        s = sub
        while s:
            low = s & (-s)
            metric = metric * diag[low.bit_length() - 1]
            s ^= low
        sign = _contract_subset_sign(ma, sub) * _contract_subset_sign(mb, sub)
        yield ra | rb, fact * metric * sign * merge_sign(ra, rb)


def _cw_blades_general(ma: int, mb: int, k: int, gram) -> dict[int, Rational]:
    """Blade-level k-fold contraction for an arbitrary symmetric metric.

    Recurses one contraction at a time over pairs (i in A, j in B) with a
    nonzero metric entry; the base case is the plain wedge.
    """
    if k == 0:
        if ma & mb:
            return {}
        return {ma | mb: merge_sign(ma, mb)}
    acc: dict[int, Rational] = {}
    a = ma
    while a:
        la = a & (-a)
        a ^= la
        i = la.bit_length() - 1
        b = mb
        while b:
            lb = b & (-b)
            b ^= lb
            j = lb.bit_length() - 1
            gij = gram[i][j]
            if not gij:
                continue
            sign = _contract_subset_sign(ma, la) * _contract_subset_sign(mb, lb)
            for mask, val in _cw_blades_general(ma ^ la, mb ^ lb, k - 1, gram).items():
                v = acc.get(mask, 0) + gij * sign * val
                if v:
                    acc[mask] = v
                elif mask in acc:
                    del acc[mask]
    return acc


def contracted_wedge(f: Form, g: Form, k: int, metric: Metric | None = None) -> Form:
    """k-fold metric contraction of f against g followed by a wedge.

    Grade (m, r) inputs contribute at grade m + r - 2k; k = 0 is the plain
    wedge.  The sum over contracted index pairs carries a k! multiplicity
    that downstream products divide back out.
    """
    f._check_same(g)
    if k < 0:
        raise ValueError("contraction order must be nonnegative")
    metric = metric if metric is not None else Metric.standard(f.signature)
    if metric.signature != f.signature:
        raise DimensionMismatch("metric signature does not match the forms")
    if k == 0:
        return wedge(f, g)
    acc: dict[int, Rational] = {}
    diag = metric.diagonal
    if diag is not None:
        for ma, ca in f.mask_items():
            if ma.bit_count() < k:
                continue
            for mb, cb in g.mask_items():
                if mb.bit_count() < k or (ma & mb).bit_count() < k:
                    continue
                cc = ca * cb
                for mask, val in _cw_blades_diagonal(ma, mb, k, diag):
                    v = acc.get(mask, 0) + cc * val
                    if v:
                        acc[mask] = v
                    elif mask in acc:
                        del acc[mask]
    else:
        gram = metric.gram
        for ma, ca in f.mask_items():
            if ma.bit_count() < k:
                continue
            for mb, cb in g.mask_items():
                if mb.bit_count() < k:
                    continue
                cc = ca * cb
                for mask, val in _cw_blades_general(ma, mb, k, gram).items():
                    v = acc.get(mask, 0) + cc * val
                    if v:
                        acc[mask] = v
                    elif mask in acc:
                        del acc[mask]
    return Form.from_mask_dict(f.signature, acc)
