"""Exact dense linear algebra over the rationals.

Scalars are `fractions.Fraction` (always in lowest terms, positive
denominator, arithmetic exact); matrices are immutable grids of them.
Row reduction is fraction-free (Bareiss) on denominator-cleared integer
rows, so intermediate entries stay at minor size instead of paying gcd
bookkeeping per operation -- the difference between seconds and minutes on
the 100+ column kernels the Clifford and symmetric-power modules produce.

Kernel bases come back as primitive integer vectors (denominators cleared,
content removed, first nonzero entry positive) so fixtures are reproducible.

No floating point lives here; numeric cross-checks belong to the test
suite's oracles.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import Singular

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)

#: 61-bit Mersenne prime used by the full-rank certificate.
CERTIFICATE_PRIME = (1 << 61) - 1


def frac(x) -> Fraction:
    """Coerce ints, rational strings like ``"3/4"``, and Fractions exactly.

    Floats are rejected: there is no exact arithmetic to be had from them.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("refusing to coerce float %r to an exact rational" % x)
    return Fraction(x)


def vector(entries) -> tuple[Fraction, ...]:
    return tuple(frac(x) for x in entries)


class Matrix:
    """Immutable dense matrix of Fractions.

    ``rows`` / ``cols`` are counts; entries are reachable as ``m[i, j]`` or
    whole rows via ``m.row(i)``.  All operations return new matrices.
    """

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, rows, cols: int | None = None):
        entries = tuple(tuple(frac(x) for x in row) for row in rows)
        if entries:
            width = len(entries[0])
            if any(len(r) != width for r in entries):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("explicit column count disagrees with rows")
            cols = width
        elif cols is None:
            raise ValueError("a matrix with no rows needs an explicit column count")
        self._rows = entries
        self.rows = len(entries)
        self.cols = cols

    # -- constructors --------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[_ZERO] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def diagonal(cls, values) -> "Matrix":
        vals = [frac(v) for v in values]
        n = len(vals)
        return cls([[vals[i] if i == j else _ZERO for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns, rows: int | None = None) -> "Matrix":
        cols = [vector(c) for c in columns]
        if cols:
            height = len(cols[0])
            return cls([[c[i] for c in cols] for i in range(height)], cols=len(cols))
        if rows is None:
            raise ValueError("a matrix with no columns needs an explicit row count")
        return cls([[] for _ in range(rows)], cols=0)

    # -- access ---------------------------------------------------------------

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, key):
        i, j = key
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    # -- structure ------------------------------------------------------------

    def transpose(self) -> "Matrix":
        return Matrix([self.column(j) for j in range(self.cols)], cols=self.rows)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        return sum((self._rows[i][i] for i in range(self.rows)), _ZERO)

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self._rows[i][j] == self._rows[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def is_zero(self) -> bool:
        return all(not x for row in self._rows for x in row)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.cols == other.cols
            and self._rows == other._rows
        )

    def __hash__(self):
        return hash((self.cols, self._rows))

    def __repr__(self):
        return "Matrix(%r)" % [list(map(str, row)) for row in self._rows]

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        return Matrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._rows, other._rows)
            ],
            cols=self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        return Matrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._rows, other._rows)
            ],
            cols=self.cols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix([[-x for x in row] for row in self._rows], cols=self.cols)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(
                    "cannot multiply %dx%d by %dx%d"
                    % (self.rows, self.cols, other.rows, other.cols)
                )
            orows = other._rows
            out = []
            for arow in self._rows:
                acc = [_ZERO] * other.cols
                for k, a in enumerate(arow):
                    if not a:
                        continue
                    brow = orows[k]
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] += a * b
                out.append(acc)
            return Matrix(out, cols=other.cols)
        return Matrix(
            [[x * other for x in row] for row in self._rows], cols=self.cols
        )

    def __rmul__(self, other):
        return Matrix(
            [[other * x for x in row] for row in self._rows], cols=self.cols
        )

    def matvec(self, v) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length %d != cols %d" % (len(v), self.cols))
        out = []
        for row in self._rows:
            s = _ZERO
            for a, x in zip(row, v):
                if a and x:
                    s += a * x
            out.append(s)
        return tuple(out)

    def _check_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    # -- derived --------------------------------------------------------------

    def rank(self) -> int:
        return rank_and_kernel(self)[0]

    def kernel(self):
        return rank_and_kernel(self)[1]

    def inverse(self) -> "Matrix":
        return solve_or_invert(self)


def hstack(*mats: Matrix) -> Matrix:
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("row counts differ")
    return Matrix(
        [sum((list(m.row(i)) for m in mats), []) for i in range(rows)],
        cols=sum(m.cols for m in mats),
    )


def vstack(*mats: Matrix) -> Matrix:
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ValueError("column counts differ")
    out = []
    for m in mats:
        out.extend(m.row(i) for i in range(m.rows))
    return Matrix(out, cols=cols)


# -- vector helpers ------------------------------------------------------------

def dot(u, v) -> Fraction:
    s = _ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    c = frac(c)
    return tuple(c * a for a in v)


def is_zero_vector(v) -> bool:
    return all(not x for x in v)


def primitive_integer_vector(v) -> tuple[int, ...]:
    """Clear denominators, remove content, make the first nonzero entry positive."""
    v = [frac(x) for x in v]
    scale = 1
    for x in v:
        scale = scale * x.denominator // gcd(scale, x.denominator)
    ints = [int(x * scale) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


# -- fraction-free elimination --------------------------------------------------

def _cleared_int_rows(m: Matrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators.

    Row scaling preserves rank and kernel, which is all the callers need.
    """
    out = []
    for row in m._rows:
        scale = 1
        for x in row:
            scale = scale * x.denominator // gcd(scale, x.denominator)
        out.append([int(x * scale) for x in row])
    return out


def _bareiss_echelon(rows: list[list[int]], ncols: int) -> list[int]:
    """Fraction-free row echelon in place; returns the pivot columns."""
    pivots = []
    prev = 1
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        p = None
        for i in range(r, nrows):
            if rows[i][c]:
                p = i
                break
        if p is None:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            ri = rows[i]
            ric = ri[c]
            rr = rows[r]
            if ric:
                for j in range(c + 1, ncols):
                    ri[j] = (piv * ri[j] - ric * rr[j]) // prev
            elif prev != piv:
                for j in range(c + 1, ncols):
                    if ri[j]:
                        ri[j] = piv * ri[j] // prev
            ri[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank_and_kernel(m: Matrix) -> tuple[int, list[tuple[int, ...]]]:
    """Exact rank and a primitive integer basis of the right kernel.

    rank + len(kernel) == cols; every kernel vector maps to zero exactly.
    """
    rows = _cleared_int_rows(m)
    pivots = _bareiss_echelon(rows, m.cols)
    rank = len(pivots)
    pivot_set = set(pivots)
    kernel = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        x: list[Fraction] = [_ZERO] * m.cols
        x[f] = _ONE
        for i in range(rank - 1, -1, -1):
            p = pivots[i]
            if p > f:
                # deeper pivots only couple to columns > f, all still zero
                continue
            row = rows[i]
            s = _ZERO
            for j in range(p + 1, m.cols):
                xj = x[j]
                if xj and row[j]:
                    s += row[j] * xj
            if s:
                x[p] = -s / row[p]
        kernel.append(primitive_integer_vector(x))
    return rank, kernel


def nullity(m: Matrix) -> int:
    return m.cols - rank_and_kernel(m)[0]


def solve_or_invert(m: Matrix) -> Matrix:
    """Exact inverse of a square nonsingular matrix; raises Singular otherwise."""
    if m.rows != m.cols:
        raise Singular("inverse of a %dx%d matrix" % (m.rows, m.cols))
    n = m.rows
    a = [list(row) for row in m._rows]
    inv = [
        [_ONE if i == j else _ZERO for j in range(n)] for i in range(n)
    ]
    for c in range(n):
        p = None
        for i in range(c, n):
            if a[i][c]:
                p = i
                break
        if p is None:
            raise Singular("matrix is singular (rank < %d)" % n)
        if p != c:
            a[p], a[c] = a[c], a[p]
            inv[p], inv[c] = inv[c], inv[p]
        piv = a[c][c]
        if piv != _ONE:
            a[c] = [x / piv for x in a[c]]
            inv[c] = [x / piv for x in inv[c]]
        for i in range(n):
            if i == c:
                continue
            f = a[i][c]
            if f:
                ac, ic = a[c], inv[c]
                a[i] = [x - f * y for x, y in zip(a[i], ac)]
                inv[i] = [x - f * y for x, y in zip(inv[i], ic)]
    return Matrix(inv, cols=n)


def determinant(m: Matrix) -> Fraction:
    """Exact determinant via fraction-free elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return _ONE
    rows = []
    scale = _ONE
    for row in m._rows:
        s = 1
        for x in row:
            s = s * x.denominator // gcd(s, x.denominator)
        scale *= s
        rows.append([int(x * s) for x in row])
    sign = 1
    prev = 1
    for c in range(n - 1):
        p = None
        for i in range(c, n):
            if rows[i][c]:
                p = i
                break
        if p is None:
            return _ZERO
        if p != c:
            rows[p], rows[c] = rows[c], rows[p]
            sign = -sign
        piv = rows[c][c]
        for i in range(c + 1, n):
            ri = rows[i]
            ric = ri[c]
            rc = rows[c]
            for j in range(c + 1, n):
                ri[j] = (piv * ri[j] - ric * rc[j]) // prev
            ri[c] = 0
        prev = piv
    return Fraction(sign * rows[n - 1][n - 1]) / scale


def _rank_mod_p(int_rows: list[list[int]], ncols: int, p: int) -> int:
    rows = [[x % p for x in row] for row in int_rows]
    rank = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[piv], rows[rank] = rows[rank], rows[piv]
        inv = pow(rows[rank][c], -1, p)
        rrow = rows[rank]
        for i in range(rank + 1, nrows):
            f = rows[i][c]
            if f:
                f = f * inv % p
                ri = rows[i]
                for j in range(c, ncols):
                    ri[j] = (ri[j] - f * rrow[j]) % p
        rank += 1
        if rank == nrows:
            break
    return rank


def _rational_rank_mod_p(m: Matrix, p: int) -> int | None:
    """Rank of the entrywise reduction num * den^-1 mod p; None if p divides a denominator."""
    rows = []
    for row in m._rows:
        out = []
        for x in row:
            den = x.denominator % p
            if den == 0:
                return None
            out.append(x.numerator % p * pow(den, -1, p) % p)
        rows.append(out)
    return _rank_mod_p(rows, m.cols, p)


def rank_at_least(m: Matrix, target: int, prime: int = CERTIFICATE_PRIME) -> bool:
    """Sound fast test for rank(m) >= target.

    A modular rank >= target certifies the exact statement (reduction can
    only lose rank); on a shortfall the exact elimination decides.
    """
    modular = _rational_rank_mod_p(m, prime)
    if modular is not None and modular >= target:
        return True
    return rank_and_kernel(m)[0] >= target


def full_rank_certificate(m: Matrix, prime: int = CERTIFICATE_PRIME) -> bool:
    """True iff m has full rank min(rows, cols).

    Fast path: full rank modulo a fixed 61-bit prime, which certifies full
    rank over Q exactly (a maximal minor with nonzero residue is nonzero).
    Only if the residue vanishes does the exact elimination run.
    """
    target = min(m.rows, m.cols)
    ints = _cleared_int_rows(m)
    if _rank_mod_p(ints, m.cols, prime) == target:
        return True
    return rank_and_kernel(m)[0] == target


def column_span_rank(vectors, length: int | None = None) -> int:
    """Rank of the span of a list of equal-length vectors."""
    vectors = list(vectors)
    if not vectors:
        return 0
    return Matrix(vectors, cols=length).rank()


def in_span(basis_vectors, target) -> bool:
    """Exact membership of ``target`` in the span of ``basis_vectors``."""
    basis_vectors = list(basis_vectors)
    if is_zero_vector(target):
        return True
    if not basis_vectors:
        return False
    base = Matrix(basis_vectors)
    aug = Matrix(basis_vectors + [list(target)])
    return base.rank() == aug.rank()


def same_span(vectors_a, vectors_b) -> bool:
    """Exact equality of the spans of two vector families."""
    a = list(vectors_a)
    b = list(vectors_b)
    if not a and not b:
        return True
    if not a or not b:
        return all(is_zero_vector(v) for v in a + b)
    ra = Matrix(a).rank()
    rb = Matrix(b).rank()
    if ra != rb:
        return False
    return Matrix(a + b).rank() == ra
