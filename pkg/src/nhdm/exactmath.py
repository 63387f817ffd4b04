"""Exact integer linear algebra: matrices, determinants, Smith and Hermite forms.

Everything here runs on arbitrary-precision Python integers.  There is no
floating point anywhere, so all results are exact and deterministic.  The
matrices involved are small (a handful of rows and columns), which makes the
classical elimination algorithms entirely adequate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored as a tuple of row tuples.

    A matrix may have zero rows (the basis of the zero lattice); in that case
    ``cols`` must be supplied explicitly because it cannot be inferred.
    """

    entries: tuple[tuple[int, ...], ...]
    cols: int = -1

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        cols = self.cols
        if entries:
            cols = len(entries[0])
            if any(len(row) != cols for row in entries):
                raise ValueError("ragged rows in matrix")
        elif cols < 0:
            raise ValueError("empty matrix needs an explicit column count")
        object.__setattr__(self, "cols", cols)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int = -1) -> "IntMatrix":
        return cls(tuple(tuple(row) for row in rows), cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        return cls(tuple(tuple(diag[i] if i == j and i < len(diag) else 0
                               for j in range(cols)) for i in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries)) if self.entries else (), self.cols and len(self.entries) or 0)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ot = tuple(zip(*other.entries)) if other.entries else ()
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in ot) for row in self.entries),
            other.cols,
        )

    def to_text(self) -> str:
        """Render in the CLI matrix format: rows joined by ';', entries by ','."""
        return ";".join(",".join(str(x) for x in row) for row in self.entries)

    @classmethod
    def from_text(cls, text: str) -> "IntMatrix":
        """Parse the CLI matrix format, e.g. ``"3,2;-3,-1"``."""
        try:
            rows = tuple(tuple(int(x.strip()) for x in part.split(",")) for part in text.split(";") if part.strip())
        except ValueError as exc:
            raise ValueError(f"malformed matrix string {text!r}") from exc
        if not rows:
            raise ValueError("empty matrix string")
        return cls(rows)


@dataclass(frozen=True)
class SnfResult:
    """Smith decomposition ``u @ m @ v == diag(d)`` with unimodular u, v.

    ``d`` is canonical: entries are non-negative, each nonzero entry divides
    the next, and zeros (if any) sit at the end.
    """

    d: tuple[int, ...]
    u: IntMatrix
    v: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x != 0)

    def diagonal_matrix(self) -> IntMatrix:
        return IntMatrix.diagonal(self.d, self.u.rows, self.v.rows)


def _swap_rows(a: list[list[int]], u: list[list[int]], i: int, j: int) -> None:
    a[i], a[j] = a[j], a[i]
    u[i], u[j] = u[j], u[i]


def _swap_cols(a: list[list[int]], v: list[list[int]], i: int, j: int) -> None:
    for row in a:
        row[i], row[j] = row[j], row[i]
    for row in v:
        row[i], row[j] = row[j], row[i]


def _add_row(a: list[list[int]], u: list[list[int]], dst: int, src: int, factor: int) -> None:
    a[dst] = [x + factor * y for x, y in zip(a[dst], a[src])]
    u[dst] = [x + factor * y for x, y in zip(u[dst], u[src])]


def _add_col(a: list[list[int]], v: list[list[int]], dst: int, src: int, factor: int) -> None:
    for row in a:
        row[dst] += factor * row[src]
    for row in v:
        row[dst] += factor * row[src]


def _negate_row(a: list[list[int]], u: list[list[int]], i: int) -> None:
    a[i] = [-x for x in a[i]]
    u[i] = [-x for x in u[i]]


def _pivot(a: list[list[int]], t: int, nrows: int, ncols: int) -> tuple[int, int] | None:
    """Entry of smallest nonzero absolute value in the block from (t, t) on.

    Ties break on the lowest (row, col), which keeps the whole reduction
    deterministic.
    """
    best = None
    best_abs = None
    for i in range(t, nrows):
        row = a[i]
        for j in range(t, ncols):
            x = row[j]
            if x:
                ax = -x if x < 0 else x
                if best_abs is None or ax < best_abs:
                    best, best_abs = (i, j), ax
                    if ax == 1:
                        return best
    return best


def snf(m: IntMatrix) -> SnfResult:
    """Smith normal form with transformation matrices.

    Returns ``SnfResult(d, u, v)`` with ``u @ m @ v == diag(d)``, ``u`` and
    ``v`` unimodular, and ``d`` in the canonical divisibility chain.
    """
    if m.rows == 0 or m.cols == 0:
        raise ValueError("snf needs a nonempty matrix")
    nrows, ncols = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    t = 0
    while t < min(nrows, ncols):
        piv = _pivot(a, t, nrows, ncols)
        if piv is None:
            break
        _swap_rows(a, u, t, piv[0])
        _swap_cols(a, v, t, piv[1])
        while True:
            # Clear column t below the pivot.  A nonzero remainder becomes the
            # new, strictly smaller pivot.
            restart = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        _add_row(a, u, i, t, -q)
                    if a[i][t]:
                        _swap_rows(a, u, t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        _add_col(a, v, j, t, -q)
                    if a[t][j]:
                        _swap_cols(a, v, t, j)
                        restart = True
                        break
            if restart:
                continue
            # Row and column are clear; force the divisibility chain.
            p = a[t][t]
            bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            _add_row(a, u, t, bad[0], 1)
        if a[t][t] < 0:
            _negate_row(a, u, t)
        t += 1

    d = tuple(a[i][i] for i in range(min(nrows, ncols)))
    return SnfResult(d, IntMatrix.from_rows(u), IntMatrix.from_rows(v))


def det(m: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Integer inverse of a matrix with determinant +-1."""
    res = snf(m)
    if any(x != 1 for x in res.d):
        raise ValueError("matrix is not unimodular")
    return res.v @ res.u


# -- Hermite normal form ------------------------------------------------------
#
# Row-style HNF used as the canonical representative of an integer row lattice:
# pivots positive, strictly increasing pivot columns, entries above each pivot
# reduced into [0, pivot).  Zero rows are dropped, so two generating sets of
# the same lattice always produce the identical basis.

Rows = tuple[tuple[int, ...], ...]


def _reduce_above(basis: list[list[int]]) -> None:
    # ascending pivot order: a later reduction never touches an earlier
    # pivot column, so each above-pivot entry ends in [0, pivot)
    pivots = [next(j for j, x in enumerate(row) if x) for row in basis]
    for k in range(len(basis)):
        j = pivots[k]
        p = basis[k][j]
        for i in range(k):
            q = basis[i][j] // p
            if q:
                basis[i] = [x - q * y for x, y in zip(basis[i], basis[k])]


def _insert_vector(basis: list[list[int]], vec: Sequence[int]) -> bool:
    """Add ``vec`` to an echelon basis in place; True if the lattice grew."""
    v = list(vec)
    grew = False
    k = 0
    while True:
        lead = next((j for j, x in enumerate(v) if x), None)
        if lead is None:
            break
        while k < len(basis):
            p = next(j for j, x in enumerate(basis[k]) if x)
            if p >= lead:
                break
            k += 1
        if k < len(basis):
            row = basis[k]
            p = next(j for j, x in enumerate(row) if x)
            if p == lead:
                a, b = row[lead], v[lead]
                if b % a == 0:
                    q = b // a
                    v = [x - q * y for x, y in zip(v, row)]
                else:
                    g, s, t = _xgcd(a, b)
                    new_row = [s * x + t * y for x, y in zip(row, v)]
                    v = [(a // g) * y - (b // g) * x for x, y in zip(row, v)]
                    basis[k] = new_row
                    grew = True
                continue
        if any(v):
            if v[lead] < 0:
                v = [-x for x in v]
            basis.insert(k, v)
            grew = True
        break
    return grew


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s*a + t*b == g == gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def hnf_rows(rows: Iterable[Sequence[int]]) -> Rows:
    """Canonical HNF basis (as a tuple of row tuples) of the given row span."""
    basis: list[list[int]] = []
    for row in rows:
        _insert_vector(basis, row)
    for row in basis:
        lead = next(j for j, x in enumerate(row) if x)
        if row[lead] < 0:
            row[:] = [-x for x in row]
    _reduce_above(basis)
    return tuple(tuple(row) for row in basis)


def hnf_add(basis: Rows, vec: Sequence[int]) -> Rows:
    """HNF basis of the lattice spanned by ``basis`` plus one new vector."""
    work = [list(row) for row in basis]
    if not _insert_vector(work, vec):
        return basis
    for row in work:
        lead = next(j for j, x in enumerate(row) if x)
        if row[lead] < 0:
            row[:] = [-x for x in row]
    _reduce_above(work)
    return tuple(tuple(row) for row in work)


def hnf_contains(basis: Rows, vec: Sequence[int]) -> bool:
    """Exact membership test of ``vec`` in the lattice with HNF basis ``basis``."""
    v = list(vec)
    for row in basis:
        lead = next(j for j, x in enumerate(row) if x)
        if any(v[j] for j in range(lead)):
            return False
        if v[lead]:
            q, r = divmod(v[lead], row[lead])
            if r:
                return False
            v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


def hnf(m: IntMatrix) -> IntMatrix:
    """Row-style Hermite normal form with zero rows dropped.

    The output is the canonical basis of the row lattice of ``m``: two
    generating sets of the same lattice give identical results, and the form
    is idempotent.
    """
    if m.rows == 0 or m.cols == 0:
        raise ValueError("hnf needs a nonempty matrix")
    return IntMatrix.from_rows(hnf_rows(m.entries), m.cols)
