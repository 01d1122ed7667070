"""Dense row-major matrices over the exact rings, with block helpers.

Shapes are first-class: 0-by-n and n-by-0 matrices are legal everywhere, so
complexes with empty components never need special casing.
"""

from __future__ import annotations

from .rings import RingElement, RingError


class Matrix:
    """An immutable matrix of ring elements."""

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring, nrows, ncols, rows):
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def build(cls, ring, rows, nrows=None, ncols=None):
        """Build from a nested sequence; entries may be elements, ints or
        canonical strings. Explicit nrows/ncols are needed when a dimension
        is zero."""
        rows = [list(r) for r in rows]
        m = len(rows) if nrows is None else nrows
        if m and len(rows) != m:
            raise RingError(f"expected {m} rows, got {len(rows)}")
        if m == 0:
            if ncols is None:
                raise RingError("ncols required for a matrix with no rows")
            return cls(ring, 0, ncols, ())
        n = len(rows[0]) if ncols is None else ncols
        data = []
        for r in rows:
            if len(r) != n:
                raise RingError("ragged rows in matrix data")
            data.append(tuple(ring.coerce(entry) for entry in r))
        return cls(ring, m, n, tuple(data))

    @classmethod
    def zero(cls, ring, nrows, ncols):
        z = ring.zero()
        return cls(ring, nrows, ncols, tuple(tuple(z for _ in range(ncols))
                                             for _ in range(nrows)))

    @classmethod
    def identity(cls, ring, n):
        one, zero = ring.one(), ring.zero()
        return cls(ring, n, n, tuple(tuple(one if i == j else zero
                                           for j in range(n)) for i in range(n)))

    @classmethod
    def scalar(cls, ring, value, n):
        value = ring.coerce(value)
        zero = ring.zero()
        return cls(ring, n, n, tuple(tuple(value if i == j else zero
                                           for j in range(n)) for i in range(n)))

    # -- access -------------------------------------------------------------

    def entry(self, i, j):
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def to_lists(self):
        return [list(r) for r in self.rows]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and other.ring == self.ring
                and other.nrows == self.nrows and other.ncols == self.ncols
                and other.rows == self.rows)

    def __repr__(self):
        if self.nrows == 0 or self.ncols == 0:
            return f"Matrix({self.nrows}x{self.ncols} over {self.ring!r})"
        body = "; ".join(", ".join(str(e) for e in r) for r in self.rows)
        return f"Matrix[{body}]"

    def is_zero(self):
        return all(e.is_zero() for r in self.rows for e in r)

    # -- arithmetic ---------------------------------------------------------

    def _check_same_shape(self, other):
        if not isinstance(other, Matrix):
            raise RingError("expected a matrix")
        if other.ring != self.ring:
            raise RingError("mixed rings in matrix arithmetic")
        if (other.nrows, other.ncols) != (self.nrows, self.ncols):
            raise RingError(f"shape mismatch: {self.nrows}x{self.ncols} vs "
                            f"{other.nrows}x{other.ncols}")

    def __add__(self, other):
        self._check_same_shape(other)
        return Matrix(self.ring, self.nrows, self.ncols,
                      tuple(tuple(a + b for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.rows, other.rows)))

    def __sub__(self, other):
        self._check_same_shape(other)
        return Matrix(self.ring, self.nrows, self.ncols,
                      tuple(tuple(a - b for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.rows, other.rows)))

    def __neg__(self):
        return Matrix(self.ring, self.nrows, self.ncols,
                      tuple(tuple(-a for a in r) for r in self.rows))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if other.ring != self.ring:
                raise RingError("mixed rings in matrix product")
            if self.ncols != other.nrows:
                raise RingError(f"cannot multiply {self.nrows}x{self.ncols} "
                                f"by {other.nrows}x{other.ncols}")
            zero = self.ring.zero()
            out = []
            for i in range(self.nrows):
                left = self.rows[i]
                acc = [zero] * other.ncols
                for k in range(self.ncols):
                    a = left[k]
                    if a.is_zero():
                        continue
                    rrow = other.rows[k]
                    for j in range(other.ncols):
                        b = rrow[j]
                        if not b.is_zero():
                            acc[j] = acc[j] + a * b
                out.append(tuple(acc))
            return Matrix(self.ring, self.nrows, other.ncols, tuple(out))
        if isinstance(other, (RingElement, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (RingElement, int)):
            return self.scale(other)
        return NotImplemented

    def scale(self, value):
        value = self.ring.coerce(value)
        return Matrix(self.ring, self.nrows, self.ncols,
                      tuple(tuple(value * a for a in r) for r in self.rows))

    def map(self, fn, ring=None):
        """Apply fn to every entry, optionally landing in another ring."""
        ring = ring or self.ring
        return Matrix(ring, self.nrows, self.ncols,
                      tuple(tuple(fn(a) for a in r) for r in self.rows))

    def transpose(self):
        return Matrix(self.ring, self.ncols, self.nrows,
                      tuple(self.column(j) for j in range(self.ncols)))

    def kron(self, other):
        """Kronecker product, left index major: entry ((i,k),(j,l)) is
        self[i,j] * other[k,l]."""
        if other.ring != self.ring:
            raise RingError("mixed rings in Kronecker product")
        out = []
        for i in range(self.nrows):
            for k in range(other.nrows):
                row = []
                for j in range(self.ncols):
                    a = self.rows[i][j]
                    row.extend(a * b for b in other.rows[k])
                out.append(tuple(row))
        return Matrix(self.ring, self.nrows * other.nrows,
                      self.ncols * other.ncols, tuple(out))

    def select_rows(self, indices):
        return Matrix(self.ring, len(indices), self.ncols,
                      tuple(self.rows[i] for i in indices))

    def select_columns(self, indices):
        return Matrix(self.ring, self.nrows, len(indices),
                      tuple(tuple(r[j] for j in indices) for r in self.rows))

    def det(self):
        """Determinant by Laplace expansion with memoization on column sets."""
        if self.nrows != self.ncols:
            raise RingError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return self.ring.one()
        cache = {}

        def minor(row, cols):
            if row == n:
                return self.ring.one()
            key = (row, cols)
            found = cache.get(key)
            if found is not None:
                return found
            total = self.ring.zero()
            sign = 1
            for pos, j in enumerate(cols):
                a = self.rows[row][j]
                if not a.is_zero():
                    sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
                    term = a * sub
                    total = total + (term if sign > 0 else -term)
                sign = -sign
            cache[key] = total
            return total

        return minor(0, tuple(range(n)))


def hstack(ring, mats, nrows=None):
    mats = list(mats)
    if not mats:
        raise RingError("hstack of nothing needs explicit shape")
    m = mats[0].nrows if nrows is None else nrows
    for a in mats:
        if a.nrows != m:
            raise RingError("hstack row count mismatch")
    rows = []
    for i in range(m):
        row = []
        for a in mats:
            row.extend(a.rows[i])
        rows.append(tuple(row))
    return Matrix(ring, m, sum(a.ncols for a in mats), tuple(rows))


def vstack(ring, mats, ncols=None):
    mats = list(mats)
    if not mats:
        raise RingError("vstack of nothing needs explicit shape")
    n = mats[0].ncols if ncols is None else ncols
    rows = []
    for a in mats:
        if a.ncols != n:
            raise RingError("vstack column count mismatch")
        rows.extend(a.rows)
    return Matrix(ring, sum(a.nrows for a in mats), n, tuple(rows))


def block_matrix(ring, grid):
    """Assemble a matrix from a 2D grid of blocks with consistent shapes."""
    stripes = [hstack(ring, row_blocks) for row_blocks in grid]
    return vstack(ring, stripes)


def block_diagonal(ring, mats):
    mats = list(mats)
    total_r = sum(a.nrows for a in mats)
    total_c = sum(a.ncols for a in mats)
    out = [[ring.zero()] * total_c for _ in range(total_r)]
    r0 = c0 = 0
    for a in mats:
        for i in range(a.nrows):
            row = out[r0 + i]
            for j in range(a.ncols):
                row[c0 + j] = a.rows[i][j]
        r0 += a.nrows
        c0 += a.ncols
    return Matrix(ring, total_r, total_c, tuple(tuple(r) for r in out))


def permutation_matrix(ring, perm):
    """The matrix P with P[i, perm[i]] = 1, so (P v)[i] = v[perm[i]]."""
    n = len(perm)
    one, zero = ring.one(), ring.zero()
    return Matrix(ring, n, n, tuple(tuple(one if j == perm[i] else zero
                                          for j in range(n)) for i in range(n)))
