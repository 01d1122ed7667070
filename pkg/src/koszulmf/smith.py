"""Smith normal form over Euclidean rings, with invertible transforms.

smith_normal_form(A) returns (S, U, V) with U*A*V = S, U and V of unit
determinant, S diagonal with each pivot dividing the next, and pivots
normalized (positive over ZZ, monic for polynomials, 1 over fields).
The extended variant also returns the inverses of U and V, which the
homology computation needs.
"""

from __future__ import annotations

from .matrices import Matrix
from .rings import RingError, elem_divmod, elem_norm


class _Worker:
    """Mutable state for one Smith reduction, tracking all four transforms."""

    def __init__(self, A):
        ring = A.ring
        if not ring.is_euclidean:
            raise RingError(f"Smith normal form needs a Euclidean ring, "
                            f"got {ring!r}")
        self.ring = ring
        self.m = A.nrows
        self.n = A.ncols
        self.M = [list(r) for r in A.rows]
        self.U = self._ident(self.m)
        self.Uinv = self._ident(self.m)
        self.V = self._ident(self.n)
        self.Vinv = self._ident(self.n)

    def _ident(self, k):
        one, zero = self.ring.one(), self.ring.zero()
        return [[one if i == j else zero for j in range(k)] for i in range(k)]

    # Row operations act on the left: M -> E*M, U -> E*U, Uinv -> Uinv*E^(-1).

    def row_swap(self, i, j):
        if i == j:
            return
        self.M[i], self.M[j] = self.M[j], self.M[i]
        self.U[i], self.U[j] = self.U[j], self.U[i]
        for row in self.Uinv:
            row[i], row[j] = row[j], row[i]

    def row_addmul(self, i, j, c):
        if c.is_zero():
            return
        self.M[i] = [a + c * b for a, b in zip(self.M[i], self.M[j])]
        self.U[i] = [a + c * b for a, b in zip(self.U[i], self.U[j])]
        for row in self.Uinv:
            row[j] = row[j] - c * row[i]

    def row_scale(self, i, u, uinv):
        self.M[i] = [u * a for a in self.M[i]]
        self.U[i] = [u * a for a in self.U[i]]
        for row in self.Uinv:
            row[i] = uinv * row[i]

    # Column operations act on the right: M -> M*E, V -> V*E, Vinv -> E^(-1)*Vinv.

    def col_swap(self, i, j):
        if i == j:
            return
        for row in self.M:
            row[i], row[j] = row[j], row[i]
        for row in self.V:
            row[i], row[j] = row[j], row[i]
        self.Vinv[i], self.Vinv[j] = self.Vinv[j], self.Vinv[i]

    def col_addmul(self, i, j, c):
        """Column i gets column j times c."""
        if c.is_zero():
            return
        for row in self.M:
            row[i] = row[i] + c * row[j]
        for row in self.V:
            row[i] = row[i] + c * row[j]
        self.Vinv[j] = [a - c * b for a, b in zip(self.Vinv[j], self.Vinv[i])]

    def col_scale(self, i, u, uinv):
        for row in self.M:
            row[i] = u * row[i]
        for row in self.V:
            row[i] = u * row[i]
        self.Vinv[i] = [uinv * a for a in self.Vinv[i]]

    # -- the reduction ------------------------------------------------------

    def _find_pivot(self, t):
        best = None
        best_norm = None
        for i in range(t, self.m):
            row = self.M[i]
            for j in range(t, self.n):
                nm = elem_norm(row[j])
                if nm is None:
                    continue
                if best is None or nm < best_norm:
                    best, best_norm = (i, j), nm
        return best

    def _clear_position(self, t):
        """Make M[t][t] the only nonzero entry in its row and column within
        the trailing block."""
        while True:
            pos = self._find_pivot(t)
            if pos is None:
                return False
            self.row_swap(t, pos[0])
            self.col_swap(t, pos[1])
            dirty = False
            pivot = self.M[t][t]
            for i in range(t + 1, self.m):
                a = self.M[i][t]
                if a.is_zero():
                    continue
                q, r = elem_divmod(a, pivot)
                self.row_addmul(i, t, -q)
                if not r.is_zero():
                    dirty = True
            for j in range(t + 1, self.n):
                a = self.M[t][j]
                if a.is_zero():
                    continue
                q, r = elem_divmod(a, pivot)
                self.col_addmul(j, t, -q)
                if not r.is_zero():
                    dirty = True
            if not dirty:
                clean = all(self.M[i][t].is_zero() for i in range(t + 1, self.m)) \
                    and all(self.M[t][j].is_zero() for j in range(t + 1, self.n))
                if clean:
                    return True

    def diagonalize(self):
        t = 0
        limit = min(self.m, self.n)
        while t < limit:
            if not self._clear_position(t):
                break
            t += 1
        return t

    def find_chain_violation(self):
        limit = min(self.m, self.n)
        pivots = [t for t in range(limit) if not self.M[t][t].is_zero()]
        for a in range(len(pivots)):
            for b in range(a + 1, len(pivots)):
                t, u = pivots[a], pivots[b]
                _, r = elem_divmod(self.M[u][u], self.M[t][t])
                if not r.is_zero():
                    return t, u
        return None

    def normalize_pivots(self):
        ring = self.ring
        limit = min(self.m, self.n)
        for t in range(limit):
            a = self.M[t][t]
            if a.is_zero():
                continue
            if ring.n_vars == 0:
                c = a.constant_value()
                if ring.kind == "ZZ":
                    if c < 0:
                        u = ring.from_int(-1)
                        self.row_scale(t, u, u)
                else:
                    u = ring.element({(): ring.c_inv(c)})
                    inv = ring.element({(): c})
                    self.row_scale(t, u, inv)
            else:
                lead = a.coefficient((a.total_degree(),))
                if lead != ring.c_one():
                    u = ring.element({(0,): ring.c_inv(lead)})
                    inv = ring.element({(0,): lead})
                    self.row_scale(t, u, inv)

    def results(self):
        ring = self.ring
        to_mat = lambda rows, r, c: Matrix(ring, r, c,
                                           tuple(tuple(row) for row in rows))
        S = to_mat(self.M, self.m, self.n)
        U = to_mat(self.U, self.m, self.m)
        Uinv = to_mat(self.Uinv, self.m, self.m)
        V = to_mat(self.V, self.n, self.n)
        Vinv = to_mat(self.Vinv, self.n, self.n)
        return S, U, V, Uinv, Vinv


def smith_with_inverses(A):
    """Return (S, U, V, Uinv, Vinv) with U*A*V = S in Smith form."""
    w = _Worker(A)
    w.diagonalize()
    while True:
        violation = w.find_chain_violation()
        if violation is None:
            break
        t, u = violation
        w.col_addmul(t, u, w.ring.one())
        w.diagonalize()
    w.normalize_pivots()
    return w.results()


def smith_normal_form(A):
    """Return (S, U, V) with U*A*V = S in Smith form."""
    S, U, V, _, _ = smith_with_inverses(A)
    return S, U, V


def smith_diagonal(S):
    """Nonzero diagonal entries of a Smith form matrix, in order."""
    out = []
    for t in range(min(S.nrows, S.ncols)):
        a = S.entry(t, t)
        if not a.is_zero():
            out.append(a)
    return out


def matrix_rank(A):
    if A.nrows == 0 or A.ncols == 0:
        return 0
    S, _, _, _, _ = smith_with_inverses(A)
    return len(smith_diagonal(S))


def solve_linear(A, B):
    """Solve A*X = B exactly over a Euclidean ring.

    B may have any number of columns. Returns X, or None when no solution
    exists.
    """
    if A.ring != B.ring or A.nrows != B.nrows:
        raise RingError("incompatible shapes in solve_linear")
    S, U, V, _, _ = smith_with_inverses(A)
    # From U*A*V = S: solve S*Y = U*B, then X = V*Y.
    rhs = U * B
    ring = A.ring
    Y = [[ring.zero()] * B.ncols for _ in range(A.ncols)]
    limit = min(S.nrows, S.ncols)
    for i in range(A.nrows):
        d = S.entry(i, i) if i < limit else ring.zero()
        for j in range(B.ncols):
            b = rhs.entry(i, j)
            if d.is_zero():
                if not b.is_zero():
                    return None
            else:
                q, r = elem_divmod(b, d)
                if not r.is_zero():
                    return None
                Y[i][j] = q
    Ymat = Matrix(ring, A.ncols, B.ncols, tuple(tuple(r) for r in Y))
    return V * Ymat
