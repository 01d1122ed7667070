"""Matrix factorizations and the bridge to two-periodic module data.

A matrix factorization of f consists of two free modules E0, E1 and maps
p0: E0 -> E1, p1: E1 -> E0 with p1 p0 = f * id and p0 p1 = f * id. A module
over the one-potential Koszul algebra folds into a factorization by summing
its even and odd degrees, and a factorization unfolds into a two-term
module; the two constructions are mutually inverse on the nose.

This file also holds the periodicity swap for two-term modules, the closed
formula for the factorization of a cone, tensor products of factorizations
and contraction witnesses.
"""

from __future__ import annotations

from .rings import RingError, ring_join
from .matrices import Matrix, block_matrix, vstack, hstack, permutation_matrix
from .smith import solve_linear
from .complexes import PerfectComplex
from .koszul import koszul_algebra
from .modules import (KoszulModule, KoszulMorphism, validate, phi_morphism,
                      tensor_with_koszul, cone as module_cone)
from .reports import Report, fail, passed


class MFError(ValueError):
    """Raised for malformed factorization data or mismatched inputs."""


class MatrixFactorization:
    """A two-periodic factorization of one potential."""

    __slots__ = ("ring", "potential", "p0", "p1")

    def __init__(self, ring, potential, p0, p1, check=True):
        self.ring = ring
        self.potential = ring.coerce(potential)
        if p0.ring != ring or p1.ring != ring:
            raise MFError("factors live over the wrong ring")
        if (p1.nrows, p1.ncols) != (p0.ncols, p0.nrows):
            raise MFError(f"factor shapes {p0.nrows}x{p0.ncols} and "
                          f"{p1.nrows}x{p1.ncols} are not transposed to "
                          f"each other")
        self.p0 = p0
        self.p1 = p1
        if check:
            report = mf_validate(self)
            if not report.passed:
                c = next(x for x in report.checks if not x.passed)
                raise MFError(f"{c.name} fails")

    @property
    def e0(self):
        return self.p0.ncols

    @property
    def e1(self):
        return self.p0.nrows

    def __eq__(self, other):
        return (isinstance(other, MatrixFactorization)
                and other.ring == self.ring
                and other.potential == self.potential
                and other.p0 == self.p0 and other.p1 == self.p1)

    def __repr__(self):
        return (f"MatrixFactorization({self.e0}|{self.e1} of "
                f"{self.potential} over {self.ring!r})")


def mf_validate(X):
    """Check both composite identities and return a report."""
    report = Report()
    want0 = Matrix.scalar(X.ring, X.potential, X.e0)
    if X.p1 * X.p0 == want0:
        report.add(passed("p1*p0-f*id", "even part"))
    else:
        report.add(fail("p1*p0-f*id", "even part",
                        "composite is not the potential times the identity"))
    want1 = Matrix.scalar(X.ring, X.potential, X.e1)
    if X.p0 * X.p1 == want1:
        report.add(passed("p0*p1-f*id", "odd part"))
    else:
        report.add(fail("p0*p1-f*id", "odd part",
                        "composite is not the potential times the identity"))
    return report


class MFMorphism:
    """A pair of maps between factorizations of the same potential.

    Parity 0 means chi0: E0 -> F0 and chi1: E1 -> F1; parity 1 means
    chi0: E0 -> F1 and chi1: E1 -> F0.
    """

    __slots__ = ("source", "target", "parity", "chi0", "chi1")

    def __init__(self, source, target, parity, chi0, chi1):
        if source.ring != target.ring:
            raise MFError("source and target over different rings")
        if source.potential != target.potential:
            raise MFError("source and target have different potentials")
        if parity not in (0, 1):
            raise MFError(f"parity must be 0 or 1, got {parity!r}")
        if parity == 0:
            want0 = (target.e0, source.e0)
            want1 = (target.e1, source.e1)
        else:
            want0 = (target.e1, source.e0)
            want1 = (target.e0, source.e1)
        if (chi0.nrows, chi0.ncols) != want0:
            raise MFError(f"chi0 has shape {chi0.nrows}x{chi0.ncols}, "
                          f"expected {want0[0]}x{want0[1]}")
        if (chi1.nrows, chi1.ncols) != want1:
            raise MFError(f"chi1 has shape {chi1.nrows}x{chi1.ncols}, "
                          f"expected {want1[0]}x{want1[1]}")
        self.source = source
        self.target = target
        self.parity = parity
        self.chi0 = chi0
        self.chi1 = chi1

    def is_closed(self):
        image = delta(self)
        return image.chi0.is_zero() and image.chi1.is_zero()

    def __eq__(self, other):
        return (isinstance(other, MFMorphism)
                and other.source == self.source and other.target == self.target
                and other.parity == self.parity
                and other.chi0 == self.chi0 and other.chi1 == self.chi1)


def delta(chi):
    """The differential on maps of factorizations; flips parity and squares
    to zero."""
    X, Y = chi.source, chi.target
    if chi.parity == 0:
        out0 = Y.p0 * chi.chi0 - chi.chi1 * X.p0
        out1 = Y.p1 * chi.chi1 - chi.chi0 * X.p1
        return MFMorphism(X, Y, 1, out0, out1)
    out0 = Y.p1 * chi.chi0 + chi.chi1 * X.p0
    out1 = Y.p0 * chi.chi1 + chi.chi0 * X.p1
    return MFMorphism(X, Y, 0, out0, out1)


def mf_shift(X):
    """Swap the two sides and negate both maps; the potential stays."""
    return MatrixFactorization(X.ring, X.potential, -X.p1, -X.p0, check=False)


def mf_cone(chi):
    """Cone of a closed parity 0 morphism of factorizations."""
    if chi.parity != 0:
        raise MFError("cone needs a parity 0 morphism")
    if not chi.is_closed():
        raise MFError("cone needs a closed morphism")
    X, Y = chi.source, chi.target
    ring = X.ring
    p0 = block_matrix(ring, [
        [Y.p0, chi.chi1],
        [Matrix.zero(ring, X.e0, Y.e0), -X.p1],
    ])
    p1 = block_matrix(ring, [
        [Y.p1, chi.chi0],
        [Matrix.zero(ring, X.e1, Y.e1), -X.p0],
    ])
    return MatrixFactorization(ring, X.potential, p0, p1, check=False)


def mf_tensor(X, Y):
    """Tensor product of factorizations; the potentials add.

    Distinct coefficient rings are glued first, which needs a shared base,
    disjoint variables and no quotients.
    """
    if X.ring == Y.ring:
        ring = X.ring
        a0, a1, f = X.p0, X.p1, X.potential
        b0, b1, g = Y.p0, Y.p1, Y.potential
    else:
        ring, embed_left, embed_right = ring_join(X.ring, Y.ring)
        a0 = X.p0.map(embed_left, ring)
        a1 = X.p1.map(embed_left, ring)
        f = embed_left(X.potential)
        b0 = Y.p0.map(embed_right, ring)
        b1 = Y.p1.map(embed_right, ring)
        g = embed_right(Y.potential)
    e0, e1 = a0.ncols, a0.nrows
    f0, f1 = b0.ncols, b0.nrows
    I_e0 = Matrix.identity(ring, e0)
    I_e1 = Matrix.identity(ring, e1)
    I_f0 = Matrix.identity(ring, f0)
    I_f1 = Matrix.identity(ring, f1)
    P0 = block_matrix(ring, [
        [I_e0.kron(b0), a1.kron(I_f1)],
        [a0.kron(I_f0), -(I_e1.kron(b1))],
    ])
    P1 = block_matrix(ring, [
        [I_e0.kron(b1), a1.kron(I_f0)],
        [a0.kron(I_f1), -(I_e1.kron(b0))],
    ])
    return MatrixFactorization(ring, f + g, P0, P1, check=False)


def _parity_stripe(M, row_degs, col_degs):
    """The even/odd block of d + h: d one degree up, h one degree down."""
    ring = M.ring
    total_r = sum(M.rank(r) for r in row_degs)
    total_c = sum(M.rank(c) for c in col_degs)
    if not row_degs or not col_degs:
        return Matrix.zero(ring, total_r, total_c)
    grid = []
    for r in row_degs:
        row = []
        for c in col_degs:
            if r == c + 1:
                row.append(M.d(c))
            elif r == c - 1:
                row.append(M.h(1, c))
            else:
                row.append(Matrix.zero(ring, M.rank(r), M.rank(c)))
        grid.append(row)
    return block_matrix(ring, grid)


def fold(M):
    """Collapse a one-potential module into a factorization: even degrees on
    one side, odd on the other, with d + h as the maps."""
    if M.n != 1:
        raise MFError("folding needs exactly one potential")
    evens = [m for m in M.support if m % 2 == 0]
    odds = [m for m in M.support if m % 2 != 0]
    p0 = _parity_stripe(M, odds, evens)
    p1 = _parity_stripe(M, evens, odds)
    return MatrixFactorization(M.ring, M.potentials[0], p0, p1, check=False)


def fold_morphism(phi):
    """Fold a module morphism into a closed parity 0 map of factorizations."""
    S, T = phi.source, phi.target
    if S.n != 1:
        raise MFError("folding needs exactly one potential")
    ring = S.ring

    def stripe(row_degs, col_degs):
        total_r = sum(T.rank(r) for r in row_degs)
        total_c = sum(S.rank(c) for c in col_degs)
        if not row_degs or not col_degs:
            return Matrix.zero(ring, total_r, total_c)
        grid = []
        for r in row_degs:
            row = []
            for c in col_degs:
                if r == c:
                    row.append(phi.component(c))
                else:
                    row.append(Matrix.zero(ring, T.rank(r), S.rank(c)))
            grid.append(row)
        return block_matrix(ring, grid)

    ev_s = [m for m in S.support if m % 2 == 0]
    od_s = [m for m in S.support if m % 2 != 0]
    ev_t = [m for m in T.support if m % 2 == 0]
    od_t = [m for m in T.support if m % 2 != 0]
    chi0 = stripe(ev_t, ev_s)
    chi1 = stripe(od_t, od_s)
    return MFMorphism(fold(S), fold(T), 0, chi0, chi1)


def unfold(X):
    """The two-term module in degrees [-1, 0] carried by a factorization:
    d is p1, the homotopy is p0."""
    alg = koszul_algebra(X.ring, [X.potential])
    ranks = {-1: X.e1, 0: X.e0}
    diffs = {}
    homos = [{}]
    if X.e0 and X.e1:
        diffs[-1] = X.p1
        homos[0][0] = X.p0
    cpx = PerfectComplex(X.ring, ranks, diffs, check=False)
    return KoszulModule(alg, cpx, homos, check=False)


def unfold_morphism(chi):
    """Unfold a closed parity 0 map into a morphism of two-term modules."""
    if chi.parity != 0:
        raise MFError("unfolding needs a parity 0 morphism")
    if not chi.is_closed():
        raise MFError("unfolding needs a closed morphism")
    A = unfold(chi.source)
    B = unfold(chi.target)
    return KoszulMorphism(A, B, {-1: chi.chi1, 0: chi.chi0}, check=False)


def swap_periodicity(M):
    """Swap the two structure maps of a two-term module, one degree down.

    For a module with d = p and homotopy q on degrees [m-1, m] the output
    has d = q and homotopy p on degrees [m-2, m-1]; doing it twice gives
    exactly the double shift. Returns (output, certificates) where the
    certificates are three validated morphisms into a common witness module;
    the third one, from the output, is the designated quasi-isomorphism.
    """
    if M.n != 1:
        raise MFError("swap needs exactly one potential")
    report = validate(M)
    if not report.passed:
        c = next(x for x in report.checks if not x.passed)
        raise MFError(f"invalid module: {c.name} fails at {c.location}")
    if M.min_degree is None:
        raise MFError("empty module")
    m = M.max_degree
    if M.min_degree < m - 1:
        raise MFError("support must lie in two consecutive degrees")
    ring = M.ring
    alg = M.algebra
    fpot = M.potentials[0]
    e = M.rank(m - 1)
    f = M.rank(m)
    p = M.d(m - 1)
    q = M.h(1, m)

    out_diffs = {m - 2: q} if e and f else {}
    out_homos = [{m - 1: p}] if e and f else [{}]
    out_cpx = PerfectComplex(ring, {m - 2: f, m - 1: e}, out_diffs,
                             check=False)
    output = KoszulModule(alg, out_cpx, out_homos, check=False)

    phi1 = phi_morphism(M)

    I_f = Matrix.identity(ring, f)
    I_e = Matrix.identity(ring, e)
    w_ranks = {m - 2: f, m - 1: f + e, m: f}
    w_diffs = {}
    w_homos = [{}]
    if f:
        w_diffs[m - 2] = vstack(ring, [-Matrix.scalar(ring, fpot, f), q],
                                ncols=f)
        w_diffs[m - 1] = hstack(ring, [I_f, p], nrows=f)
        w_homos[0][m - 1] = hstack(ring, [-I_f, Matrix.zero(ring, f, e)],
                                   nrows=f)
        w_homos[0][m] = vstack(ring, [Matrix.zero(ring, f, f), q], ncols=f)
    W = KoszulModule(alg, PerfectComplex(ring, w_ranks, w_diffs, check=False),
                     w_homos, check=False)

    anchor = PerfectComplex(ring, {m - 1: e}, {}, check=False)
    T2 = tensor_with_koszul(alg, anchor)
    graph = vstack(ring, [-p, I_e], ncols=e)
    phi2 = KoszulMorphism(T2, W, {m - 2: p, m - 1: graph}, check=False)
    phi3 = KoszulMorphism(output, W, {m - 2: I_f, m - 1: graph}, check=False)

    if module_cone(phi2) != module_cone(phi1):
        raise MFError("periodicity cones disagree; swap bookkeeping is "
                      "broken")
    return output, (phi1, phi2, phi3)


def sing_cone_formula(phi):
    """The factorization of the cone of a morphism of two-term modules,
    written directly in terms of the pieces.

    Both modules must live in degrees [-1, 0]; align anything else with
    shift_module first. Returns (X, (U0, U1)) where U0, U1 are the
    permutations identifying X with the fold of the cone:
    X.p0 = U1 * fold(cone).p0 * U0^T and X.p1 = U0 * fold(cone).p1 * U1^T.
    """
    S, T = phi.source, phi.target
    if S.n != 1:
        raise MFError("the cone formula needs exactly one potential")
    for M in (S, T):
        if any(deg not in (-1, 0) for deg in M.support):
            raise MFError("modules must live in degrees [-1, 0]; align "
                          "with shift_module first")
    ring = S.ring
    e0, e1 = S.rank(0), S.rank(-1)
    f0, f1 = T.rank(0), T.rank(-1)
    p0 = block_matrix(ring, [
        [T.h(1, 0), phi.component(-1)],
        [Matrix.zero(ring, e0, f0), -S.d(-1)],
    ])
    p1 = block_matrix(ring, [
        [T.d(-1), phi.component(0)],
        [Matrix.zero(ring, e1, f1), -S.h(1, 0)],
    ])
    X = MatrixFactorization(ring, S.potentials[0], p0, p1, check=False)
    perm0 = list(range(e1, e1 + f0)) + list(range(e1))
    perm1 = list(range(e0, e0 + f1)) + list(range(e0))
    U0 = permutation_matrix(ring, perm0)
    U1 = permutation_matrix(ring, perm1)
    return X, (U0, U1)


def _vec(mat):
    return [mat.entry(i, j) for i in range(mat.nrows)
            for j in range(mat.ncols)]


def contraction_witness(X):
    """Maps s0: E0 -> E1 and s1: E1 -> E0 with p1 s0 + s1 p0 = id and
    p0 s1 + s0 p1 = id, or None when no such pair exists. Euclidean
    coefficient rings only."""
    ring = X.ring
    if not ring.is_euclidean:
        raise RingError(f"contraction witness needs a Euclidean ring, "
                        f"got {ring!r}")
    e0, e1 = X.e0, X.e1
    I0 = Matrix.identity(ring, e0)
    I1 = Matrix.identity(ring, e1)
    system = block_matrix(ring, [
        [X.p1.kron(I0), I0.kron(X.p0.transpose())],
        [I1.kron(X.p1.transpose()), X.p0.kron(I1)],
    ])
    rhs = Matrix(ring, e0 * e0 + e1 * e1, 1,
                 tuple((v,) for v in _vec(I0) + _vec(I1)))
    sol = solve_linear(system, rhs)
    if sol is None:
        return None
    flat = [sol.entry(i, 0) for i in range(sol.nrows)]
    s0 = Matrix(ring, e1, e0, tuple(tuple(flat[i * e0:(i + 1) * e0])
                                    for i in range(e1)))
    rest = flat[e1 * e0:]
    s1 = Matrix(ring, e0, e1, tuple(tuple(rest[i * e1:(i + 1) * e1])
                                    for i in range(e0)))
    return s0, s1


def is_contractible(X):
    """True when the identity is null-homotopic; Euclidean rings only."""
    return contraction_witness(X) is not None
