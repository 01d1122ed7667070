"""Modules over a Koszul algebra, presented by explicit matrices.

A module here is a bounded complex of finite free modules together with one
degree -1 operator per potential. Writing d for the differential and h_i for
the operator attached to the i-th potential f_i, the data must satisfy

    d * d = 0
    h_i * h_i = 0
    d * h_i + h_i * d = f_i * id
    h_i * h_j + h_j * h_i = 0   for i != j

in every degree. ``validate`` checks exactly these and reports each violated
identity with its degree.
"""

from __future__ import annotations

from .koszul import koszul_algebra
from .matrices import Matrix, block_matrix, block_diagonal
from .rings import Ring, ring_join
from .complexes import (PerfectComplex, ChainMorphism, cone_complex,
                        shift_complex, direct_sum_complex, tensor_complex,
                        tensor_basis, validate_complex)
from .reports import Report, fail, passed


class ModuleError(ValueError):
    """Raised for malformed module data or mismatched inputs."""


class KoszulModule:
    """A complex with one homotopy operator per potential.

    ``homotopies`` is a sequence of n dicts, the i-th mapping a degree m to
    the matrix of h_i out of degree m (which lands in degree m - 1, so its
    shape is rank(m-1) by rank(m)). Matrices are stored exactly where both
    adjacent ranks are nonzero; everything else is implicitly zero.
    """

    __slots__ = ("algebra", "complex", "homotopies")

    def __init__(self, algebra, complex_, homotopies=None, check=True):
        if complex_.ring != algebra.ring:
            raise ModuleError("complex and algebra live over different rings")
        self.algebra = algebra
        self.complex = complex_
        n = algebra.n
        given = list(homotopies) if homotopies is not None else [{}] * n
        if len(given) != n:
            raise ModuleError(f"expected {n} homotopy operators, "
                              f"got {len(given)}")
        stored = []
        for i, table in enumerate(given, start=1):
            table = dict(table or {})
            keep = {}
            for m in complex_.support:
                if complex_.rank(m - 1):
                    mat = table.pop(m, None)
                    if mat is None:
                        mat = Matrix.zero(algebra.ring, complex_.rank(m - 1),
                                          complex_.rank(m))
                    if mat.ring != algebra.ring:
                        raise ModuleError(f"homotopy {i} at degree {m} lives "
                                          f"over the wrong ring")
                    want = (complex_.rank(m - 1), complex_.rank(m))
                    if (mat.nrows, mat.ncols) != want:
                        raise ModuleError(
                            f"homotopy {i} at degree {m} has shape "
                            f"{mat.nrows}x{mat.ncols}, expected "
                            f"{want[0]}x{want[1]}")
                    keep[m] = mat
            for m, mat in table.items():
                if not mat.is_zero():
                    raise ModuleError(f"homotopy {i} at degree {m} where a "
                                      f"rank is zero")
            stored.append(keep)
        self.homotopies = tuple(stored)
        if check:
            report = validate(self)
            if not report.passed:
                c = next(x for x in report.checks if not x.passed)
                raise ModuleError(f"{c.name} fails at {c.location}")

    # -- delegation to the underlying complex -------------------------------

    @property
    def ring(self):
        return self.algebra.ring

    @property
    def n(self):
        return self.algebra.n

    @property
    def potentials(self):
        return self.algebra.potentials

    @property
    def ranks(self):
        return self.complex.ranks

    def rank(self, m):
        return self.complex.rank(m)

    def d(self, m):
        return self.complex.d(m)

    def h(self, i, m):
        """The homotopy for the i-th potential out of degree m (1-based i)."""
        if not 1 <= i <= self.n:
            raise ModuleError(f"homotopy index {i} out of range 1..{self.n}")
        found = self.homotopies[i - 1].get(m)
        if found is not None:
            return found
        return Matrix.zero(self.ring, self.rank(m - 1), self.rank(m))

    @property
    def support(self):
        return self.complex.support

    @property
    def min_degree(self):
        return self.complex.min_degree

    @property
    def max_degree(self):
        return self.complex.max_degree

    @property
    def amplitude(self):
        return self.complex.amplitude

    def total_rank(self):
        return self.complex.total_rank()

    def __eq__(self, other):
        return (isinstance(other, KoszulModule)
                and other.algebra == self.algebra
                and other.complex == self.complex
                and other.homotopies == self.homotopies)

    def __repr__(self):
        pots = ", ".join(str(f) for f in self.potentials)
        return f"KoszulModule({self.complex!r}; potentials {pots})"


def validate(module):
    """Check every defining identity of the module and return a report.

    Each failed check names the violated identity and says at which degree
    (and for which potential index) it breaks.
    """
    report = Report()
    M = module
    n = M.n

    d2 = validate_complex(M.complex)
    if d2:
        report.extend(d2)
    else:
        report.add(passed("d^2", "all degrees"))

    ok = True
    for i in range(1, n + 1):
        for m in M.support:
            comp = M.h(i, m - 1) * M.h(i, m)
            if not comp.is_zero():
                ok = False
                report.add(fail("h^2", f"degree {m}, index {i}",
                                "homotopy does not square to zero"))
    if ok:
        report.add(passed("h^2", "all degrees"))

    ok = True
    for i in range(1, n + 1):
        f = M.potentials[i - 1]
        for m in M.support:
            lhs = M.d(m - 1) * M.h(i, m) + M.h(i, m + 1) * M.d(m)
            want = Matrix.scalar(M.ring, f, M.rank(m))
            if lhs != want:
                ok = False
                report.add(fail("[d,h]-f*id", f"degree {m}, index {i}",
                                "d h + h d is not the potential times the "
                                "identity"))
    if ok:
        report.add(passed("[d,h]-f*id", "all degrees"))

    ok = True
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for m in M.support:
                anti = M.h(i, m - 1) * M.h(j, m) + M.h(j, m - 1) * M.h(i, m)
                if not anti.is_zero():
                    ok = False
                    report.add(fail("[h_i,h_j]",
                                    f"degree {m}, indices {i},{j}",
                                    "homotopies for distinct potentials do "
                                    "not anticommute"))
    if ok:
        report.add(passed("[h_i,h_j]", "all degrees"))

    return report


class KoszulMorphism:
    """A degree 0 map of modules over one algebra, one matrix per degree."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source, target, components=None, check=True):
        if source.algebra != target.algebra:
            raise ModuleError("source and target over different algebras")
        self.source = source
        self.target = target
        comps = dict(components or {})
        stored = {}
        for m in source.support:
            if target.rank(m):
                mat = comps.pop(m, None)
                if mat is None:
                    mat = Matrix.zero(source.ring, target.rank(m),
                                      source.rank(m))
                if (mat.nrows, mat.ncols) != (target.rank(m), source.rank(m)):
                    raise ModuleError(f"component at degree {m} has shape "
                                      f"{mat.nrows}x{mat.ncols}, expected "
                                      f"{target.rank(m)}x{source.rank(m)}")
                stored[m] = mat
        for m, mat in comps.items():
            if not mat.is_zero():
                raise ModuleError(f"component at degree {m} where a rank "
                                  f"is zero")
        self.components = stored
        if check:
            report = validate_morphism(self)
            if not report.passed:
                c = next(x for x in report.checks if not x.passed)
                raise ModuleError(f"{c.name} fails at {c.location}")

    @property
    def algebra(self):
        return self.source.algebra

    def component(self, m):
        found = self.components.get(m)
        if found is not None:
            return found
        return Matrix.zero(self.source.ring, self.target.rank(m),
                           self.source.rank(m))

    def chain_morphism(self):
        """Forget the homotopies: the same data as a map of complexes."""
        return ChainMorphism(self.source.complex, self.target.complex,
                             dict(self.components), check=False)

    def __eq__(self, other):
        return (isinstance(other, KoszulMorphism)
                and other.source == self.source and other.target == self.target
                and other.components == self.components)


def validate_morphism(phi):
    """Check that phi commutes with d and with every homotopy operator."""
    report = Report()
    S, T = phi.source, phi.target
    degrees = sorted(set(S.support) | set(T.support))

    ok = True
    for m in degrees:
        lhs = T.d(m) * phi.component(m)
        rhs = phi.component(m + 1) * S.d(m)
        if lhs != rhs:
            ok = False
            report.add(fail("commutes-with-d", f"degree {m}",
                            "map does not commute with the differential"))
    if ok:
        report.add(passed("commutes-with-d", "all degrees"))

    ok = True
    for i in range(1, S.n + 1):
        for m in degrees:
            lhs = T.h(i, m) * phi.component(m)
            rhs = phi.component(m - 1) * S.h(i, m)
            if lhs != rhs:
                ok = False
                report.add(fail("commutes-with-h", f"degree {m}, index {i}",
                                "map does not commute with a homotopy"))
    if ok:
        report.add(passed("commutes-with-h", "all degrees"))

    return report


def cone(phi):
    """Mapping cone of a module morphism.

    Degree s holds source degree s+1 on top of target degree s. The
    differential is [[-d_src, 0], [phi, d_tgt]] and each homotopy is the
    block diagonal [[-h_src, 0], [0, h_tgt]].
    """
    S, T = phi.source, phi.target
    ring = S.ring
    cpx = cone_complex(phi.chain_morphism())
    homos = []
    for i in range(1, S.n + 1):
        table = {}
        for s in cpx.support:
            if not cpx.rank(s - 1):
                continue
            top = -S.h(i, s + 1)
            bottom = T.h(i, s)
            z_tr = Matrix.zero(ring, S.rank(s), T.rank(s))
            z_bl = Matrix.zero(ring, T.rank(s - 1), S.rank(s + 1))
            table[s] = block_matrix(ring, [[top, z_tr], [z_bl, bottom]])
        homos.append(table)
    return KoszulModule(S.algebra, cpx, homos, check=False)


def shift_module(M, k):
    """Shift degrees down by k; d and every homotopy pick up (-1)^k."""
    cpx = shift_complex(M.complex, k)
    sign = 1 if k % 2 == 0 else -1
    homos = []
    for i in range(1, M.n + 1):
        table = {}
        for s in cpx.support:
            if cpx.rank(s - 1):
                h = M.h(i, s + k)
                table[s] = h if sign > 0 else -h
        homos.append(table)
    return KoszulModule(M.algebra, cpx, homos, check=False)


def direct_sum_module(M, N):
    if M.algebra != N.algebra:
        raise ModuleError("direct sum over different algebras")
    cpx = direct_sum_complex(M.complex, N.complex)
    homos = []
    for i in range(1, M.n + 1):
        table = {}
        for s in cpx.support:
            if cpx.rank(s - 1):
                table[s] = block_diagonal(M.ring, [M.h(i, s), N.h(i, s)])
        homos.append(table)
    return KoszulModule(M.algebra, cpx, homos, check=False)


def tensor_koszul_basis(alg, C, m):
    """Ordered basis of the Koszul tensor of C in degree m.

    Entries are triples (k, S, c): subset size k ascending, index subset S in
    lexicographic order, then the basis index c of the component C_{m+k}.
    """
    out = []
    for k in range(alg.n + 1):
        rc = C.rank(m + k)
        if rc:
            for S in alg.subsets(k):
                for c in range(rc):
                    out.append((k, S, c))
    return out


def tensor_with_koszul(alg, C):
    """Tensor a complex with the Koszul algebra on the same ring.

    The result collects, in degree m, a copy of C_{m+k} for every k-element
    index subset. On the summand labelled (S, c) with |S| = k the
    differential acts by (-1)^k d_C plus the terms dropping one index of S
    with an alternating sign, and the homotopy for potential j inserts j
    into S when absent.
    """
    if C.ring != alg.ring:
        raise ModuleError("complex and algebra live over different rings")
    ring = alg.ring
    n = alg.n
    ranks = {}
    degrees = set()
    for m0 in C.support:
        for k in range(n + 1):
            degrees.add(m0 - k)
    for m in degrees:
        r = len(tensor_koszul_basis(alg, C, m))
        if r:
            ranks[m] = r
    zero = ring.zero()

    diffs = {}
    for m in sorted(ranks):
        if not ranks.get(m + 1):
            continue
        src = tensor_koszul_basis(alg, C, m)
        tgt = tensor_koszul_basis(alg, C, m + 1)
        pos = {key: t for t, key in enumerate(tgt)}
        cols = []
        for (k, S, c) in src:
            col = [zero] * len(tgt)
            dC = C.d(m + k)
            for c2 in range(dC.nrows):
                coeff = dC.entry(c2, c)
                if not coeff.is_zero():
                    col[pos[(k, S, c2)]] = coeff if k % 2 == 0 else -coeff
            for l, idx in enumerate(S, start=1):
                smaller = tuple(x for x in S if x != idx)
                f = alg.potentials[idx - 1]
                col[pos[(k - 1, smaller, c)]] = f if l % 2 == 1 else -f
            cols.append(col)
        rows = tuple(tuple(cols[s][t] for s in range(len(src)))
                     for t in range(len(tgt)))
        diffs[m] = Matrix(ring, len(tgt), len(src), rows)

    one = ring.one()
    homos = []
    for j in range(1, n + 1):
        table = {}
        for m in sorted(ranks):
            if not ranks.get(m - 1):
                continue
            src = tensor_koszul_basis(alg, C, m)
            tgt = tensor_koszul_basis(alg, C, m - 1)
            pos = {key: t for t, key in enumerate(tgt)}
            cols = []
            for (k, S, c) in src:
                col = [zero] * len(tgt)
                if j not in S:
                    bigger = tuple(sorted(S + (j,)))
                    before = sum(1 for s in S if s < j)
                    col[pos[(k + 1, bigger, c)]] = one if before % 2 == 0 \
                        else -one
                cols.append(col)
            rows = tuple(tuple(cols[s][t] for s in range(len(src)))
                         for t in range(len(tgt)))
            table[m] = Matrix(ring, len(tgt), len(src), rows)
        homos.append(table)

    cpx = PerfectComplex(ring, ranks, diffs, check=False)
    return KoszulModule(alg, cpx, homos, check=False)


def phi_morphism(M):
    """The canonical map from the Koszul tensor of the underlying complex
    onto the module.

    On the summand labelled by the subset S = {i_1 < ... < i_k} in degree m
    the component is the composite h_{i_1}(m+1) h_{i_2}(m+2) ... h_{i_k}(m+k);
    the empty subset contributes the identity.
    """
    T = tensor_with_koszul(M.algebra, M.complex)
    comps = {}
    for m in T.support:
        if not M.rank(m):
            continue
        basis = tensor_koszul_basis(M.algebra, M.complex, m)
        cache = {}
        cols = []
        for (k, S, c) in basis:
            comp = cache.get(S)
            if comp is None:
                if not S:
                    comp = Matrix.identity(M.ring, M.rank(m))
                else:
                    comp = M.h(S[0], m + 1)
                    for t in range(1, k):
                        comp = comp * M.h(S[t], m + 1 + t)
                cache[S] = comp
            cols.append(comp.column(c))
        rows = tuple(tuple(cols[s][t] for s in range(len(cols)))
                     for t in range(M.rank(m)))
        comps[m] = Matrix(M.ring, M.rank(m), len(basis), rows)
    return KoszulMorphism(T, M, comps, check=False)


def commutator_check(M, indices):
    """Check the iterated commutator identity for an ascending index tuple.

    For S = (i_1 < ... < i_k) write H_m for the composite
    h_{i_1}(m-k+1) ... h_{i_k}(m). The identity checked at every degree is

        d H_m - (-1)^k H_{m+1} d = sum_j (-1)^(j+1) f_{i_j} * (H without i_j)

    which for a single index is just the defining homotopy identity.
    """
    S = tuple(int(i) for i in indices)
    for i in S:
        if not 1 <= i <= M.n:
            raise ModuleError(f"potential index {i} out of range 1..{M.n}")
    if len(set(S)) != len(S):
        raise ModuleError("repeated potential index")
    if any(a > b for a, b in zip(S, S[1:])):
        raise ModuleError("potential indices must be strictly increasing")
    k = len(S)
    label = ",".join(str(i) for i in S) if S else "(none)"

    def composite(subset, m):
        size = len(subset)
        if size == 0:
            return Matrix.identity(M.ring, M.rank(m))
        mat = M.h(subset[0], m - size + 1)
        for t in range(1, size):
            mat = mat * M.h(subset[t], m - size + 1 + t)
        return mat

    report = Report()
    if M.min_degree is None:
        report.add(passed("commutator", f"indices {label}"))
        return report
    sign_k = 1 if k % 2 == 0 else -1
    ok = True
    for m in range(M.min_degree - 1, M.max_degree + 2):
        lhs = M.d(m - k) * composite(S, m)
        tail = composite(S, m + 1) * M.d(m)
        lhs = lhs - tail if sign_k > 0 else lhs + tail
        rhs = Matrix.zero(M.ring, M.rank(m - k + 1), M.rank(m))
        for j, idx in enumerate(S, start=1):
            rest = tuple(x for x in S if x != idx)
            term = composite(rest, m).scale(M.potentials[idx - 1])
            rhs = rhs + term if j % 2 == 1 else rhs - term
        if lhs != rhs:
            ok = False
            report.add(fail("commutator", f"degree {m}, indices {label}",
                            "iterated commutator does not match the "
                            "potential expansion"))
    if ok:
        report.add(passed("commutator", f"indices {label}"))
    return report


def box_tensor(M, N):
    """External product of modules over two potential tuples of equal
    length.

    The coefficient rings must share the same base, have disjoint variables
    and no quotient. The result lives over the glued ring, with potentials
    f_i + g_i, the tensor product complex and the product rule homotopies
    h_i (x) 1 + (-1)^deg 1 (x) h_i'.
    """
    if M.n != N.n:
        raise ModuleError(f"potential count mismatch: {M.n} vs {N.n}")
    joined, embed_left, embed_right = ring_join(M.ring, N.ring)
    CA = PerfectComplex(joined, dict(M.ranks),
                        {m: d.map(embed_left, joined)
                         for m, d in M.complex.differentials.items()},
                        check=False)
    CB = PerfectComplex(joined, dict(N.ranks),
                        {m: d.map(embed_right, joined)
                         for m, d in N.complex.differentials.items()},
                        check=False)
    T = tensor_complex(CA, CB)
    potentials = tuple(embed_left(f) + embed_right(g)
                       for f, g in zip(M.potentials, N.potentials))
    alg = koszul_algebra(joined, potentials)

    zero = joined.zero()
    homos = []
    for i in range(1, M.n + 1):
        HA = {a: M.h(i, a).map(embed_left, joined) for a in M.support}
        HB = {b: N.h(i, b).map(embed_right, joined) for b in N.support}
        table = {}
        for m in T.support:
            if not T.rank(m - 1):
                continue
            src = tensor_basis(CA, CB, m)
            tgt = tensor_basis(CA, CB, m - 1)
            pos = {key: t for t, key in enumerate(tgt)}
            cols = []
            for (a, i1, j1) in src:
                col = [zero] * len(tgt)
                hA = HA.get(a)
                if hA is not None:
                    for i2 in range(hA.nrows):
                        coeff = hA.entry(i2, i1)
                        if not coeff.is_zero():
                            col[pos[(a - 1, i2, j1)]] = coeff
                hB = HB.get(m - a)
                if hB is not None:
                    for j2 in range(hB.nrows):
                        coeff = hB.entry(j2, j1)
                        if not coeff.is_zero():
                            col[pos[(a, i1, j2)]] = coeff if a % 2 == 0 \
                                else -coeff
                cols.append(col)
            rows = tuple(tuple(cols[s][t] for s in range(len(src)))
                         for t in range(len(tgt)))
            table[m] = Matrix(joined, len(tgt), len(src), rows)
        homos.append(table)
    return KoszulModule(alg, T, homos, check=False)


def unit_module(n, base="QQ"):
    """The rank one module in degree 0 over the plain base ring, with n zero
    potentials. A two-sided unit for the external product."""
    ring = Ring(base, ())
    alg = koszul_algebra(ring, [ring.zero()] * n)
    cpx = PerfectComplex(ring, {0: 1}, {}, check=False)
    return KoszulModule(alg, cpx, None, check=False)
