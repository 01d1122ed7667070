"""Bounded complexes of free modules with degree +1 differentials.

Ranks live in a degree-indexed dict that only keeps nonzero entries, and a
differential matrix is stored exactly where both adjacent ranks are nonzero
(zero matrices included). Degree conventions are cohomological throughout:
d_m maps the degree m component to degree m+1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrices import Matrix, block_matrix, block_diagonal
from .rings import RingError
from .smith import smith_with_inverses, smith_diagonal
from .reports import fail


class ComplexError(ValueError):
    pass


def _clean_ranks(ranks):
    out = {}
    for m, r in ranks.items():
        m, r = int(m), int(r)
        if r < 0:
            raise ComplexError(f"negative rank {r} in degree {m}")
        if r:
            out[m] = r
    return out


class PerfectComplex:
    """A bounded complex of finite free modules."""

    __slots__ = ("ring", "ranks", "differentials")

    def __init__(self, ring, ranks, differentials=None, check=True):
        self.ring = ring
        self.ranks = _clean_ranks(ranks)
        diffs = dict(differentials or {})
        stored = {}
        for m in sorted(self.ranks):
            if self.rank(m) and self.rank(m + 1):
                d = diffs.pop(m, None)
                if d is None:
                    d = Matrix.zero(ring, self.rank(m + 1), self.rank(m))
                if d.ring != ring:
                    raise ComplexError(f"differential at degree {m} lives over "
                                       f"the wrong ring")
                if (d.nrows, d.ncols) != (self.rank(m + 1), self.rank(m)):
                    raise ComplexError(
                        f"differential at degree {m} has shape "
                        f"{d.nrows}x{d.ncols}, expected "
                        f"{self.rank(m + 1)}x{self.rank(m)}")
                stored[m] = d
        for m in diffs:
            if not diffs[m].is_zero():
                raise ComplexError(f"differential at degree {m} where a rank "
                                   f"is zero")
        self.differentials = stored
        if check:
            bad = validate_complex(self)
            if bad:
                c = bad[0]
                raise ComplexError(f"{c.name} fails at {c.location}: {c.detail}")

    def rank(self, m):
        return self.ranks.get(m, 0)

    def d(self, m):
        """The differential out of degree m, zero-filled to the right shape."""
        found = self.differentials.get(m)
        if found is not None:
            return found
        return Matrix.zero(self.ring, self.rank(m + 1), self.rank(m))

    @property
    def support(self):
        return sorted(self.ranks)

    @property
    def min_degree(self):
        return min(self.ranks) if self.ranks else None

    @property
    def max_degree(self):
        return max(self.ranks) if self.ranks else None

    @property
    def amplitude(self):
        if not self.ranks:
            return 0
        return max(self.ranks) - min(self.ranks) + 1

    def total_rank(self):
        return sum(self.ranks.values())

    def __eq__(self, other):
        return (isinstance(other, PerfectComplex) and other.ring == self.ring
                and other.ranks == self.ranks
                and other.differentials == self.differentials)

    def __repr__(self):
        if not self.ranks:
            return f"PerfectComplex(0 over {self.ring!r})"
        parts = ", ".join(f"{m}:{r}" for m, r in sorted(self.ranks.items()))
        return f"PerfectComplex({{{parts}}} over {self.ring!r})"


def validate_complex(C):
    """Return a list of failed checks; empty means d squares to zero."""
    out = []
    for m in C.support:
        if C.rank(m + 2) and C.rank(m + 1) and C.rank(m):
            comp = C.d(m + 1) * C.d(m)
            if not comp.is_zero():
                out.append(fail("d^2", f"degrees {m}..{m + 2}",
                                "composite differential is nonzero"))
    return out


class ChainMorphism:
    """A degree 0 map of complexes, one matrix per shared degree."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source, target, components=None, check=True):
        if source.ring != target.ring:
            raise ComplexError("source and target over different rings")
        self.source = source
        self.target = target
        comps = dict(components or {})
        stored = {}
        for m in source.support:
            if target.rank(m):
                f = comps.pop(m, None)
                if f is None:
                    f = Matrix.zero(source.ring, target.rank(m), source.rank(m))
                if (f.nrows, f.ncols) != (target.rank(m), source.rank(m)):
                    raise ComplexError(f"component at degree {m} has shape "
                                       f"{f.nrows}x{f.ncols}, expected "
                                       f"{target.rank(m)}x{source.rank(m)}")
                stored[m] = f
        for m in comps:
            if not comps[m].is_zero():
                raise ComplexError(f"component at degree {m} where a rank is zero")
        self.components = stored
        if check:
            bad = validate_chain_morphism(self)
            if bad:
                c = bad[0]
                raise ComplexError(f"{c.name} fails at {c.location}: {c.detail}")

    def component(self, m):
        found = self.components.get(m)
        if found is not None:
            return found
        return Matrix.zero(self.source.ring, self.target.rank(m),
                           self.source.rank(m))

    def __eq__(self, other):
        return (isinstance(other, ChainMorphism)
                and other.source == self.source and other.target == self.target
                and other.components == self.components)


def validate_chain_morphism(phi):
    out = []
    degrees = set(phi.source.support) | set(phi.target.support)
    for m in sorted(degrees):
        lhs = phi.target.d(m) * phi.component(m)
        rhs = phi.component(m + 1) * phi.source.d(m)
        if lhs != rhs:
            out.append(fail("commutes-with-d", f"degree {m}",
                            "square of the morphism with d does not commute"))
    return out


def shift_complex(C, k):
    """Shift degrees down by k and twist d by (-1)^k."""
    ranks = {m - k: r for m, r in C.ranks.items()}
    sign = 1 if k % 2 == 0 else -1
    diffs = {}
    for m in ranks:
        if ranks.get(m + 1):
            d = C.d(m + k)
            diffs[m] = d if sign > 0 else -d
    return PerfectComplex(C.ring, ranks, diffs, check=False)


def cone_complex(phi):
    """Mapping cone: degree s holds source degree s+1 on top of target
    degree s, with differential [[-d_src, 0], [phi, d_tgt]]."""
    S, T = phi.source, phi.target
    ring = S.ring
    ranks = {}
    degrees = set(m - 1 for m in S.support) | set(T.support)
    for s in degrees:
        r = S.rank(s + 1) + T.rank(s)
        if r:
            ranks[s] = r
    diffs = {}
    for s in ranks:
        if not ranks.get(s + 1):
            continue
        top_left = -S.d(s + 1)
        bottom_left = phi.component(s + 1)
        bottom_right = T.d(s)
        zero = Matrix.zero(ring, S.rank(s + 2), T.rank(s))
        diffs[s] = block_matrix(ring, [[top_left, zero],
                                       [bottom_left, bottom_right]])
    return PerfectComplex(ring, ranks, diffs, check=False)


def direct_sum_complex(A, B):
    if A.ring != B.ring:
        raise ComplexError("direct sum over different rings")
    ranks = {}
    for m in set(A.support) | set(B.support):
        ranks[m] = A.rank(m) + B.rank(m)
    diffs = {}
    for m in ranks:
        if ranks.get(m + 1):
            diffs[m] = block_diagonal(A.ring, [A.d(m), B.d(m)])
    return PerfectComplex(A.ring, ranks, diffs, check=False)


def tensor_basis(A, B, m):
    """Ordered basis of (A tensor B) in degree m: pairs of degrees (a, b)
    with a + b = m, listed with a ascending, then row-major in the two
    factor indices."""
    out = []
    for a in A.support:
        b = m - a
        rb = B.rank(b)
        if rb:
            for i in range(A.rank(a)):
                for j in range(rb):
                    out.append((a, i, j))
    return out


def tensor_complex(A, B):
    """Tensor product complex with the usual sign: on a summand with left
    degree a, the differential acts as dA (x) 1 + (-1)^a 1 (x) dB."""
    if A.ring != B.ring:
        raise ComplexError("tensor product over different rings")
    ring = A.ring
    ranks = {}
    degrees = set()
    for a in A.support:
        for b in B.support:
            degrees.add(a + b)
    for m in degrees:
        r = sum(A.rank(a) * B.rank(m - a) for a in A.support)
        if r:
            ranks[m] = r
    diffs = {}
    for m in sorted(ranks):
        if not ranks.get(m + 1):
            continue
        src = tensor_basis(A, B, m)
        tgt = tensor_basis(A, B, m + 1)
        pos = {key: t for t, key in enumerate(tgt)}
        zero = ring.zero()
        cols = []
        for (a, i, j) in src:
            col = [zero] * len(tgt)
            dA = A.d(a)
            for i2 in range(dA.nrows):
                c = dA.entry(i2, i)
                if not c.is_zero():
                    col[pos[(a + 1, i2, j)]] = c
            dB = B.d(m - a)
            for j2 in range(dB.nrows):
                c = dB.entry(j2, j)
                if not c.is_zero():
                    col[pos[(a, i, j2)]] = c if a % 2 == 0 else -c
            cols.append(col)
        rows = tuple(tuple(cols[s][t] for s in range(len(src)))
                     for t in range(len(tgt)))
        diffs[m] = Matrix(ring, len(tgt), len(src), rows)
    return PerfectComplex(ring, ranks, diffs, check=False)


def euler_characteristic(C):
    return sum(r if m % 2 == 0 else -r for m, r in C.ranks.items())


@dataclass(frozen=True)
class HomologyGroup:
    """Homology in one degree: a free part and a chain of torsion factors."""

    invariant_factors: tuple
    free_rank: int

    @property
    def is_zero(self):
        return self.free_rank == 0 and not self.invariant_factors

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        if self.free_rank:
            parts.append(f"free^{self.free_rank}")
        parts.extend(f"B/({f})" for f in self.invariant_factors)
        return " + ".join(parts)


def homology(C, m):
    """Homology of C at degree m over a Euclidean ring, as invariant
    factors plus a free rank."""
    ring = C.ring
    if not ring.is_euclidean:
        raise RingError(f"homology needs a Euclidean ring, got {ring!r}")
    rm = C.rank(m)
    if rm == 0:
        return HomologyGroup((), 0)
    d_out = C.d(m)
    d_in = C.d(m - 1)
    S, _, _, _, Vinv = smith_with_inverses(d_out)
    limit = min(S.nrows, S.ncols)
    kernel_slots = [j for j in range(rm)
                    if j >= limit or S.entry(j, j).is_zero()]
    if not kernel_slots:
        return HomologyGroup((), 0)
    coords = (Vinv * d_in).select_rows(kernel_slots)
    S2, _, _, _, _ = smith_with_inverses(coords)
    diag = smith_diagonal(S2)
    factors = tuple(f for f in diag if not f.is_unit())
    free_rank = len(kernel_slots) - len(diag)
    return HomologyGroup(factors, free_rank)


def homology_all(C):
    return {m: homology(C, m) for m in C.support}


def is_quasi_isomorphism(phi):
    """True when the cone of the chain morphism has zero homology in every
    degree. Euclidean rings only."""
    cone = cone_complex(phi)
    return all(homology(cone, m).is_zero for m in cone.support)
