"""The Koszul algebra on a tuple of potentials.

The underlying complex sits in degrees [-n, 0]. The degree -k component is
free on the k-element subsets of {1..n}, listed in lexicographic order, and
the differential removes one index at a time with an alternating sign:
sending the basis element for S = {i_1 < ... < i_k} to the signed sum of
the potentials times the smaller subsets,

    d(e_S) = sum_j (-1)^(j+1) f_(i_j) e_(S minus i_j).

The wedge product on basis elements carries the usual shuffle sign.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

from .matrices import Matrix
from .rings import RingError
from .complexes import PerfectComplex


class KoszulAlgebra:
    """A ring together with potentials f_1..f_n and the associated complex."""

    __slots__ = ("ring", "potentials", "complex", "_subsets")

    def __init__(self, ring, potentials, complex_):
        self.ring = ring
        self.potentials = potentials
        self.complex = complex_
        n = len(potentials)
        self._subsets = {k: tuple(combinations(range(1, n + 1), k))
                         for k in range(n + 1)}

    @property
    def n(self):
        return len(self.potentials)

    def subsets(self, k):
        """All k-element index subsets in basis order."""
        if k < 0 or k > self.n:
            return ()
        return self._subsets[k]

    def subset_position(self, subset):
        return self._subsets[len(subset)].index(tuple(subset))

    def potential(self, i):
        """The i-th potential, 1-based."""
        if not 1 <= i <= self.n:
            raise RingError(f"potential index {i} out of range 1..{self.n}")
        return self.potentials[i - 1]

    def __eq__(self, other):
        return (isinstance(other, KoszulAlgebra) and other.ring == self.ring
                and other.potentials == self.potentials)

    def __repr__(self):
        pots = ", ".join(str(f) for f in self.potentials)
        return f"KoszulAlgebra({self.ring!r}; {pots})"


def koszul_algebra(ring, potentials):
    """Build the Koszul algebra for the given potentials.

    Potentials may be elements or canonical strings; the list must be
    nonempty and every entry must belong to the ring.
    """
    if not potentials:
        raise RingError("at least one potential is required")
    coerced = []
    for f in potentials:
        try:
            coerced.append(ring.coerce(f))
        except RingError as exc:
            raise RingError(f"potential {f!r} does not belong to "
                            f"{ring!r}: {exc}") from exc
    potentials = tuple(coerced)
    n = len(potentials)
    ranks = {-k: comb(n, k) for k in range(n + 1)}
    diffs = {}
    for k in range(n, 0, -1):
        sources = tuple(combinations(range(1, n + 1), k))
        targets = tuple(combinations(range(1, n + 1), k - 1))
        tpos = {s: t for t, s in enumerate(targets)}
        zero = ring.zero()
        grid = [[zero] * len(sources) for _ in range(len(targets))]
        for col, S in enumerate(sources):
            for j, idx in enumerate(S, start=1):
                smaller = tuple(x for x in S if x != idx)
                f = potentials[idx - 1]
                entry = f if j % 2 == 1 else -f
                row = tpos[smaller]
                grid[row][col] = grid[row][col] + entry
        diffs[-k] = Matrix(ring, len(targets), len(sources),
                           tuple(tuple(r) for r in grid))
    complex_ = PerfectComplex(ring, ranks, diffs, check=True)
    return KoszulAlgebra(ring, potentials, complex_)


def koszul_product(alg, left, right):
    """Multiply two wedge basis elements, given as strictly increasing index
    tuples. Returns (sign, subset); a sign of 0 means the product vanishes."""
    left = tuple(int(i) for i in left)
    right = tuple(int(i) for i in right)
    for part in (left, right):
        for i in part:
            if not 1 <= i <= alg.n:
                raise RingError(f"index {i} out of range 1..{alg.n}")
        if any(a >= b for a, b in zip(part, part[1:])):
            raise RingError(f"indices {part} are not strictly increasing")
    if set(left) & set(right):
        return 0, ()
    inversions = sum(1 for a in left for b in right if a > b)
    sign = -1 if inversions % 2 else 1
    return sign, tuple(sorted(left + right))
