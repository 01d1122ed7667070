"""Seeded generators for the identity suites and the acceptance tests.

Everything here is deterministic: each public function takes or fixes a seed
and returns the same objects on every run. Sizes are kept small enough that
full-corpus validation stays inside the acceptance time budgets.
"""

import random
from functools import lru_cache

import koszulmf as K

VAR_NAMES = ("x", "y", "z", "w")


def ring_for(n, base="QQ", prefix=0):
    """Polynomial ring with n variables; prefix shifts the name window so
    cross-ring pairs get disjoint variables."""
    names = VAR_NAMES[prefix:prefix + n]
    return K.Ring(base, names)


def random_poly(rng, ring, max_deg=2, max_terms=3, allow_zero=False):
    nvars = ring.n_vars
    while True:
        out = ring.zero()
        for _ in range(rng.randint(1, max_terms)):
            exps = tuple(rng.randint(0, max_deg) for _ in range(nvars))
            coeff = rng.choice([-2, -1, 1, 2, 3])
            term = ring.from_int(coeff)
            for v, e in zip(ring.variables, exps):
                term = term * ring.gen(v) ** e
            out = out + term
        if allow_zero or out != ring.zero():
            return out


def random_matrix(rng, ring, rows, cols, max_deg=1, density=0.7):
    grid = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            if rng.random() < density:
                row.append(random_poly(rng, ring, max_deg=max_deg,
                                       max_terms=2, allow_zero=True))
            else:
                row.append(ring.zero())
        grid.append(tuple(row))
    return K.Matrix(ring, rows, cols, tuple(grid))


def random_potentials(rng, ring, n, max_deg=2):
    return [random_poly(rng, ring, max_deg=max_deg, max_terms=2)
            for _ in range(n)]


def random_base_complex(rng, ring, max_len=3, max_rank=2, max_deg=1):
    """A strictly bounded complex with d^2 = 0 by a staircase zero pattern."""
    lo = rng.randint(-2, 1)
    length = rng.randint(1, max_len)
    ranks = {lo + i: rng.randint(1, max_rank) for i in range(length)}
    shape = rng.random()
    if length == 1 or shape < 0.3:
        return K.PerfectComplex(ring, ranks, {})
    if length == 2 or shape < 0.7:
        m = lo + rng.randrange(length - 1)
        d = random_matrix(rng, ring, ranks[m + 1], ranks[m], max_deg=max_deg)
        return K.PerfectComplex(ring, ranks, {m: d})
    # three degrees with a staircase: the second map kills the image of the
    # first by construction
    a, b, c = (ranks[lo + i] for i in range(3))
    b1 = rng.randint(0, b)
    top = random_matrix(rng, ring, b1, a, max_deg=max_deg)
    bottom = K.Matrix.zero(ring, b - b1, a)
    d0 = K.vstack(ring, [top, bottom], ncols=a)
    left = K.Matrix.zero(ring, c, b1)
    right = random_matrix(rng, ring, c, b - b1, max_deg=max_deg)
    d1 = K.hstack(ring, [left, right], nrows=c)
    diffs = {}
    if not d0.is_zero():
        diffs[lo] = d0
    if not d1.is_zero():
        diffs[lo + 1] = d1
    try:
        return K.PerfectComplex(ring, ranks, diffs)
    except K.ComplexError:
        return K.PerfectComplex(ring, ranks, {})


def two_term_module(ring, f, p, q, anchor=0):
    """The module (E -> F) with d = p, h = q, p q = q p = f, at degrees
    [anchor-1, anchor]."""
    alg = K.koszul_algebra(ring, [f])
    pm = p if isinstance(p, K.Matrix) else K.Matrix(ring, 1, 1, ((p,),))
    qm = q if isinstance(q, K.Matrix) else K.Matrix(ring, 1, 1, ((q,),))
    cpx = K.PerfectComplex(ring, {anchor - 1: pm.ncols, anchor: pm.nrows},
                           {anchor - 1: pm})
    return K.KoszulModule(alg, cpx, [{anchor: qm}])


def _tensor_module(rng, ring, n, **kwargs):
    alg = K.koszul_algebra(ring, random_potentials(rng, ring, n))
    return K.tensor_with_koszul(alg, random_base_complex(rng, ring, **kwargs))


_SIZE_CAP = 36


def _decorate(rng, modules, count):
    """Grow a module list with cones, shifts and sums of what is already
    there. Caps keep every member small enough that the canonical morphism
    construction (which multiplies ranks by 2^n) stays cheap."""
    out = list(modules)
    while len(out) < count:
        kind = rng.random()
        seed_mod = rng.choice(modules)
        total = seed_mod.complex.total_rank()
        factor = 2 ** seed_mod.n
        if kind < 0.35 and total * (factor + 1) <= _SIZE_CAP:
            out.append(K.cone(K.phi_morphism(seed_mod)))
        elif kind < 0.55 and 2 * total <= _SIZE_CAP:
            c = seed_mod.ring.from_int(rng.choice([-2, -1, 0, 1, 2]))
            comps = {m: K.Matrix.scalar(seed_mod.ring, c, seed_mod.rank(m))
                     for m in seed_mod.support}
            scaled = K.KoszulMorphism(seed_mod, seed_mod, comps)
            out.append(K.cone(scaled))
        elif kind < 0.8 or total * 2 > _SIZE_CAP:
            out.append(K.shift_module(seed_mod, rng.choice([-2, -1, 1, 2])))
        else:
            other = rng.choice(modules)
            if (other.algebra == seed_mod.algebra
                    and total + other.complex.total_rank() <= _SIZE_CAP):
                out.append(K.direct_sum_module(seed_mod, other))
            else:
                out.append(K.shift_module(seed_mod, 1))
    return out


@lru_cache(maxsize=None)
def module_corpus(seed=20260821):
    """At least 100 valid modules spanning n in {1, 2, 3} and three
    coefficient bases."""
    rng = random.Random(seed)
    out = []

    r1 = ring_for(1)
    base1 = [_tensor_module(rng, r1, 1, max_len=3, max_rank=2)
             for _ in range(8)]
    for _ in range(6):
        f_left = random_poly(rng, r1, max_deg=2, max_terms=2)
        f_right = random_poly(rng, r1, max_deg=2, max_terms=2)
        base1.append(two_term_module(r1, f_left * f_right, f_left, f_right,
                                     anchor=rng.randint(-1, 1)))
    out.extend(_decorate(rng, base1, 32))

    r2 = ring_for(2)
    base2 = [_tensor_module(rng, r2, 2, max_len=3, max_rank=2)
             for _ in range(10)]
    out.extend(_decorate(rng, base2, 28))

    r3 = ring_for(3)
    base3 = [_tensor_module(rng, r3, 3, max_len=2, max_rank=1)
             for _ in range(8)]
    out.extend(_decorate(rng, base3, 18))

    rz = K.Ring("ZZ", ())
    basez = [two_term_module(rz, rz.from_int(a * b), rz.from_int(a),
                             rz.from_int(b))
             for a, b in ((2, 3), (1, 6), (-2, 2), (5, 5))]
    zx = K.Ring("ZZ", ("x",))
    basez.append(_tensor_module(rng, zx, 1, max_len=2, max_rank=2))
    basez.append(_tensor_module(rng, zx, 2, max_len=2, max_rank=1))
    out.extend(_decorate(rng, basez, 10))

    r5 = K.Ring({"Fp": 5}, ("x",))
    base5 = [_tensor_module(rng, r5, 1, max_len=3, max_rank=2)
             for _ in range(4)]
    base5.append(_tensor_module(rng, r5, 2, max_len=2, max_rank=2))
    out.extend(_decorate(rng, base5, 12))
    return out


@lru_cache(maxsize=None)
def reduction_corpus(seed=20260822):
    """Modules with amplitudes n+2 .. n+5 for n in {1, 2, 3}; tensor
    constructions so the amplitude is exactly the base length plus n."""
    rng = random.Random(seed)
    out = []
    for n, count_per_amp in ((1, 3), (2, 2), (3, 1)):
        ring = ring_for(n)
        for extra in (2, 3, 4, 5):
            for _ in range(count_per_amp):
                alg = K.koszul_algebra(ring,
                                       random_potentials(rng, ring, n))
                max_rank = 2 if n == 1 else 1
                cpx = random_base_complex(rng, ring, max_len=extra,
                                          max_rank=max_rank)
                while cpx.amplitude != extra:
                    cpx = random_base_complex(rng, ring, max_len=extra,
                                              max_rank=max_rank)
                out.append(K.tensor_with_koszul(alg, cpx))
    return out


def adjugate(mat):
    ring = mat.ring
    n = mat.nrows
    if n == 0:
        return mat
    if n == 1:
        return K.Matrix.identity(ring, 1)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            keep_r = [r for r in range(n) if r != j]
            keep_c = [c for c in range(n) if c != i]
            minor = mat.select_rows(keep_r).select_columns(keep_c)
            sign = ring.from_int((-1) ** (i + j))
            row.append(sign * minor.det())
        rows.append(tuple(row))
    return K.Matrix(ring, n, n, tuple(rows))


def random_mf(rng, ring, max_size=2, max_deg=1):
    """A factorization built from a square matrix and its adjugate."""
    size = rng.randint(1, max_size)
    while True:
        a = random_matrix(rng, ring, size, size, max_deg=max_deg,
                          density=0.9)
        f = a.det()
        if f != ring.zero():
            break
    return K.MatrixFactorization(ring, f, a, adjugate(a))


@lru_cache(maxsize=None)
def mf_corpus(seed=20260823, count=50):
    rng = random.Random(seed)
    ring = ring_for(1)
    out = []
    while len(out) < count:
        X = random_mf(rng, ring, max_size=2)
        out.append(X)
        if len(out) < count and rng.random() < 0.4:
            out.append(K.mf_shift(X))
    return out[:count]


def random_mf_morphism(rng, X, Y, parity):
    """Arbitrary (not necessarily closed) morphism data between
    factorizations of the same potential."""
    ring = X.ring
    if parity == 0:
        chi0 = random_matrix(rng, ring, Y.e0, X.e0)
        chi1 = random_matrix(rng, ring, Y.e1, X.e1)
    else:
        chi0 = random_matrix(rng, ring, Y.e1, X.e0)
        chi1 = random_matrix(rng, ring, Y.e0, X.e1)
    return K.MFMorphism(X, Y, parity, chi0, chi1)


def random_closed_mf_morphism(rng, X):
    """A closed parity 0 endomorphism: a scalar plus a boundary."""
    ring = X.ring
    c = ring.from_int(rng.choice([-1, 0, 1, 2]))
    base = K.MFMorphism(X, X, 0, K.Matrix.scalar(ring, c, X.e0),
                        K.Matrix.scalar(ring, c, X.e1))
    if rng.random() < 0.7:
        boundary = K.delta(random_mf_morphism(rng, X, X, 1))
        return K.MFMorphism(X, X, 0, base.chi0 + boundary.chi0,
                            base.chi1 + boundary.chi1)
    return base


@lru_cache(maxsize=None)
def module_morphism_corpus(seed=20260824, count=50):
    """Morphisms between modules concentrated in degrees [-1, 0], obtained
    by unfolding closed factorization morphisms."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        X = random_mf(rng, ring_for(1), max_size=2)
        chi = random_closed_mf_morphism(rng, X)
        out.append(K.unfold_morphism(chi))
    return out


@lru_cache(maxsize=None)
def swap_corpus(seed=20260825, count=20):
    """Two-term modules with d h = h d = f id and f = p q over QQ[x]."""
    rng = random.Random(seed)
    ring = ring_for(1)
    out = []
    while len(out) < count:
        p = random_poly(rng, ring, max_deg=2, max_terms=2)
        q = random_poly(rng, ring, max_deg=2, max_terms=2)
        anchor = rng.randint(-1, 1)
        out.append(two_term_module(ring, p * q, p, q, anchor=anchor))
        if len(out) < count and rng.random() < 0.5:
            pm = K.block_diagonal(ring, [
                K.Matrix(ring, 1, 1, ((p,),)),
                K.Matrix(ring, 1, 1, ((p * q,),)),
            ])
            qm = K.block_diagonal(ring, [
                K.Matrix(ring, 1, 1, ((q,),)),
                K.Matrix.identity(ring, 1),
            ])
            out.append(two_term_module(ring, p * q, pm, qm, anchor=anchor))
    return out[:count]


@lru_cache(maxsize=None)
def cross_ring_pairs(seed=20260826, count=20):
    """Pairs of modules over disjoint-variable rings with matching
    potential counts, for the external product."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice([1, 1, 2])
        left_ring = ring_for(n, prefix=0)
        right_ring = ring_for(n, prefix=n)
        left = _tensor_module(rng, left_ring, n, max_len=2,
                              max_rank=2 if n == 1 else 1)
        right = _tensor_module(rng, right_ring, n, max_len=2,
                               max_rank=2 if n == 1 else 1)
        out.append((left, right))
    return out
