"""Amplitude reduction: peel one degree off the top of a module.

One pass takes a module E spanning degrees [lo, hi] with hi - lo >= n + 1
and produces

  * a perfect piece N: the Koszul tensor of the bottom n + 1 degrees of the
    underlying complex, with differential and homotopies negated,
  * a submodule F of the mapping cone of the canonical tensor-to-module map,
    spanned by E itself plus the tensor summands whose component degree
    exceeds lo + n,
  * a connecting morphism psi from N to F,
  * an output module O spanning [lo, hi - 1], cut out of F by replacing the
    top two degrees with the graph of -d, and
  * a certificate: the inclusion of O into F, identity in low degrees and
    the graph map on top.

``certify_step`` re-derives every piece from the input and checks the stored
step against it, degree by degree, with exact matrix equality. Over a
Euclidean coefficient ring it also verifies that the certificate's cone has
zero homology everywhere; over other rings that check is reported as
uncertified rather than silently skipped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrices import Matrix, block_matrix, block_diagonal, vstack
from .complexes import PerfectComplex, is_quasi_isomorphism
from .modules import (KoszulModule, KoszulMorphism, ModuleError, validate,
                      validate_morphism, phi_morphism, tensor_with_koszul,
                      tensor_koszul_basis)
from .reports import Report, fail, passed, uncertified


@dataclass
class ReductionStep:
    """Everything produced by one reduction pass."""

    input: KoszulModule
    perfect_piece: KoszulModule
    psi: KoszulMorphism
    output: KoszulModule
    certificate: KoszulMorphism


def _first_failure(report):
    return next(c for c in report.checks if not c.passed)


def _require_valid(M, who):
    report = validate(M)
    if not report.passed:
        c = _first_failure(report)
        raise ModuleError(f"{who}: {c.name} fails at {c.location}")


def _split_indices(alg, C, tdeg, cut):
    """Positions of the Koszul tensor basis at degree tdeg whose component
    degree is at most cut (low) or beyond it (high). Low positions form a
    prefix, high positions the complementary suffix."""
    lows, highs = [], []
    for t, (k, _, _) in enumerate(tensor_koszul_basis(alg, C, tdeg)):
        (lows if tdeg + k <= cut else highs).append(t)
    return lows, highs


def _negated_slice_tensor(M):
    """The Koszul tensor of the bottom n + 1 degrees of M's complex, with
    the differential and every homotopy negated."""
    lo = M.min_degree
    cut = lo + M.n
    ranks = {t: M.rank(t) for t in range(lo, cut + 1) if M.rank(t)}
    diffs = {t: M.d(t) for t in range(lo, cut)
             if M.rank(t) and M.rank(t + 1)}
    window = PerfectComplex(M.ring, ranks, diffs, check=False)
    T = tensor_with_koszul(M.algebra, window)
    neg = PerfectComplex(M.ring, dict(T.ranks),
                         {m: -d for m, d in T.complex.differentials.items()},
                         check=False)
    homos = [{m: -h for m, h in table.items()} for table in T.homotopies]
    return KoszulModule(M.algebra, neg, homos, check=False)


def reduce_once(M, _validated=False):
    """Perform one reduction pass and return the full step record.

    The input must be a valid module of amplitude at least n + 2; smaller
    amplitudes raise with "amplitude below threshold".
    """
    if not _validated:
        _require_valid(M, "invalid module")
    n = M.n
    if M.amplitude < n + 2:
        raise ModuleError("amplitude below threshold")
    lo, hi = M.min_degree, M.max_degree
    cut = lo + n
    ring = M.ring
    alg = M.algebra
    C = M.complex

    phi = phi_morphism(M)
    T = phi.source

    splits = {t: _split_indices(alg, C, t, cut)
              for t in range(lo - n - 1, hi + 3)}

    def lows(t):
        return splits[t][0]

    def highs(t):
        return splits[t][1]

    # The high summands must be stable under the cone differential and all
    # cone homotopies; anything else means the bookkeeping above is wrong.
    for t in range(lo - n, hi + 2):
        sel = T.d(t).select_rows(lows(t + 1)).select_columns(highs(t))
        if not sel.is_zero():
            raise ModuleError(f"submodule not closed under d at "
                              f"tensor degree {t}")
        for i in range(1, n + 1):
            sel = T.h(i, t).select_rows(lows(t - 1)).select_columns(highs(t))
            if not sel.is_zero():
                raise ModuleError(f"submodule not closed under h_{i} at "
                                  f"tensor degree {t}")

    # F: the module itself plus the high tensor summands one degree up.
    Franks = {}
    for s in range(lo, hi + 1):
        r = M.rank(s) + len(highs(s + 1))
        if r:
            Franks[s] = r
    dF = {}
    for s in range(lo, hi):
        if not Franks.get(s) or not Franks.get(s + 1):
            continue
        high_to_high = T.d(s + 1).select_rows(highs(s + 2)) \
            .select_columns(highs(s + 1))
        dF[s] = block_matrix(ring, [
            [M.d(s), phi.component(s + 1).select_columns(highs(s + 1))],
            [Matrix.zero(ring, len(highs(s + 2)), M.rank(s)), -high_to_high],
        ])
    hF = [dict() for _ in range(n)]
    for i in range(1, n + 1):
        for s in range(lo, hi + 1):
            if not Franks.get(s) or not Franks.get(s - 1):
                continue
            high_part = T.h(i, s + 1).select_rows(highs(s)) \
                .select_columns(highs(s + 1))
            hF[i - 1][s] = block_matrix(ring, [
                [M.h(i, s), Matrix.zero(ring, M.rank(s - 1),
                                        len(highs(s + 1)))],
                [Matrix.zero(ring, len(highs(s)), M.rank(s)), -high_part],
            ])
    F = KoszulModule(alg, PerfectComplex(ring, Franks, dF, check=False),
                     hF, check=False)

    N = _negated_slice_tensor(M)

    # psi: push a low tensor summand through the cone differential and keep
    # the part that lands in F, with an alternating sign per degree.
    comps = {}
    for s in range(lo, cut + 1):
        if not N.rank(s) or not F.rank(s):
            continue
        top = phi.component(s).select_columns(lows(s))
        bottom = -(T.d(s).select_rows(highs(s + 1)).select_columns(lows(s)))
        plain = vstack(ring, [top, bottom], ncols=len(lows(s)))
        comps[s] = plain if s % 2 == 0 else -plain
    psi = KoszulMorphism(N, F, comps, check=False)

    # O: drop the top degree of F and replace the next one by the graph
    # of -d, which the certificate includes back into F.
    e_top = M.rank(hi)
    e_pen = M.rank(hi - 1)
    Oranks = {s: Franks[s] for s in range(lo, hi - 1) if Franks.get(s)}
    if e_pen:
        Oranks[hi - 1] = e_pen
    dO = {s: dF[s] for s in range(lo, hi - 2) if s in dF}
    if (hi - 2) in dF and e_pen:
        dO[hi - 2] = dF[hi - 2].select_rows(range(e_pen))
    g = vstack(ring, [Matrix.identity(ring, e_pen), -M.d(hi - 1)],
               ncols=e_pen)
    hO = [dict() for _ in range(n)]
    for i in range(1, n + 1):
        for s in range(lo, hi - 1):
            if s in hF[i - 1]:
                hO[i - 1][s] = hF[i - 1][s]
        if e_pen and Oranks.get(hi - 2):
            hO[i - 1][hi - 1] = F.h(i, hi - 1) * g
    O = KoszulModule(alg, PerfectComplex(ring, Oranks, dO, check=False),
                     hO, check=False)

    certs = {s: Matrix.identity(ring, O.rank(s))
             for s in range(lo, hi - 1) if O.rank(s)}
    if e_pen:
        certs[hi - 1] = g
    certificate = KoszulMorphism(O, F, certs, check=False)

    return ReductionStep(M, N, psi, O, certificate)


def reduce(M):
    """Reduce until the amplitude is at most n + 1.

    Returns (result, steps); the input comes back untouched with no steps
    when it is already small enough.
    """
    _require_valid(M, "invalid module")
    steps = []
    current = M
    while current.amplitude >= current.n + 2:
        step = reduce_once(current, _validated=True)
        steps.append(step)
        current = step.output
    return current, steps


def _summarize(report, name, sub):
    if sub.passed:
        report.add(passed(name))
    else:
        c = _first_failure(sub)
        report.add(fail(name, c.location, f"{c.name}: {c.detail}"))


def certify_step(step):
    """Re-derive one reduction pass from its input and check every stored
    piece against it. Returns a report; pass means everything matched."""
    report = Report()
    M = step.input
    n = M.n
    ring = M.ring
    alg = M.algebra
    C = M.complex
    F = step.certificate.target

    _summarize(report, "validate-input", validate(M))
    _summarize(report, "validate-perfect-piece", validate(step.perfect_piece))
    _summarize(report, "validate-submodule", validate(F))
    _summarize(report, "validate-output", validate(step.output))
    _summarize(report, "validate-psi", validate_morphism(step.psi))
    _summarize(report, "validate-certificate",
               validate_morphism(step.certificate))

    if step.psi.source == step.perfect_piece and step.psi.target == F \
            and step.certificate.source == step.output:
        report.add(passed("step-wiring"))
    else:
        report.add(fail("step-wiring", "",
                        "stored pieces do not reference each other"))

    if M.amplitude < n + 2 or M.min_degree is None:
        report.add(fail("cone-match", "", "input amplitude below threshold"))
        return report
    lo, hi = M.min_degree, M.max_degree
    cut = lo + n

    if step.perfect_piece == _negated_slice_tensor(M):
        report.add(passed("perfect-piece-form"))
    else:
        report.add(fail("perfect-piece-form", "",
                        "perfect piece is not the negated window tensor"))

    e_pen = M.rank(hi - 1)
    cert_ok = True
    for s in range(lo, hi - 1):
        if step.certificate.component(s) != Matrix.identity(ring,
                                                            step.output.rank(s)):
            cert_ok = False
    g = vstack(ring, [Matrix.identity(ring, e_pen), -M.d(hi - 1)],
               ncols=e_pen)
    if step.certificate.component(hi - 1) != g:
        cert_ok = False
    if cert_ok:
        report.add(passed("certificate-form"))
    else:
        report.add(fail("certificate-form", "",
                        "certificate is not the graph-form inclusion"))

    phi = phi_morphism(M)
    T = phi.source
    splits = {t: _split_indices(alg, C, t, cut)
              for t in range(lo - n - 1, hi + 3)}

    ranks_ok = True
    for s in range(lo - n - 1, hi + 1):
        cone_rank = T.rank(s + 1) + M.rank(s)
        if cone_rank != step.perfect_piece.rank(s + 1) + F.rank(s):
            ranks_ok = False
            report.add(fail("rank-additivity", f"degree {s}",
                            "cone rank does not split into the stored "
                            "pieces"))
    if ranks_ok:
        report.add(passed("rank-additivity"))
    else:
        return report

    N = step.perfect_piece
    match_ok = True
    for s in range(lo - n - 1, hi + 1):
        lo1, hi1 = splits[s + 1]
        lo2, hi2 = splits[s + 2]
        lo0, hi0 = splits[s]
        psi_plain = step.psi.component(s + 1)
        if (s + 1) % 2 != 0:
            psi_plain = -psi_plain
        assembled = block_matrix(ring, [
            [N.d(s + 1),
             Matrix.zero(ring, N.rank(s + 2), F.rank(s))],
            [psi_plain, F.d(s)],
        ])
        dT = T.d(s + 1)
        cone_side = block_matrix(ring, [
            [-(dT.select_rows(lo2).select_columns(lo1)),
             Matrix.zero(ring, len(lo2), M.rank(s)),
             -(dT.select_rows(lo2).select_columns(hi1))],
            [phi.component(s + 1).select_columns(lo1),
             M.d(s),
             phi.component(s + 1).select_columns(hi1)],
            [-(dT.select_rows(hi2).select_columns(lo1)),
             Matrix.zero(ring, len(hi2), M.rank(s)),
             -(dT.select_rows(hi2).select_columns(hi1))],
        ])
        if assembled != cone_side:
            match_ok = False
            report.add(fail("cone-match", f"degree {s}, differential",
                            "permuted cone differential does not match the "
                            "stored step"))
        for i in range(1, n + 1):
            assembled_h = block_diagonal(ring, [N.h(i, s + 1), F.h(i, s)])
            hT = T.h(i, s + 1)
            cone_h = block_matrix(ring, [
                [-(hT.select_rows(lo0).select_columns(lo1)),
                 Matrix.zero(ring, len(lo0), M.rank(s)),
                 -(hT.select_rows(lo0).select_columns(hi1))],
                [Matrix.zero(ring, M.rank(s - 1), len(lo1)),
                 M.h(i, s),
                 Matrix.zero(ring, M.rank(s - 1), len(hi1))],
                [-(hT.select_rows(hi0).select_columns(lo1)),
                 Matrix.zero(ring, len(hi0), M.rank(s)),
                 -(hT.select_rows(hi0).select_columns(hi1))],
            ])
            if assembled_h != cone_h:
                match_ok = False
                report.add(fail("cone-match", f"degree {s}, homotopy {i}",
                                "permuted cone homotopy does not match the "
                                "stored step"))
    if match_ok:
        report.add(passed("cone-match"))

    if ring.is_euclidean:
        if is_quasi_isomorphism(step.certificate):
            report.add(passed("cone-homology"))
        else:
            report.add(fail("cone-homology", "",
                            "certificate cone has nonzero homology"))
    else:
        report.add(uncertified("cone-homology", "",
                               "homology skipped: ring is not Euclidean"))
    return report
