"""JSON wire formats for rings, matrices, complexes, modules and
factorizations.

Serialization is canonical: fixed key order, degree keys written as decimal
strings in ascending numeric order, two-space indentation, trailing newline.
Parsing a canonical document and serializing it again reproduces the bytes.

Parsers raise SchemaError with a JSON pointer to the offending field.
Structural problems (bad shapes, unknown keys, unparseable entries) are
schema errors; algebraic identity failures are not checked here, so that
the validate verbs can report them properly.
"""

from __future__ import annotations

import json

from .rings import Ring, RingError
from .matrices import Matrix
from .complexes import PerfectComplex, ComplexError
from .koszul import koszul_algebra
from .modules import KoszulModule, KoszulMorphism, ModuleError
from .mf import MatrixFactorization, MFMorphism, MFError


class SchemaError(ValueError):
    """Input does not match the wire format; points at the bad field."""

    def __init__(self, pointer, message):
        self.pointer = pointer if pointer else "/"
        self.reason = message
        super().__init__(f"{self.pointer}: {message}")


def loads(text, pointer=""):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(pointer, f"invalid JSON: {exc}") from None


def dumps(data):
    """Canonical rendering of an already-serialized structure."""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def _want(obj, kind, pointer, what):
    if not isinstance(obj, kind):
        raise SchemaError(pointer, f"expected {what}, "
                                   f"got {type(obj).__name__}")
    return obj


def _field(obj, key, pointer):
    if key not in obj:
        raise SchemaError(pointer, f"missing key {key!r}")
    return obj[key]


def _reject_extras(obj, allowed, pointer):
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise SchemaError(f"{pointer}/{extra[0]}", "unexpected key")


def _int_field(value, pointer, minimum=None):
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(pointer, f"expected an integer, "
                                   f"got {type(value).__name__}")
    if minimum is not None and value < minimum:
        raise SchemaError(pointer, f"expected an integer >= {minimum}, "
                                   f"got {value}")
    return value


def _degree_key(key, pointer):
    try:
        return int(key)
    except (TypeError, ValueError):
        raise SchemaError(f"{pointer}/{key}",
                          "degree keys must be decimal integers") from None


# -- rings and elements -----------------------------------------------------

def parse_ring(obj, pointer=""):
    _want(obj, dict, pointer, "a ring object")
    _reject_extras(obj, ("base", "vars", "quotient"), pointer)
    base = _field(obj, "base", pointer)
    if isinstance(base, dict):
        _reject_extras(base, ("Fp",), f"{pointer}/base")
        _int_field(_field(base, "Fp", f"{pointer}/base"),
                   f"{pointer}/base/Fp", minimum=2)
    elif base not in ("QQ", "ZZ"):
        raise SchemaError(f"{pointer}/base",
                          f"expected \"QQ\", \"ZZ\" or {{\"Fp\": p}}, "
                          f"got {base!r}")
    variables = _want(_field(obj, "vars", pointer), list,
                      f"{pointer}/vars", "a list of variable names")
    for i, name in enumerate(variables):
        _want(name, str, f"{pointer}/vars/{i}", "a variable name")
    quotient = obj.get("quotient")
    if quotient is not None:
        _want(quotient, str, f"{pointer}/quotient", "a polynomial string")
    try:
        return Ring(base, tuple(variables), quotient)
    except RingError as exc:
        raise SchemaError(pointer, str(exc)) from None


def serialize_ring(ring):
    label = ring.base_label()
    base = {"Fp": label[1]} if isinstance(label, tuple) else label
    out = {"base": base, "vars": list(ring.variables)}
    if ring.quotient is not None:
        out["quotient"] = str(ring.quotient)
    return out


def parse_element(text, ring, pointer):
    _want(text, str, pointer, "a polynomial string")
    try:
        return ring.parse(text)
    except RingError as exc:
        raise SchemaError(pointer, str(exc)) from None


# -- matrices ---------------------------------------------------------------

def parse_matrix(obj, ring, pointer):
    _want(obj, dict, pointer, "a matrix object")
    _reject_extras(obj, ("rows", "cols", "entries"), pointer)
    nrows = _int_field(_field(obj, "rows", pointer), f"{pointer}/rows",
                       minimum=0)
    ncols = _int_field(_field(obj, "cols", pointer), f"{pointer}/cols",
                       minimum=0)
    entries = _want(_field(obj, "entries", pointer), list,
                    f"{pointer}/entries", "a list of rows")
    if len(entries) != nrows:
        raise SchemaError(f"{pointer}/entries",
                          f"expected {nrows} rows, got {len(entries)}")
    rows = []
    for i, row in enumerate(entries):
        _want(row, list, f"{pointer}/entries/{i}", "a row list")
        if len(row) != ncols:
            raise SchemaError(f"{pointer}/entries/{i}",
                              f"expected {ncols} entries, got {len(row)}")
        rows.append(tuple(parse_element(cell, ring,
                                        f"{pointer}/entries/{i}/{j}")
                          for j, cell in enumerate(row)))
    return Matrix(ring, nrows, ncols, tuple(rows))


def serialize_matrix(mat):
    return {"rows": mat.nrows, "cols": mat.ncols,
            "entries": [[str(e) for e in row] for row in mat.to_lists()]}


# -- complexes --------------------------------------------------------------

def _parse_ranks(obj, pointer):
    _want(obj, dict, pointer, "a degree-to-rank map")
    ranks = {}
    for key, value in obj.items():
        deg = _degree_key(key, pointer)
        ranks[deg] = _int_field(value, f"{pointer}/{key}", minimum=0)
    return ranks


def _parse_degree_matrices(obj, ring, pointer):
    _want(obj, dict, pointer, "a degree-to-matrix map")
    out = {}
    for key, value in obj.items():
        deg = _degree_key(key, pointer)
        out[deg] = parse_matrix(value, ring, f"{pointer}/{key}")
    return out


def _degree_map(mapping, render):
    return {str(deg): render(mapping[deg]) for deg in sorted(mapping)}


def parse_complex(obj, pointer=""):
    _want(obj, dict, pointer, "a complex object")
    _reject_extras(obj, ("ring", "ranks", "differentials"), pointer)
    ring = parse_ring(_field(obj, "ring", pointer), f"{pointer}/ring")
    ranks = _parse_ranks(_field(obj, "ranks", pointer), f"{pointer}/ranks")
    diffs = _parse_degree_matrices(_field(obj, "differentials", pointer),
                                   ring, f"{pointer}/differentials")
    try:
        return PerfectComplex(ring, ranks, diffs, check=False)
    except (ComplexError, RingError) as exc:
        raise SchemaError(pointer, str(exc)) from None


def serialize_complex(cpx):
    return {"ring": serialize_ring(cpx.ring),
            "ranks": _degree_map(cpx.ranks, lambda r: r),
            "differentials": _degree_map(cpx.differentials,
                                         serialize_matrix)}


# -- modules ----------------------------------------------------------------

def parse_module(obj, pointer=""):
    _want(obj, dict, pointer, "a module object")
    _reject_extras(obj, ("ring", "ranks", "differentials", "potentials",
                         "homotopies"), pointer)
    ring = parse_ring(_field(obj, "ring", pointer), f"{pointer}/ring")
    ranks = _parse_ranks(_field(obj, "ranks", pointer), f"{pointer}/ranks")
    diffs = _parse_degree_matrices(_field(obj, "differentials", pointer),
                                   ring, f"{pointer}/differentials")
    pots = _want(_field(obj, "potentials", pointer), list,
                 f"{pointer}/potentials", "a list of potentials")
    potentials = [parse_element(text, ring, f"{pointer}/potentials/{i}")
                  for i, text in enumerate(pots)]
    homos_obj = _want(_field(obj, "homotopies", pointer), list,
                      f"{pointer}/homotopies", "one map per potential")
    if len(homos_obj) != len(potentials):
        raise SchemaError(f"{pointer}/homotopies",
                          f"expected {len(potentials)} homotopies, "
                          f"got {len(homos_obj)}")
    homotopies = [_parse_degree_matrices(h, ring,
                                         f"{pointer}/homotopies/{i}")
                  for i, h in enumerate(homos_obj)]
    try:
        alg = koszul_algebra(ring, potentials)
    except RingError as exc:
        raise SchemaError(f"{pointer}/potentials", str(exc)) from None
    try:
        cpx = PerfectComplex(ring, ranks, diffs, check=False)
        return KoszulModule(alg, cpx, homotopies, check=False)
    except (ComplexError, ModuleError, RingError) as exc:
        raise SchemaError(pointer, str(exc)) from None


def serialize_module(mod):
    out = serialize_complex(mod.complex)
    out["potentials"] = [str(f) for f in mod.algebra.potentials]
    out["homotopies"] = [_degree_map(h, serialize_matrix)
                         for h in mod.homotopies]
    return out


def parse_morphism(obj, pointer=""):
    _want(obj, dict, pointer, "a morphism object")
    _reject_extras(obj, ("source", "target", "components"), pointer)
    source = parse_module(_field(obj, "source", pointer),
                          f"{pointer}/source")
    target = parse_module(_field(obj, "target", pointer),
                          f"{pointer}/target")
    comps = _parse_degree_matrices(_field(obj, "components", pointer),
                                   source.ring, f"{pointer}/components")
    try:
        return KoszulMorphism(source, target, comps, check=False)
    except (ModuleError, ComplexError, RingError) as exc:
        raise SchemaError(f"{pointer}/components", str(exc)) from None


def serialize_morphism(phi):
    return {"source": serialize_module(phi.source),
            "target": serialize_module(phi.target),
            "components": _degree_map(phi.components, serialize_matrix)}


# -- matrix factorizations --------------------------------------------------

def parse_mf(obj, pointer=""):
    _want(obj, dict, pointer, "a matrix factorization object")
    _reject_extras(obj, ("ring", "potential", "p0", "p1"), pointer)
    ring = parse_ring(_field(obj, "ring", pointer), f"{pointer}/ring")
    potential = parse_element(_field(obj, "potential", pointer), ring,
                              f"{pointer}/potential")
    p0 = parse_matrix(_field(obj, "p0", pointer), ring, f"{pointer}/p0")
    p1 = parse_matrix(_field(obj, "p1", pointer), ring, f"{pointer}/p1")
    try:
        return MatrixFactorization(ring, potential, p0, p1, check=False)
    except MFError as exc:
        raise SchemaError(pointer, str(exc)) from None


def serialize_mf(mf):
    return {"ring": serialize_ring(mf.ring),
            "potential": str(mf.potential),
            "p0": serialize_matrix(mf.p0),
            "p1": serialize_matrix(mf.p1)}


def parse_mf_morphism(obj, pointer=""):
    _want(obj, dict, pointer, "a factorization morphism object")
    _reject_extras(obj, ("source", "target", "parity", "chi0", "chi1"),
                   pointer)
    source = parse_mf(_field(obj, "source", pointer), f"{pointer}/source")
    target = parse_mf(_field(obj, "target", pointer), f"{pointer}/target")
    parity = _int_field(_field(obj, "parity", pointer), f"{pointer}/parity")
    if parity not in (0, 1):
        raise SchemaError(f"{pointer}/parity", "parity must be 0 or 1")
    chi0 = parse_matrix(_field(obj, "chi0", pointer), source.ring,
                        f"{pointer}/chi0")
    chi1 = parse_matrix(_field(obj, "chi1", pointer), source.ring,
                        f"{pointer}/chi1")
    try:
        return MFMorphism(source, target, parity, chi0, chi1)
    except MFError as exc:
        raise SchemaError(pointer, str(exc)) from None


def serialize_mf_morphism(chi):
    return {"source": serialize_mf(chi.source),
            "target": serialize_mf(chi.target),
            "parity": chi.parity,
            "chi0": serialize_matrix(chi.chi0),
            "chi1": serialize_matrix(chi.chi1)}


# -- reports and homology ---------------------------------------------------

def serialize_homology(group):
    return {"invariant_factors": [str(f) for f in group.invariant_factors],
            "free_rank": group.free_rank}


def serialize_report(report):
    return {"status": report.status,
            "checks": [{"name": c.name, "location": c.location,
                        "outcome": c.outcome, "detail": c.detail}
                       for c in report.checks],
            "artifacts": report.artifacts}
