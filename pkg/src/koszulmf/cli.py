"""Command line front end.

Each verb parses JSON inputs, dispatches to the library and emits a report:
status plus the individual checks, and the produced objects as artifacts.
Exit code 0 means pass (including the uncertified case where homology was
skipped for ring reasons), 1 means an identity check failed, 2 means the
input could not be read or did not match the schemas.
"""

from __future__ import annotations

import argparse
import os
import sys

from .rings import RingError
from .matrices import Matrix
from .complexes import (PerfectComplex, ComplexError, validate_complex,
                        homology, homology_all, is_quasi_isomorphism)
from .koszul import koszul_algebra
from .modules import (KoszulModule, KoszulMorphism, ModuleError, validate,
                      validate_morphism, cone, tensor_with_koszul, box_tensor)
from .reduction import reduce, certify_step
from .mf import (MFError, mf_validate, mf_cone, mf_tensor, fold, unfold,
                 swap_periodicity)
from .reports import Check, Report, fail, passed, uncertified
from .serialize import (SchemaError, loads, dumps, parse_ring, parse_complex,
                        parse_module, parse_morphism, parse_mf,
                        parse_mf_morphism, serialize_complex,
                        serialize_module, serialize_morphism, serialize_mf,
                        serialize_homology, serialize_report)


class InputError(ValueError):
    """A readable-input problem that is not a schema violation."""


def _read_json(path, what):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {what} from {path}: {exc}") from None
    return loads(text)


def _merge(report, sub, prefix):
    for c in sub.checks:
        where = f"{prefix}, {c.location}" if c.location else prefix
        report.add(Check(name=c.name, location=where, outcome=c.outcome,
                         detail=c.detail))


def _split_potentials(ring, text):
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise InputError("no potentials given")
    try:
        return [ring.parse(p) for p in parts]
    except RingError as exc:
        raise InputError(f"bad potential: {exc}") from None


# -- verb handlers ----------------------------------------------------------

def cmd_koszul(args):
    ring = parse_ring(loads(args.ring, "/ring"), "/ring")
    potentials = _split_potentials(ring, args.potentials)
    alg = koszul_algebra(ring, potentials)
    report = Report()
    report.extend(validate_complex(alg.complex) or
                  [passed("d^2", "all degrees")])
    report.artifacts["complex"] = serialize_complex(alg.complex)
    return report


def cmd_validate(args):
    module = parse_module(_read_json(args.module, "module"))
    return validate(module)


def cmd_cone(args):
    phi = parse_morphism(_read_json(args.morphism, "morphism"))
    report = Report()
    _merge(report, validate_morphism(phi), "input morphism")
    if report.status == "fail":
        return report
    out = cone(phi)
    _merge(report, validate(out), "cone")
    report.artifacts["cone"] = serialize_module(out)
    return report


def cmd_tensor(args):
    ring = parse_ring(loads(args.ring, "/ring"), "/ring")
    potentials = _split_potentials(ring, args.potentials)
    cpx = parse_complex(_read_json(args.complex, "complex"))
    if cpx.ring != ring:
        raise InputError("the complex lives over a different ring than "
                         "--ring")
    report = Report()
    bad = validate_complex(cpx)
    if bad:
        sub = Report()
        sub.extend(bad)
        _merge(report, sub, "input complex")
        return report
    report.add(passed("d^2", "input complex"))
    alg = koszul_algebra(ring, potentials)
    out = tensor_with_koszul(alg, cpx)
    _merge(report, validate(out), "tensor module")
    report.artifacts["module"] = serialize_module(out)
    return report


def cmd_boxtensor(args):
    left = parse_module(_read_json(args.left, "left module"))
    right = parse_module(_read_json(args.right, "right module"))
    report = Report()
    _merge(report, validate(left), "left")
    _merge(report, validate(right), "right")
    if report.status == "fail":
        return report
    out = box_tensor(left, right)
    _merge(report, validate(out), "box tensor")
    report.artifacts["module"] = serialize_module(out)
    return report


def _emit_steps(steps, directory):
    os.makedirs(directory, exist_ok=True)
    written = []
    for k, step in enumerate(steps, start=1):
        parts = {"input": serialize_module(step.input),
                 "perfect_piece": serialize_module(step.perfect_piece),
                 "psi": serialize_morphism(step.psi),
                 "output": serialize_module(step.output),
                 "certificate": serialize_morphism(step.certificate)}
        for name, data in parts.items():
            path = os.path.join(directory, f"step{k:02d}_{name}.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(dumps(data))
            written.append(path)
    return written


def cmd_reduce(args):
    module = parse_module(_read_json(args.module, "module"))
    report = Report()
    _merge(report, validate(module), "input")
    if report.status == "fail":
        return report
    out, steps = reduce(module)
    report.add(passed("reduce", "", f"{len(steps)} step(s), amplitude "
                      f"{module.complex.amplitude} -> "
                      f"{out.complex.amplitude}"))
    if args.certify:
        for k, step in enumerate(steps, start=1):
            _merge(report, certify_step(step), f"step {k}")
    report.artifacts["module"] = serialize_module(out)
    if args.emit_steps:
        report.artifacts["steps"] = _emit_steps(steps, args.emit_steps)
    return report


def cmd_fold(args):
    module = parse_module(_read_json(args.module, "module"))
    report = Report()
    _merge(report, validate(module), "input")
    if report.status == "fail":
        return report
    out = fold(module)
    _merge(report, mf_validate(out), "fold")
    report.artifacts["mf"] = serialize_mf(out)
    return report


def cmd_unfold(args):
    factorization = parse_mf(_read_json(args.mf, "matrix factorization"))
    report = Report()
    _merge(report, mf_validate(factorization), "input")
    if report.status == "fail":
        return report
    out = unfold(factorization)
    _merge(report, validate(out), "unfold")
    report.artifacts["module"] = serialize_module(out)
    return report


def cmd_mf_cone(args):
    chi = parse_mf_morphism(_read_json(args.morphism, "morphism"))
    if chi.parity != 0:
        raise InputError("cone needs a parity 0 morphism")
    report = Report()
    if chi.is_closed():
        report.add(passed("closed", "input morphism"))
    else:
        report.add(fail("closed", "input morphism",
                        "delta of the morphism is nonzero"))
        return report
    out = mf_cone(chi)
    _merge(report, mf_validate(out), "cone")
    report.artifacts["mf"] = serialize_mf(out)
    return report


def cmd_mf_tensor(args):
    left = parse_mf(_read_json(args.left, "left factorization"))
    right = parse_mf(_read_json(args.right, "right factorization"))
    report = Report()
    _merge(report, mf_validate(left), "left")
    _merge(report, mf_validate(right), "right")
    if report.status == "fail":
        return report
    out = mf_tensor(left, right)
    _merge(report, mf_validate(out), "tensor")
    report.artifacts["mf"] = serialize_mf(out)
    return report


def _certify_swap(report, certs):
    phi1, phi2, phi3 = certs
    _merge(report, validate_morphism(phi1), "certificate 1")
    _merge(report, validate_morphism(phi2), "certificate 2")
    _merge(report, validate_morphism(phi3), "certificate 3")
    if phi3.source.ring.is_euclidean:
        if is_quasi_isomorphism(phi3.chain_morphism()):
            report.add(passed("designated-quasi-isomorphism",
                              "certificate 3"))
        else:
            report.add(fail("designated-quasi-isomorphism", "certificate 3",
                            "cone homology is nonzero"))
    else:
        report.add(uncertified("designated-quasi-isomorphism",
                               "certificate 3",
                               "homology skipped: ring is not Euclidean"))


def cmd_swap(args):
    module = parse_module(_read_json(args.module, "module"))
    out, certs = swap_periodicity(module)
    report = Report()
    report.add(passed("swap", "", "structure maps exchanged one degree "
                                  "down"))
    if args.certify:
        _certify_swap(report, certs)
        report.artifacts["certificates"] = [serialize_morphism(c)
                                            for c in certs]
    report.artifacts["module"] = serialize_module(out)
    return report


def cmd_homology(args):
    cpx = parse_complex(_read_json(args.complex, "complex"))
    report = Report()
    bad = validate_complex(cpx)
    if bad:
        report.extend(bad)
        return report
    report.add(passed("d^2", "all degrees"))
    if args.degree is not None:
        groups = {args.degree: homology(cpx, args.degree)}
    else:
        groups = homology_all(cpx)
    report.artifacts["homology"] = {str(m): serialize_homology(groups[m])
                                    for m in sorted(groups)}
    return report


# -- bundled demos ----------------------------------------------------------

def _demo_eisenbud():
    """Fold the (B -> B, d=x, h=x, f=x^2) module into the factorization
    (x, x)."""
    from .rings import Ring
    ring = Ring("QQ", ("x",))
    x = ring.parse("x")
    alg = koszul_algebra(ring, [ring.parse("x^2")])
    xm = Matrix(ring, 1, 1, ((x,),))
    module = KoszulModule(alg, PerfectComplex(ring, {-1: 1, 0: 1}, {-1: xm}),
                          [{0: xm}])
    report = Report()
    _merge(report, validate(module), "module")
    out = fold(module)
    _merge(report, mf_validate(out), "fold")
    report.artifacts["mf"] = serialize_mf(out)
    return report


def _demo_periodicity():
    """Swap on the two-term module over (QQ[x], x^2) with p = q = x and
    certify all three morphisms of the equivalence chain."""
    from .rings import Ring
    ring = Ring("QQ", ("x",))
    x = ring.parse("x")
    alg = koszul_algebra(ring, [ring.parse("x^2")])
    xm = Matrix(ring, 1, 1, ((x,),))
    module = KoszulModule(alg, PerfectComplex(ring, {-1: 1, 0: 1}, {-1: xm}),
                          [{0: xm}])
    out, certs = swap_periodicity(module)
    report = Report()
    report.add(passed("swap", "", "structure maps exchanged one degree "
                                  "down"))
    _certify_swap(report, certs)
    report.artifacts["module"] = serialize_module(out)
    return report


def _demo_reduce_n2():
    """Reduce a 4-term module over QQ[x,y] with potentials (x, y) to three
    terms; identity certificates pass, homology is flagged uncertified."""
    from .rings import Ring
    ring = Ring("QQ", ("x", "y"))
    alg = koszul_algebra(ring, [ring.parse("x"), ring.parse("y")])
    top = Matrix(ring, 1, 1, ((ring.parse("x*y"),),))
    base = PerfectComplex(ring, {0: 1, 1: 1}, {0: top})
    module = tensor_with_koszul(alg, base)
    out, steps = reduce(module)
    report = Report()
    report.add(passed("reduce", "", f"{len(steps)} step(s), amplitude "
                      f"{module.complex.amplitude} -> "
                      f"{out.complex.amplitude}"))
    for k, step in enumerate(steps, start=1):
        _merge(report, certify_step(step), f"step {k}")
    report.artifacts["module"] = serialize_module(out)
    return report


def _demo_fold_chain():
    """Fold a 4-term one-potential module both directly and after reducing
    to two terms; both factorizations validate against the same potential."""
    from .rings import Ring
    ring = Ring("QQ", ("x",))
    x = ring.parse("x")
    zero = ring.zero()
    alg = koszul_algebra(ring, [ring.parse("x^2")])
    d0 = Matrix(ring, 2, 1, ((x,), (zero,)))
    d1 = Matrix(ring, 1, 2, ((zero, x),))
    base = PerfectComplex(ring, {0: 1, 1: 2, 2: 1}, {0: d0, 1: d1})
    module = tensor_with_koszul(alg, base)
    report = Report()
    _merge(report, validate(module), "module")
    direct = fold(module)
    _merge(report, mf_validate(direct), "direct fold")
    reduced, steps = reduce(module)
    for k, step in enumerate(steps, start=1):
        _merge(report, certify_step(step), f"step {k}")
    via_reduce = fold(reduced)
    _merge(report, mf_validate(via_reduce), "fold after reduce")
    if direct.potential == via_reduce.potential:
        report.add(passed("same-potential", "",
                          f"both factor {direct.potential}"))
    else:
        report.add(fail("same-potential", "", "potentials differ"))
    report.artifacts["direct"] = serialize_mf(direct)
    report.artifacts["via_reduce"] = serialize_mf(via_reduce)
    return report


DEMOS = {
    "eisenbud": _demo_eisenbud,
    "periodicity": _demo_periodicity,
    "reduce-n2": _demo_reduce_n2,
    "fold-chain": _demo_fold_chain,
}


def cmd_demo(args):
    runner = DEMOS.get(args.name)
    if runner is None:
        names = ", ".join(sorted(DEMOS))
        raise InputError(f"unknown demo {args.name!r}; available: {names}")
    return runner()


# -- argument parsing and dispatch ------------------------------------------

def _common_flags(sp):
    sp.add_argument("--output", metavar="PATH",
                    help="write the report here instead of stdout")
    sp.add_argument("--format", choices=("json", "text"), default="text",
                    help="report rendering (default: text)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="koszulmf",
        description="Exact computations with Koszul modules, their "
                    "reductions and matrix factorizations.")
    sub = parser.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("koszul", help="build the Koszul complex of a "
                                       "potential tuple")
    sp.add_argument("--ring", required=True, metavar="JSON",
                    help="inline ring descriptor")
    sp.add_argument("--potentials", required=True, metavar="F1,F2,...")
    _common_flags(sp)

    sp = sub.add_parser("validate", help="check the module identities")
    sp.add_argument("--module", required=True, metavar="FILE")
    _common_flags(sp)

    sp = sub.add_parser("cone", help="cone of a module morphism")
    sp.add_argument("--morphism", required=True, metavar="FILE")
    _common_flags(sp)

    sp = sub.add_parser("tensor", help="tensor a complex with the Koszul "
                                       "algebra")
    sp.add_argument("--ring", required=True, metavar="JSON")
    sp.add_argument("--potentials", required=True, metavar="F1,F2,...")
    sp.add_argument("--complex", required=True, metavar="FILE")
    _common_flags(sp)

    sp = sub.add_parser("boxtensor", help="external product of two modules")
    sp.add_argument("--left", required=True, metavar="FILE")
    sp.add_argument("--right", required=True, metavar="FILE")
    _common_flags(sp)

    sp = sub.add_parser("reduce", help="cut the amplitude down to the "
                                       "potential count plus one")
    sp.add_argument("--module", required=True, metavar="FILE")
    sp.add_argument("--certify", action="store_true")
    sp.add_argument("--emit-steps", metavar="DIR",
                    help="write each step's pieces as JSON files")
    _common_flags(sp)

    sp = sub.add_parser("fold", help="collapse a one-potential module into "
                                     "a matrix factorization")
    sp.add_argument("--module", required=True, metavar="FILE")
    _common_flags(sp)

    sp = sub.add_parser("unfold", help="expand a factorization into a "
                                       "two-term module")
    sp.add_argument("--mf", required=True, metavar="FILE")
    _common_flags(sp)

    sp = sub.add_parser("mf-cone", help="cone of a closed factorization "
                                        "morphism")
    sp.add_argument("--morphism", required=True, metavar="FILE")
    _common_flags(sp)

    sp = sub.add_parser("mf-tensor", help="tensor product of two "
                                          "factorizations")
    sp.add_argument("--left", required=True, metavar="FILE")
    sp.add_argument("--right", required=True, metavar="FILE")
    _common_flags(sp)

    sp = sub.add_parser("swap", help="exchange the structure maps of a "
                                     "two-term module")
    sp.add_argument("--module", required=True, metavar="FILE")
    sp.add_argument("--certify", action="store_true")
    _common_flags(sp)

    sp = sub.add_parser("homology", help="invariant factors of a complex "
                                         "over a Euclidean ring")
    sp.add_argument("--complex", required=True, metavar="FILE")
    sp.add_argument("--degree", type=int, metavar="M")
    _common_flags(sp)

    sp = sub.add_parser("demo", help="run a bundled scenario with "
                                     "certificates")
    sp.add_argument("name", metavar="NAME")
    sp.add_argument("--certify", action="store_true",
                    help="demos always certify; accepted for symmetry")
    _common_flags(sp)

    return parser


HANDLERS = {
    "koszul": cmd_koszul,
    "validate": cmd_validate,
    "cone": cmd_cone,
    "tensor": cmd_tensor,
    "boxtensor": cmd_boxtensor,
    "reduce": cmd_reduce,
    "fold": cmd_fold,
    "unfold": cmd_unfold,
    "mf-cone": cmd_mf_cone,
    "mf-tensor": cmd_mf_tensor,
    "swap": cmd_swap,
    "homology": cmd_homology,
    "demo": cmd_demo,
}


def render_report(report, fmt):
    if fmt == "json":
        return dumps(serialize_report(report))
    lines = [f"status: {report.status}"]
    for c in report.checks:
        where = f" ({c.location})" if c.location else ""
        detail = f": {c.detail}" if c.detail else ""
        lines.append(f"  [{c.outcome}] {c.name}{where}{detail}")
    for name, value in report.artifacts.items():
        lines.append(f"--- {name} ---")
        if isinstance(value, (dict, list)):
            lines.append(dumps(value).rstrip("\n"))
        else:
            lines.append(str(value))
    return "\n".join(lines) + "\n"


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = HANDLERS[args.verb](args)
    except SchemaError as exc:
        sys.stderr.write(f"schema error at {exc.pointer}: {exc.reason}\n")
        return 2
    except (InputError, RingError, ComplexError, ModuleError,
            MFError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    text = render_report(report, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if report.status == "fail":
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
