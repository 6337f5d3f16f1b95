"""Command-line surface: equation printing, verification, classification,
equivalence, orbits, CR verdicts, and the built-in result-reproduction suite.

Exit codes: 0 on success, 1 on mathematical failure (a verification or a
precondition fails), 2 on input errors (bad flags, malformed files).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AssignmentError,
    DimensionError,
    StructureError,
    TorsionLabError,
)
from .exact_linalg import Matrix, parse_rational
from .lie_algebra import BUILTIN_ALGEBRAS, LieAlgebra, algebra_from_json, jacobi_check
from .torsion import (
    LinearMapOnAlgebra,
    has_zero_torsion,
    is_abelian_structure,
    is_complex_structure,
    associated_subalgebra,
)
from .symbolic_torsion import (
    generate_system,
    heisenberg_reference_system,
    sl2_H_reference_system,
    sl2_Y_reference_system,
    system_matches_paper,
    SL2_Y_PATTERN,
    verify_case_contradictions,
)
from .automorphism import (
    AdOrbit,
    Kind,
    classify_orbit,
    gamma,
    is_automorphism,
    orbit_transporter,
    psi0,
    theta,
)
from .classification import (
    Family,
    build_canonical,
    classify_factor_blocks,
    classify_n,
    classify_sl2,
    equivalent_n,
    equivalent_sl2,
    mixed_type_search,
    product_equivalence_check,
    second_kind_partner,
    second_kind_witness,
)
from .cr import Obstruction, canonical_cr_forms_n, cr_extension_verdict
from .lie_algebra import bracket, complexify, subalgebra_closed
from .exact_linalg import GaussianRational
from .sampling import Sampler

__all__ = ["run", "main", "reproduce_paper", "ReproductionReport", "CheckResult"]

_INPUT_ERRORS = (StructureError, DimensionError, AssignmentError, FileNotFoundError,
                 json.JSONDecodeError, KeyError, ValueError)


# ---------------------------------------------------------------------------
# reproduction suite
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    id: str
    lemma_ref: str
    status: str  # pass | fail | skipped-irrational
    detail: str


@dataclass(frozen=True)
class ReproductionReport:
    seed: int
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "checks": [
                {"id": c.id, "lemma_ref": c.lemma_ref, "status": c.status, "detail": c.detail}
                for c in self.checks
            ],
        }


def _check(results, cid, ref, ok, detail=""):
    results.append(CheckResult(cid, ref, "pass" if ok else "fail", detail))


def reproduce_paper(seed: int = 0) -> ReproductionReport:
    """Run the fixed verification checklist over seeded rational sweeps."""
    s = Sampler(seed)
    results = []
    from .lie_algebra import heisenberg3, nxn, sl2_H, sl2_Y, sl2xsl2

    # 1. generated equation systems match the recorded listings
    ok = (
        system_matches_paper(generate_system(heisenberg3()), heisenberg_reference_system())
        and system_matches_paper(generate_system(sl2_H()), sl2_H_reference_system())
        and system_matches_paper(generate_system(sl2_Y(), SL2_Y_PATTERN), sl2_Y_reference_system())
        and len(generate_system(nxn()).equations) == 90
    )
    _check(results, "c01-torsion-systems", "listing:torsion-equation-systems", ok,
           "three 9-equation listings, product count 90")

    # 2. impossibility arguments
    cases = verify_case_contradictions()
    _check(results, "c02-case-contradictions", "proof:sl2-eigenvector-cases",
           all(c.passed for c in cases), "; ".join(c.case_id for c in cases))

    # 3. canonical families: zero torsion and integrability sweeps
    fails = []
    for _ in range(25):
        for fam, params in (
            (Family.S, (s.fraction(),)),
            (Family.D, (s.fraction(nonzero=True),)),
            (Family.T, (s.fraction(), s.fraction(nonzero=True))),
            (Family.TPRIME, (s.fraction(), s.fraction(nonzero=True))),
            (Family.JSTAR_SL2, (s.fraction(),)),
            (Family.JALPHA_SL2, (s.fraction(),)),
            (Family.JTILDE_SL2SL2, (s.fraction(), s.fraction(nonzero=True))),
        ):
            j = build_canonical(fam, params)
            good = is_complex_structure(j) if fam is Family.JTILDE_SL2SL2 else has_zero_torsion(j)
            if not good:
                fails.append(f"{fam.value}{params}")
    for _ in range(20):
        for fam, params in (
            (Family.STILDE, (s.rng.choice((1, -1)), s.fraction())),
            (Family.DTILDE, (s.fraction(nonzero=True),)),
            (Family.TTILDE, (s.fraction(nonzero=True), s.fraction())),
            (Family.TTILDE_REMARK_A, (s.fraction(nonzero=True), s.fraction(nonzero=True))),
            (Family.TTILDE_REMARK_B, (s.fraction(nonzero=True),)),
        ):
            if not is_complex_structure(build_canonical(fam, params)):
                fails.append(f"{fam.value}{params}")
    _check(results, "c03-canonical-families", "lemma:canonical-families", not fails,
           "all sweeps integrable/zero-torsion" if not fails else "; ".join(fails[:4]))

    # 4. equivalence claims
    fails = []
    for _ in range(10):
        a, b = s.fraction(), s.fraction(nonzero=True)
        if equivalent_n(build_canonical(Family.T, (a, b)), build_canonical(Family.TPRIME, (a, b))) is None:
            fails.append(f"T/T'({a},{b})")
    for fam, mk in (
        (Family.STILDE, lambda: (s.rng.choice((1, -1)), s.fraction())),
        (Family.DTILDE, lambda: (s.fraction(nonzero=True),)),
        (Family.TTILDE, lambda: (s.fraction(nonzero=True), s.fraction())),
        (Family.JTILDE_SL2SL2, lambda: (s.fraction(), s.fraction(nonzero=True))),
    ):
        for _ in range(10):
            p = mk()
            if not product_equivalence_check((fam, fam), (p, second_kind_partner(fam, p)), Kind.SECOND_KIND):
                fails.append(f"{fam.value}{p}")
    for fam1, p1, fam2, p2 in (
        (Family.STILDE, (1, 1), Family.DTILDE, (2,)),
        (Family.STILDE, (-1, 0), Family.TTILDE, (1, 1)),
        (Family.DTILDE, (1,), Family.TTILDE, (2, 3)),
    ):
        if product_equivalence_check((fam1, fam2), (p1, p2), Kind.FIRST_KIND):
            fails.append(f"{fam1.value} vs {fam2.value}")
    for _ in range(10):
        lam, mu = s.fraction(), s.fraction()
        j1 = build_canonical(Family.JSTAR_SL2, (lam,))
        j2 = build_canonical(Family.JSTAR_SL2, (mu,))
        wit = equivalent_sl2(j1, j2)
        if (wit is None) != (lam != mu):
            fails.append(f"Jstar {lam} vs {mu}")
    _check(results, "c04-equivalence-claims", "lemma:equivalence-tables", not fails,
           "second-kind maps certified; distinct members separated" if not fails else "; ".join(fails[:4]))

    # 5. the rotation-pair family is abelian
    fails = []
    for _ in range(20):
        eps = s.rng.choice((1, -1))
        if not is_abelian_structure(build_canonical(Family.STILDE, (eps, s.fraction()))):
            fails.append(f"Stilde eps={eps}")
    if is_abelian_structure(build_canonical(Family.DTILDE, (1,))):
        fails.append("Dtilde(1) claimed abelian")
    if is_abelian_structure(build_canonical(Family.JTILDE_SL2SL2, (0, 1))):
        fails.append("Jtilde(0,1) claimed abelian")
    _check(results, "c05-abelian-family", "remark:abelian-structures", not fails,
           "20 abelian samples; non-abelian controls hold" if not fails else "; ".join(fails))

    # 6. associated-subalgebra basis closure for the sl2-product family
    fails = []
    CL = complexify(sl2xsl2())
    i = GaussianRational(Fraction(0), Fraction(1))
    one = GaussianRational(Fraction(1), Fraction(0))
    for _ in range(10):
        c2, c5 = s.fraction(), s.fraction(nonzero=True)
        j = build_canonical(Family.JTILDE_SL2SL2, (c2, c5))
        zero = GaussianRational()
        y11 = (one, zero, -i, zero, zero, zero)
        y21 = (zero, zero, zero, one, zero, -i)
        y22 = (zero, -i * c5, zero, zero, one + i * c2, zero)
        stated = (y11, y21, y22)
        if not subalgebra_closed(CL, stated):
            fails.append(f"closure ({c2},{c5})")
            continue
        span = associated_subalgebra(j)
        if not all(span.contains(v) for v in stated):
            fails.append(f"span ({c2},{c5})")
    _check(results, "c06-subalgebra-basis", "remark:associated-subalgebra", not fails,
           "stated basis closes and spans" if not fails else "; ".join(fails[:4]))

    # 7. CR verdicts
    fails = []
    for _ in range(50):
        if not cr_extension_verdict(build_canonical(Family.S, (s.fraction(),))).extends:
            fails.append("S sample")
        v = cr_extension_verdict(build_canonical(Family.D, (s.fraction(nonzero=True),)))
        if v.extends or v.obstruction is not Obstruction.KERNEL_TOO_SMALL:
            fails.append("D sample")
        v = cr_extension_verdict(build_canonical(Family.T, (s.fraction(), s.fraction(nonzero=True))))
        if v.extends or v.obstruction is not Obstruction.KERNEL_TOO_SMALL:
            fails.append("T sample")
    for _ in range(10):
        if not cr_extension_verdict(build_canonical(Family.JSTAR_SL2, (s.fraction(),))).extends:
            fails.append("Jstar sample")
    forms = canonical_cr_forms_n()
    if not all(c.passed for c in forms):
        fails.append("canonical forms")
    _check(results, "c07-cr-extensions", "remark:cr-verdicts", not fails,
           "rotation family extends; dilation/triangular rejected" if not fails else "; ".join(fails[:4]))

    # 8. mixed-type zero-torsion map on the product
    try:
        jm = mixed_type_search()
        blocks = classify_factor_blocks(jm)
        ok = (
            has_zero_torsion(jm)
            and not is_complex_structure(jm)
            and blocks[0][0] is not blocks[1][0]
        )
        detail = f"blocks {blocks[0][0].value}/{blocks[1][0].value}"
    except TorsionLabError as exc:
        ok, detail = False, str(exc)
    _check(results, "c08-mixed-type", "remark:mixed-type-blocks", ok, detail)

    # 9. automorphism predicates and orbit invariants
    fails = []
    for name, elem in (("psi0", psi0()), ("theta", theta()), ("gamma", gamma())):
        if not is_automorphism(elem.algebra, elem.matrix):
            fails.append(name)
    for _ in range(20):
        for elem in (s.ad_sl2("H"), s.aut_heisenberg(), s.first_kind_nxn(), s.aut_sl2sl2()):
            if not is_automorphism(elem.algebra, elem.matrix):
                fails.append("sampled element")
    for _ in range(50):
        phi = s.ad_sl2("H")
        v = s.vector(3)
        x, y, z = v
        q1 = x * x + y * z
        img = phi.matrix.apply(v)
        q2 = img[0] * img[0] + img[1] * img[2]
        if q1 != q2:
            fails.append("form invariance")
        if classify_orbit(v).ad_class is not classify_orbit(img).ad_class:
            fails.append("orbit invariance")
        mirrored = classify_orbit(psi0().matrix.apply(v))
        if mirrored.full_class is not classify_orbit(v).full_class:
            fails.append("component merge")
    _check(results, "c09-automorphisms-orbits", "prelim:automorphism-groups", not fails,
           "predicates, invariant form, orbit merge" if not fails else "; ".join(sorted(set(fails))))

    return ReproductionReport(seed, tuple(results))


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

def _load_algebra(spec: str, check_jacobi: bool = True) -> LieAlgebra:
    if spec in BUILTIN_ALGEBRAS:
        return BUILTIN_ALGEBRAS[spec]()
    if spec.startswith("file:"):
        with open(spec[5:], "r", encoding="utf-8") as fh:
            return algebra_from_json(json.load(fh), check_jacobi=check_jacobi)
    raise StructureError(
        f"unknown algebra {spec!r}; use one of {', '.join(BUILTIN_ALGEBRAS)} or file:PATH"
    )


def _load_map(algebra: LieAlgebra, path: str) -> LinearMapOnAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        return LinearMapOnAlgebra(algebra, Matrix.from_json(json.load(fh)))


def _load_pattern(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise StructureError("pattern file must be a JSON object of entry name to value")
    return {k: parse_rational(v) for k, v in data.items()}


def _print_json(payload):
    print(json.dumps(payload, indent=2, sort_keys=True))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torsionlab",
        description="Exact torsion tensors, equation systems, and classification "
                    "of zero-torsion maps on low-dimensional Lie algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, matrix=False):
        p.add_argument("--algebra", required=True,
                       help="heisenberg3|sl2-H|sl2-Y|nxn|sl2xsl2|file:PATH")
        if matrix:
            p.add_argument("--matrix", required=True, help="matrix JSON file")
        p.add_argument("--format", default="text", choices=("text", "json", "latex"))
        p.add_argument("--no-jacobi", action="store_true",
                       help="skip the Jacobi validation of file-loaded algebras")

    p = sub.add_parser("equations", help="print the symbolic torsion equations")
    common(p)
    p.add_argument("--pattern", help="JSON file fixing entries, e.g. {\"xi_1_3\": \"0\"}")

    p = sub.add_parser("verify", help="evaluate torsion properties of a concrete map")
    common(p, matrix=True)

    p = sub.add_parser("classify", help="canonical form and conjugator of a zero-torsion map")
    common(p, matrix=True)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("equivalent", help="decide equivalence of two zero-torsion maps")
    p.add_argument("--algebra", required=True)
    p.add_argument("--matrix1", required=True)
    p.add_argument("--matrix2", required=True)
    p.add_argument("--format", default="text", choices=("text", "json", "latex"))
    p.add_argument("--no-jacobi", action="store_true")

    p = sub.add_parser("orbit", help="adjoint-orbit class of an sl(2,R) vector")
    p.add_argument("--vector", required=True, help="comma-separated coordinates x,y,z")
    p.add_argument("--format", default="text", choices=("text", "json", "latex"))

    p = sub.add_parser("cr-verdict", help="does the map extend a CR-structure?")
    common(p, matrix=True)

    p = sub.add_parser("reproduce-paper", help="run the built-in verification suite")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", default="text", choices=("text", "json", "latex"))
    return parser


def _resolve_seed(value) -> int:
    if value is not None:
        return value
    env = os.environ.get("TORSIONLAB_SEED")
    return int(env) if env else 0


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------

def _cmd_equations(args) -> int:
    L = _load_algebra(args.algebra, not args.no_jacobi)
    pattern = _load_pattern(args.pattern) if args.pattern else None
    system = generate_system(L, pattern)
    if args.format == "json":
        _print_json({"algebra": L.name or args.algebra, "equations": system.to_json()})
        return 0
    for label, poly in system.nonzero_equations().items():
        rendered = poly.normalized_sign()
        if args.format == "latex":
            print(f"{label} &\\quad {rendered.to_latex()} = 0 \\\\")
        else:
            print(f"{label}: {rendered.to_text()} = 0")
    return 0


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _cmd_verify(args) -> int:
    L = _load_algebra(args.algebra, not args.no_jacobi)
    j = _load_map(L, args.matrix)
    zero = has_zero_torsion(j)
    integrable = zero and is_complex_structure(j)
    abelian = integrable and is_abelian_structure(j)
    if args.format == "json":
        _print_json({"zero_torsion": zero, "integrable": integrable, "abelian": abelian})
    else:
        line = f"zero torsion: {_bool(zero)}; integrable: {_bool(integrable)}"
        if integrable:
            line += f"; abelian: {_bool(abelian)}"
        print(line)
    return 0


def _classification_payload(result) -> dict:
    return {
        "family": result.canonical.family.value,
        "params": [str(x) for x in result.canonical.params],
        "conjugator": result.conjugator.to_json(),
        "certified": result.certified,
        **({"note": result.note} if result.note else {}),
    }


def _cmd_classify(args) -> int:
    L = _load_algebra(args.algebra, not args.no_jacobi)
    j = _load_map(L, args.matrix)
    if L.name == "heisenberg3":
        result = classify_n(j)
    elif L.name in ("sl2-H", "sl2-Y"):
        result = classify_sl2(j)
    else:
        raise StructureError("classification is implemented for heisenberg3, sl2-H, sl2-Y")
    payload = _classification_payload(result)
    if args.format == "text":
        print(f"family {payload['family']}({', '.join(payload['params'])}); "
              f"certified: {_bool(result.certified)}")
    else:
        _print_json(payload)
    return 0


def _cmd_equivalent(args) -> int:
    L = _load_algebra(args.algebra, not args.no_jacobi)
    j1 = _load_map(L, args.matrix1)
    j2 = _load_map(L, args.matrix2)
    if L.name == "heisenberg3":
        wit = equivalent_n(j1, j2)
        invariant = "corner-block similarity class and lower-right entry"
    elif L.name in ("sl2-H", "sl2-Y"):
        wit = equivalent_sl2(j1, j2)
        invariant = "trace"
    else:
        raise StructureError("equivalence is implemented for heisenberg3, sl2-H, sl2-Y")
    if wit is None:
        if args.format == "json":
            _print_json({"equivalent": False, "invariant": invariant})
        else:
            print(f"non-equivalent: {invariant}")
        return 0
    if args.format == "json":
        _print_json({"equivalent": True, "witness": wit.to_json()})
    else:
        print("equivalent; witness matrix:")
        for row in wit.matrix.entries():
            print("  " + " ".join(str(x) for x in row))
    return 0


def _cmd_orbit(args) -> int:
    coords = tuple(parse_rational(t) for t in args.vector.split(","))
    if len(coords) != 3:
        raise StructureError("orbit vectors have three coordinates")
    cls = classify_orbit(coords)
    payload = {
        "class": cls.ad_class.value,
        "merged_class": cls.full_class.value,
        "q": str(cls.q),
        "s": None if cls.s is None else str(cls.s),
        "scale_rational": cls.s_rational,
    }
    if cls.s_rational:
        transporter = orbit_transporter(coords, cls.ad_class)
        payload["transporter"] = transporter.to_json()
    else:
        payload["transporter"] = None
    if args.format == "json":
        _print_json(payload)
    else:
        print(f"class: {payload['class']} (merged: {payload['merged_class']}); "
              f"q = {payload['q']}; s = {payload['s'] or 'irrational'}")
        if payload["transporter"] is not None:
            print("transporter kind:", payload["transporter"]["kind"])
            for row in payload["transporter"]["entries"]:
                print("  " + " ".join(row))
    return 0


def _cmd_cr_verdict(args) -> int:
    L = _load_algebra(args.algebra, not args.no_jacobi)
    j = _load_map(L, args.matrix)
    verdict = cr_extension_verdict(j)
    if args.format == "json":
        _print_json(verdict.to_json())
    else:
        if verdict.extends:
            basis = ["(" + ", ".join(str(x) for x in v) + ")" for v in verdict.witness.p_basis]
            print(f"extends a rank-{verdict.witness.rank} CR-structure; plane basis: "
                  + "; ".join(basis))
        else:
            print(f"does not extend: {verdict.obstruction.value}")
    return 0


def _cmd_reproduce(args) -> int:
    report = reproduce_paper(_resolve_seed(args.seed))
    if args.format == "json":
        _print_json(report.to_json())
    else:
        for c in report.checks:
            print(f"[{c.status.upper():4}] {c.id} ({c.lemma_ref}): {c.detail}")
        total = len(report.checks)
        good = sum(1 for c in report.checks if c.status == "pass")
        print(f"{good}/{total} checks passed (seed {report.seed})")
    return 0 if report.passed else 1


_HANDLERS = {
    "equations": _cmd_equations,
    "verify": _cmd_verify,
    "classify": _cmd_classify,
    "equivalent": _cmd_equivalent,
    "orbit": _cmd_orbit,
    "cr-verdict": _cmd_cr_verdict,
    "reproduce-paper": _cmd_reproduce,
}


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except _INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except TorsionLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
