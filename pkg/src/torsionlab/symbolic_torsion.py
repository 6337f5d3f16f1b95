"""Torsion equations of a symbolic map as exact multivariate polynomials.

For a map with unknown entries xi_i_j (column j holds the image of x_j),
``generate_system`` expands the torsion tensor on every basis pair and
projects on every coordinate, labelling the result ``"ij|k"``.  Equation
identity is always read modulo a global nonzero rational factor per
equation: the vanishing set is the object of interest, not the signed
polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AssignmentError, StructureError
from .exact_linalg import parse_rational
from .lie_algebra import LieAlgebra, heisenberg3, sl2_H, sl2_Y
from .torsion import LinearMapOnAlgebra

__all__ = [
    "PolyQ",
    "TorsionSystem",
    "generate_system",
    "system_matches_paper",
    "evaluate_system",
    "verify_case_contradictions",
    "CaseCheck",
    "entry_name",
    "entries_of",
    "heisenberg_reference_system",
    "sl2_H_reference_system",
    "sl2_Y_reference_system",
    "SL2_Y_PATTERN",
]


def entry_name(i: int, j: int) -> str:
    """Canonical unknown name for the (i, j) entry, 1-based."""
    return f"xi_{i}_{j}"


class PolyQ:
    """Sparse multivariate polynomial over Q in a fixed ordered variable set.

    Terms map exponent tuples to nonzero Fraction coefficients.  Printing
    uses graded lexicographic order (row-major variable order), so output is
    deterministic.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        clean = {}
        for expo, coeff in (terms or {}).items():
            c = parse_rational(coeff)
            if c:
                clean[tuple(expo)] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------------
    @classmethod
    def constant(cls, c, vars) -> "PolyQ":
        c = parse_rational(c)
        zero = (0,) * len(tuple(vars))
        return cls(vars, {zero: c} if c else {})

    @classmethod
    def variable(cls, name: str, vars) -> "PolyQ":
        vars = tuple(vars)
        idx = vars.index(name)
        expo = tuple(int(k == idx) for k in range(len(vars)))
        return cls(vars, {expo: Fraction(1)})

    # -- ring operations --------------------------------------------------------
    def _coerce(self, other) -> "PolyQ":
        if isinstance(other, PolyQ):
            if other.vars != self.vars:
                raise StructureError("polynomials live over different variable sets")
            return other
        return PolyQ.constant(other, self.vars)

    def __add__(self, other) -> "PolyQ":
        o = self._coerce(other)
        terms = dict(self.terms)
        for e, c in o.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return PolyQ(self.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "PolyQ":
        return PolyQ(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "PolyQ":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PolyQ":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "PolyQ":
        if not isinstance(other, PolyQ):
            c = parse_rational(other)
            return PolyQ(self.vars, {e: c * v for e, v in self.terms.items()})
        o = self._coerce(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return PolyQ(self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PolyQ":
        out = PolyQ.constant(1, self.vars)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PolyQ.constant(other, self.vars)
        return isinstance(other, PolyQ) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    # -- queries ------------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def proportionality(self, other: "PolyQ"):
        """Nonzero q with self = q * other, or None."""
        o = self._coerce(other)
        if self.is_zero and o.is_zero:
            return Fraction(1)
        if self.is_zero or o.is_zero or set(self.terms) != set(o.terms):
            return None
        items = iter(o.terms.items())
        e0, c0 = next(items)
        q = self.terms[e0] / c0
        for e, c in items:
            if self.terms[e] != q * c:
                return None
        return q

    def has_no_real_roots_certificate(self) -> bool:
        """Sufficient positivity test: positive constant plus even-power terms
        with positive coefficients."""
        if self.constant_term() <= 0:
            return False
        for e, c in self.terms.items():
            if sum(e) == 0:
                continue
            if c <= 0 or any(p % 2 for p in e):
                return False
        return True

    # -- substitution / evaluation ---------------------------------------------
    def substitute(self, mapping) -> "PolyQ":
        """Replace variables by polynomials or rationals; others unchanged."""
        subs = {}
        for name, val in mapping.items():
            idx = self.vars.index(name)
            subs[idx] = val if isinstance(val, PolyQ) else PolyQ.constant(val, self.vars)
        out = PolyQ.constant(0, self.vars)
        for e, c in self.terms.items():
            term = PolyQ.constant(c, self.vars)
            rest = list(e)
            for idx, repl in subs.items():
                for _ in range(e[idx]):
                    term = term * repl
                rest[idx] = 0
            term = term * PolyQ(self.vars, {tuple(rest): Fraction(1)})
            out = out + term
        return out

    def evaluate(self, assignment) -> Fraction:
        vals = []
        for name in self.vars:
            if name in assignment:
                vals.append(parse_rational(assignment[name]))
            else:
                vals.append(None)
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for idx, p in enumerate(e):
                if p:
                    if vals[idx] is None:
                        raise AssignmentError(f"no value for unknown {self.vars[idx]}")
                    term *= vals[idx] ** p
            total += term
        return total

    # -- printing -----------------------------------------------------------------
    def _ordered_terms(self):
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def normalized_sign(self) -> "PolyQ":
        """Scale by -1 when the graded-lex leading coefficient is negative."""
        if self.is_zero:
            return self
        lead = self._ordered_terms()[0][1]
        return self if lead > 0 else -self

    def _render(self, var_fmt, pow_fmt, mul: str) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e, c in self._ordered_terms():
            factors = []
            for idx, p in enumerate(e):
                if p == 1:
                    factors.append(var_fmt(self.vars[idx]))
                elif p > 1:
                    factors.append(pow_fmt(self.vars[idx], p))
            mono = mul.join(factors)
            if not mono:
                piece = str(c)
            elif c == 1:
                piece = mono
            elif c == -1:
                piece = f"-{mono}"
            else:
                piece = f"{c}{mul}{mono}"
            parts.append(piece)
        out = " + ".join(parts).replace("+ -", "- ")
        return out

    def to_text(self) -> str:
        return self._render(lambda v: v, lambda v, p: f"({v})^{p}", "*")

    def to_latex(self) -> str:
        def fmt(v: str) -> str:
            if v.startswith("xi_"):
                _, i, j = v.split("_")
                return rf"\xi^{{{i}}}_{{{j}}}"
            return v

        return self._render(fmt, lambda v, p: f"({fmt(v)})^{{{p}}}", " ")

    def to_json(self) -> list:
        out = []
        for e, c in self._ordered_terms():
            mono = {self.vars[i]: p for i, p in enumerate(e) if p}
            out.append({"coeff": str(c), "monomial": mono})
        return out

    def __repr__(self):
        return f"PolyQ({self.to_text()})"


# ---------------------------------------------------------------------------
# torsion systems
# ---------------------------------------------------------------------------

@dataclass
class TorsionSystem:
    """Labelled torsion equations of a symbolic map on a fixed algebra."""

    algebra: LieAlgebra
    unknowns: tuple
    equations: dict
    fixed: dict = field(default_factory=dict)

    def labels(self):
        return list(self.equations)

    def nonzero_equations(self) -> dict:
        return {lab: p for lab, p in self.equations.items() if not p.is_zero}

    def to_json(self) -> list:
        return [{"label": lab, "poly": poly.normalized_sign().to_json()}
                for lab, poly in self.nonzero_equations().items()]


def _grid_vars(dim: int):
    return tuple(entry_name(i, j) for i in range(1, dim + 1) for j in range(1, dim + 1))


def _normalize_pattern(dim: int, zero_pattern) -> dict:
    fixed = {}
    for key, val in (zero_pattern or {}).items():
        if isinstance(key, str):
            name = key
        else:
            i, j = key
            name = entry_name(i, j)
        if name not in _grid_vars(dim):
            raise StructureError(f"pattern entry {key!r} outside the unknown grid")
        fixed[name] = parse_rational(val)
    return fixed


def generate_system(L: LieAlgebra, zero_pattern=None) -> TorsionSystem:
    """Expand the torsion tensor symbolically on every basis pair.

    ``zero_pattern`` fixes entries (by ``(i, j)`` pair or ``xi_i_j`` name) to
    rational constants before expansion.
    """
    n = L.dim
    vars = _grid_vars(n)
    fixed = _normalize_pattern(n, zero_pattern)
    cols = []
    for j in range(1, n + 1):
        col = []
        for i in range(1, n + 1):
            name = entry_name(i, j)
            if name in fixed:
                col.append(PolyQ.constant(fixed[name], vars))
            else:
                col.append(PolyQ.variable(name, vars))
        cols.append(col)

    zero = PolyQ.constant(0, vars)

    def bracket_poly(u, v):
        out = [zero] * n
        for (p, q), coeffs in L.table.items():
            w = u[p] * v[q] - u[q] * v[p]
            if not w.is_zero:
                for k, c in coeffs.items():
                    out[k] = out[k] + w * c
        return out

    def apply_j(u):
        return [sum((cols[t][r] * u[t] for t in range(n)), zero) for r in range(n)]

    equations = {}
    for i in range(n):
        ei = [PolyQ.constant(int(i == t), vars) for t in range(n)]
        for j in range(i + 1, n):
            ej = [PolyQ.constant(int(j == t), vars) for t in range(n)]
            t1 = bracket_poly(cols[i], cols[j])
            t2 = bracket_poly(ei, ej)
            t3 = apply_j(bracket_poly(cols[i], ej))
            t4 = apply_j(bracket_poly(ei, cols[j]))
            for k in range(n):
                equations[f"{i+1}{j+1}|{k+1}"] = t1[k] - t2[k] - t3[k] - t4[k]
    return TorsionSystem(L, vars, equations, fixed)


def system_matches_paper(sys: TorsionSystem, reference: TorsionSystem) -> bool:
    """Per-label agreement up to one global nonzero rational factor each."""
    if set(sys.equations) != set(reference.equations):
        raise StructureError("equation label sets differ")
    for lab, poly in sys.equations.items():
        if poly.proportionality(reference.equations[lab]) is None:
            return False
    return True


def evaluate_system(sys: TorsionSystem, assignment) -> dict:
    """Exact evaluation of every equation at a full assignment of unknowns."""
    values = {}
    for key, val in assignment.items():
        name = key if isinstance(key, str) else entry_name(*key)
        values[name] = parse_rational(val)
    needed = [v for v in sys.unknowns if v not in sys.fixed]
    missing = [v for v in needed if v not in values]
    if missing:
        raise AssignmentError(f"assignment misses unknowns: {', '.join(missing)}")
    values.update(sys.fixed)
    return {lab: poly.evaluate(values) for lab, poly in sys.equations.items()}


def entries_of(J: LinearMapOnAlgebra) -> dict:
    """Assignment mapping grid names to the entries of a concrete map."""
    n = J.algebra.dim
    return {
        entry_name(i + 1, j + 1): J.matrix[i, j]
        for i in range(n)
        for j in range(n)
    }


# ---------------------------------------------------------------------------
# hand-recorded reference systems (expanded independently of the generator)
# ---------------------------------------------------------------------------

def _ref_builder(dim: int):
    vars = _grid_vars(dim)

    def v(i, j):
        return PolyQ.variable(entry_name(i, j), vars)

    def c(x):
        return PolyQ.constant(x, vars)

    return vars, v, c


def heisenberg_reference_system() -> TorsionSystem:
    """Frozen torsion system for the Heisenberg algebra.

    The 13|3 cross term is xi_2_1 * xi_1_3: the variant with xi_1_2 breaks
    the equivariance of the system under the basis swap x1 <-> x2, x3 -> -x3
    and disagrees with direct expansion.
    """
    vars, v, c = _ref_builder(3)
    eqs = {
        "12|1": v(1, 3) * (v(2, 2) + v(1, 1)),
        "12|2": v(2, 3) * (v(2, 2) + v(1, 1)),
        "12|3": v(3, 3) * (v(2, 2) + v(1, 1)) - v(2, 2) * v(1, 1) + v(2, 1) * v(1, 2) + c(1),
        "13|1": v(2, 3) * v(1, 3),
        "13|2": v(2, 3) ** 2,
        "13|3": v(2, 3) * (v(3, 3) - v(1, 1)) + v(2, 1) * v(1, 3),
        "23|1": v(1, 3) ** 2,
        "23|2": v(2, 3) * v(1, 3),
        "23|3": v(1, 3) * (v(2, 2) - v(3, 3)) - v(2, 3) * v(1, 2),
    }
    return TorsionSystem(heisenberg3(), vars, eqs)


def sl2_H_reference_system() -> TorsionSystem:
    vars, v, c = _ref_builder(3)
    eqs = {
        "12|1": 2 * (v(2, 2) + v(1, 1)) * v(1, 2) + (v(2, 2) - v(1, 1)) * v(3, 1)
                - (v(2, 1) + 2 * v(1, 3)) * v(3, 2),
        "12|2": 2 * (v(2, 1) * v(1, 2) + c(1) + v(2, 2) ** 2) - v(3, 1) * v(2, 1)
                - 2 * v(3, 2) * v(2, 3),
        "12|3": (v(3, 1) + 2 * v(1, 2)) * v(3, 1) - 2 * (v(2, 2) + 2 * v(1, 1)) * v(3, 2)
                + 2 * v(3, 3) * v(3, 2),
        "13|1": (v(2, 1) - 2 * v(1, 3)) * v(1, 1) + 2 * v(2, 3) * v(1, 2) + v(3, 1) * v(2, 3)
                - (v(2, 1) + 2 * v(1, 3)) * v(3, 3),
        "13|2": 2 * (v(2, 2) - 2 * v(1, 1)) * v(2, 3) + (v(2, 1) + 2 * v(1, 3)) * v(2, 1)
                - 2 * v(3, 3) * v(2, 3),
        "13|3": v(3, 1) * v(2, 1) - 2 * v(3, 1) * v(1, 3) - c(2) + 2 * v(3, 2) * v(2, 3)
                - 2 * v(3, 3) ** 2,
        "23|1": 4 * v(1, 3) * v(1, 2) - c(1) - v(2, 2) * v(1, 1) - v(3, 2) * v(2, 3)
                + (v(2, 2) - v(1, 1)) * v(3, 3),
        "23|2": 4 * v(2, 3) * v(1, 2) - (v(2, 2) + v(3, 3)) * v(2, 1),
        "23|3": 4 * v(3, 2) * v(1, 3) - (v(2, 2) + v(3, 3)) * v(3, 1),
    }
    return TorsionSystem(sl2_H(), vars, eqs)


SL2_Y_PATTERN = {(1, 2): Fraction(0), (3, 2): Fraction(0)}


def sl2_Y_reference_system() -> TorsionSystem:
    """Starred system in the rotated basis; xi_2_2 is the free eigen-parameter."""
    vars, v, c = _ref_builder(3)
    lam = v(2, 2)
    eqs = {
        "12|1": (v(3, 1) + v(1, 3)) * lam - (v(3, 1) - v(1, 3)) * v(1, 1),
        "12|2": (v(1, 1) + lam) * v(2, 3) - v(2, 1) * v(3, 1),
        "12|3": v(1, 1) * lam - c(1) + v(3, 1) ** 2 - (v(1, 1) + lam) * v(3, 3),
        "13|1": v(2, 3) * v(1, 3) + v(2, 1) * v(1, 1) + v(2, 3) * v(3, 1) - v(2, 1) * v(3, 3),
        "13|2": v(1, 1) * lam + c(1) + v(2, 1) ** 2 + v(2, 3) ** 2 + v(3, 1) * v(1, 3)
                - (v(1, 1) - lam) * v(3, 3),
        "13|3": v(2, 3) * v(1, 1) - v(2, 1) * (v(1, 3) + v(3, 1)) - v(2, 3) * v(3, 3),
        "23|1": v(1, 1) * lam + c(1) - v(1, 3) ** 2 + (v(1, 1) - lam) * v(3, 3),
        "23|2": v(2, 3) * v(1, 3) - (v(3, 3) + lam) * v(2, 1),
        "23|3": (v(3, 1) + v(1, 3)) * lam + (v(3, 1) - v(1, 3)) * v(3, 3),
    }
    return TorsionSystem(sl2_Y(), vars, eqs, dict(_normalize_pattern(3, SL2_Y_PATTERN)))


# ---------------------------------------------------------------------------
# impossibility arguments, re-derived mechanically
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CaseCheck:
    case_id: str
    description: str
    passed: bool
    detail: str


def _oriented(sys: TorsionSystem, reference: TorsionSystem) -> dict:
    """Generated equations rescaled onto the reference orientation."""
    out = {}
    for lab, poly in sys.equations.items():
        ref = reference.equations[lab]
        q = poly.proportionality(ref)
        if q is None:
            raise StructureError(f"generated equation {lab} is not proportional to its reference")
        out[lab] = poly * (1 / q)
    return out


def verify_case_contradictions():
    """Re-derive the four impossibility arguments of the rank-one eigenvector cases.

    Each check substitutes the stated constraints into the generated (and
    reference-oriented) equations and certifies the resulting polynomial
    identity exactly.
    """
    checks = []

    sysH = _oriented(generate_system(sl2_H()), sl2_H_reference_system())
    vars3 = _grid_vars(3)

    def v(i, j):
        return PolyQ.variable(entry_name(i, j), vars3)

    def c(x):
        return PolyQ.constant(x, vars3)

    # Case: eigenvector on the cone. After xi_1_3 = xi_2_3 = 0 equation 13|2
    # degenerates to a square, and killing that square leaves 13|3 as a
    # strictly negative constant-plus-squares identity.
    zero13 = {entry_name(1, 3): Fraction(0), entry_name(2, 3): Fraction(0)}
    e1 = sysH["13|2"].substitute(zero13)
    step1 = e1 == v(2, 1) ** 2
    e2 = sysH["13|3"].substitute({**zero13, entry_name(2, 1): Fraction(0)})
    blocker = -e2
    step2 = blocker == c(2) + 2 * v(3, 3) ** 2 and blocker.has_no_real_roots_certificate()
    checks.append(CaseCheck(
        "cone-eigenvector",
        "isotropic eigenvector forces xi_2_1 = 0 and then 2 + 2 xi_3_3^2 = 0",
        step1 and step2,
        f"13|2 -> {e1.to_text()}; -13|3 -> {blocker.to_text()}",
    ))

    # Case: eigenvector on the one-sheet hyperboloid.  The stated chain of
    # substitutions turns 12|2 and 23|1 into two conics whose sum is 2.
    subs2 = {
        entry_name(2, 1): Fraction(0), entry_name(3, 1): Fraction(0),
        entry_name(1, 2): Fraction(0), entry_name(1, 3): Fraction(0),
        entry_name(1, 1): Fraction(0), entry_name(3, 3): v(2, 2),
    }
    p = sysH["12|2"].substitute(subs2) * Fraction(1, 2)
    q = -(sysH["23|1"].substitute(subs2))
    total = p + q
    ok2 = (
        p == c(1) + v(2, 2) ** 2 - v(2, 3) * v(3, 2)
        and q == c(1) - v(2, 2) ** 2 + v(2, 3) * v(3, 2)
        and total == c(2)
    )
    checks.append(CaseCheck(
        "one-sheet-eigenvector",
        "reduced 12|2 and 23|1 sum to the nonzero constant 2",
        ok2,
        f"sum -> {total.to_text()}",
    ))

    sysY = _oriented(generate_system(sl2_Y(), SL2_Y_PATTERN), sl2_Y_reference_system())

    # Rotated-basis subcase: corner entries vanish and the diagonal matches.
    subs11 = {
        entry_name(1, 3): Fraction(0), entry_name(3, 1): Fraction(0),
        entry_name(3, 3): v(1, 1),
    }
    e = sysY["23|1"].substitute(subs11)
    ok3 = e == v(1, 1) ** 2 + c(1) and e.has_no_real_roots_certificate()
    checks.append(CaseCheck(
        "rotated-subcase-equal-diagonal",
        "starred 23|1 reduces to xi_1_1^2 + 1",
        ok3,
        f"*23|1 -> {e.to_text()}",
    ))

    # Rotated-basis subcase: nonzero corner, eigen-parameter zero.  Adding the
    # two starred equations eliminates the corner and leaves 2 plus squares.
    subs12 = {entry_name(2, 2): Fraction(0), entry_name(1, 3): v(3, 1)}
    s = sysY["13|2"].substitute(subs12) + sysY["23|1"].substitute(subs12)
    ok4 = s == c(2) + v(2, 1) ** 2 + v(2, 3) ** 2 and s.has_no_real_roots_certificate()
    checks.append(CaseCheck(
        "rotated-subcase-nonzero-corner",
        "starred 13|2 + 23|1 reduces to xi_2_1^2 + xi_2_3^2 + 2",
        ok4,
        f"sum -> {s.to_text()}",
    ))

    return checks
