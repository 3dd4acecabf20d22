"""Differential Galois classification of the reduced equations.

Three engines, all exact:

  * reducibility exclusions for the four-singularity equation, through
    the second symmetric power (diagonal subgroups) and exponent
    rationality (finite triangular subgroups), plus case 2 of the
    Kovacic algorithm (the imprimitive D-dagger type);
  * the Kimura solvability test for the three-singularity equation,
    condition A on the four exponent sums and condition B against the
    fifteen residue families;
  * the Weierstrass-form classification (integer index, half odd
    integer index with the Brioschi determinant, and the finite-j
    exceptional subcase).

Every verdict carries a replayable certificate with the exact data the
decision was made from.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exact import (GAUSSIAN, IRRATIONAL, RATIONAL, GaussRational, Poly,
                    RationalFunction, SqrtQuantity, _frac, linear_solve,
                    poly_lcm, polynomial_ode_solutions, sqrt_classify)
from .variational import (FuchsianEquation, LameData, RiemannPData,
                          reduced_equation_from_dF)
from .solutions import weierstrass_polynomials
from .variational import lame_beta_coefficient

# verdict vocabulary
ABELIAN_POSSIBLE = "AbelianPossible"
NOT_ABELIAN = "NotAbelian"
NOT_SOLVABLE = "NotSolvable"
SOLVABLE = "Solvable"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class GaloisVerdict:
    conclusion: str
    certificate: dict

    def to_jsonable(self) -> dict:
        return {"conclusion": self.conclusion, "certificate": self.certificate}


# ---------------------------------------------------------------------------
# Second symmetric power and reducibility exclusions
# ---------------------------------------------------------------------------

def second_symmetric_power(eq: FuchsianEquation) -> list:
    """Coefficients [c0, c1, c2, c3] of the third order operator
    v''' - 4 r v' - 2 r' v = 0 annihilating products of solutions of
    w'' = r w. Exponents at each singularity are {1, 1 +- Delta}, and at
    infinity lie in {-2, -1, 0}."""
    r = eq.r_rational()
    return [
        RationalFunction.of(-2) * r.derivative(),
        RationalFunction.of(-4) * r,
        RationalFunction.of(0),
        RationalFunction.of(1),
    ]


@dataclass(frozen=True)
class ExclusionResult:
    excluded: bool
    reason: str
    data: dict

    def to_jsonable(self) -> dict:
        return {"excluded": self.excluded, "reason": self.reason, "data": self.data}


_SSP_DEGREE_BOUND = 2   # -rho at infinity for the symmetric power


def exclude_diagonal_group(eq: FuchsianEquation) -> ExclusionResult:
    """Decide whether the Galois group can be conjugate to a subgroup of
    the diagonal group.

    If it were, the product of the two exponential solutions would be a
    rational solution of the second symmetric power; when no exponent
    1 +- Delta is a negative integer that solution is a polynomial of
    degree at most 2, and when additionally Delta is a non-integer at
    more than two singularities its product form forces degree >= 4.
    Either an empty polynomial space or that degree clash excludes the
    diagonal case.
    """
    exponent_data = []
    negative_integer_exponent = False
    non_integer_delta_count = 0
    for sing in eq.singularities:
        sq = sing.exponent_difference
        cls = sq.classify()
        delta_rational = cls.root.re if cls.kind == RATIONAL else None
        if delta_rational is not None:
            for rho in (1 + delta_rational, 1 - delta_rational):
                if rho.denominator == 1 and rho < 0:
                    negative_integer_exponent = True
            if delta_rational.denominator != 1:
                non_integer_delta_count += 1
        else:
            non_integer_delta_count += 1
        exponent_data.append({"z": str(sing.location),
                              "delta_squared": str(sq.radicand),
                              "delta_rational": str(delta_rational) if delta_rational is not None else None})

    if negative_integer_exponent:
        return ExclusionResult(False, "negative integer exponent allows poles in "
                                      "rational solutions of the symmetric power",
                               {"exponents": exponent_data})

    ops = second_symmetric_power(eq)
    basis = polynomial_ode_solutions(ops, _SSP_DEGREE_BOUND)
    empty = not basis
    degree_clash = non_integer_delta_count > _SSP_DEGREE_BOUND
    data = {
        "exponents": exponent_data,
        "polynomial_space_dimension": len(basis),
        "polynomial_basis": [str(p) for p in basis],
        "degree_bound": _SSP_DEGREE_BOUND,
        "forced_product_degree": non_integer_delta_count,
    }
    if empty:
        return ExclusionResult(True, "symmetric power has no polynomial solution", data)
    if degree_clash:
        return ExclusionResult(True, "product of exponential solutions would have "
                                     f"degree >= {non_integer_delta_count} > {_SSP_DEGREE_BOUND}", data)
    return ExclusionResult(False, "rational solution of the symmetric power found", data)


def exclude_cyclic_triangular(eq: FuchsianEquation) -> ExclusionResult:
    """Exclude the finite-torsion triangular subgroups: they force all
    local exponents (1 +- Delta)/2 rational, so one singularity with
    Delta^2 failing the rational square test suffices. Such exponents
    also rule out the finite primitive groups."""
    witnesses = []
    for sing in eq.singularities:
        sq = sing.exponent_difference
        cls = sq.classify()
        if cls.kind != RATIONAL:
            witnesses.append({"z": str(sing.location),
                              "delta_squared": str(sq.radicand),
                              "kind": cls.kind})
    if witnesses:
        return ExclusionResult(True, "non-rational exponent differences", {"witnesses": witnesses})
    return ExclusionResult(False, "all exponent differences rational",
                           {"witnesses": []})


# ---------------------------------------------------------------------------
# Kovacic algorithm, case 2
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Case2Candidate:
    """One Step II survivor: the integer tuple e, its degree d(e), the
    auxiliary theta, and the outcome of the Step III polynomial search."""

    e_infinity: int
    e_finite: tuple
    degree: int
    theta: RationalFunction
    polynomial: Optional[Poly]
    kernel_dimension: int
    system_rows: tuple

    def to_jsonable(self) -> dict:
        return {
            "e": [self.e_infinity, *self.e_finite],
            "degree": self.degree,
            "polynomial": str(self.polynomial) if self.polynomial is not None else None,
            "kernel_dimension": self.kernel_dimension,
            "system": [[str(x) for x in row] for row in self.system_rows],
        }


@dataclass(frozen=True)
class KovacicCase2Data:
    e_sets: dict
    candidates: tuple

    @property
    def found_polynomial(self) -> Optional[Poly]:
        for c in self.candidates:
            if c.polynomial is not None:
                return c.polynomial
        return None

    @property
    def success(self) -> bool:
        return self.found_polynomial is not None

    def to_jsonable(self) -> dict:
        return {
            "e_sets": {k: list(v) for k, v in self.e_sets.items()},
            "candidates": [c.to_jsonable() for c in self.candidates],
            "found_polynomial": str(self.found_polynomial) if self.success else None,
        }


def _integer_shifts(base: set, delta_squared: GaussRational) -> tuple:
    """{2, 2(1+Delta), 2(1-Delta)} intersected with the integers."""
    out = set(base)
    cls = sqrt_classify(delta_squared)
    if cls.kind == RATIONAL:
        delta = cls.root.re
        for cand in (2 * (1 + delta), 2 * (1 - delta)):
            if cand.denominator == 1:
                out.add(int(cand))
    return tuple(sorted(out))


def kovacic_case2(eq: FuchsianEquation) -> KovacicCase2Data:
    """Case 2 of the Kovacic algorithm for a Fuchsian reduced equation.

    Step I builds the integer sets E_c ({4} at order-1 poles, the
    exponent shifts at order-2 poles, {0,2,4} when infinity is ordinary
    or order-1). Step II keeps tuples with nonnegative integer
    d(e) = (e_inf - sum e_c)/2. Step III searches for the monic
    polynomial of degree d(e) satisfying the auxiliary cubic, by exact
    linear algebra; the full linear system and its homogeneous kernel
    dimension are recorded for replay.
    """
    r = eq.r_rational()
    e_sets = {}
    finite_sets = []
    for sing in eq.singularities:
        order = 2 if not sing.a.is_zero() else (1 if not sing.b.is_zero() else 0)
        if order == 0:
            es = ()
        elif order == 1:
            es = (4,)
        else:
            es = _integer_shifts({2}, GaussRational(1) + 4 * sing.a)
        e_sets[str(sing.location)] = es
        finite_sets.append(es)
    if eq.infinity_order < 2:
        e_inf_set = (0, 2, 4)
    else:
        e_inf_set = _integer_shifts({2}, GaussRational(1) + 4 * eq.a_infinity())
    e_sets["infinity"] = e_inf_set

    candidates = []
    for e_inf in e_inf_set:
        for e_fin in itertools.product(*finite_sets):
            twice_d = e_inf - sum(e_fin)
            if twice_d < 0 or twice_d % 2:
                continue
            n = twice_d // 2
            cand = _step3_search(eq, r, e_fin, e_inf, n)
            candidates.append(cand)
    return KovacicCase2Data(e_sets, tuple(candidates))


def _cubic_operator_images(r, theta, max_degree):
    """T(z^j) for j = 0..max_degree, with T the Step III cubic operator."""
    tp = theta.derivative()
    coef1 = 3 * theta * theta + 3 * tp - 4 * r
    coef0 = (tp.derivative() + 3 * theta * tp + theta ** 3
             - 4 * r * theta - 2 * r.derivative())
    images = []
    for j in range(max_degree + 1):
        P = Poly(tuple([0] * j + [1]))
        img = (RationalFunction.of(P.derivative().derivative().derivative())
               + 3 * theta * RationalFunction.of(P.derivative().derivative())
               + coef1 * RationalFunction.of(P.derivative())
               + coef0 * RationalFunction.of(P))
        images.append(img)
    return images


def _step3_search(eq, r, e_fin, e_inf, n) -> Case2Candidate:
    theta = RationalFunction.of(0)
    for sing, e_c in zip(eq.singularities, e_fin):
        theta = theta + RationalFunction(
            Poly.constant(Fraction(e_c, 2)),
            Poly((-sing.location, GaussRational(1))))

    images = _cubic_operator_images(r, theta, n)
    common = Poly.constant(1)
    for img in images:
        common = poly_lcm(common, img.den)
    numerators = [img.num * (common // img.den) for img in images]
    max_deg = max((p.degree for p in numerators), default=-1)

    rows_hom = [[numerators[j].coeff(k) for j in range(n + 1)]
                for k in range(max_deg + 1)] if max_deg >= 0 else []
    kernel_dim = linear_solve(rows_hom).kernel_dimension if rows_hom else n + 1

    polynomial = None
    if n == 0:
        if numerators[0].is_zero():
            polynomial = Poly.constant(1)
    else:
        rows = [[numerators[j].coeff(k) for j in range(n)] for k in range(max_deg + 1)]
        rhs = [-numerators[n].coeff(k) for k in range(max_deg + 1)]
        sol = linear_solve(rows, rhs) if rows else None
        if sol is not None and sol.consistent:
            polynomial = Poly(tuple(sol.particular) + (GaussRational(1),))

    system_rows = tuple(tuple(row) for row in rows_hom)
    return Case2Candidate(e_inf, tuple(e_fin), n, theta, polynomial,
                          kernel_dim, system_rows)


# ---------------------------------------------------------------------------
# Kimura solvability test for the three-singularity equation
# ---------------------------------------------------------------------------

# residue families (value mod 1 up to sign); None marks the free slot;
# the flag demands an even integer-part sum
_KIMURA_FAMILIES = (
    ((Fraction(1, 2), Fraction(1, 2), None), False),
    ((Fraction(1, 2), Fraction(1, 3), Fraction(1, 3)), False),
    ((Fraction(2, 3), Fraction(1, 3), Fraction(1, 3)), True),
    ((Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)), False),
    ((Fraction(2, 3), Fraction(1, 4), Fraction(1, 4)), True),
    ((Fraction(1, 2), Fraction(1, 3), Fraction(1, 5)), False),
    ((Fraction(2, 5), Fraction(1, 3), Fraction(1, 3)), True),
    ((Fraction(2, 3), Fraction(1, 5), Fraction(1, 5)), True),
    ((Fraction(1, 2), Fraction(2, 5), Fraction(1, 5)), True),
    ((Fraction(3, 5), Fraction(1, 3), Fraction(1, 5)), True),
    ((Fraction(2, 5), Fraction(2, 5), Fraction(2, 5)), True),
    ((Fraction(2, 3), Fraction(1, 3), Fraction(1, 5)), True),
    ((Fraction(4, 5), Fraction(1, 5), Fraction(1, 5)), True),
    ((Fraction(1, 2), Fraction(2, 5), Fraction(1, 3)), True),
    ((Fraction(3, 5), Fraction(2, 5), Fraction(1, 3)), True),
)

_SIGN_TRIPLES = tuple(itertools.product((1, -1), repeat=3))


def _signed_sqrt_sum_rational(terms) -> Optional[Fraction]:
    """Exact rational value of sum eps_i sqrt(q_i), or None when the sum is
    provably not rational. Roots inside Q(i) are added exactly; genuinely
    irrational roots are grouped by rational-square ratios, where
    cancellation is the only route to a rational sum."""
    frac_acc = Fraction(0)
    gauss_acc = GaussRational(0)
    groups = []   # [representative radicand, accumulated rational coefficient]
    for eps, sq in terms:
        cls = sq.classify()
        if cls.kind == RATIONAL:
            frac_acc += eps * cls.root.re
        elif cls.kind == GAUSSIAN:
            gauss_acc = gauss_acc + GaussRational(eps) * cls.root
        else:
            for g in groups:
                ratio_cls = sqrt_classify(sq.radicand / g[0])
                if ratio_cls.kind == RATIONAL:
                    g[1] += eps * ratio_cls.root.re
                    break
            else:
                groups.append([sq.radicand, Fraction(eps)])
    if any(g[1] != 0 for g in groups):
        return None
    total = gauss_acc + GaussRational(frac_acc)
    if total.im != 0:
        return None
    return total.re


def _is_odd_integer(x: Optional[Fraction]) -> bool:
    return x is not None and x.denominator == 1 and x.numerator % 2 != 0


def kimura_classify(data: RiemannPData) -> GaloisVerdict:
    """Solvability of the identity component for the three-singularity
    equation, decided exactly from the exponent differences.

    Condition A: one of the four sums lam+mu+nu, -lam+mu+nu, lam-mu+nu,
    lam+mu-nu is an odd integer. Condition B: the differences, up to
    signs and order, match one of the fifteen residue families (only the
    free slot of the first family can absorb a non-rational difference).
    The verdict is invariant under sign flips and permutations.
    """
    lam, mu, nu = data.lam, data.mu, data.nu

    for signs in ((1, 1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, -1)):
        total = _signed_sqrt_sum_rational(list(zip(signs, (lam, mu, nu))))
        if _is_odd_integer(total):
            return GaloisVerdict(SOLVABLE, {
                "condition": "A",
                "signs": list(signs),
                "sum": str(total),
                "differences": [str(x) for x in (lam, mu, nu)],
            })

    values = [x.rational_value() for x in (lam, mu, nu)]
    for index, (slots, parity) in enumerate(_KIMURA_FAMILIES, start=1):
        for perm in itertools.permutations(range(3)):
            for signs in _SIGN_TRIPLES:
                integer_parts = []
                ok = True
                for slot_pos, value_pos in enumerate(perm):
                    residue = slots[slot_pos]
                    if residue is None:
                        continue
                    v = values[value_pos]
                    if v is None:
                        ok = False
                        break
                    shift = signs[value_pos] * v - residue
                    if shift.denominator != 1:
                        ok = False
                        break
                    integer_parts.append(int(shift))
                if not ok:
                    continue
                if parity and sum(integer_parts) % 2 != 0:
                    continue
                return GaloisVerdict(SOLVABLE, {
                    "condition": "B",
                    "family": index,
                    "permutation": list(perm),
                    "signs": list(signs),
                    "integer_parts": integer_parts,
                    "differences": [str(x) for x in (lam, mu, nu)],
                })

    return GaloisVerdict(NOT_SOLVABLE, {
        "condition": "none",
        "differences": [str(x) for x in (lam, mu, nu)],
        "radicands": [str(x.radicand) for x in (lam, mu, nu)],
    })


# ---------------------------------------------------------------------------
# Brioschi determinant and the Weierstrass-form classification
# ---------------------------------------------------------------------------

def _is_zero_elem(x) -> bool:
    if isinstance(x, Poly):
        return x.is_zero()
    if isinstance(x, GaussRational):
        return x.is_zero()
    return x == 0


def _det(matrix):
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = None
    for j in range(n):
        entry = matrix[0][j]
        if _is_zero_elem(entry):
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = entry * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return matrix[0][0] * 0
    return total


def brioschi_determinant(m: int, g2, g3, beta):
    """The banded m x m determinant governing the half odd integer case:
    beta on the diagonal, i(m-i) on the superdiagonal, (g2/4)(2m-i)(m-i)
    and (g3/4)(2m-i)(2m-i-1) on the two subdiagonals. Entries may be
    exact scalars or polynomials (then the result is a polynomial)."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    lift_poly = any(isinstance(x, Poly) for x in (g2, g3, beta))

    def lift(x):
        if isinstance(x, Poly):
            return x
        value = GaussRational.of(x) if not isinstance(x, GaussRational) else x
        return Poly.constant(value) if lift_poly else value

    g2, g3, beta = lift(g2), lift(g3), lift(beta)
    quarter = Fraction(1, 4)
    rows = []
    for i in range(1, m + 1):
        row = []
        for j in range(1, m + 1):
            if i == j:
                entry = beta
            elif j == i + 1:
                entry = lift(Fraction(i * (m - i)))
            elif j == i - 1:
                k = j
                entry = g2 * GaussRational(quarter * (2 * m - k) * (m - k))
            elif j == i - 2:
                k = j
                entry = g3 * GaussRational(quarter * (2 * m - k) * (2 * m - k - 1))
            else:
                entry = lift(0)
            row.append(entry)
        rows.append(row)
    return _det(rows)


def brioschi_polynomial(C) -> Poly:
    """Q_m as an exact polynomial in the energy e, for half odd integer
    index n = 2C (so m = 2C + 1/2 a positive integer)."""
    C = _frac(C)
    n = 2 * C
    m = n + Fraction(1, 2)
    if m.denominator != 1 or m <= 0:
        raise ValueError("Brioschi polynomial needs m = 2C + 1/2 a positive integer")
    g2c, g3c = weierstrass_polynomials(Fraction(1) / C)
    g2 = Poly(tuple(GaussRational(x) for x in g2c))
    g3 = Poly(tuple(GaussRational(x) for x in g3c))
    beta = Poly.of(0, lame_beta_coefficient(C))
    return brioschi_determinant(int(m), g2, g3, beta)


LAME_HERMITE = "LameHermite"
BRIOSCHI_HALPHEN_CRAWFORD = "BrioschiHalphenCrawford"
BALDASSARRI = "Baldassarri"
NONE_ABELIAN = "NoneAbelian"

_BALDASSARRI_OFFSETS = (Fraction(1, 4), Fraction(1, 6), Fraction(1, 10), Fraction(3, 10))


@dataclass(frozen=True)
class LameClass:
    """Mutually exclusive classification of the Weierstrass-form equation."""

    tag: str
    detail: dict

    @property
    def abelian_possible(self) -> bool:
        """Whether an Abelian identity component is possible for some
        (or all) energies: always in the integer-index case, exactly on
        the zero set of Q_m in the half odd integer case."""
        if self.tag == LAME_HERMITE:
            return True
        if self.tag == BRIOSCHI_HALPHEN_CRAWFORD:
            return True
        return False


def lame_classify(data: LameData) -> LameClass:
    """Classify by the index n = 2C: integer (always Abelian-possible),
    half odd integer (Abelian possible only on the zero set of the
    Brioschi polynomial, reported exactly), the finite-j exceptional
    case flagged inconclusive at finitely many energies, or none."""
    n = data.n
    if n.denominator == 1:
        return LameClass(LAME_HERMITE, {"n": str(n)})
    m = n + Fraction(1, 2)
    if m.denominator == 1 and m > 0:
        qpoly = brioschi_polynomial(data.C)
        qvalue = qpoly(GaussRational(data.e))
        identically_zero = qpoly.is_zero()
        return LameClass(BRIOSCHI_HALPHEN_CRAWFORD, {
            "m": int(m),
            "q_polynomial": str(qpoly),
            "q_coefficients": [str(c) for c in qpoly.coeffs],
            "identically_zero": identically_zero,
            "q_at_e": str(qvalue),
            "abelian_only_on_zero_set": not identically_zero,
        })
    if (2 * n).denominator != 1:
        for q in _BALDASSARRI_OFFSETS:
            if (n + q).denominator == 1 or (n - q).denominator == 1:
                return LameClass(BALDASSARRI, {
                    "n": str(n), "offset": str(q),
                    "note": "inconclusive only at finitely many j values",
                })
    return LameClass(NONE_ABELIAN, {"n": str(n)})


# ---------------------------------------------------------------------------
# Composite pipeline for the tilted fixed point (d != 0)
# ---------------------------------------------------------------------------

def certify_not_abelian(d, F, s=1) -> GaloisVerdict:
    """Full exclusion pipeline on the four-singularity reduced equation
    built from (d, F) at energy parameter s.

    For nonzero real d all three exclusions fire: the diagonal case by
    the symmetric power, the finite triangular case (and with it all
    finite groups) by the non-real exponent differences, and the
    imprimitive case by the failure of the Step III polynomial search.
    The identity component is then not Abelian.
    """
    d, F = _frac(d), _frac(F)
    if d == 0:
        raise ValueError("pipeline requires d != 0 (a different reduction applies)")
    eq = reduced_equation_from_dF(d, F, s)
    diag = exclude_diagonal_group(eq)
    cyclic = exclude_cyclic_triangular(eq)
    case2 = kovacic_case2(eq)
    certificate = {
        "equation": {
            "singularities": [{"z": str(t.location), "a": str(t.a), "b": str(t.b)}
                              for t in eq.singularities],
            "infinity_order": eq.infinity_order,
            "s": str(_frac(s)),
        },
        "diagonal": diag.to_jsonable(),
        "cyclic_triangular": cyclic.to_jsonable(),
        "case2": case2.to_jsonable(),
    }
    if diag.excluded and cyclic.excluded and not case2.success:
        certificate["finiteness"] = ("non-rational exponent differences exclude "
                                     "finite groups as well")
        return GaloisVerdict(NOT_ABELIAN, certificate)
    return GaloisVerdict(INCONCLUSIVE, certificate)
