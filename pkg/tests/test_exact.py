"""Exact arithmetic substrate: scalars, polynomials, partial fractions,
linear solving, square root classification."""

import random
from fractions import Fraction

import pytest

from heavytop.exact import (GAUSSIAN, IRRATIONAL, RATIONAL, GaussRational,
                            PartialFractionForm, Poly, RationalFunction,
                            SqrtQuantity, gaussian_rational_roots,
                            linear_solve, partial_fractions, poly_gcd,
                            polynomial_ode_solutions, rational_sqrt,
                            sqrt_classify)

F = Fraction
I = GaussRational(0, 1)


def gr(re, im=0):
    return GaussRational(F(re), F(im))


# ---------------------------------------------------------------------------
# GaussRational
# ---------------------------------------------------------------------------

def test_gauss_field_axioms_random():
    rng = random.Random(7)
    for _ in range(50):
        vals = [gr(F(rng.randint(-9, 9), rng.randint(1, 9)),
                   F(rng.randint(-9, 9), rng.randint(1, 9))) for _ in range(3)]
        a, b, c = vals
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        if not b.is_zero():
            assert (a / b) * b == a
        assert a.conjugate().conjugate() == a
        assert (a * a.conjugate()).im == 0


def test_gauss_serialization_roundtrip():
    cases = [gr("5/16"), gr(0, "-1/2"), gr("-1/2", "3"), gr(0), gr(2, 1)]
    shown = [str(x) for x in cases]
    assert shown == ["5/16", "-1/2*i", "-1/2+3*i", "0", "2+1*i"]
    for x in cases:
        assert GaussRational.parse(str(x)) == x
    assert GaussRational.parse("i") == I
    assert GaussRational.parse("-i") == -I
    assert GaussRational.parse("1+i") == gr(1, 1)


# ---------------------------------------------------------------------------
# Polynomials and gcd
# ---------------------------------------------------------------------------

def test_poly_gcd_shared_root():
    z2m1 = Poly.of(-1, 0, 1)          # z^2 - 1
    zm1 = Poly.of(-1, 1)              # z - 1
    assert poly_gcd(z2m1, zm1) == zm1


def test_poly_gcd_identical_made_monic():
    p = Poly.of(1, 0, 1) * 3          # 3 z^2 + 3
    assert poly_gcd(p, p) == Poly.of(1, 0, 1)


def test_poly_gcd_quartic():
    # z^4 - 1 = (z^2 - 1)(z^2 + 1), so gcd with z^2 + 1 is z^2 + 1
    z4m1 = Poly.of(-1, 0, 0, 0, 1)
    z2p1 = Poly.of(1, 0, 1)
    assert poly_gcd(z4m1, z2p1) == z2p1


def test_poly_gcd_both_zero_rejected():
    with pytest.raises(ValueError):
        poly_gcd(Poly(()), Poly(()))


def test_poly_divmod_identity():
    rng = random.Random(3)
    for _ in range(20):
        a = Poly(tuple(gr(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(5)))
        b = Poly(tuple(gr(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(3)))
        if b.is_zero():
            continue
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.is_zero() or r.degree < b.degree


# ---------------------------------------------------------------------------
# Rational functions and partial fractions
# ---------------------------------------------------------------------------

def test_rational_function_normalization():
    # (z^2 - 1)/(z - 1) reduces to z + 1
    rf = RationalFunction(Poly.of(-1, 0, 1), Poly.of(-1, 1))
    assert rf.num == Poly.of(1, 1)
    assert rf.den == Poly.of(1)


def test_partial_fractions_one_over_z2p1():
    # 1/(z^2+1) = (-i/2)/(z-i) + (i/2)/(z+i), residues by hand
    rf = RationalFunction(Poly.of(1), Poly.of(1, 0, 1))
    pf = partial_fractions(rf)
    by_pole = {t.pole: t for t in pf.terms}
    assert set(by_pole) == {I, -I}
    assert by_pole[I].second_order == gr(0)
    assert by_pole[I].first_order == gr(0, "-1/2")
    assert by_pole[-I].first_order == gr(0, "1/2")
    assert pf.polynomial_part.is_zero()


def test_partial_fractions_trivial_identity():
    rf = RationalFunction(Poly.of(3, 0, 1), Poly.of(3, 0, 1))
    pf = partial_fractions(rf)
    assert pf.terms == ()
    assert pf.polynomial_part == Poly.of(1)


def test_partial_fractions_reassembles_exactly():
    rng = random.Random(11)
    poles = [gr(0), gr(1), gr(-2), I, gr(1, 1)]
    for _ in range(15):
        chosen = rng.sample(poles, k=3)
        den = Poly.of(1)
        for p in chosen:
            den = den * Poly.of(-p, 1)
        den = den * Poly.of(-chosen[0], 1)   # one double pole
        num = Poly(tuple(gr(rng.randint(-6, 6), rng.randint(-6, 6)) for _ in range(4)))
        if num.is_zero():
            continue
        rf = RationalFunction(num, den)
        pf = partial_fractions(rf)
        assert pf.reassemble() == rf
        res = [t.pole for t in pf.terms]
        assert res == sorted(res, key=lambda z: (z.re, z.im))


def test_partial_fractions_multiplicity_three_rejected():
    rf = RationalFunction(Poly.of(1), Poly.of(0, 0, 0, 1))   # 1/z^3
    with pytest.raises(ValueError, match="multiplicity"):
        partial_fractions(rf)


def test_partial_fractions_non_gaussian_pole_rejected():
    # z^2 - 2 is irreducible over Q(i)
    rf = RationalFunction(Poly.of(1), Poly.of(-2, 0, 1))
    with pytest.raises(ValueError, match="pole not in Q"):
        partial_fractions(rf)


def test_gaussian_rational_roots_quartic():
    # z^4 - 1 has roots 1, -1, i, -i
    roots = set(gaussian_rational_roots(Poly.of(-1, 0, 0, 0, 1)))
    assert roots == {gr(1), gr(-1), I, -I}


# ---------------------------------------------------------------------------
# Linear solving
# ---------------------------------------------------------------------------

def test_linear_solve_identity():
    sol = linear_solve([[1, 0], [0, 1]], [1, 2])
    assert sol.consistent
    assert sol.particular == [gr(1), gr(2)]
    assert sol.kernel == []


def _coefficient_matrix(d, F_):
    # the 4 x 2 homogeneous system from the degree <= 1 polynomial search
    d, F_ = gr(d), gr(F_)
    one = gr(1)
    return [
        [-d, F_],
        [one - 2 * F_, 6 * d],
        [F_, d],
        [-6 * d, one - 2 * F_],
    ]


def test_linear_solve_sample_pair_trivial_kernel():
    sol = linear_solve(_coefficient_matrix(F(12, 25), F(513, 800)))
    assert sol.kernel_dimension == 0
    assert sol.particular == [gr(0), gr(0)]


def test_linear_solve_complex_degenerate_point():
    # d^2 + F^2 = 0 with the second minor vanishing: (F, d) = (1/8, i/8)
    d = GaussRational(F(0), F(1, 8))
    sol = linear_solve(_coefficient_matrix_gauss(d, gr(F(1, 8))))
    assert sol.kernel_dimension == 1
    vec = sol.kernel[0]
    rows = _coefficient_matrix_gauss(d, gr(F(1, 8)))
    for row in rows:
        acc = sum((row[j] * vec[j] for j in range(2)), gr(0))
        assert acc.is_zero()


def _coefficient_matrix_gauss(d, F_):
    one = gr(1)
    return [
        [-d, F_],
        [one - 2 * F_, 6 * d],
        [F_, d],
        [-6 * d, one - 2 * F_],
    ]


def test_linear_solve_real_zero_point_trivial_kernel():
    # at d = F = 0 the literal system forces p0 = p1 = 0; the "nonzero
    # solution" locus d^2 + F^2 = 0 is realized only at complex points
    sol = linear_solve(_coefficient_matrix(0, 0))
    assert sol.kernel_dimension == 0


def test_linear_solve_inconsistent_reported_not_raised():
    sol = linear_solve([[1, 1], [1, 1]], [1, 2])
    assert not sol.consistent


def test_linear_solve_solutions_verify():
    rng = random.Random(5)
    for _ in range(20):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        rows = [[gr(rng.randint(-4, 4), rng.randint(-2, 2)) for _ in range(n)]
                for _ in range(m)]
        rhs = [gr(rng.randint(-4, 4)) for _ in range(m)]
        sol = linear_solve(rows, rhs)
        if sol.consistent:
            for row, b in zip(rows, rhs):
                acc = sum((row[j] * sol.particular[j] for j in range(n)), gr(0))
                assert acc == b
        for vec in sol.kernel:
            for row in rows:
                acc = sum((row[j] * vec[j] for j in range(n)), gr(0))
                assert acc.is_zero()


# ---------------------------------------------------------------------------
# Polynomial ODE solutions
# ---------------------------------------------------------------------------

def test_polynomial_ode_second_derivative():
    basis = polynomial_ode_solutions([Poly.of(0), Poly.of(0), Poly.of(1)], 1)
    assert sorted(p.degree for p in basis) == [0, 1]


def test_polynomial_ode_exponential_has_none():
    basis = polynomial_ode_solutions([Poly.of(-1), Poly.of(1)], 5)
    assert basis == []


def test_polynomial_ode_solutions_satisfy_equation():
    # y'' - 2/z y' + 2/z^2 y = 0 has solutions z and z^2
    z = Poly.x()
    c0 = RationalFunction(Poly.of(2), z * z)
    c1 = RationalFunction(Poly.of(-2), z)
    c2 = RationalFunction.of(1)
    basis = polynomial_ode_solutions([c0, c1, c2], 3)
    assert len(basis) == 2
    for p in basis:
        lhs = (RationalFunction.of(p.derivative().derivative())
               + c1 * RationalFunction.of(p.derivative())
               + c0 * RationalFunction.of(p))
        assert lhs.is_zero()


# ---------------------------------------------------------------------------
# Square root classification
# ---------------------------------------------------------------------------

def test_rational_sqrt():
    assert rational_sqrt(F(9, 16)) == F(3, 4)
    assert rational_sqrt(F(2)) is None
    assert rational_sqrt(F(0)) == 0


def test_sqrt_classify_rational():
    cls = sqrt_classify(gr("9/16"))
    assert cls.kind == RATIONAL
    assert cls.root == gr("3/4")


def test_sqrt_classify_gaussian():
    cls = sqrt_classify(gr(0, 2))       # sqrt(2i) = 1 + i
    assert cls.kind == GAUSSIAN
    assert cls.root == gr(1, 1)


def test_sqrt_classify_irrational():
    assert sqrt_classify(gr("11/3")).kind == IRRATIONAL


def test_sqrt_classify_negative_rational_is_gaussian():
    cls = sqrt_classify(gr(-4))
    assert cls.kind == GAUSSIAN
    assert cls.root == gr(0, 2)


def test_sqrt_classify_root_squares_back():
    rng = random.Random(13)
    for _ in range(60):
        q = gr(F(rng.randint(-8, 8), rng.randint(1, 5)),
               F(rng.randint(-8, 8), rng.randint(1, 5)))
        cls = sqrt_classify(q)
        if cls.root is not None:
            assert cls.root * cls.root == q
        # squares always classify with a root
        sq = q * q
        back = sqrt_classify(sq)
        assert back.root is not None
        assert back.root * back.root == sq


def test_sqrt_quantity_scaling_and_values():
    mu = SqrtQuantity(gr("9/16"))
    assert mu.rational_value() == F(3, 4)
    scaled = SqrtQuantity(gr(8 * 2 - 7)).scaled(F(1, 4))
    assert scaled.radicand == gr("9/16")
    assert SqrtQuantity(gr("11/48")).rational_value() is None
