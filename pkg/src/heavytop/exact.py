"""Exact arithmetic over the Gaussian rationals.

Substrate for every symbolic computation in the package: rational and
Gaussian-rational scalars, univariate polynomials, rational functions,
partial fraction decompositions with poles of order at most two, exact
linear solving, polynomial solutions of linear ODEs, and exact square
root classification in Q and Q(i).

No floating point enters this module. All classification answers
(integrality, rationality, squareness) are decided on arbitrary
precision integers, where rounding would be fatal.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional, Sequence, Union

Rational = Fraction

_FractionLike = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rational_sqrt(x: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None if not a square."""
    x = _frac(x)
    if x < 0:
        return None
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class GaussRational:
    """Element a + b*i of Q(i), with exact rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    @staticmethod
    def of(value) -> "GaussRational":
        if isinstance(value, GaussRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussRational(_frac(value))
        if isinstance(value, str):
            return GaussRational.parse(value)
        raise TypeError(f"cannot coerce {value!r} to GaussRational")

    # -- field operations ------------------------------------------------
    def __add__(self, other):
        o = GaussRational.of(other)
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussRational.of(other)
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussRational.of(other) - self

    def __mul__(self, other):
        o = GaussRational.of(other)
        return GaussRational(self.re * o.re - self.im * o.im,
                             self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussRational.of(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * o.conjugate() * GaussRational(Fraction(1) / n)

    def __rtruediv__(self, other):
        return GaussRational.of(other) / self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __pow__(self, n: int):
        if n < 0:
            return (GaussRational(1) / self) ** (-n)
        out, base = GaussRational(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Field norm re^2 + im^2 (a nonnegative rational)."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_rational(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    # -- serialization: "a/b+c/d*i" with zero parts omitted ---------------
    def __str__(self):
        def fmt(q: Fraction) -> str:
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

        if self.is_zero():
            return "0"
        parts = []
        if self.re != 0:
            parts.append(fmt(self.re))
        if self.im != 0:
            s = fmt(self.im) + "*i"
            if parts and self.im > 0:
                parts.append("+" + s)
            else:
                parts.append(s)
        return "".join(parts)

    def __repr__(self):
        return f"GaussRational({self})"

    _TOKEN = _re.compile(r"^([+-]?\d+(?:/\d+)?)(\*?i)?$")

    @staticmethod
    def parse(text: str) -> "GaussRational":
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty GaussRational string")
        # split into signed tokens
        tokens, cur = [], ""
        for ch in s:
            if ch in "+-" and cur and cur[-1] not in "+-/*":
                tokens.append(cur)
                cur = ch
            else:
                cur += ch
        tokens.append(cur)
        re_part, im_part = Fraction(0), Fraction(0)
        for tok in tokens:
            if tok in ("i", "+i"):
                im_part += 1
                continue
            if tok == "-i":
                im_part -= 1
                continue
            m = GaussRational._TOKEN.match(tok)
            if not m:
                raise ValueError(f"bad GaussRational token {tok!r} in {text!r}")
            val = Fraction(m.group(1))
            if m.group(2):
                im_part += val
            else:
                re_part += val
        return GaussRational(re_part, im_part)


ZERO = GaussRational(0)
ONE = GaussRational(1)
I_UNIT = GaussRational(0, 1)


def _coerce(value) -> GaussRational:
    return GaussRational.of(value)


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial over Q(i), coefficients in ascending degree."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(_coerce(c) for c in self.coeffs)
        while cs and cs[-1].is_zero():
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @staticmethod
    def of(*values) -> "Poly":
        return Poly(tuple(values))

    @staticmethod
    def from_coeffs(values: Iterable) -> "Poly":
        return Poly(tuple(values))

    @staticmethod
    def constant(value) -> "Poly":
        return Poly((value,))

    @staticmethod
    def x() -> "Poly":
        return Poly((0, 1))

    @staticmethod
    def from_roots(roots: Iterable) -> "Poly":
        out = Poly((1,))
        for r in roots:
            out = out * Poly((-_coerce(r), ONE))
        return out

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> GaussRational:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> GaussRational:
        return self.coeffs[k] if 0 <= k <= self.degree else ZERO

    def __add__(self, other):
        o = other if isinstance(other, Poly) else Poly((other,))
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(tuple(self.coeff(k) + o.coeff(k) for k in range(n)))

    __radd__ = __add__

    def __sub__(self, other):
        o = other if isinstance(other, Poly) else Poly((other,))
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(tuple(self.coeff(k) - o.coeff(k) for k in range(n)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = Poly((other,))
        if self.is_zero() or other.is_zero():
            return Poly(())
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out, base = Poly((1,)), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q, r = Poly(()), self
        inv_lead = GaussRational(1) / other.leading()
        while not r.is_zero() and r.degree >= other.degree:
            k = r.degree - other.degree
            c = r.leading() * inv_lead
            t = Poly(tuple([ZERO] * k + [c]))
            q = q + t
            r = r - t * other
        return q, r

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (GaussRational(1) / self.leading())

    def derivative(self) -> "Poly":
        return Poly(tuple(self.coeffs[k] * k for k in range(1, len(self.coeffs))))

    def __call__(self, x):
        if isinstance(x, (GaussRational, int, Fraction)):
            x = _coerce(x)
            acc = ZERO
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + complex(c)
        return acc

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeff(k)
            if c.is_zero():
                continue
            cs = str(c)
            if k == 0:
                terms.append(cs)
            else:
                zt = "z" if k == 1 else f"z^{k}"
                terms.append(zt if cs == "1" else f"({cs})*{zt}")
        return " + ".join(terms)

    def __repr__(self):
        return f"Poly({self})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor via the Euclidean algorithm."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd undefined for two zero polynomials")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly(())
    return ((a * b) // poly_gcd(a, b)).monic()


@dataclass(frozen=True)
class RationalFunction:
    """Quotient of polynomials over Q(i), kept with monic coprime denominator."""

    num: Poly
    den: Poly

    def __post_init__(self):
        num, den = self.num, self.den
        if not isinstance(num, Poly):
            num = Poly((num,))
        if not isinstance(den, Poly):
            den = Poly((den,))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            object.__setattr__(self, "num", Poly(()))
            object.__setattr__(self, "den", Poly((1,)))
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lead = den.leading()
        if not (lead.re == 1 and lead.im == 0):
            inv = GaussRational(1) / lead
            num, den = num * inv, den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @staticmethod
    def of(value) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, Poly):
            return RationalFunction(value, Poly((1,)))
        return RationalFunction(Poly((value,)), Poly((1,)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        o = RationalFunction.of(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = RationalFunction.of(other)
        return RationalFunction(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        return RationalFunction.of(other) - self

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        o = RationalFunction.of(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalFunction.of(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RationalFunction.of(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return (RationalFunction.of(1) / self) ** (-n)
        out, base = RationalFunction.of(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, x):
        if isinstance(x, (GaussRational, int, Fraction)):
            dv = self.den(_coerce(x))
            if dv.is_zero():
                raise ZeroDivisionError(f"evaluation at pole {x}")
            return self.num(_coerce(x)) / dv
        return self.num(x) / self.den(x)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.of(other)
        return self.num == other.num and self.den == other.den

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


# ---------------------------------------------------------------------------
# Square root classification in Q and Q(i)
# ---------------------------------------------------------------------------

RATIONAL = "rational"
GAUSSIAN = "gaussian"
IRRATIONAL = "irrational"


@dataclass(frozen=True)
class SqrtClassification:
    """Where the principal square root of a Gaussian rational lives.

    kind is "rational" (root in Q), "gaussian" (root in Q(i) but not Q) or
    "irrational" (root outside Q(i)); root is the exact principal root when
    one exists.
    """

    kind: str
    root: Optional[GaussRational] = None

    @property
    def is_rational(self) -> bool:
        return self.kind == RATIONAL

    @property
    def in_gaussian_field(self) -> bool:
        return self.kind in (RATIONAL, GAUSSIAN)


def sqrt_classify(q) -> SqrtClassification:
    """Decide exactly whether sqrt(q) lies in Q, in Q(i)\\Q, or outside Q(i).

    Squareness in Q(i) is decided by norm and trace: q = x^2 is solvable
    iff norm(q) is a rational square w^2 and (re(q)+w)/2 is a rational
    square. The principal root has positive real part, or nonnegative
    imaginary part when purely imaginary or negative real.
    """
    q = _coerce(q)
    u, v = q.re, q.im
    if v == 0:
        r = rational_sqrt(u)
        if r is not None:
            return SqrtClassification(RATIONAL, GaussRational(r))
        r = rational_sqrt(-u)
        if r is not None:
            return SqrtClassification(GAUSSIAN, GaussRational(0, r))
        return SqrtClassification(IRRATIONAL)
    w = rational_sqrt(u * u + v * v)
    if w is None:
        return SqrtClassification(IRRATIONAL)
    a = rational_sqrt((u + w) / 2)
    if a is None or a == 0:
        return SqrtClassification(IRRATIONAL)
    b = v / (2 * a)
    return SqrtClassification(GAUSSIAN, GaussRational(a, b))


@dataclass(frozen=True)
class SqrtQuantity:
    """Principal square root of an exact radicand, kept unevaluated.

    Rational prefactors are folded into the radicand: r*sqrt(q) is stored
    as sqrt(r^2 q). Classification queries are decided exactly from the
    radicand, never numerically.
    """

    radicand: GaussRational

    def __post_init__(self):
        object.__setattr__(self, "radicand", _coerce(self.radicand))

    @staticmethod
    def of_value(value) -> "SqrtQuantity":
        v = _coerce(value)
        return SqrtQuantity(v * v)

    def scaled(self, factor: Fraction) -> "SqrtQuantity":
        f = _frac(factor)
        return SqrtQuantity(self.radicand * GaussRational(f * f))

    def classify(self) -> SqrtClassification:
        return sqrt_classify(self.radicand)

    def rational_value(self) -> Optional[Fraction]:
        c = self.classify()
        if c.is_rational:
            return c.root.re
        return None

    def gaussian_value(self) -> Optional[GaussRational]:
        c = self.classify()
        return c.root if c.in_gaussian_field else None

    def __complex__(self):
        c = self.classify()
        if c.root is not None:
            return complex(c.root)
        return complex(self.radicand) ** 0.5

    def __str__(self):
        c = self.classify()
        if c.root is not None:
            return str(c.root)
        return f"sqrt({self.radicand})"


# ---------------------------------------------------------------------------
# Exact linear algebra
# ---------------------------------------------------------------------------

@dataclass
class LinearSolution:
    """Solution set of a linear system: one particular solution (None when
    inconsistent) and a basis of the homogeneous kernel."""

    particular: Optional[list]
    kernel: list

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def kernel_dimension(self) -> int:
        return len(self.kernel)


def linear_solve(rows: Sequence[Sequence], rhs: Optional[Sequence] = None) -> LinearSolution:
    """Exact Gauss-Jordan elimination over Q(i).

    rows is an m x n matrix; rhs defaults to zero. Inconsistency is
    reported through particular=None, not an exception.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[_coerce(x) for x in row] for row in rows]
    if any(len(row) != n for row in a):
        raise ValueError("matrix rows have unequal lengths")
    b = [_coerce(x) for x in rhs] if rhs is not None else [ZERO] * m
    if len(b) != m:
        raise ValueError("rhs length does not match matrix")

    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if not a[i][col].is_zero()), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        b[r], b[piv] = b[piv], b[r]
        inv = GaussRational(1) / a[r][col]
        a[r] = [x * inv for x in a[r]]
        b[r] = b[r] * inv
        for i in range(m):
            if i != r and not a[i][col].is_zero():
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                b[i] = b[i] - f * b[r]
        pivots.append(col)
        r += 1
        if r == m:
            break

    for i in range(r, m):
        if not b[i].is_zero():
            return LinearSolution(None, _kernel_basis(n, pivots, a, r))
    particular = [ZERO] * n
    for i, col in enumerate(pivots):
        particular[col] = b[i]
    return LinearSolution(particular, _kernel_basis(n, pivots, a, r))


def _kernel_basis(n, pivots, a, rank):
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [ZERO] * n
        vec[fc] = ONE
        for i, col in enumerate(pivots):
            vec[col] = -a[i][fc]
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# Gaussian integer helpers for exact root finding
# ---------------------------------------------------------------------------

_UNITS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def _gi_mul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _gi_divmod(x, y):
    # rounded division makes Z[i] Euclidean
    ny = y[0] * y[0] + y[1] * y[1]
    pr = x[0] * y[0] + x[1] * y[1]
    pi = x[1] * y[0] - x[0] * y[1]
    qr = (2 * pr + ny) // (2 * ny) if pr >= 0 else -((-2 * pr + ny) // (2 * ny))
    qi = (2 * pi + ny) // (2 * ny) if pi >= 0 else -((-2 * pi + ny) // (2 * ny))
    q = (qr, qi)
    r = (x[0] - _gi_mul(q, y)[0], x[1] - _gi_mul(q, y)[1])
    return q, r


def _gi_divides(d, x) -> bool:
    _, r = _gi_divmod(x, d)
    return r == (0, 0)


def _gi_exact_div(x, d):
    q, r = _gi_divmod(x, d)
    if r != (0, 0):
        raise ValueError("not divisible")
    return q


def _factor_int(n: int) -> dict:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _gaussian_prime_above(p: int):
    if p == 2:
        return (1, 1), None
    if p % 4 == 3:
        return (p, 0), None
    for x in range(1, isqrt(p) + 1):
        y2 = p - x * x
        y = isqrt(y2)
        if y * y == y2:
            return (x, y), (x, -y)
    raise ArithmeticError(f"no Gaussian prime found above {p}")


def _gi_divisors(g):
    """Divisors of a nonzero Gaussian integer, up to unit multiples."""
    norm = g[0] * g[0] + g[1] * g[1]
    primes = []
    for p in _factor_int(norm):
        pi, pibar = _gaussian_prime_above(p)
        for cand in (pi, pibar):
            if cand is None:
                continue
            e, rest = 0, g
            while _gi_divides(cand, rest):
                rest = _gi_exact_div(rest, cand)
                e += 1
            if e:
                primes.append((cand, e))
    divisors = [(1, 0)]
    for prime, e in primes:
        grown = []
        pw = (1, 0)
        for _ in range(e + 1):
            grown.extend(_gi_mul(d, pw) for d in divisors)
            pw = _gi_mul(pw, prime)
        divisors = grown
    return divisors


def _poly_gaussian_integer_coeffs(p: Poly):
    denom = 1
    for c in p.coeffs:
        denom = denom * c.re.denominator // _gcd_int(denom, c.re.denominator)
        denom = denom * c.im.denominator // _gcd_int(denom, c.im.denominator)
    return [(int(c.re * denom), int(c.im * denom)) for c in p.coeffs]


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def gaussian_rational_roots(p: Poly) -> list:
    """All roots of p lying in Q(i), found by the rational root theorem
    over Z[i] (divisor candidates from the extreme coefficients), with
    quadratic factors solved exactly. Multiplicities not reported."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    roots = []
    # strip roots at the origin
    k = 0
    while k <= p.degree and p.coeff(k).is_zero():
        k += 1
    if k > 0:
        roots.append(ZERO)
        p = Poly(p.coeffs[k:])
    while p.degree >= 1:
        root = _find_one_root(p)
        if root is None:
            break
        roots.append(root)
        p = p // Poly((-root, ONE))
        while True:
            q, r = p.divmod(Poly((-root, ONE)))
            if r.is_zero() and not q.is_zero():
                p = q
            else:
                break
    seen, out = set(), []
    for r in roots:
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


def _find_one_root(p: Poly) -> Optional[GaussRational]:
    if p.degree == 1:
        return -p.coeff(0) / p.coeff(1)
    if p.degree == 2:
        a, b, c = p.coeff(2), p.coeff(1), p.coeff(0)
        disc = b * b - GaussRational(4) * a * c
        cls = sqrt_classify(disc)
        if cls.root is None:
            return None
        return (-b + cls.root) / (GaussRational(2) * a)
    gi = _poly_gaussian_integer_coeffs(p)
    a0, an = gi[0], gi[-1]
    if a0 == (0, 0):
        return ZERO
    for alpha in _gi_divisors(a0):
        for beta in _gi_divisors(an):
            for unit in _UNITS:
                num = _gi_mul(alpha, unit)
                cand_num = GaussRational(Fraction(num[0]), Fraction(num[1]))
                cand_den = GaussRational(Fraction(beta[0]), Fraction(beta[1]))
                cand = cand_num / cand_den
                if p(cand).is_zero():
                    return cand
    return None


# ---------------------------------------------------------------------------
# Partial fractions (poles of order <= 2, all in Q(i))
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PoleTerm:
    """Contribution a/(z-pole)^2 + b/(z-pole) of one pole."""

    pole: GaussRational
    second_order: GaussRational
    first_order: GaussRational


@dataclass(frozen=True)
class PartialFractionForm:
    """Partial fraction decomposition with simple and double poles only.

    Poles are listed in lexicographic order on (re, im) so serialized
    forms are reproducible byte for byte.
    """

    terms: tuple
    polynomial_part: Poly

    def reassemble(self) -> RationalFunction:
        acc = RationalFunction.of(self.polynomial_part)
        for t in self.terms:
            lin = Poly((-t.pole, ONE))
            acc = acc + RationalFunction(Poly((t.second_order,)), lin * lin)
            acc = acc + RationalFunction(Poly((t.first_order,)), lin)
        return acc

    def poles(self) -> list:
        return [t.pole for t in self.terms]


def _pole_sort_key(z: GaussRational):
    return (z.re, z.im)


def partial_fractions(rf: RationalFunction, poles: Optional[Sequence] = None) -> PartialFractionForm:
    """Decompose rf into a polynomial part plus terms a/(z-z0)^2 + b/(z-z0).

    The denominator must split into linear factors over Q(i) with
    multiplicity at most two. Roots are found by exact search unless
    supplied via poles.
    """
    num, den = rf.num, rf.den
    poly_part, num = num.divmod(den)
    if num.is_zero():
        return PartialFractionForm((), poly_part)

    if poles is not None:
        candidate_roots = [_coerce(z) for z in poles]
    else:
        candidate_roots = gaussian_rational_roots(den)

    # determine multiplicities by exact division
    remaining = den
    mult = {}
    for z0 in candidate_roots:
        lin = Poly((-z0, ONE))
        m = 0
        while True:
            q, r = remaining.divmod(lin)
            if r.is_zero():
                remaining, m = q, m + 1
            else:
                break
        if m:
            mult[z0] = m
    if remaining.degree > 0:
        raise ValueError("pole not in Q(i): denominator has a factor "
                         f"({remaining}) with no Gaussian-rational root")
    for z0, m in mult.items():
        if m > 2:
            raise ValueError(f"pole {z0} has multiplicity {m} > 2, unsupported")

    terms = []
    for z0 in sorted(mult, key=_pole_sort_key):
        m = mult[z0]
        lin = Poly((-z0, ONE))
        rest = den
        for _ in range(m):
            rest = rest // lin
        if m == 1:
            a_coeff = ZERO
            b_coeff = num(z0) / rest(z0)
        else:
            h = rest
            a_coeff = num(z0) / h(z0)
            hv, hp = h(z0), h.derivative()(z0)
            b_coeff = (num.derivative()(z0) * hv - num(z0) * hp) / (hv * hv)
        terms.append(PoleTerm(z0, a_coeff, b_coeff))
    return PartialFractionForm(tuple(terms), poly_part)


# ---------------------------------------------------------------------------
# Polynomial solutions of linear ODEs
# ---------------------------------------------------------------------------

def polynomial_ode_solutions(op_coeffs: Sequence, degree_bound: int) -> list:
    """Basis of polynomial solutions of sum_i c_i(z) y^(i) = 0 with
    deg y <= degree_bound.

    op_coeffs lists the coefficients c_0, ..., c_m as rational functions
    (or polynomials); denominators are cleared exactly and the unknown
    coefficients solved by exact elimination.
    """
    coeffs = [RationalFunction.of(c) for c in op_coeffs]
    if len(coeffs) < 2 or all(c.is_zero() for c in coeffs[1:]):
        raise ValueError("operator must have order >= 1")
    if degree_bound < 0:
        return []
    common = Poly((1,))
    for c in coeffs:
        common = poly_lcm(common, c.den)
    cleared = [c.num * (common // c.den) for c in coeffs]

    images = []
    for j in range(degree_bound + 1):
        basis_poly = Poly(tuple([ZERO] * j + [ONE]))
        img = Poly(())
        deriv = basis_poly
        for i, ci in enumerate(cleared):
            if i > 0:
                deriv = deriv.derivative()
            img = img + ci * deriv
        images.append(img)

    max_deg = max((img.degree for img in images), default=-1)
    if max_deg < 0:
        return [Poly(tuple([ZERO] * j + [ONE])) for j in range(degree_bound + 1)]
    rows = [[images[j].coeff(k) for j in range(degree_bound + 1)]
            for k in range(max_deg + 1)]
    sol = linear_solve(rows)
    return [Poly(tuple(vec)) for vec in sol.kernel]
