"""Exact arithmetic in cyclotomic fields, plus torsion points of the torus.

Elements of Q(zeta_N) are residues modulo the N-th cyclotomic polynomial,
stored as rational coefficient vectors on the power basis 1, z, ..,
z^(deg-1).  Cyclotomic polynomials are computed by recursive division of
x^N - 1, never transcribed.

A torsion point t of the maximal torus is a rational cocharacter: a modulus
N together with an integer vector k on the simple coroots, meaning
t = exp(2 pi i k / N), so characters evaluate as e_lambda(t) = zeta_N^<lambda,k>.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import NonRationalResult
from .lattice import RootDatum


def _poly_divmod(num, den):
    """Quotient/remainder of integer-coefficient polynomials (dense lists)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        q, r = divmod(num[-1], den[-1])
        assert r == 0
        out[shift] = q
        for i, c in enumerate(den):
            num[shift + i] -= q * c
        while num and num[-1] == 0:
            num.pop()
    return out, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, constant term first."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]          # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, cyclotomic_polynomial(d))
            assert not any(rem)
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(n: int):
    """zeta_N^j for j in [0, N) as coefficient tuples on the power basis."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(n):
        rows.append(tuple(cur))
        shifted = [Fraction(0)] + cur[:-1]
        top = cur[-1]
        if top:
            for i in range(deg):
                shifted[i] -= top * phi[i]
        cur = shifted
    return tuple(rows)


class CycloNum:
    """An element of Q(zeta_N), exact."""

    __slots__ = ("modulus", "coeffs")

    def __init__(self, modulus: int, coeffs):
        deg = len(cyclotomic_polynomial(modulus)) - 1
        cs = [Fraction(c) for c in coeffs]
        assert len(cs) == deg
        self.modulus = modulus
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(n: int) -> "CycloNum":
        deg = len(cyclotomic_polynomial(n)) - 1
        return CycloNum(n, [0] * deg)

    @staticmethod
    def rational(n: int, value) -> "CycloNum":
        deg = len(cyclotomic_polynomial(n)) - 1
        return CycloNum(n, [Fraction(value)] + [0] * (deg - 1))

    @staticmethod
    def root_of_unity(n: int, exponent: int) -> "CycloNum":
        return CycloNum(n, _reduction_table(n)[exponent % n])

    @staticmethod
    def from_exponent_counts(n: int, counts) -> "CycloNum":
        """Sum of counts[j] * zeta_N^j, e.g. from a weighted partition DP."""
        table = _reduction_table(n)
        deg = len(table[0])
        acc = [Fraction(0)] * deg
        for j, c in enumerate(counts):
            if c:
                row = table[j % n]
                for i in range(deg):
                    acc[i] += c * row[i]
        return CycloNum(n, acc)

    # -- ring operations ------------------------------------------------------

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNum.rational(self.modulus, other)
        assert other.modulus == self.modulus, "mixed cyclotomic moduli"
        return other

    def __add__(self, other):
        other = self._check(other)
        return CycloNum(self.modulus, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return CycloNum(self.modulus, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return CycloNum(self.modulus, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNum(self.modulus, [a * other for a in self.coeffs])
        other = self._check(other)
        deg = len(self.coeffs)
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        phi = cyclotomic_polynomial(self.modulus)
        for i in range(len(prod) - 1, deg - 1, -1):
            top = prod[i]
            if top:
                for j in range(deg + 1):
                    prod[i - deg + j] -= top * phi[j]
        return CycloNum(self.modulus, prod[:deg])

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        """Field inverse via the extended Euclidean algorithm against Phi_N."""
        if not any(self.coeffs):
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.modulus)]
        r0, r1 = phi, [Fraction(c) for c in self.coeffs]
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            while r1 and r1[-1] == 0:
                r1.pop()
            if len(r1) == 1:
                inv = 1 / r1[0]
                deg = len(self.coeffs)
                out = [c * inv for c in s1] + [Fraction(0)] * deg
                return CycloNum(self.modulus, out[:deg])
            q, r = _frac_poly_divmod(r0, r1)
            new_s = _frac_poly_sub(s0, _frac_poly_mul(q, s1))
            r0, r1 = r1, r
            s0, s1 = s1, new_s

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNum.rational(self.modulus, other)
        return isinstance(other, CycloNum) and self.modulus == other.modulus \
            and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.modulus, self.coeffs))

    def __repr__(self):
        return f"CycloNum({self.modulus}, {[str(c) for c in self.coeffs]})"

    # -- rationality -----------------------------------------------------------

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def extract_rational(x: CycloNum) -> Fraction:
    """The rational value of a cyclotomic number, or NonRationalResult.

    Non-rationality here signals a bug upstream: every finished trace is a
    rational integer.
    """
    if not x.is_rational():
        raise NonRationalResult(f"not rational: {x!r}")
    return x.coeffs[0]


def _frac_poly_divmod(num, den):
    num = list(num)
    while den and den[-1] == 0:
        den = den[:-1]
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    while len(num) >= len(den):
        while num and num[-1] == 0:
            num.pop()
        if len(num) < len(den):
            break
        shift = len(num) - len(den)
        c = num[-1] / den[-1]
        q[shift] = c
        for i, d in enumerate(den):
            num[shift + i] -= c * d
        num.pop()
    return q, num


def _frac_poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _frac_poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


@dataclass(frozen=True)
class TorusPoint:
    """Torsion element t = exp(2 pi i k / N) of T, with k on the simple coroots."""

    modulus: int
    k: tuple[int, ...]

    def exponent(self, lam) -> int:
        """<lambda, k> mod N; e_lambda(t) = zeta_N^exponent."""
        return sum(int(a) * int(b) for a, b in zip(lam, self.k)) % self.modulus

    def is_trivial_on(self, lam) -> bool:
        return self.exponent(lam) == 0

    @staticmethod
    def parse(text: str) -> "TorusPoint":
        """Parse 'N:k1,k2,...' as used on the command line."""
        mod, _, rest = text.partition(":")
        return TorusPoint(int(mod), tuple(int(x) for x in rest.split(",")))


def eval_char(datum: RootDatum, lam, t: TorusPoint) -> CycloNum:
    """e_lambda(t) as an exact cyclotomic number."""
    return CycloNum.root_of_unity(t.modulus, t.exponent(lam))


def ad_order(datum: RootDatum, t: TorusPoint) -> int:
    """Order of Ad(t): the lcm over roots alpha of the order of e_alpha(t)."""
    n = t.modulus
    m = 1
    for alpha in datum.pos_roots_fund:
        e = t.exponent(alpha)
        m = lcm(m, n // gcd(n, e) if e else 1)
    return m


def _two_rho_check_of_subsystem(datum: RootDatum, J):
    two_rho_check = [0] * datum.rank
    for idx, root in enumerate(datum.pos_roots):
        if all(root[j] == 0 for j in range(datum.rank) if j not in J):
            for j in range(datum.rank):
                two_rho_check[j] += datum.pos_coroots[idx][j]
    return two_rho_check


def principal_torsion_point(datum: RootDatum, J, m: int) -> TorusPoint:
    """The canonical torsion point 2rho^_J(eta) with eta of order 2m, for the
    subsystem spanned by the simple roots in J."""
    return TorusPoint(2 * m, tuple(_two_rho_check_of_subsystem(datum, J)))


def canonical_torsion_point(datum: RootDatum, comp_orders) -> TorusPoint:
    """Componentwise canonical torsion point for an elliptic element of a
    standard parabolic whose restriction to each irreducible component of the
    subsystem is regular of the given order.

    Each component contributes 2rho^_c(eta_c) with eta_c of order 2 m_c; the
    product is encoded at the common modulus lcm(2 m_c).
    """
    n = lcm(*[2 * m for _, m in comp_orders]) if comp_orders else 2
    k = [0] * datum.rank
    for comp, m in comp_orders:
        scale = n // (2 * m)
        for j, v in enumerate(_two_rho_check_of_subsystem(datum, comp)):
            k[j] += scale * v
    return TorusPoint(n, tuple(k))
