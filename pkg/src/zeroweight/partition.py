"""Kostant and weighted vector partition functions on subtorus character lattices.

The weighted partition function attached to an element w and a torsion point
t counts expressions of a vector nu in the character lattice Y of the fixed
subtorus S as nonnegative combinations of the restricted roots beta_i in R2,
each occurrence weighted by the root of unity z_i = e_{-beta_i}(t).  Values
are computed by memoized dynamic programming; partial sums are held as
integer count vectors over exponents of zeta_N, so all arithmetic is integer
until the final reduction modulo the cyclotomic polynomial.

Termination relies on the restricted roots being pointed: a functional on Y,
derived from the dominant fixed coweight produced by parabolic
normalization, is strictly positive on every generator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .cyclo import CycloNum, TorusPoint
from .errors import PointednessFailure, ZeroWeightError
from .lattice import RootDatum
from .weyl import (WeylElement, fixed_coweight_basis, subsystem_root_indices)

_kostant_memos: dict[str, dict] = {}


def kostant_partition(datum: RootDatum, nu) -> int:
    """Number of ways to write nu (root coordinates) as a nonnegative integer
    combination of the positive roots."""
    nu = tuple(int(x) for x in nu)
    if any(x < 0 for x in nu):
        return 0
    memo = _kostant_memos.setdefault(datum.label, {
        "roots": sorted(datum.pos_roots, key=sum, reverse=True), "table": {}})
    roots, table = memo["roots"], memo["table"]

    def count(vec, i):
        if not any(vec):
            return 1
        if i == len(roots):
            return 0
        key = (vec, i)
        cached = table.get(key)
        if cached is not None:
            return cached
        beta = roots[i]
        kmax = min(vec[j] // beta[j] for j in range(len(vec)) if beta[j])
        total = 0
        cur = vec
        for _ in range(kmax + 1):
            total += count(cur, i + 1)
            cur = tuple(a - b for a, b in zip(cur, beta))
        table[key] = total
        return total

    return count(nu, 0)


def popoviciu(m: int, n: int, q) -> int:
    """Number of (x, y) in N^2 with m x + n y = q, for coprime m, n.

    Closed form: q/mn - {q m'/n} - {q n'/m} + 1 with m m' + n n' = 1, valid
    for integer q >= 0; zero when q is not a nonnegative integer.
    """
    if gcd(m, n) != 1:
        raise ZeroWeightError("popoviciu requires coprime generators")
    q = Fraction(q)
    if q.denominator != 1 or q < 0:
        return 0
    q = int(q)
    mp = pow(m, -1, n) if n > 1 else 0
    np_ = pow(n, -1, m) if m > 1 else 0
    # m*mp = 1 mod n, so with n' = (1 - m*mp)/n we have m m' + n n' = 1
    val = Fraction(q, m * n) - _frac_part(Fraction(q * mp, n)) \
        - _frac_part(Fraction(q * np_, m)) + 1
    assert val.denominator == 1 and val >= 0
    return int(val)


def _frac_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass
class SubtorusData:
    """The three-way root partition and weighted-partition data for (w, t).

    `fixed_basis` is a Z-basis of the saturated fixed lattice of w in the
    coroot lattice; `res` maps a weight to its pairings with that basis.
    `phi` is an integer functional on the restriction lattice, positive on
    every restricted root (pointedness).
    """

    datum: RootDatum
    w: WeylElement
    J: tuple[int, ...]
    t: TorusPoint
    fixed_basis: tuple[tuple[int, ...], ...]
    r_ts_plus: tuple[int, ...]
    r1: tuple[int, ...]
    r2: tuple[int, ...]
    nu_list: tuple[tuple[int, ...], ...]
    z_exponents: tuple[int, ...]
    phi: tuple[int, ...]
    _memo: dict = field(default_factory=dict, repr=False)

    def res(self, lam) -> tuple[int, ...]:
        return tuple(self.datum.pairing(lam, y) for y in self.fixed_basis)

    @property
    def rank(self) -> int:
        return len(self.fixed_basis)

    def z_values(self):
        return tuple(CycloNum.root_of_unity(self.t.modulus, e) for e in self.z_exponents)


def restrict_zero(sd: SubtorusData, lam) -> bool:
    """Whether a weight restricts to the trivial character of S."""
    return all(v == 0 for v in sd.res(lam))


def build_subtorus(datum: RootDatum, w_norm: WeylElement, J, t: TorusPoint) -> SubtorusData:
    """Assemble SubtorusData for a parabolically normalized w and torsion t.

    Refuses input whose fixed space is not the dominant-chamber face cut out
    by J: pointedness of the restricted roots is only guaranteed there.
    """
    basis = tuple(tuple(v) for v in fixed_coweight_basis(w_norm))
    d = len(basis)
    if d != datum.rank - len(J):
        raise PointednessFailure("fixed-space dimension does not match J")
    for j in J:
        alpha_j = datum.fund_of_root(tuple(int(k == j) for k in range(datum.rank)))
        if any(datum.pairing(alpha_j, y) != 0 for y in basis):
            raise PointednessFailure("w is not normalized: J roots not trivial on S")

    # dominant generic fixed coweight -> positivity functional coordinates
    y0 = _dominant_fixed_coweight(datum, basis, J)
    phi = _functional_coords(basis, y0)

    r_ts, r1, r2, nus, zexp = [], [], [], [], []
    j_roots = set(subsystem_root_indices(datum, J))
    for idx, alpha in enumerate(datum.pos_roots_fund):
        rv = tuple(datum.pairing(alpha, y) for y in basis)
        if any(rv):
            if sum(p * v for p, v in zip(phi, rv)) <= 0:
                raise PointednessFailure("restricted root not positive on y0")
            if idx in j_roots:
                raise PointednessFailure("J root restricts nontrivially")
            r2.append(idx)
            nus.append(rv)
            zexp.append((-t.exponent(alpha)) % t.modulus)
        else:
            if idx not in j_roots:
                raise PointednessFailure("root trivial on S outside the J subsystem")
            if t.exponent(alpha) == 0:
                r_ts.append(idx)
            else:
                r1.append(idx)
    return SubtorusData(datum=datum, w=w_norm, J=tuple(J), t=t,
                        fixed_basis=basis,
                        r_ts_plus=tuple(r_ts), r1=tuple(r1), r2=tuple(r2),
                        nu_list=tuple(nus), z_exponents=tuple(zexp),
                        phi=phi)


def _dominant_fixed_coweight(datum, basis, J):
    """An integer vector in the fixed lattice, strictly dominant off J."""
    import random as _random
    rng = _random.Random(5)
    d = len(basis)
    n = datum.rank
    for attempt in range(64):
        coeffs = [1007 ** i for i in range(d)] if attempt == 0 else \
            [rng.randint(1, 10 ** 6) for _ in range(d)]
        y = tuple(sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(n))
        pair = [sum(datum.cartan[k][i] * y[k] for k in range(n)) for i in range(n)]
        if all(pair[i] > 0 for i in range(n) if i not in J) \
                and all(pair[i] == 0 for i in J):
            return y
        yneg = tuple(-v for v in y)
        pair = [-p for p in pair]
        if all(pair[i] > 0 for i in range(n) if i not in J) \
                and all(pair[i] == 0 for i in J):
            return yneg
    raise PointednessFailure("no dominant fixed coweight found; w not normalized?")


def _functional_coords(basis, y0):
    """Integer coordinates of y0 on the fixed basis; phi(res(lam)) = <lam, y0>."""
    d = len(basis)
    if d == 0:
        return ()
    n = len(y0)
    # solve sum_j a_j basis[j] = y0 exactly
    aug = [[Fraction(basis[j][i]) for j in range(d)] + [Fraction(y0[i])] for i in range(n)]
    coeffs = [Fraction(0)] * d
    row = 0
    for col in range(d):
        piv = next(r for r in range(row, n) if aug[r][col] != 0)
        aug[row], aug[piv] = aug[piv], aug[row]
        p = aug[row][col]
        aug[row] = [x / p for x in aug[row]]
        for r in range(n):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        row += 1
    for col in range(d):
        r = next(r for r in range(n) if aug[r][col] == 1)
        coeffs[col] = aug[r][d]
    assert all(c.denominator == 1 for c in coeffs)
    return tuple(int(c) for c in coeffs)


def _zero_counts(n):
    return (0,) * n


def weighted_partition_counts(sd: SubtorusData, nu) -> tuple[int, ...]:
    """The weighted partition value as integer counts over zeta_N exponents."""
    n = sd.t.modulus
    nu = tuple(int(x) for x in nu)
    gens = sd.nu_list
    phis = [sum(p * v for p, v in zip(sd.phi, g)) for g in gens]

    def phi_of(vec):
        return sum(p * v for p, v in zip(sd.phi, vec))

    memo = sd._memo

    def count(vec, i):
        if not any(vec):
            unit = [0] * n
            unit[0] = 1
            return tuple(unit)
        if i == len(gens):
            return _zero_counts(n)
        pv = phi_of(vec)
        if pv <= 0:
            return _zero_counts(n)
        key = (vec, i)
        cached = memo.get(key)
        if cached is not None:
            return cached
        kmax = pv // phis[i]
        acc = [0] * n
        cur = vec
        shift = 0
        for _ in range(kmax + 1):
            sub = count(cur, i + 1)
            if any(sub):
                for j, c in enumerate(sub):
                    if c:
                        acc[(j + shift) % n] += c
            cur = tuple(a - b for a, b in zip(cur, gens[i]))
            shift += sd.z_exponents[i]
        out = tuple(acc)
        memo[key] = out
        return out

    return count(nu, 0)


def weighted_partition(sd: SubtorusData, nu) -> CycloNum:
    """P_w(nu): the sum of z_1^n_1 ... z_r^n_r over nonnegative solutions of
    sum n_i nu_i = nu; exact, zero when no solutions exist."""
    return CycloNum.from_exponent_counts(sd.t.modulus, weighted_partition_counts(sd, nu))
