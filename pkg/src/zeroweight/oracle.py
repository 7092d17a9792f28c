"""Independent ground truth: Freudenthal multiplicities and constant-term traces.

This module deliberately shares no summation path with the trace engine.
Weight multiplicities come from the Freudenthal recursion; the trace of w on
the zero weight space is then the constant term along the fixed subtorus S of
the full character evaluated at a torsion point, i.e. the sum of
m_lambda * e_lambda(t) over the weights lambda restricting trivially to S.
Disagreement with the engine is therefore diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .cyclo import CycloNum, TorusPoint, extract_rational
from .errors import DimensionCapExceeded, ZeroWeightError
from .lattice import RootDatum, Weight, build_datum
from .partition import SubtorusData
from .weyl import WeylElement, normalize_to_parabolic, elliptic_component_orders, \
    fixed_coweight_basis
from .cyclo import canonical_torsion_point

DEFAULT_DIM_CAP = 10 ** 7


def weyl_dimension(datum: RootDatum, mu) -> int:
    """dim V_{mu - rho} by the Weyl product formula (rho-shifted input)."""
    num = 1
    den = 1
    for cv in datum.pos_coroots:
        num *= datum.pairing(mu, cv)
        den *= sum(cv)
    q, r = divmod(num, den)
    assert r == 0
    return q


@dataclass
class WeightMultiplicityTable:
    highest: Weight                       # Lambda = mu - rho, dominant
    mult: dict                            # dominant weight -> multiplicity
    points: list                          # [(weight, multiplicity)] over all weights
    dim: int


@lru_cache(maxsize=None)
def _scaled_gram(label: str):
    datum = build_datum(label)
    scale = lcm(*[f.denominator for row in datum.form for f in row])
    gram = [[int(f * scale) for f in row] for row in datum.form]
    return gram


@lru_cache(maxsize=None)
def _scaled_cartan_inv(label: str):
    datum = build_datum(label)
    e = datum.center_exponent
    return e, [[int(f * e) for f in row] for row in datum.cartan_inv]


def _norm2(gram, v):
    n = len(v)
    return sum(v[i] * gram[i][j] * v[j] for i in range(n) for j in range(n))


_freudenthal_cache: dict = {}


def freudenthal(datum: RootDatum, highest, cap: int = DEFAULT_DIM_CAP) -> WeightMultiplicityTable:
    """Exact weight multiplicities of V_Lambda by the Freudenthal recursion.

    Weights are enumerated by walking down from Lambda along simple roots,
    keeping points whose dominant conjugate still lies under Lambda; the
    recursion then fills multiplicities from the top.
    """
    highest = tuple(int(x) for x in highest)
    if any(x < 0 for x in highest):
        raise ZeroWeightError(f"highest weight must be dominant: {highest}")
    key = (datum.label, highest)
    cached = _freudenthal_cache.get(key)
    if cached is not None:
        return cached
    dim = weyl_dimension(datum, tuple(x + 1 for x in highest))
    if dim > cap:
        raise DimensionCapExceeded(f"dim = {dim} exceeds cap = {cap}")

    n = datum.rank
    e, ainv = _scaled_cartan_inv(datum.label)

    under_cache: dict = {}

    def under(lam_dom):
        """Whether Lambda - lam_dom is a nonnegative integer root combination."""
        hit = under_cache.get(lam_dom)
        if hit is None:
            diff = [a - b for a, b in zip(highest, lam_dom)]
            hit = True
            for i in range(n):
                v = sum(ainv[i][j] * diff[j] for j in range(n))
                if v < 0 or v % e:
                    hit = False
                    break
            under_cache[lam_dom] = hit
        return hit

    # enumerate all weight points
    simm = [datum.fund_of_root(tuple(int(k == i) for k in range(n))) for i in range(n)]
    seen = {highest}
    queue = [highest]
    points = []
    dominants = []
    while queue:
        lam = queue.pop()
        points.append(lam)
        if all(x >= 0 for x in lam):
            dominants.append(lam)
        for alpha in simm:
            child = tuple(a - b for a, b in zip(lam, alpha))
            if child in seen:
                continue
            if under(datum.dominantize(child)):
                seen.add(child)
                queue.append(child)

    gram = _scaled_gram(datum.label)
    gvecs = [tuple(sum(gram[i][j] * alpha[j] for j in range(n)) for i in range(n))
             for alpha in datum.pos_roots_fund]
    anorms = [sum(a * g for a, g in zip(alpha, gv))
              for alpha, gv in zip(datum.pos_roots_fund, gvecs)]

    lam_rho = tuple(x + 1 for x in highest)
    top_norm = _norm2(gram, lam_rho)

    def depth(lam):
        diff = [a - b for a, b in zip(highest, lam)]
        return sum(sum(ainv[i][j] * diff[j] for j in range(n)) for i in range(n))

    dominants.sort(key=depth)
    mult = {highest: 1}
    for lam in dominants:
        if lam == highest:
            continue
        acc = 0
        for alpha, gv, a2 in zip(datum.pos_roots_fund, gvecs, anorms):
            pair = sum(l * g for l, g in zip(lam, gv))
            k = 1
            cur = tuple(a + b for a, b in zip(lam, alpha))
            while True:
                dom = datum.dominantize(cur)
                if not under(dom):
                    break
                m = mult.get(dom)
                if m:
                    acc += (pair + k * a2) * m
                k += 1
                cur = tuple(a + b for a, b in zip(cur, alpha))
        lr = tuple(x + 1 for x in lam)
        c = top_norm - _norm2(gram, lr)
        assert c > 0
        q, r = divmod(2 * acc, c)
        assert r == 0, "Freudenthal division must be exact"
        mult[lam] = q

    point_list = [(lam, mult[datum.dominantize(lam)]) for lam in points]
    total = sum(m for _, m in point_list)
    assert total == dim, f"Freudenthal total {total} != Weyl dimension {dim}"
    table = WeightMultiplicityTable(highest=highest, mult=mult,
                                    points=point_list, dim=dim)
    if len(_freudenthal_cache) > 16:
        _freudenthal_cache.clear()
    _freudenthal_cache[key] = table
    return table


def zero_weight_multiplicity(datum: RootDatum, mu, cap: int = DEFAULT_DIM_CAP) -> int:
    """m_0 = dim V_mu^T via Freudenthal (rho-shifted input)."""
    table = freudenthal(datum, tuple(x - 1 for x in mu), cap)
    zero = tuple(0 for _ in range(datum.rank))
    return table.mult.get(zero, 0)


def oracle_trace(datum: RootDatum, mu, w: WeylElement,
                 t: TorusPoint | None = None, cap: int = DEFAULT_DIM_CAP) -> int:
    """tr(w, V_mu^T) as the constant term along S of the character at t S.

    Computed literally: sum of m_lambda e_lambda(t) over all weights lambda
    of V_{mu-rho} with lambda trivial on S.  Only the multiplicity table and
    the lattice/cyclotomic primitives are used; no partition functions.
    """
    if any(c < 1 for c in mu):
        raise ZeroWeightError("mu must be regular dominant")
    w_norm, _, J = normalize_to_parabolic(w)
    if t is None:
        comp_orders = elliptic_component_orders(w_norm, J)
        if comp_orders is None:
            raise ZeroWeightError("no canonical torsion point; supply t")
        t = canonical_torsion_point(datum, comp_orders)
    basis = fixed_coweight_basis(w_norm)
    table = freudenthal(datum, tuple(x - 1 for x in mu), cap)
    n = t.modulus
    buckets = [0] * n
    for lam, m in table.points:
        if all(datum.pairing(lam, y) == 0 for y in basis):
            buckets[t.exponent(lam)] += m
    val = extract_rational(CycloNum.from_exponent_counts(n, buckets))
    assert val.denominator == 1
    return int(val)


def brute_weighted_partition(sd: SubtorusData, nu, bound: int) -> CycloNum:
    """Literal enumeration of the weighted partition sum, no memoization.

    Guards on the positivity functional: refuses instances beyond `bound`.
    """
    nu = tuple(int(x) for x in nu)
    height = sum(p * v for p, v in zip(sd.phi, nu))
    if height > bound:
        raise ZeroWeightError(f"instance height {height} exceeds bound {bound}")
    gens = sd.nu_list
    phis = [sum(p * v for p, v in zip(sd.phi, g)) for g in gens]
    n = sd.t.modulus
    counts = [0] * n

    def rec(vec, i, shift):
        if not any(vec):
            counts[shift % n] += 1
            return
        if i == len(gens):
            return
        pv = sum(p * v for p, v in zip(sd.phi, vec))
        if pv <= 0:
            return
        cur = vec
        s = shift
        for _ in range(pv // phis[i] + 1):
            rec(cur, i + 1, s)
            cur = tuple(a - b for a, b in zip(cur, gens[i]))
            s += sd.z_exponents[i]

    rec(nu, 0, 0)
    return CycloNum.from_exponent_counts(n, counts)
