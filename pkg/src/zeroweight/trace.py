"""Traces of Weyl group elements on zero weight spaces.

Three computation paths, from cheapest to most general:

* elliptic regular: a signed monomial in coroot pairings over the cosets of
  mQ in P, computed with no summation at all;
* elliptic: a cyclotomic sum over minimal coset representatives divided by a
  Weyl-denominator factor at a torsion point;
* general: the subtorus restriction formula with a weighted partition factor,
  valid for every element.

All arithmetic is exact.  Any element whose parabolic normalization is
elliptic regular on each component of its support gets a canonical torsion
point; other classes require a caller-supplied one, which is cross-checked
against the independent weight-multiplicity oracle before use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclo import (CycloNum, TorusPoint, ad_order, canonical_torsion_point,
                    extract_rational)
from .errors import (InequalityStrict, MissingTorsionPoint, NonRationalResult,
                     NotElliptic, NotEllipticRegular, ZeroWeightError)
from .lattice import RootDatum, Weight
from .partition import (SubtorusData, build_subtorus, weighted_partition_counts)
from .weyl import (CosetClass, WeylElement, classify, coroot_indices_divisible,
                   coset_reps_WtS, elliptic_component_orders, fixed_space_rank,
                   normalize_to_parabolic, principal_search)

COSET_VANISHES = "zero"


@dataclass(frozen=True)
class TraceRequest:
    datum: RootDatum
    mu: Weight
    w: WeylElement
    t: TorusPoint | None = None


@dataclass(frozen=True)
class HarmonicFactor:
    """Evaluator for H_tS(lambda), the product of <lambda, alpha^> over the
    roots trivial on the coset tS, normalized to 1 at rho_tS."""

    datum: RootDatum
    root_indices: tuple[int, ...]

    def rho_ts(self):
        n = self.datum.rank
        acc = [Fraction(0)] * n
        for i in self.root_indices:
            for j, x in enumerate(self.datum.pos_roots_fund[i]):
                acc[j] += Fraction(x, 2)
        return tuple(acc)

    def denominators(self):
        rho_ts = self.rho_ts()
        out = []
        for i in self.root_indices:
            cv = self.datum.pos_coroots[i]
            out.append(sum(r * c for r, c in zip(rho_ts, cv)))
        return tuple(out)

    def __call__(self, lam) -> Fraction:
        val = Fraction(1)
        for i, den in zip(self.root_indices, self.denominators()):
            num = self.datum.pairing(lam, self.datum.pos_coroots[i])
            if num == 0:
                return Fraction(0)
            val *= Fraction(num) / den
        return val


def _require_regular_dominant(mu, datum):
    if len(mu) != datum.rank or any(c < 1 for c in mu):
        raise ZeroWeightError(f"mu must be regular dominant (all coords >= 1): {mu}")


# ---------------------------------------------------------------------------
# elliptic regular: the monomial formula


def trace_elliptic_regular(datum: RootDatum, mu, w: WeylElement) -> int:
    """Trace of an elliptic regular element via the coset monomial.

    Zero unless the W-orbit of mu + mQ meets rho + mQ; otherwise the signed
    product of <v mu, alpha^>/<rho, alpha^> over the positive coroots with
    pairing against rho divisible by m.  The value does not depend on which
    v is returned by the search.
    """
    _require_regular_dominant(mu, datum)
    info = classify(w)
    if not (info.elliptic and info.regular):
        raise NotEllipticRegular(f"element is not elliptic regular: {info}")
    m = info.order
    v = principal_search(datum, mu, m)
    if v is None:
        return 0
    vmu = v.apply(mu)
    val = Fraction(v.sign())
    for i in range(len(datum.pos_coroots)):
        cv = datum.pos_coroots[i]
        if sum(cv) % m == 0:
            val *= Fraction(datum.pairing(vmu, cv), sum(cv))
    if val.denominator != 1:
        raise NonRationalResult(f"monomial trace not integral: {val}")
    return int(val)


# ---------------------------------------------------------------------------
# vanishing test and coset constants (torsion-point level)


def vanishing_by_centralizer(datum: RootDatum, mu, t: TorusPoint) -> bool:
    """True when the trace must vanish because the centralizer of t is
    smaller than the dual centralizer of mu: |R_t| < |R_mu^|."""
    m = ad_order(datum, t)
    n_t = sum(1 for alpha in datum.pos_roots_fund if t.exponent(alpha) == 0)
    n_mu = len(coroot_indices_divisible(datum, mu, m))
    return n_t < n_mu


def _delta_factor(datum: RootDatum, t: TorusPoint) -> CycloNum:
    """Delta(t) = e_rho(t) * prod over R+ with e_alpha(t) != 1 of (1 - e_-alpha(t))."""
    n = t.modulus
    out = CycloNum.root_of_unity(n, t.exponent(datum.rho))
    for alpha in datum.pos_roots_fund:
        e = t.exponent(alpha)
        if e != 0:
            out = out * (CycloNum.rational(n, 1) - CycloNum.root_of_unity(n, -e))
    return out


def harmonic_sum(datum: RootDatum, mu, t: TorusPoint) -> CycloNum:
    """K(mu) = sum over v in W^t of eps(v) e_{v mu}(t) H_t(v mu)."""
    r_t = tuple(i for i, alpha in enumerate(datum.pos_roots_fund)
                if t.exponent(alpha) == 0)
    h = HarmonicFactor(datum, r_t)
    dens = h.denominators()
    n = t.modulus
    acc = [Fraction(0)] * n
    for v, sign in coset_reps_WtS(datum, [datum.pos_roots_fund[i] for i in r_t]):
        vmu = v.apply(mu)
        num = Fraction(sign)
        for i, den in zip(r_t, dens):
            p = datum.pairing(vmu, datum.pos_coroots[i])
            if p == 0:
                num = Fraction(0)
                break
            num *= Fraction(p) / den
        if num:
            acc[t.exponent(vmu)] += num
    return CycloNum.from_exponent_counts(n, acc)


def coset_constant(datum: RootDatum, t: TorusPoint, y: CosetClass):
    """The constant C with tr(t, V_mu) = C * prod <mu, alpha^> on the coset y.

    Returns the string sentinel COSET_VANISHES when |R_t+| < |R_y+| (the
    trace vanishes identically on the coset) and raises InequalityStrict on
    |R_t+| > |R_y+|, which indicates inconsistent input.
    """
    m = ad_order(datum, t)
    if y.m != m:
        raise ZeroWeightError("coset modulus does not match Ad(t) order")
    n_t = sum(1 for alpha in datum.pos_roots_fund if t.exponent(alpha) == 0)
    div = coroot_indices_divisible(datum, y.rep, m)
    if n_t < len(div):
        return COSET_VANISHES
    if n_t > len(div):
        raise InequalityStrict(f"|R_t+| = {n_t} exceeds |R_y+| = {len(div)}")
    # evaluate K_y / (Delta * prod <mu0, alpha^>) at one regular weight of y
    e = datum.center_exponent
    shift = max(0, 1 - min(y.rep)) * e * m
    mu0 = tuple(c + shift for c in y.rep)      # rep + (shift/e) * e*m*rho stays in y
    k_val = harmonic_sum(datum, mu0, t)
    delta = _delta_factor(datum, t)
    ratio = extract_rational(k_val / delta)
    denom = Fraction(1)
    for i in div:
        denom *= datum.pairing(mu0, datum.pos_coroots[i])
    return ratio / denom


# ---------------------------------------------------------------------------
# canonical torsion data


def canonical_setup(w: WeylElement):
    """Normalize w and build its canonical torsion point if one exists.

    Returns (w_norm, J, t) with t = None when some component of the
    normalized element fails regularity inside its component (no canonical
    torsion point; the caller must supply one).
    """
    w_norm, _, J = normalize_to_parabolic(w)
    comp_orders = elliptic_component_orders(w_norm, J)
    if comp_orders is None:
        return w_norm, J, None
    return w_norm, J, canonical_torsion_point(w_norm.datum, comp_orders)


_sd_cache: dict = {}


def _subtorus_for(datum: RootDatum, w_norm: WeylElement, J, t: TorusPoint) -> SubtorusData:
    key = (datum.label, w_norm.matrix, tuple(J), t.modulus, t.k)
    sd = _sd_cache.get(key)
    if sd is None:
        sd = build_subtorus(datum, w_norm, J, t)
        _sd_cache[key] = sd
    return sd


def _evaluate_formula(sd: SubtorusData, mu) -> int:
    """The general character formula at a SubtorusData; exact integer."""
    datum = sd.datum
    t = sd.t
    n = t.modulus
    h = HarmonicFactor(datum, sd.r_ts_plus)
    dens = h.denominators()
    rho = datum.rho
    acc = [Fraction(0)] * n
    reps = _reps_for(sd)
    for v, sign in reps:
        vmu = v.apply(mu)
        coeff = Fraction(sign)
        for i, den in zip(sd.r_ts_plus, dens):
            p = datum.pairing(vmu, datum.pos_coroots[i])
            if p == 0:
                coeff = Fraction(0)
                break
            coeff *= Fraction(p) / den
        if not coeff:
            continue
        lam = tuple(a - b for a, b in zip(vmu, rho))
        counts = weighted_partition_counts(sd, sd.res(lam))
        if not any(counts):
            continue
        base = t.exponent(lam)
        for j, c in enumerate(counts):
            if c:
                acc[(base + j) % n] += coeff * c
    total = CycloNum.from_exponent_counts(n, acc)
    denom = CycloNum.rational(n, 1)
    for i in sd.r1:
        e = t.exponent(datum.pos_roots_fund[i])
        denom = denom * (CycloNum.rational(n, 1) - CycloNum.root_of_unity(n, -e))
    val = extract_rational(total / denom)
    if val.denominator != 1:
        raise NonRationalResult(f"trace not an integer: {val}")
    return int(val)


_reps_cache: dict = {}


def _reps_for(sd: SubtorusData):
    key = (sd.datum.label, sd.r_ts_plus)
    reps = _reps_cache.get(key)
    if reps is None:
        fund = [sd.datum.pos_roots_fund[i] for i in sd.r_ts_plus]
        reps = list(coset_reps_WtS(sd.datum, fund))
        _reps_cache[key] = reps
    return reps


# ---------------------------------------------------------------------------
# elliptic and general traces


def trace_elliptic(datum: RootDatum, mu, w: WeylElement, t: TorusPoint | None = None) -> int:
    """Trace of an elliptic element via the torsion-point character sum."""
    _require_regular_dominant(mu, datum)
    if fixed_space_rank(w) != 0:
        raise NotElliptic("element has a nonzero fixed space")
    if t is None:
        w_norm, J, t = canonical_setup(w)
        if t is None:
            raise MissingTorsionPoint(
                "elliptic element is not regular; supply a torsion point")
    else:
        w_norm, _, J = normalize_to_parabolic(w)
    if vanishing_by_centralizer(datum, mu, t):
        return 0
    sd = _subtorus_for(datum, w_norm, J, t)
    return _evaluate_formula(sd, mu)


def trace_general(datum: RootDatum, mu, w: WeylElement,
                  t: TorusPoint | None = None, validate_user_t: bool = True) -> int:
    """Trace of any element via the subtorus restriction formula."""
    _require_regular_dominant(mu, datum)
    w_norm, J, t_canon = canonical_setup(w)
    if t is None:
        t = t_canon
        if t is None:
            raise MissingTorsionPoint(
                "no canonical torsion point for this class; supply one")
    elif validate_user_t:
        _validate_user_torsion_point(datum, w_norm, J, t)
    sd = _subtorus_for(datum, w_norm, J, t)
    return _evaluate_formula(sd, mu)


def _validate_user_torsion_point(datum, w_norm, J, t):
    """Cross-check a caller-supplied torsion point against the oracle on a
    few small weights before trusting it."""
    from . import oracle as _oracle
    sd = _subtorus_for(datum, w_norm, J, t)
    probes = [datum.rho]
    for i in (0, datum.rank - 1):
        probes.append(tuple(c + int(j == i) for j, c in enumerate(datum.rho)))
    for mu0 in probes:
        engine = _evaluate_formula(sd, mu0)
        ref = _oracle.oracle_trace(datum, mu0, w_norm, t)
        if engine != ref:
            raise ZeroWeightError(
                f"user torsion point inconsistent with oracle at mu={mu0}: "
                f"{engine} vs {ref}")


def trace_auto(datum: RootDatum, mu, w: WeylElement, t: TorusPoint | None = None):
    """Best-path dispatch; returns (value, method)."""
    _require_regular_dominant(mu, datum)
    info = classify(w)
    if t is None and info.elliptic and info.regular:
        return trace_elliptic_regular(datum, mu, w), "ellreg"
    if info.elliptic:
        return trace_elliptic(datum, mu, w, t), "elliptic"
    return trace_general(datum, mu, w, t), "general"


def run_trace(req: TraceRequest):
    value, method = trace_auto(req.datum, req.mu, req.w, req.t)
    return {"group": req.datum.label, "mu": list(req.mu),
            "trace": value, "method": method}


def zero_weight_dimension(datum: RootDatum, mu) -> int:
    """dim V_mu^T by the alternating Kostant sum (the w = 1 case)."""
    ident = WeylElement.identity(datum)
    return trace_general(datum, mu, ident)
