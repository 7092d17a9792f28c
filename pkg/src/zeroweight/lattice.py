"""Root datum core for the simple types A1-A5, B2-B4, C2-C4, D4, G2, F4, E6.

Weights are integer tuples in the fundamental-weight basis, coroots are
integer tuples in the simple-coroot basis, so the natural pairing is a plain
dot product.  Roots are generated from the Cartan matrix by closing the set
of simple roots under simple reflections; nothing type-specific is hardcoded
beyond the Cartan matrix itself.

Convention: ``cartan[i][j]`` is the pairing of the simple root ``alpha_j``
with the simple coroot ``alpha_i^``.  A weight ``mu`` acts through its
fundamental coordinates, ``mu_i = <mu, alpha_i^>``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import UnsupportedLabel

Weight = tuple[int, ...]
CorootVec = tuple[int, ...]

# Simple-root numbering follows the source tables this package reproduces:
# G2 node 1 long, node 2 short; C2 (Sp4) node 1 short; D4 node 2 central;
# F4 nodes 1,2 long and 3,4 short; E6 a chain 1-2-3-4-5 with node 6 on 3.
# Elsewhere Bourbaki numbering.  Each entry: rank, edges (i, j, aij, aji)
# with a_xy = <alpha_y, alpha_x^> on 1-based nodes, and root lengths d_i
# (half squared lengths, normalized so short roots have d = 1).
_DIAGRAMS = {
    "A1": (1, [], [1]),
    "A2": (2, [(1, 2, -1, -1)], [1, 1]),
    "A3": (3, [(1, 2, -1, -1), (2, 3, -1, -1)], [1, 1, 1]),
    "A4": (4, [(1, 2, -1, -1), (2, 3, -1, -1), (3, 4, -1, -1)], [1, 1, 1, 1]),
    "A5": (5, [(1, 2, -1, -1), (2, 3, -1, -1), (3, 4, -1, -1), (4, 5, -1, -1)],
           [1, 1, 1, 1, 1]),
    "B2": (2, [(1, 2, -1, -2)], [2, 1]),
    "B3": (3, [(1, 2, -1, -1), (2, 3, -1, -2)], [2, 2, 1]),
    "B4": (4, [(1, 2, -1, -1), (2, 3, -1, -1), (3, 4, -1, -2)], [2, 2, 2, 1]),
    "C2": (2, [(1, 2, -2, -1)], [1, 2]),
    "C3": (3, [(1, 2, -1, -1), (2, 3, -2, -1)], [1, 1, 2]),
    "C4": (4, [(1, 2, -1, -1), (2, 3, -1, -1), (3, 4, -2, -1)], [1, 1, 1, 2]),
    "D4": (4, [(1, 2, -1, -1), (2, 3, -1, -1), (2, 4, -1, -1)], [1, 1, 1, 1]),
    "G2": (2, [(1, 2, -1, -3)], [3, 1]),
    "F4": (4, [(1, 2, -1, -1), (2, 3, -1, -2), (3, 4, -1, -1)], [2, 2, 1, 1]),
    "E6": (6, [(1, 2, -1, -1), (2, 3, -1, -1), (3, 4, -1, -1), (4, 5, -1, -1),
               (3, 6, -1, -1)], [1, 1, 1, 1, 1, 1]),
}

_ALIASES = {
    "SU2": "A1", "SU3": "A2", "SU4": "A3", "SU5": "A4", "SU6": "A5",
    "SP4": "C2", "SP6": "C3", "SP8": "C4",
    "SO5": "B2", "SO7": "B3", "SO9": "B4",
    "SPIN8": "D4",
}


def normalize_label(label: str) -> str:
    key = label.strip().upper()
    key = _ALIASES.get(key, key)
    if key not in _DIAGRAMS:
        raise UnsupportedLabel(
            f"unsupported group {label!r}; known: "
            + ", ".join(sorted(_DIAGRAMS) + sorted(_ALIASES)))
    return key


def _mat_inverse(rows):
    """Exact inverse of a square integer matrix, as Fraction rows."""
    n = len(rows)
    aug = [[Fraction(rows[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


@dataclass(frozen=True)
class RootDatum:
    """Immutable root datum of a simple, simply connected compact group."""

    label: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    # aligned lists: pos_coroots[i] is the coroot of pos_roots[i]
    pos_roots: tuple[tuple[int, ...], ...]       # simple-root coordinates
    pos_coroots: tuple[CorootVec, ...]           # simple-coroot coordinates
    rho: Weight                                  # all ones
    rho_check: CorootVec                         # 2*rho^ = sum of positive coroots
    center_exponent: int
    coxeter_number: int
    form: tuple[tuple[Fraction, ...], ...]       # Gram matrix on fundamental coords
    cartan_inv: tuple[tuple[Fraction, ...], ...]
    root_lengths: tuple[int, ...]                # d_i, short root d = 1

    def __hash__(self):
        return hash(self.label)

    def __eq__(self, other):
        return isinstance(other, RootDatum) and self.label == other.label

    # -- coordinate conversions -------------------------------------------

    def fund_of_root(self, root) -> Weight:
        """Fundamental coordinates of a vector given in simple-root coordinates."""
        a = self.cartan
        return tuple(sum(a[i][j] * root[j] for j in range(self.rank))
                     for i in range(self.rank))

    def root_coords(self, mu) -> tuple[Fraction, ...]:
        """Coordinates of a weight on the simple roots; denominators divide
        the center exponent."""
        inv = self.cartan_inv
        return tuple(sum(inv[i][j] * mu[j] for j in range(self.rank))
                     for i in range(self.rank))

    def in_root_lattice(self, mu) -> bool:
        return all(c.denominator == 1 for c in self.root_coords(mu))

    # -- pairings and norms -------------------------------------------------

    def pairing(self, mu, cv) -> int:
        """<mu, alpha^> for a weight and a coroot vector; exact integer."""
        return sum(int(m) * int(c) for m, c in zip(mu, cv))

    def qform(self, lam, mu) -> Fraction:
        """W-invariant inner product with q(alpha) = 2 on long roots."""
        g = self.form
        return sum(g[i][j] * lam[i] * mu[j]
                   for i in range(self.rank) for j in range(self.rank))

    # -- positive-root views -------------------------------------------------

    @property
    def pos_roots_fund(self) -> tuple[Weight, ...]:
        return _pos_roots_fund(self.label)

    def root_height(self, idx: int) -> int:
        return sum(self.pos_roots[idx])

    def coroot_height(self, idx: int) -> int:
        return sum(self.pos_coroots[idx])

    def simple_root_indices(self) -> tuple[int, ...]:
        """Indices into pos_roots of the simple roots, in node order."""
        out = []
        for i in range(self.rank):
            unit = tuple(int(j == i) for j in range(self.rank))
            out.append(self.pos_roots.index(unit))
        return tuple(out)

    # -- reflections ----------------------------------------------------------

    def simple_reflection_matrix(self, i: int) -> tuple[tuple[int, ...], ...]:
        """Matrix of s_i on fundamental coordinates (columns act on weights)."""
        a = self.cartan
        n = self.rank
        return tuple(tuple(int(k == j) - a[k][i] * int(j == i) for j in range(n))
                     for k in range(n))

    def reflection_matrix(self, root_idx: int) -> tuple[tuple[int, ...], ...]:
        """Matrix on fundamental coordinates of the reflection in pos_roots[root_idx]."""
        alpha = self.pos_roots_fund[root_idx]
        cv = self.pos_coroots[root_idx]
        n = self.rank
        return tuple(tuple(int(k == j) - alpha[k] * cv[j] for j in range(n))
                     for k in range(n))

    def apply_matrix(self, mat, mu) -> Weight:
        return tuple(sum(row[j] * mu[j] for j in range(self.rank)) for row in mat)

    def reflect_weight(self, i: int, mu) -> Weight:
        """s_i(mu) for a weight in fundamental coordinates."""
        out = list(mu)
        c = mu[i]
        for k in range(self.rank):
            out[k] -= self.cartan[k][i] * c
        return tuple(out)

    def reflect_coweight(self, i: int, k):
        """s_i on the coweight side: k - <alpha_i, k> alpha_i^."""
        pair = sum(self.cartan[j][i] * k[j] for j in range(self.rank))
        out = list(k)
        out[i] -= pair
        return tuple(out)

    def is_dominant(self, mu) -> bool:
        return all(c >= 0 for c in mu)

    def dominantize(self, mu) -> Weight:
        """The dominant W-conjugate of a weight."""
        mu = tuple(mu)
        while True:
            for i in range(self.rank):
                if mu[i] < 0:
                    mu = self.reflect_weight(i, mu)
                    break
            else:
                return mu

    def dominantize_with_word(self, mu):
        """Dominant conjugate plus the word w (as reflection indices, applied
        left-to-right last) with w(mu) dominant."""
        mu = tuple(mu)
        word = []
        while True:
            for i in range(self.rank):
                if mu[i] < 0:
                    mu = self.reflect_weight(i, mu)
                    word.append(i)
                    break
            else:
                return mu, tuple(reversed(word))

    def is_positive_root_vec(self, fund_vec) -> bool:
        """Whether a root given in fundamental coordinates is positive."""
        return self.pairing(fund_vec, self.rho_check) > 0

    def dual_weight(self, mu) -> Weight:
        """mu* = -w0(mu - rho) + rho; V_{mu*} is the dual representation."""
        lam = tuple(m - 1 for m in mu)
        neg = tuple(-x for x in lam)
        return tuple(x + 1 for x in self.dominantize(neg))

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({
            "label": self.label,
            "rank": self.rank,
            "cartan": [list(r) for r in self.cartan],
            "positive_roots": [list(r) for r in self.pos_roots],
            "positive_coroots": [list(r) for r in self.pos_coroots],
            "rho_check_doubled": list(self.rho_check),
            "coxeter_number": self.coxeter_number,
            "center_exponent": self.center_exponent,
        }, indent=2)


def _cartan_from_diagram(label):
    rank, edges, lengths = _DIAGRAMS[label]
    a = [[2 * int(i == j) for j in range(rank)] for i in range(rank)]
    for i, j, aij, aji in edges:
        a[i - 1][j - 1] = aij
        a[j - 1][i - 1] = aji
    return tuple(tuple(row) for row in a), tuple(lengths)


def _generate_roots(cartan, rank):
    """Close the simple roots under simple reflections; root coordinates."""
    simples = [tuple(int(j == i) for j in range(rank)) for i in range(rank)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for c in frontier:
            for i in range(rank):
                pair = sum(cartan[i][j] * c[j] for j in range(rank))
                img = list(c)
                img[i] -= pair
                img = tuple(img)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    pos = [c for c in seen if all(x >= 0 for x in c)]
    pos.sort(key=lambda c: (sum(c), c))
    return tuple(pos)


@lru_cache(maxsize=None)
def build_datum(label: str) -> RootDatum:
    """Construct the full root datum for a supported label.

    All classical data (coroots, rho^, Coxeter number, center exponent,
    invariant form) are derived from the Cartan matrix; the construction is
    validated against classical invariants by the test suite rather than
    against transcribed tables.
    """
    key = normalize_label(label)
    cartan, lengths = _cartan_from_diagram(key)
    rank = len(lengths)
    pos_roots = _generate_roots(cartan, rank)

    # (alpha_i, alpha_j) with short roots of squared length 2: d_j * a[j][i]
    gram_root = [[lengths[j] * cartan[j][i] for j in range(rank)] for i in range(rank)]
    coroots = []
    for c in pos_roots:
        norm2 = sum(c[i] * c[j] * gram_root[i][j] for i in range(rank) for j in range(rank))
        d_root, rem = divmod(norm2, 2)
        assert rem == 0
        cv = []
        for j in range(rank):
            num = c[j] * lengths[j]
            q, r = divmod(num, d_root)
            assert r == 0, "coroot coordinates must be integral"
            cv.append(q)
        coroots.append(tuple(cv))
    pos_coroots = tuple(coroots)

    rho = tuple(1 for _ in range(rank))
    rho_check = tuple(sum(cv[j] for cv in pos_coroots) for j in range(rank))
    h = 1 + max(sum(cv) for cv in pos_coroots)
    assert 2 * len(pos_roots) == rank * h, "root count vs Coxeter number mismatch"

    cartan_inv = _mat_inverse(cartan)
    e = lcm(*[f.denominator for row in cartan_inv for f in row])

    # Gram matrix on fundamental coordinates, rescaled so long roots have q = 2.
    dmax = max(lengths)
    gram_fund = tuple(
        tuple(sum(cartan_inv[k][i] * cartan_inv[l][j] * Fraction(gram_root[k][l], dmax)
                  for k in range(rank) for l in range(rank))
              for j in range(rank))
        for i in range(rank))

    return RootDatum(
        label=key, rank=rank, cartan=cartan,
        pos_roots=pos_roots, pos_coroots=pos_coroots,
        rho=rho, rho_check=rho_check,
        center_exponent=e, coxeter_number=h,
        form=gram_fund, cartan_inv=cartan_inv,
        root_lengths=lengths,
    )


@lru_cache(maxsize=None)
def _pos_roots_fund(label):
    datum = build_datum(label)
    return tuple(datum.fund_of_root(c) for c in datum.pos_roots)
