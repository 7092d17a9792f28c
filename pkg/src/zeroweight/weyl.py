"""Weyl group elements, conjugacy classes, and lattice-coset combinatorics.

Elements act on fundamental-weight coordinates through integer matrices.  A
word (a, b, c) denotes s_a s_b s_c acting as s_a(s_b(s_c(mu))), i.e. the
matrix product S_a S_b S_c.  Groups up to W(E6), order 51840, are enumerated
in full; the enumeration, generator multiplication tables and inverse table
are cached per group.

The quotient P/mQ is handled through canonical keys: root coordinates scaled
by the center exponent e (making them integral on all of P) and reduced
componentwise mod e*m.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ZeroWeightError
from .lattice import RootDatum, Weight, build_datum


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class WeylElement:
    label: str
    matrix: tuple[tuple[int, ...], ...]
    word: tuple[int, ...] | None = None

    @property
    def datum(self) -> RootDatum:
        return build_datum(self.label)

    @staticmethod
    def identity(datum: RootDatum) -> "WeylElement":
        n = datum.rank
        return WeylElement(datum.label,
                           tuple(tuple(int(i == j) for j in range(n)) for i in range(n)),
                           ())

    @staticmethod
    def from_word(datum: RootDatum, word) -> "WeylElement":
        w = WeylElement.identity(datum)
        for i in word:
            if not 0 <= i < datum.rank:
                raise ZeroWeightError(f"reflection index {i} out of range")
        mat = w.matrix
        for i in word:
            mat = _matmul(mat, datum.simple_reflection_matrix(i))
        return WeylElement(datum.label, mat, tuple(word))

    @staticmethod
    def reflection(datum: RootDatum, root_idx: int) -> "WeylElement":
        return WeylElement(datum.label, datum.reflection_matrix(root_idx), None)

    def apply(self, mu) -> Weight:
        return self.datum.apply_matrix(self.matrix, mu)

    def apply_coweight(self, k):
        """Action on the coweight side: transpose-inverse on coroot coordinates."""
        inv = self.inverse().matrix
        n = len(inv)
        return tuple(sum(inv[i][j] * k[i] for i in range(n)) for j in range(n))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(self.label, _matmul(self.matrix, other.matrix), word)

    def inverse(self) -> "WeylElement":
        word = tuple(reversed(self.word)) if self.word is not None else None
        return WeylElement(self.label, _int_inverse(self.matrix), word)

    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == int(i == j)
                   for i in range(len(self.matrix)) for j in range(len(self.matrix)))

    def sign(self) -> int:
        if self.word is not None:
            return -1 if len(self.word) % 2 else 1
        return _int_det(self.matrix)

    def order(self) -> int:
        m = self.matrix
        n = 1
        cur = m
        ident = WeylElement.identity(self.datum).matrix
        while cur != ident:
            cur = _matmul(cur, m)
            n += 1
            assert n <= 60, "order runaway; not a Weyl matrix?"
        return n

    def power(self, k: int) -> "WeylElement":
        out = WeylElement.identity(self.datum)
        base = self
        if k < 0:
            base, k = self.inverse(), -k
        for _ in range(k):
            out = out * base
        return out


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def _int_det(mat) -> int:
    n = len(mat)
    m = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    assert det.denominator == 1
    return int(det)


def _int_inverse(mat):
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
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
    out = []
    for row in aug:
        vals = row[n:]
        assert all(v.denominator == 1 for v in vals)
        out.append(tuple(int(v) for v in vals))
    return tuple(out)


def fixed_space_rank(w: WeylElement) -> int:
    """Dimension of ker(w - 1), i.e. d(w)."""
    n = len(w.matrix)
    m = [[Fraction(w.matrix[i][j] - int(i == j)) for j in range(n)] for i in range(n)]
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, n) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        for r in range(n):
            if r != rank and m[r][col] != 0:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return n - rank


# ---------------------------------------------------------------------------
# full-group enumeration (cached per label)


class _GroupStore:
    """Enumerated Weyl group: matrices, words, index maps, generator tables."""

    def __init__(self, datum: RootDatum):
        self.datum = datum
        n = datum.rank
        gens = [np.array(datum.simple_reflection_matrix(i), dtype=np.int64)
                for i in range(n)]
        ident = np.eye(n, dtype=np.int64)
        mats = [ident]
        words = [()]
        index = {ident.tobytes(): 0}
        frontier = [0]
        while frontier:
            fr = np.stack([mats[g] for g in frontier])
            nxt = []
            for i in range(n):
                prods = fr @ gens[i]
                for pos, g in enumerate(frontier):
                    key = prods[pos].tobytes()
                    if key not in index:
                        index[key] = len(mats)
                        mats.append(prods[pos])
                        words.append(words[g] + (i,))
                        nxt.append(index[key])
            frontier = nxt
        self.mats = np.stack(mats)
        self.words = words
        self.index = index
        self.size = len(mats)
        self.signs = np.array([-1 if len(w) % 2 else 1 for w in words], dtype=np.int64)
        self._right = None
        self._left = None
        self._inv = None

    def idx_of(self, mat) -> int:
        arr = np.array(mat, dtype=np.int64)
        return self.index[arr.tobytes()]

    def element(self, g: int) -> WeylElement:
        return WeylElement(self.datum.label,
                           tuple(tuple(int(x) for x in row) for row in self.mats[g]),
                           self.words[g])

    @property
    def right_tables(self):
        if self._right is None:
            self._right = self._gen_tables(right=True)
        return self._right

    @property
    def left_tables(self):
        if self._left is None:
            self._left = self._gen_tables(right=False)
        return self._left

    def _gen_tables(self, right: bool):
        n = self.datum.rank
        out = []
        for i in range(n):
            gen = np.array(self.datum.simple_reflection_matrix(i), dtype=np.int64)
            prods = self.mats @ gen if right else np.einsum("ij,njk->nik", gen, self.mats)
            table = np.empty(self.size, dtype=np.int64)
            for g in range(self.size):
                table[g] = self.index[prods[g].tobytes()]
            out.append(table)
        return out

    @property
    def inv_table(self):
        if self._inv is None:
            right = self.right_tables
            inv = np.empty(self.size, dtype=np.int64)
            for g, word in enumerate(self.words):
                cur = 0
                for i in reversed(word):
                    cur = right[i][cur]
                inv[g] = cur
            self._inv = inv
        return self._inv


@lru_cache(maxsize=None)
def group_store(label: str) -> _GroupStore:
    return _GroupStore(build_datum(label))


def group_order(datum: RootDatum) -> int:
    return group_store(datum.label).size


def longest_element(datum: RootDatum) -> WeylElement:
    neg_rho = tuple(-x for x in datum.rho)
    _, word = datum.dominantize_with_word(neg_rho)
    return WeylElement.from_word(datum, word)


def coxeter_element(datum: RootDatum) -> WeylElement:
    return WeylElement.from_word(datum, tuple(range(datum.rank)))


# ---------------------------------------------------------------------------
# conjugacy classes


@dataclass(frozen=True)
class ConjClass:
    name: str
    rep: WeylElement
    size: int
    aliases: tuple[str, ...] = ()


@lru_cache(maxsize=None)
def conjugacy_classes(label: str) -> tuple[ConjClass, ...]:
    """All conjugacy classes, smallest-length representatives, named.

    Naming: "1", "cox", distinct powers "cox^k", "w0" for the class of the
    longest element, "refl:i" for simple-reflection classes; type A classes
    additionally carry cycle-type names like "[211]".
    """
    store = group_store(label)
    datum = store.datum
    left, right = store.left_tables, store.right_tables
    n = datum.rank
    class_of = np.full(store.size, -1, dtype=np.int64)
    classes = []
    for g in range(store.size):
        if class_of[g] >= 0:
            continue
        cid = len(classes)
        orbit = [g]
        class_of[g] = cid
        queue = [g]
        while queue:
            x = queue.pop()
            for i in range(n):
                y = int(left[i][right[i][x]])      # s_i x s_i
                if class_of[y] < 0:
                    class_of[y] = cid
                    orbit.append(y)
                    queue.append(y)
        rep = min(orbit, key=lambda e: (len(store.words[e]), store.words[e]))
        classes.append((rep, len(orbit)))

    # deterministic order: by length of representative word, then word
    order_ids = sorted(range(len(classes)),
                       key=lambda c: (len(store.words[classes[c][0]]), store.words[classes[c][0]]))
    aliases: dict[int, list[str]] = {c: [] for c in range(len(classes))}

    def cid_of_element(w: WeylElement) -> int:
        return int(class_of[store.idx_of(w.matrix)])

    aliases[cid_of_element(WeylElement.identity(datum))].append("1")
    cox = coxeter_element(datum)
    h = cox.order()
    aliases[cid_of_element(cox)].append("cox")
    for k in range(2, h):
        cid = cid_of_element(cox.power(k))
        if not aliases[cid]:
            aliases[cid].append(f"cox^{k}")
    w0cid = cid_of_element(longest_element(datum))
    aliases[w0cid].append("w0")
    for i in range(n):
        cid = cid_of_element(WeylElement.from_word(datum, (i,)))
        aliases[cid].append(f"refl:{i + 1}")
    if n == 2:
        aliases[cid_of_element(WeylElement.from_word(datum, (0,)))].append("r_alpha")
        aliases[cid_of_element(WeylElement.from_word(datum, (1,)))].append("r_beta")
    if label.startswith("A"):
        for cid in range(len(classes)):
            rep = store.element(classes[cid][0])
            aliases[cid].append("[" + "".join(str(p) for p in _cycle_type(datum, rep)) + "]")

    out = []
    for cid in order_ids:
        rep_idx, size = classes[cid]
        names = aliases[cid]
        primary = names[0] if names else f"c{cid}"
        out.append(ConjClass(primary, store.element(rep_idx), size, tuple(names)))
    return tuple(out)


def _cycle_type(datum: RootDatum, w: WeylElement):
    """Cycle type of a type-A element on the standard-representation weights."""
    pts = {datum.rho: None}
    orbit = []
    seen = set()
    start = tuple(int(i == 0) for i in range(datum.rank))   # omega_1
    queue = [start]
    seen.add(start)
    while queue:
        lam = queue.pop()
        orbit.append(lam)
        for i in range(datum.rank):
            img = datum.reflect_weight(i, lam)
            if img not in seen:
                seen.add(img)
                queue.append(img)
    pos = {lam: i for i, lam in enumerate(orbit)}
    perm = [pos[w.apply(lam)] for lam in orbit]
    lengths = []
    visited = [False] * len(perm)
    for i in range(len(perm)):
        if visited[i]:
            continue
        ln, j = 0, i
        while not visited[j]:
            visited[j] = True
            j = perm[j]
            ln += 1
        lengths.append(ln)
    return sorted(lengths, reverse=True)


def class_by_name(label: str, name: str) -> ConjClass:
    for cls in conjugacy_classes(label):
        if name == cls.name or name in cls.aliases:
            return cls
    known = sorted({a for cls in conjugacy_classes(label) for a in cls.aliases})
    raise ZeroWeightError(f"unknown class {name!r} for {label}; known: {known}")


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassInfo:
    order: int
    d: int
    elliptic: bool
    regular: bool
    parabolic_support: tuple[int, ...]
    regular_in_closure: bool


def _acts_freely(datum: RootDatum, w: WeylElement, root_indices) -> bool:
    """Whether <w> acts freely on the listed roots (both signs implied);
    every orbit must have size exactly ord(w)."""
    m = w.order()
    for i in root_indices:
        lam = datum.pos_roots_fund[i]
        img, size = lam, 0
        while True:
            img = w.apply(img)
            size += 1
            if img == lam:
                break
        if size != m:
            return False
    return True


def classify(w: WeylElement) -> ClassInfo:
    """Order, fixed-space dimension, ellipticity, Springer regularity, and the
    parabolic-closure data of a Weyl element.

    Regularity is tested by the definition: the cyclic group <w> must permute
    the roots freely, checked exhaustively.
    """
    datum = w.datum
    m = w.order()
    d = fixed_space_rank(w)
    elliptic = d == 0
    regular = _acts_freely(datum, w, range(len(datum.pos_roots)))
    w_norm, _, J = normalize_to_parabolic(w)
    reg_closure = is_regular_in_parabolic(w_norm, J)
    return ClassInfo(order=m, d=d, elliptic=elliptic, regular=regular,
                     parabolic_support=J, regular_in_closure=reg_closure)


def diagram_components(datum: RootDatum, J) -> tuple[tuple[int, ...], ...]:
    """Connected components of the subdiagram on the node subset J."""
    J = sorted(J)
    seen = set()
    comps = []
    for start in J:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = [start]
        while queue:
            x = queue.pop()
            for y in J:
                if y not in seen and datum.cartan[x][y] != 0:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def component_order(datum: RootDatum, w: WeylElement, comp) -> int:
    """Order of w restricted to the span of one diagram component it preserves."""
    probe = [datum.fund_of_root(tuple(int(j == i) for j in range(datum.rank)))
             for i in comp]
    m = 1
    imgs = [w.apply(v) for v in probe]
    while imgs != probe:
        imgs = [w.apply(v) for v in imgs]
        m += 1
        assert m <= 60
    return m


def subsystem_root_indices(datum: RootDatum, J) -> tuple[int, ...]:
    """Indices of the positive roots supported on the simple-root subset J."""
    Jset = set(J)
    return tuple(i for i, c in enumerate(datum.pos_roots)
                 if all(j in Jset for j, x in enumerate(c) if x))


def is_regular_in_parabolic(w_norm: WeylElement, J) -> bool:
    """Whether the elliptic part is Springer-regular in W_J, componentwise."""
    datum = w_norm.datum
    for comp in diagram_components(datum, J):
        comp_roots = subsystem_root_indices(datum, comp)
        mc = component_order(datum, w_norm, comp)
        roots = [datum.pos_roots_fund[i] for i in comp_roots]
        for lam in roots:
            img, size = lam, 0
            while True:
                img = w_norm.apply(img)
                size += 1
                if img == lam:
                    break
            if size != mc:
                return False
    return True


# ---------------------------------------------------------------------------
# integer kernels and parabolic normalization


def integer_kernel_basis(rows):
    """Z-basis of the integer kernel {x : A x = 0} of an integer matrix.

    The kernel of an integer matrix is automatically saturated, so this also
    computes the saturation of any rational kernel.  Column-reduction HNF.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    a = [list(r) for r in rows]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def col_op(c1, c2, f):
        for r in range(nrows):
            a[r][c2] += f * a[r][c1]
        for r in range(ncols):
            u[r][c2] += f * u[r][c1]

    def col_swap(c1, c2):
        for r in range(nrows):
            a[r][c1], a[r][c2] = a[r][c2], a[r][c1]
        for r in range(ncols):
            u[r][c1], u[r][c2] = u[r][c2], u[r][c1]

    row = 0
    col = 0
    while row < nrows and col < ncols:
        piv = next((c for c in range(col, ncols) if a[row][c] != 0), None)
        if piv is None:
            row += 1
            continue
        col_swap(col, piv)
        # euclidean reduction across remaining columns
        while True:
            done = True
            for c in range(col + 1, ncols):
                if a[row][c] != 0:
                    q = a[row][c] // a[row][col]
                    col_op(col, c, -q)
                    if a[row][c] != 0:
                        col_swap(col, c)
                        done = False
            if done:
                break
        row += 1
        col += 1
    kernel = []
    for c in range(ncols):
        if all(a[r][c] == 0 for r in range(nrows)):
            kernel.append(tuple(u[r][c] for r in range(ncols)))
    return kernel


def fixed_coweight_basis(w: WeylElement):
    """Z-basis of the saturated fixed lattice of w in the coroot lattice."""
    n = len(w.matrix)
    mt_minus_1 = [[w.matrix[j][i] - int(i == j) for j in range(n)] for i in range(n)]
    return integer_kernel_basis(mt_minus_1)


def normalize_to_parabolic(w: WeylElement):
    """Conjugate w so its fixed space is a face of the dominant cochamber.

    Returns (w', u, J) with w' = u w u^{-1}, J the simple roots vanishing on
    the face, |J| = rank - d(w), and w' elliptic inside the standard
    parabolic W_J.
    """
    datum = w.datum
    n = datum.rank
    basis = fixed_coweight_basis(w)
    d = len(basis)
    rng = random.Random(20260810)
    for attempt in range(64):
        if attempt == 0:
            coeffs = [1007 ** i for i in range(d)]
        else:
            coeffs = [rng.randint(1, 10 ** 6) for _ in range(d)]
        y = tuple(sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(n))
        y_dom, word = _dominantize_coweight(datum, y)
        J = tuple(i for i in range(n)
                  if sum(datum.cartan[k][i] * y_dom[k] for k in range(n)) == 0)
        if len(J) == n - d:
            u = WeylElement.from_word(datum, word)
            w_norm = u * w * u.inverse()
            assert fixed_space_rank(w_norm) == d
            return w_norm, u, J
    raise ZeroWeightError("could not find a generic fixed coweight")


def _dominantize_coweight(datum: RootDatum, y):
    """Make a coweight dominant; the word returned maps the input to the output."""
    n = datum.rank
    y = tuple(y)
    rev = []
    while True:
        for i in range(n):
            pair = sum(datum.cartan[k][i] * y[k] for k in range(n))
            if pair < 0:
                y = datum.reflect_coweight(i, y)
                rev.append(i)
                break
        else:
            return y, tuple(reversed(rev))


# ---------------------------------------------------------------------------
# P/mQ cosets


@dataclass(frozen=True)
class CosetClass:
    """A coset of mQ in P, keyed by e*root-coordinates reduced mod e*m."""

    label: str
    m: int
    key: tuple[int, ...]
    rep: Weight

    @staticmethod
    def of(datum: RootDatum, mu, m: int) -> "CosetClass":
        return CosetClass(datum.label, m, _coset_key(datum, mu, m), tuple(mu))


def _coset_key(datum: RootDatum, mu, m: int):
    e = datum.center_exponent
    rc = datum.root_coords(mu)
    scaled = []
    for f in rc:
        v = f * e
        assert v.denominator == 1
        scaled.append(int(v) % (e * m))
    return tuple(scaled)


def _reflect_key(datum: RootDatum, key, i: int, mod: int):
    pair = sum(datum.cartan[i][j] * key[j] for j in range(datum.rank))
    out = list(key)
    out[i] = (out[i] - pair) % mod
    return tuple(out)


def coroot_indices_divisible(datum: RootDatum, mu, m: int):
    """Indices of positive coroots with <mu, coroot> divisible by m."""
    return tuple(i for i, cv in enumerate(datum.pos_coroots)
                 if datum.pairing(mu, cv) % m == 0)


def principal_search(datum: RootDatum, mu, m: int, gen_order=None):
    """Search the W-orbit of mu + mQ for the coset rho + mQ.

    Returns the canonical v with v(mu) in rho + mQ and v^{-1} mapping the
    m-divisible positive coroots into positive coroots (this makes the sign
    and all monomial factors well defined), or None when the orbit misses
    rho + mQ.  The returned value is independent of the BFS generator order.
    """
    mod = datum.center_exponent * m
    target = _coset_key(datum, datum.rho, m)
    start = _coset_key(datum, mu, m)
    gens = tuple(gen_order) if gen_order is not None else tuple(range(datum.rank))
    parents: dict[tuple, tuple | None] = {start: None}
    if start != target:
        frontier = [start]
        found = False
        while frontier and not found:
            nxt = []
            for node in frontier:
                for i in gens:
                    child = _reflect_key(datum, node, i, mod)
                    if child not in parents:
                        parents[child] = (node, i)
                        if child == target:
                            found = True
                            break
                        nxt.append(child)
                if found:
                    break
            frontier = nxt
        if not found:
            return None
    # reconstruct v = s_{i_k} ... s_{i_1} along the path
    word = []
    node = target
    while parents[node] is not None:
        node, i = parents[node]
        word.append(i)
    v = WeylElement.from_word(datum, tuple(word))
    return _canonicalize_principal(datum, v, m)


def _canonicalize_principal(datum: RootDatum, v: WeylElement, m: int):
    """Left-correct v by the stabilizer so v rho is dominant for the
    subsystem of m-divisible coroots; then v^{-1} R_m+ lies in R+."""
    div = [i for i in range(len(datum.pos_coroots))
           if sum(datum.pos_coroots[i]) % m == 0]
    vrho = v.apply(datum.rho)
    mat = v.matrix
    parity = 0 if v.word is None else len(v.word)
    word_known = v.word is not None
    while True:
        for idx in div:
            p = datum.pairing(vrho, datum.pos_coroots[idx])
            assert p != 0
            if p < 0:
                refl = datum.reflection_matrix(idx)
                mat = _matmul(refl, mat)
                vrho = datum.apply_matrix(refl, vrho)
                parity += 1
                break
        else:
            break
    word = None
    out = WeylElement(datum.label, mat, word)
    if word_known:
        # parity is still exact: each reflection has sign -1
        expected = -1 if parity % 2 else 1
        assert out.sign() == expected
    return out


def stabilizer_generators(datum: RootDatum, y: CosetClass):
    """Reflections r_alpha with <mu, alpha^> divisible by m; by the stabilizer
    lemma these generate the full stabilizer of the coset in P/mQ."""
    out = []
    for i in coroot_indices_divisible(datum, y.rep, y.m):
        out.append(WeylElement.reflection(datum, i))
    return out


def orbit_size_in_PmQ(datum: RootDatum, mu, m: int) -> int:
    mod = datum.center_exponent * m
    start = _coset_key(datum, mu, m)
    seen = {start}
    queue = [start]
    while queue:
        node = queue.pop()
        for i in range(datum.rank):
            child = _reflect_key(datum, node, i, mod)
            if child not in seen:
                seen.add(child)
                queue.append(child)
    return len(seen)


def subgroup_order(datum: RootDatum, generators) -> int:
    """Order of the subgroup generated by the given elements (small cases)."""
    store = group_store(datum.label)
    gen_mats = [np.array(g.matrix, dtype=np.int64) for g in generators]
    mats = {0: np.eye(datum.rank, dtype=np.int64)}
    queue = [0]
    while queue:
        g = queue.pop()
        for gm in gen_mats:
            prod = mats[g] @ gm
            idx = store.index[prod.tobytes()]
            if idx not in mats:
                mats[idx] = prod
                queue.append(idx)
    return len(mats)


# ---------------------------------------------------------------------------
# minimal coset representatives W^{tS}


def elliptic_component_orders(w_norm: WeylElement, J):
    """Orders of w on each component of J, or None when some component
    restriction fails Springer regularity (no canonical torsion point then)."""
    datum = w_norm.datum
    out = []
    for comp in diagram_components(datum, J):
        mc = component_order(datum, w_norm, comp)
        comp_roots = subsystem_root_indices(datum, comp)
        for i in comp_roots:
            lam = datum.pos_roots_fund[i]
            img, size = lam, 0
            while True:
                img = w_norm.apply(img)
                size += 1
                if img == lam:
                    break
            if size != mc:
                return None
        out.append((comp, mc))
    return out


def coset_reps_WtS(datum: RootDatum, r_ts_plus_fund):
    """All v in W with v^{-1} R_tS+ inside R+, each as (element, sign).

    Enumerates the full group (fine through E6) and filters; the condition is
    tested on u = v^{-1} to stay inside the stored matrices, then inverted
    through the cached inverse table.
    """
    store = group_store(datum.label)
    roots = list(r_ts_plus_fund)
    if not roots:
        for g in range(store.size):
            yield store.element(g), int(store.signs[g])
        return
    rvecs = np.array(roots, dtype=np.int64)            # (k, r)
    rho_check = np.array(datum.rho_check, dtype=np.int64)
    images = np.einsum("nij,kj->nki", store.mats, rvecs)
    heights = images @ rho_check                        # (N, k)
    mask = (heights > 0).all(axis=1)
    inv = store.inv_table
    for u in np.nonzero(mask)[0]:
        v = int(inv[u])
        yield store.element(v), int(store.signs[v])
