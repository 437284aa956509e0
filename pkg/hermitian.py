"""
Hermitian lattices over the Gaussian (m=4) and Eisenstein (m=6) integers.

The form is h(x, y) = sum conj(x_p) G[p][q] y_q, so h(v, v) is rational.
A tree diagram I_n gives the lattice Z[zeta_m](I_n): diagonal m/2, and for
a directed edge (p, q) the entry 1 + zeta_4 (m=4) or zeta_6 - conj(zeta_6)
= sqrt(-3) (m=6), with the conjugate on (q, p).
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction

from events import log_debug, log_event
from numeric import (
    Q, Q_I, Q_OMEGA, ZETA4, ZETA6,
    FieldElem, Matrix,
    block_diagonal, conjugate, elem, is_integral, one, ring_divmod,
    ring_element, zero, herm_norm,
)

GAUSSIAN = "gaussian"
EISENSTEIN = "eisenstein"

RING_FIELD = {GAUSSIAN: Q_I, EISENSTEIN: Q_OMEGA}
RING_M = {GAUSSIAN: 4, EISENSTEIN: 6}
M_RING = {4: GAUSSIAN, 6: EISENSTEIN}


def _check_ring(ring):
    if ring not in RING_FIELD:
        raise ValueError(f"unknown ring: {ring!r} (expected gaussian or eisenstein)")
    return ring


# -------------------------------------------------
# Tree diagrams
# -------------------------------------------------
@dataclass(frozen=True)
class TreeGraph:
    n: int
    edges: tuple = ()

    def __post_init__(self):
        edges = []
        for i, e in enumerate(self.edges):
            if not isinstance(e, (list, tuple)):
                raise ValueError(f"edges[{i}]: expected a pair of node numbers, got {e!r}")
            edges.append(tuple(e))
        object.__setattr__(self, "edges", tuple(edges))
        self.validate()

    def validate(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"node count must be a nonnegative integer, got {self.n!r}")
        seen = set()
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, edge in enumerate(self.edges):
            if len(edge) != 2:
                raise ValueError(f"edges[{i}]: expected a pair, got {edge!r}")
            p, q = edge
            if any(isinstance(x, bool) or not isinstance(x, int) for x in edge):
                raise ValueError(f"edges[{i}]: node numbers must be integers, got {edge!r}")
            if not (1 <= p <= self.n and 1 <= q <= self.n):
                raise ValueError(f"edges[{i}]: node out of range 1..{self.n}: {edge!r}")
            if p == q:
                raise ValueError(f"edges[{i}]: loop at node {p}")
            key = frozenset((p, q))
            if key in seen:
                raise ValueError(f"edges[{i}]: multiple edge between {p} and {q}")
            seen.add(key)
            rp, rq = find(p), find(q)
            if rp == rq:
                raise ValueError(f"edges[{i}]: edge {edge!r} closes a cycle")
            parent[rp] = rq
        return True

    @property
    def components(self):
        return self.n - len(self.edges)

    @property
    def is_forest(self):
        """True when the diagram is disconnected (allowed, but flagged)."""
        return self.components > 1


def path_graph(n):
    """Type A_n."""
    return TreeGraph(n, tuple((i, i + 1) for i in range(1, n)))


def e_graph(n):
    """Type E_n (n = 6, 7, 8): a path of n-1 nodes, node n hung on node 3."""
    if n not in (6, 7, 8):
        raise ValueError(f"E_n is defined here for n = 6, 7, 8, got {n}")
    edges = [(i, i + 1) for i in range(1, n - 1)]
    edges.append((3, n))
    return TreeGraph(n, tuple(edges))


# -------------------------------------------------
# Lattices
# -------------------------------------------------
@dataclass(frozen=True)
class HermitianLattice:
    ring: str
    gram: Matrix
    basis: tuple = None  # coordinates in a parent lattice, when a sublattice
    name: str = ""

    def __post_init__(self):
        _check_ring(self.ring)
        if self.gram.tag != self.field:
            raise ValueError(f"{self.ring} lattice needs a {self.field} Gram matrix, got {self.gram.tag}")
        if not self.gram.is_hermitian():
            raise ValueError("Gram matrix is not conjugate-symmetric")
        for i, row in enumerate(self.gram.rows):
            for j, x in enumerate(row):
                if not is_integral(x):
                    raise ValueError(f"gram[{i}][{j}] = {x} is not in the ring of integers")

    @property
    def field(self):
        return RING_FIELD[self.ring]

    @property
    def m(self):
        return RING_M[self.ring]

    @property
    def rank(self):
        return self.gram.nrows

    def coerce(self, v):
        v = tuple(elem(x, self.field) for x in v)
        if len(v) != self.rank:
            raise ValueError(f"vector has {len(v)} coordinates, lattice rank is {self.rank}")
        for i, x in enumerate(v):
            if not is_integral(x):
                raise ValueError(f"coordinate {i} = {x} is not in the ring of integers")
        return v

    def h(self, x, y) -> FieldElem:
        x = [elem(a, self.field) for a in x]
        y = [elem(b, self.field) for b in y]
        acc = zero(self.field)
        for p, xp in enumerate(x):
            if xp.is_zero():
                continue
            cx = conjugate(xp)
            for q, yq in enumerate(y):
                g = self.gram[p, q]
                if not yq.is_zero() and not g.is_zero():
                    acc = acc + cx * g * yq
        return acc

    def norm(self, v) -> Fraction:
        value = self.h(v, v)
        if not value.is_rational():
            raise RuntimeError("h(v, v) is not rational")
        return value.re


@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int
    null: int
    method: str = "ldl"

    @property
    def rank(self):
        return self.positive + self.negative + self.null

    @property
    def profile(self):
        return tuple(sorted((self.positive, self.negative)))

    @property
    def convention(self):
        if self.positive == 1:
            return "(1,n)"
        if self.negative == 1:
            return "(n,1)"
        return "other"

    @property
    def ball_dimension(self):
        p, q = self.profile
        return q if p == 1 else None

    def __add__(self, other):
        return Signature(self.positive + other.positive, self.negative + other.negative, self.null + other.null, self.method)

    def as_tuple(self):
        return self.positive, self.negative, self.null


def lattice_from_tree(g: TreeGraph, m: int, name="") -> HermitianLattice:
    if m not in M_RING:
        raise ValueError(f"m must be 4 or 6, got {m!r}")
    g.validate()
    ring = M_RING[m]
    tag = RING_FIELD[ring]
    off = one(tag) + ZETA4 if m == 4 else ZETA6 - conjugate(ZETA6)
    rows = [[zero(tag)] * g.n for _ in range(g.n)]
    for i in range(g.n):
        rows[i][i] = FieldElem(tag, Fraction(m, 2))
    for p, q in g.edges:
        rows[p - 1][q - 1] = off
        rows[q - 1][p - 1] = conjugate(off)
    if g.is_forest:
        log_event("TREE_IS_FOREST", name=name, nodes=g.n, components=g.components)
    return HermitianLattice(ring, Matrix(rows, tag, g.n), name=name)


def rank_one(ring, value) -> HermitianLattice:
    """The lattice (value), e.g. (3) over the Eisenstein integers."""
    tag = RING_FIELD[_check_ring(ring)]
    return HermitianLattice(ring, Matrix([[value]], tag), name=f"({value})")


def hyperbolic_plane(ring, pairing=None) -> HermitianLattice:
    _check_ring(ring)
    tag = RING_FIELD[ring]
    if pairing is None:
        if ring != EISENSTEIN:
            raise ValueError("no standard hyperbolic plane over the Gaussian integers; pass pairing=")
        pairing = ZETA6 - conjugate(ZETA6)
    p = elem(pairing, tag)
    if p.is_zero() or not is_integral(p):
        raise ValueError(f"hyperbolic pairing must be a nonzero ring element, got {p}")
    gram = Matrix([[zero(tag), p], [conjugate(p), zero(tag)]], tag)
    return HermitianLattice(ring, gram, name="U")


def direct_sum(parts, ring=None) -> HermitianLattice:
    parts = list(parts)
    rings = {p.ring for p in parts}
    if len(rings) > 1:
        raise ValueError(f"direct sum of mixed rings: {sorted(rings)}")
    if parts:
        ring = parts[0].ring
    ring = _check_ring(ring or EISENSTEIN)
    tag = RING_FIELD[ring]
    name = " + ".join(p.name or f"rank{p.rank}" for p in parts)
    return HermitianLattice(ring, block_diagonal([p.gram for p in parts], tag), name=name)


def determinant(L: HermitianLattice) -> Fraction:
    d = L.gram.determinant()
    if not d.is_rational():
        raise RuntimeError("Hermitian determinant is not rational")
    return d.re


# -------------------------------------------------
# Signature
# -------------------------------------------------
def _hermitian_pivoting(rows):
    """Symmetric-pivoted LDL* inertia, or None on pivot breakdown."""
    a = [list(r) for r in rows]
    n = len(a)
    remaining = list(range(n))
    pos = neg = 0
    while remaining:
        piv = next((i for i in remaining if not a[i][i].is_zero()), None)
        if piv is None:
            if any(not a[i][j].is_zero() for i in remaining for j in remaining):
                return None
            break
        d = a[piv][piv]
        if d.re > 0:
            pos += 1
        else:
            neg += 1
        remaining.remove(piv)
        for i in remaining:
            if a[i][piv].is_zero():
                continue
            f = a[i][piv] / d
            for j in remaining:
                if not a[piv][j].is_zero():
                    a[i][j] = a[i][j] - f * a[piv][j]
    return pos, neg, n - pos - neg


def _symmetric_rational_inertia(b):
    """Inertia of a rational symmetric matrix, pairing zero pivots when needed."""
    a = [list(r) for r in b]
    n = len(a)
    remaining = list(range(n))
    pos = neg = 0
    while remaining:
        piv = next((i for i in remaining if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in remaining for j in remaining if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # e_i <- e_i + e_j gives diagonal 2*a[i][j] != 0
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        remaining.remove(piv)
        for i in remaining:
            if a[i][piv] == 0:
                continue
            f = a[i][piv] / d
            for j in remaining:
                a[i][j] -= f * a[piv][j]
    return pos, neg, n - pos - neg


def _real_doubling(gram: Matrix):
    """Re h on the Q-basis {e_p, s*e_p}: a 2n x 2n rational symmetric matrix."""
    tag = gram.tag
    n = gram.nrows
    units = (one(tag), FieldElem(tag, 0, 1))
    out = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for p in range(n):
        for q in range(n):
            g = gram[p, q]
            for alpha in range(2):
                for beta in range(2):
                    out[alpha * n + p][beta * n + q] = (conjugate(units[alpha]) * g * units[beta]).re
    return out


def inertia(gram: Matrix) -> Signature:
    if not gram.is_hermitian():
        raise ValueError("inertia needs a Hermitian matrix")
    if gram.tag == Q:
        return Signature(*_symmetric_rational_inertia([[x.re for x in r] for r in gram.rows]), method="ldl")
    counts = _hermitian_pivoting(gram.rows)
    if counts is not None:
        return Signature(*counts, method="ldl")
    pos, neg, null = _symmetric_rational_inertia(_real_doubling(gram))
    if pos % 2 or neg % 2 or null % 2:
        raise RuntimeError(f"real doubling gave odd inertia ({pos},{neg},{null})")
    log_debug("SIGNATURE_REAL_DOUBLING", rank=gram.nrows)
    return Signature(pos // 2, neg // 2, null // 2, method="real-doubling")


def signature(L: HermitianLattice) -> Signature:
    return inertia(L.gram)


# -------------------------------------------------
# Roots
# -------------------------------------------------
def is_root(L: HermitianLattice, v, norm=None) -> bool:
    v = L.coerce(v)
    target = Fraction(L.m, 2) if norm is None else Fraction(norm)
    if all(x.is_zero() for x in v):
        return False
    return L.norm(v) == target


def _box_coefficients(field, bound):
    out = []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if a == 0 and b == 0:
                continue
            out.append(ring_element(field, a, b))
    return out


def iter_roots(L: HermitianLattice, coeff_bound: int, max_support=None, norm=None):
    """
    Roots with every coordinate a + b*tau, |a|, |b| <= coeff_bound.
    Ordered by support size, then support positions, then coefficients
    (a, b) lexicographically. This is deterministic but not plain
    lexicographic order on whole coordinate vectors: a support-2 root never
    precedes a support-1 root.
    """
    if coeff_bound < 0:
        raise ValueError("coeff_bound must be >= 0")
    target = Fraction(L.m, 2) if norm is None else Fraction(norm)
    coeffs = _box_coefficients(L.field, coeff_bound)
    top = L.rank if max_support is None else min(max_support, L.rank)
    g = L.gram
    for size in range(1, top + 1):
        for support in itertools.combinations(range(L.rank), size):
            for values in itertools.product(coeffs, repeat=size):
                acc = zero(L.field)
                for i, p in enumerate(support):
                    cp = conjugate(values[i])
                    for j, q in enumerate(support):
                        if not g[p, q].is_zero():
                            acc = acc + cp * g[p, q] * values[j]
                if acc.re == target:
                    v = [zero(L.field)] * L.rank
                    for i, p in enumerate(support):
                        v[p] = values[i]
                    yield tuple(v)


def enumerate_roots(L: HermitianLattice, coeff_bound: int, max_support=None, norm=None):
    roots = list(iter_roots(L, coeff_bound, max_support=max_support, norm=norm))
    log_debug("ROOTS_ENUMERATED", lattice=L.name, bound=coeff_bound, count=len(roots))
    return roots


def perpendicular_roots(L: HermitianLattice, coeff_bound: int, max_support=None, norm=None):
    """First pair (r1, r2) of roots with h(r1, r2) = 0, in iter_roots order."""
    for r1 in iter_roots(L, coeff_bound, max_support=max_support, norm=norm):
        for r2 in iter_roots(L, coeff_bound, max_support=max_support, norm=norm):
            if r2 != r1 and L.h(r1, r2).is_zero():
                return r1, r2
    return None


# -------------------------------------------------
# Orthogonal complements and basis changes
# -------------------------------------------------
def _row_kernel_over_ring(r, field):
    """
    Basis over O_k of {w : sum r_q w_q = 0}: unimodular column reduction of
    the row r to (g, 0, ..., 0); the remaining columns of U span the kernel.
    """
    n = len(r)
    r = list(r)
    U = [[one(field) if i == j else zero(field) for j in range(n)] for i in range(n)]
    while True:
        nonzero = [k for k in range(n) if not r[k].is_zero()]
        if len(nonzero) <= 1:
            break
        j = min(nonzero, key=lambda k: (herm_norm(r[k]), k))
        for k in nonzero:
            if k == j:
                continue
            q, rem = ring_divmod(r[k], r[j])
            r[k] = rem
            for i in range(n):
                U[i][k] = U[i][k] - q * U[i][j]
    nonzero = [k for k in range(n) if not r[k].is_zero()]
    keep = [k for k in range(n) if k not in nonzero]
    return [tuple(U[i][k] for i in range(n)) for k in keep]


def orthogonal_complement(L: HermitianLattice, v) -> HermitianLattice:
    v = L.coerce(v)
    if all(x.is_zero() for x in v):
        raise ValueError("orthogonal complement of the zero vector")
    row = [sum((conjugate(v[p]) * L.gram[p, q] for p in range(L.rank)), zero(L.field)) for q in range(L.rank)]
    basis = _row_kernel_over_ring(row, L.field)
    if len(basis) == L.rank:
        log_event("COMPLEMENT_OF_RADICAL_VECTOR", lattice=L.name)
    for b in basis:
        if not L.h(v, b).is_zero():
            raise RuntimeError("complement basis vector is not orthogonal")
    gram = [[L.h(bi, bj) for bj in basis] for bi in basis]
    name = f"{L.name}-perp" if L.name else "perp"
    return HermitianLattice(L.ring, Matrix(gram, L.field, len(basis)), basis=tuple(basis), name=name)


def change_basis(L: HermitianLattice, U: Matrix) -> HermitianLattice:
    if U.tag != L.field or U.shape != (L.rank, L.rank):
        raise ValueError("basis change must be a square matrix over the lattice field")
    return HermitianLattice(L.ring, U.conjugate_transpose() @ L.gram @ U, name=L.name)


def random_unimodular(ring, n, rng, steps=None) -> Matrix:
    """Product of elementary O_k-matrices and unit scalings; det is a unit."""
    field = RING_FIELD[_check_ring(ring)]
    units = [ring_element(field, a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)]
    units = [u for u in units if herm_norm(u) == 1]
    m = [[one(field) if i == j else zero(field) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 3 * n):
        if n >= 2:
            i, j = rng.sample(range(n), 2)
            c = ring_element(field, rng.randint(-2, 2), rng.randint(-2, 2))
            m = [[m[r][k] + (c * m[j][k] if r == i else zero(field)) for k in range(n)] for r in range(n)]
        if n >= 1:
            i = rng.randrange(n)
            u = rng.choice(units)
            m[i] = [u * x for x in m[i]]
    return Matrix(m, field, n)
