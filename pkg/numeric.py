"""
Exact scalars and matrices over Q, Q(sqrt(-1)) and Q(sqrt(-3)).

A FieldElem is re + im*s with s = sqrt(-d); d = 1 for Q_i, d = 3 for
Q_omega. Rationals are fractions.Fraction throughout, so nothing ever
rounds. zeta_6 = (1 + s)/2 lives in Q_omega with half-integer coordinates.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

Q = "Q"
Q_I = "Q_i"
Q_OMEGA = "Q_omega"

FIELD_D = {Q: 0, Q_I: 1, Q_OMEGA: 3}


def as_rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rat(value)
    raise ValueError(f"not an exact rational: {value!r}")


def _check_tag(tag):
    if tag not in FIELD_D:
        raise ValueError(f"unknown field tag: {tag!r} (expected Q, Q_i or Q_omega)")
    return tag


_ZERO = Fraction(0)


def _raw(tag, re, im=_ZERO):
    """Trusted constructor for results of arithmetic on validated elements."""
    x = object.__new__(FieldElem)
    object.__setattr__(x, "tag", tag)
    object.__setattr__(x, "re", re)
    object.__setattr__(x, "im", im)
    return x


@dataclass(frozen=True)
class FieldElem:
    tag: str
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        _check_tag(self.tag)
        object.__setattr__(self, "re", as_rat(self.re))
        object.__setattr__(self, "im", as_rat(self.im))
        if self.tag == Q and self.im != 0:
            raise ValueError("elements of Q have no imaginary part")

    # -------------------------------------------------
    # coercion
    # -------------------------------------------------
    @property
    def d(self):
        return FIELD_D[self.tag]

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.tag != self.tag:
                raise ValueError(f"mixed-field arithmetic: {self.tag} with {other.tag}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return _raw(self.tag, Fraction(other))
        return None

    def lift(self, tag):
        """Explicitly move a rational element into another field."""
        if tag == self.tag:
            return self
        if self.im != 0:
            raise ValueError(f"cannot lift non-rational element of {self.tag} to {tag}")
        return FieldElem(tag, self.re)

    # -------------------------------------------------
    # arithmetic
    # -------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return _raw(self.tag, self.re + o.re, self.im + o.im if (self.im or o.im) else _ZERO)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.tag, -self.re, -self.im if self.im else _ZERO)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return _raw(self.tag, self.re - o.re, self.im - o.im if (self.im or o.im) else _ZERO)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not self.im and not o.im:
            return _raw(self.tag, self.re * o.re)
        d = self.d
        return _raw(
            self.tag,
            self.re * o.re - d * self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("division by zero field element")
            return _raw(self.tag, self.re / o.re, self.im / o.re if self.im else _ZERO)
        n = herm_norm(o)
        p = self * conjugate(o)
        return _raw(self.tag, p.re / n, p.im / n)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.tag == other.tag and self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.tag, self.re, self.im))

    def is_zero(self):
        return not self.re and not self.im

    def is_rational(self):
        return not self.im

    def __repr__(self):
        return f"FieldElem({format_elem(self)!r}, {self.tag})"

    def __str__(self):
        return format_elem(self)


def conjugate(x: FieldElem) -> FieldElem:
    return _raw(x.tag, x.re, -x.im if x.im else _ZERO)


def herm_norm(x: FieldElem) -> Fraction:
    return x.re * x.re + x.d * x.im * x.im


def elem(value, tag) -> FieldElem:
    """Coerce ints, Fractions, codec strings or FieldElems into field `tag`."""
    if isinstance(value, FieldElem):
        if value.tag != tag:
            raise ValueError(f"mixed-field arithmetic: {value.tag} with {tag}")
        return value
    if isinstance(value, str):
        return parse_elem(value, tag)
    return FieldElem(tag, as_rat(value))


def zero(tag) -> FieldElem:
    return FieldElem(tag, Fraction(0))


def one(tag) -> FieldElem:
    return FieldElem(tag, Fraction(1))


ZETA4 = FieldElem(Q_I, 0, 1)
ZETA6 = FieldElem(Q_OMEGA, Fraction(1, 2), Fraction(1, 2))
SQRT_M3 = FieldElem(Q_OMEGA, 0, 1)


# -------------------------------------------------
# Ring of integers O_k
# -------------------------------------------------
def ring_generator(tag) -> FieldElem:
    if tag == Q_I:
        return ZETA4
    if tag == Q_OMEGA:
        return ZETA6
    return zero(Q)


def is_integral(x: FieldElem) -> bool:
    if x.tag == Q:
        return x.re.denominator == 1
    if x.tag == Q_I:
        return x.re.denominator == 1 and x.im.denominator == 1
    a2, b2 = 2 * x.re, 2 * x.im
    if a2.denominator != 1 or b2.denominator != 1:
        return False
    return (a2.numerator - b2.numerator) % 2 == 0


def ring_element(tag, a, b=0) -> FieldElem:
    """a + b*tau with tau = i (Q_i) or zeta_6 (Q_omega)."""
    if tag == Q:
        if b != 0:
            raise ValueError("Z has no second generator")
        return FieldElem(Q, as_rat(a))
    return FieldElem(tag, as_rat(a)) + ring_generator(tag) * as_rat(b)


def ring_coordinates(x: FieldElem):
    """Inverse of ring_element: (a, b) with x = a + b*tau."""
    if x.tag == Q:
        return x.re, Fraction(0)
    if x.tag == Q_I:
        return x.re, x.im
    return x.re - x.im, 2 * x.im


def _round_half_up(q: Fraction) -> int:
    return math.floor(q + Fraction(1, 2))


def ring_divmod(a: FieldElem, b: FieldElem):
    """Euclidean division in O_k: a = q*b + r with herm_norm(r) < herm_norm(b)."""
    if b.is_zero():
        raise ZeroDivisionError("Euclidean division by zero")
    s, t = ring_coordinates(a / b)
    q = ring_element(a.tag, _round_half_up(s), _round_half_up(t) if a.tag != Q else 0)
    r = a - q * b
    if herm_norm(r) >= herm_norm(b):
        raise RuntimeError("Euclidean remainder did not shrink")
    return q, r


# -------------------------------------------------
# String codec: "num/den" and "a/b+c/d*s"
# -------------------------------------------------
def format_rat(x: Fraction) -> str:
    x = as_rat(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(text) -> Fraction:
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not an exact rational: {text!r}")
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty rational")
    try:
        if "." in s or "e" in s.lower():
            raise ValueError(s)
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"malformed rational: {text!r}")


def format_elem(x: FieldElem) -> str:
    if x.tag == Q:
        return format_rat(x.re)
    sign = "+" if x.im >= 0 else "-"
    return f"{format_rat(x.re)}{sign}{format_rat(abs(x.im))}*s"


def parse_elem(text, tag) -> FieldElem:
    _check_tag(tag)
    if isinstance(text, FieldElem):
        return elem(text, tag)
    if not isinstance(text, str):
        return FieldElem(tag, parse_rat(text))
    s = text.strip().replace(" ", "")
    if "s" not in s:
        return FieldElem(tag, parse_rat(s))
    if tag == Q:
        raise ValueError(f"imaginary part given for a rational field: {text!r}")
    if not s.endswith("s") or s.count("s") != 1:
        raise ValueError(f"malformed field element: {text!r}")
    split = max(s.rfind("+"), s.rfind("-"))
    real_part, imag_part = (s[:split], s[split:]) if split > 0 else ("", s)
    coeff = imag_part[:-1]
    if coeff.endswith("*"):
        coeff = coeff[:-1]
    if coeff in ("", "+"):
        im = Fraction(1)
    elif coeff == "-":
        im = Fraction(-1)
    else:
        im = parse_rat(coeff)
    re = parse_rat(real_part) if real_part else Fraction(0)
    return FieldElem(tag, re, im)


# -------------------------------------------------
# Matrices
# -------------------------------------------------
class Matrix:
    """Immutable dense matrix; every entry shares one field tag."""

    __slots__ = ("tag", "rows", "nrows", "ncols")

    def __init__(self, rows, tag, ncols=None):
        _check_tag(tag)
        converted = tuple(tuple(elem(x, tag) for x in row) for row in rows)
        widths = {len(r) for r in converted}
        if len(widths) > 1:
            raise ValueError("ragged matrix rows")
        if converted:
            ncols = widths.pop()
        elif ncols is None:
            ncols = 0
        self.tag = tag
        self.rows = converted
        self.nrows = len(converted)
        self.ncols = ncols

    @classmethod
    def identity(cls, n, tag):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], tag, ncols=n)

    @classmethod
    def zeros(cls, nrows, ncols, tag):
        return cls([[0] * ncols for _ in range(nrows)], tag, ncols=ncols)

    @classmethod
    def from_columns(cls, columns, tag, nrows):
        cols = [list(c) for c in columns]
        return cls([[c[i] for c in cols] for i in range(nrows)], tag, ncols=len(cols))

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.tag == other.tag and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.tag, self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(", ".join(format_elem(x) for x in r) for r in self.rows)
        return f"Matrix[{self.tag}]({body})"

    # -------------------------------------------------
    # algebra
    # -------------------------------------------------
    def _same(self, other):
        if other.tag != self.tag:
            raise ValueError(f"mixed-field arithmetic: {self.tag} with {other.tag}")
        if other.shape != self.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._same(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.tag, self.ncols)

    def __sub__(self, other):
        self._same(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.tag, self.ncols)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = elem(c, self.tag)
        return Matrix([[c * x for x in r] for r in self.rows], self.tag, self.ncols)

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.tag != self.tag:
            raise ValueError(f"mixed-field arithmetic: {self.tag} with {other.tag}")
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        out = []
        for r in self.rows:
            out.append([_dot(r, c, self.tag) for c in cols])
        return Matrix(out, self.tag, other.ncols)

    def apply(self, vec):
        vec = [elem(x, self.tag) for x in vec]
        if len(vec) != self.ncols:
            raise ValueError(f"vector of length {len(vec)} for {self.ncols} columns")
        return tuple(_dot(r, vec, self.tag) for r in self.rows)

    def transpose(self):
        return Matrix([list(self.column(j)) for j in range(self.ncols)], self.tag, self.nrows)

    def conjugate_transpose(self):
        return Matrix([[conjugate(x) for x in self.column(j)] for j in range(self.ncols)], self.tag, self.nrows)

    def is_square(self):
        return self.nrows == self.ncols

    def is_hermitian(self):
        return self.is_square() and self == self.conjugate_transpose()

    def is_zero(self):
        return all(x.is_zero() for r in self.rows for x in r)

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), zero(self.tag))

    def submatrix(self, row_idx, col_idx):
        return Matrix([[self.rows[i][j] for j in col_idx] for i in row_idx], self.tag, len(col_idx))

    # -------------------------------------------------
    # elimination
    # -------------------------------------------------
    def rref(self):
        """Reduced row echelon form and pivot columns."""
        m = [list(r) for r in self.rows]
        pivots = []
        row = 0
        for col in range(self.ncols):
            pivot = next((i for i in range(row, self.nrows) if not m[i][col].is_zero()), None)
            if pivot is None:
                continue
            m[row], m[pivot] = m[pivot], m[row]
            p = m[row][col]
            m[row] = [x / p for x in m[row]]
            for i in range(self.nrows):
                if i != row and not m[i][col].is_zero():
                    f = m[i][col]
                    m[i] = [a - f * b for a, b in zip(m[i], m[row])]
            pivots.append(col)
            row += 1
            if row == self.nrows:
                break
        return Matrix(m, self.tag, self.ncols), tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def determinant(self):
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.rows]
        n = self.nrows
        det = one(self.tag)
        for col in range(n):
            pivot = next((i for i in range(col, n) if not m[i][col].is_zero()), None)
            if pivot is None:
                return zero(self.tag)
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = -det
            p = m[col][col]
            det = det * p
            for i in range(col + 1, n):
                if not m[i][col].is_zero():
                    f = m[i][col] / p
                    m[i] = [a - f * b for a, b in zip(m[i], m[col])]
        return det

    def kernel_basis(self):
        reduced, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for f in free:
            v = [zero(self.tag)] * self.ncols
            v[f] = one(self.tag)
            for i, p in enumerate(pivots):
                v[p] = -reduced[i, f]
            basis.append(tuple(v))
        return basis

    def solve(self, vec):
        """Some x with M x = vec, or None when the system is inconsistent."""
        vec = [elem(x, self.tag) for x in vec]
        if len(vec) != self.nrows:
            raise ValueError(f"right-hand side of length {len(vec)} for {self.nrows} rows")
        augmented = Matrix([list(r) + [b] for r, b in zip(self.rows, vec)], self.tag, self.ncols + 1)
        reduced, pivots = augmented.rref()
        if self.ncols in pivots:
            return None
        x = [zero(self.tag)] * self.ncols
        for i, p in enumerate(pivots):
            x[p] = reduced[i, self.ncols]
        return tuple(x)

    def inverse(self):
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        augmented = Matrix(
            [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.rows)],
            self.tag, 2 * n,
        )
        reduced, pivots = augmented.rref()
        if tuple(pivots[:n]) != tuple(range(n)):
            raise ValueError("matrix is not invertible")
        return Matrix([reduced.rows[i][n:] for i in range(n)], self.tag, n)

    def row_space_contains(self, vec):
        vec = [elem(x, self.tag) for x in vec]
        if self.nrows == 0:
            return all(x.is_zero() for x in vec)
        stacked = Matrix(list(self.rows) + [vec], self.tag, self.ncols)
        return stacked.rank() == self.rank()


def _dot(r, c, tag):
    acc = zero(tag)
    for a, b in zip(r, c):
        if not a.is_zero() and not b.is_zero():
            acc = acc + a * b
    return acc


def kernel_basis(M: Matrix):
    """Exact basis of the right kernel of M; len = cols - rank."""
    basis = M.kernel_basis()
    for v in basis:
        if any(not x.is_zero() for x in M.apply(v)):
            raise RuntimeError("kernel vector not annihilated")
    return basis


def block_diagonal(blocks, tag):
    n = sum(b.nrows for b in blocks)
    out = [[zero(tag)] * n for _ in range(n)]
    offset = 0
    for b in blocks:
        if b.tag != tag:
            raise ValueError(f"mixed-field arithmetic: {b.tag} with {tag}")
        for i in range(b.nrows):
            for j in range(b.ncols):
                out[offset + i][offset + j] = b[i, j]
        offset += b.nrows
    return Matrix(out, tag, n)
