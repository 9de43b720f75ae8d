"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`; matrices are small (at most a few
hundred cells in practice) so everything is a plain list-of-rows.
"""

from fractions import Fraction

Rational = Fraction


def rat(x):
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rat_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class RatMatrix:
    """Immutable rows x cols matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data, cols=None):
        data = tuple(tuple(rat(x) for x in row) for row in data)
        if cols is None:
            if not data:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(data[0])
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        self.rows = len(data)
        self.cols = cols
        self._data = data

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n):
        return cls([[int(r == c) for c in range(n)] for r in range(n)], n)

    @classmethod
    def from_columns(cls, columns, rows):
        columns = list(columns)
        return cls([[col[r] for col in columns] for r in range(rows)], len(columns))

    def __getitem__(self, rc):
        r, c = rc
        return self._data[r][c]

    def row(self, r):
        return self._data[r]

    def column(self, c):
        return tuple(row[c] for row in self._data)

    def tolist(self):
        return [list(row) for row in self._data]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self._data)
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"

    def transpose(self):
        return RatMatrix([self.column(c) for c in range(self.cols)], self.rows)

    def __add__(self, other):
        _same_shape(self, other)
        return RatMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._data, other._data)],
            self.cols,
        )

    def __sub__(self, other):
        _same_shape(self, other)
        return RatMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._data, other._data)],
            self.cols,
        )

    def __neg__(self):
        return RatMatrix([[-a for a in row] for row in self._data], self.cols)

    def scale(self, c):
        c = rat(c)
        return RatMatrix([[c * a for a in row] for row in self._data], self.cols)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.column(c) for c in range(other.cols)]
        out = []
        for row in self._data:
            out.append([sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in cols])
        return RatMatrix(out, other.cols)

    def apply(self, vec):
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(row, vec) if a and b), Fraction(0)) for row in self._data)

    def is_zero(self):
        return all(not x for row in self._data for x in row)

    def rank(self):
        return len(rref(self)[1])


def _same_shape(a, b):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def rref(m):
    """Reduced row-echelon form of ``m`` and the list of pivot columns."""
    rows = [list(r) for r in m.tolist()]
    pivots = []
    r = 0
    for c in range(m.cols):
        if r == len(rows):
            break
        piv = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
    return RatMatrix(rows, m.cols), pivots


def nullspace_basis(m):
    """Basis of {v : m v = 0}, one vector per free column."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r, f]
        basis.append(tuple(v))
    return basis


def row_space_basis(vectors, length):
    vectors = list(vectors)
    if not vectors:
        return []
    red, pivots = rref(RatMatrix(vectors, length))
    return [red.row(r) for r in range(len(pivots))]


def rank_of(vectors, length):
    return len(row_space_basis(vectors, length))


def span_equal(a, b):
    """True iff the rational spans of the two vector lists coincide."""
    a = [tuple(rat(x) for x in v) for v in a]
    b = [tuple(rat(x) for x in v) for v in b]
    lengths = {len(v) for v in a + b}
    if len(lengths) > 1:
        raise ValueError("vectors of different lengths")
    if not lengths:
        return True
    n = lengths.pop()
    ra = rank_of(a, n)
    return ra == rank_of(b, n) == rank_of(a + b, n)


def in_span(v, vectors):
    v = tuple(rat(x) for x in v)
    vectors = list(vectors)
    return rank_of(vectors + [v], len(v)) == rank_of(vectors, len(v))


def solve(m, b):
    """One solution x of m x = b, or None when the system is inconsistent."""
    aug = RatMatrix([list(m.row(r)) + [rat(b[r])] for r in range(m.rows)], m.cols + 1)
    red, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r, m.cols]
    return tuple(x)


def inverse(m):
    if m.rows != m.cols:
        raise ValueError("not square")
    n = m.rows
    aug = RatMatrix([list(m.row(r)) + [int(r == c) for c in range(n)] for r in range(n)], 2 * n)
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return RatMatrix([red.row(r)[n:] for r in range(n)], n)
