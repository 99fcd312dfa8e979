"""Exact dense linear algebra over a FieldSpec.

Matrices are immutable row-major grids of FieldElement sharing one spec.
Linear maps use the column convention: ``A.apply(v)`` is A times a column
vector, so column j holds the image of the j-th basis vector.

``rcf`` computes the rational canonical form through the Smith normal form
of tI - A over the polynomial ring, tracking the row operations to recover
a certified change of basis.
"""

from __future__ import annotations

from dataclasses import dataclass

from solvlie.field import FieldElement, FieldSpec, FieldError

__all__ = [
    "Matrix",
    "UniPoly",
    "RcfResult",
    "solve_linear",
    "kernel",
    "echelon_basis",
    "reduce_against_echelon",
    "rcf",
    "companion_matrix",
]


class Matrix:
    __slots__ = ("spec", "rows", "cols", "entries")

    def __init__(self, spec: FieldSpec, entries):
        rows = tuple(tuple(spec.element(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must be non-empty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", len(rows[0]))
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "Matrix":
        one, zero = spec.one, spec.zero
        return cls(spec, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, spec: FieldSpec, rows: int, cols: int) -> "Matrix":
        z = spec.zero
        return cls(spec, [[z] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, spec: FieldSpec, columns) -> "Matrix":
        cols = [list(c) for c in columns]
        return cls(spec, [[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))])

    def __getitem__(self, rc):
        return self.entries[rc[0]][rc[1]]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.spec == other.spec
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.spec, self.entries))

    def __add__(self, other):
        self._check(other)
        return Matrix(
            self.spec,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other):
        self._check(other)
        return Matrix(
            self.spec,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __neg__(self):
        return Matrix(self.spec, [[-a for a in row] for row in self.entries])

    def scale(self, c) -> "Matrix":
        c = self.spec.element(c)
        return Matrix(self.spec, [[c * a for a in row] for row in self.entries])

    def _check(self, other):
        if self.spec != other.spec:
            raise FieldError("field mismatch")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")

    def __matmul__(self, other):
        if self.spec != other.spec:
            raise FieldError("field mismatch")
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        zero = self.spec.zero
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a:
                        acc = acc + a * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return Matrix(self.spec, out)

    def apply(self, vec):
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        vec = [self.spec.element(v) for v in vec]
        zero = self.spec.zero
        return tuple(
            sum((row[k] * vec[k] for k in range(self.cols) if vec[k]), zero)
            for row in self.entries
        )

    def transpose(self) -> "Matrix":
        return Matrix(self.spec, list(zip(*self.entries)))

    # -- elimination --------------------------------------------------------

    def rref(self):
        """Reduced row echelon form and its pivot columns."""
        m = [list(r) for r in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            pr = next((i for i in range(r, self.rows) if m[i][c]), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = m[r][c].inverse()
            m[r] = [inv * x for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Matrix(self.spec, m), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.entries]
        n = self.rows
        det = self.spec.one
        for c in range(n):
            pr = next((i for i in range(c, n) if m[i][c]), None)
            if pr is None:
                return self.spec.zero
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                det = -det
            det = det * m[c][c]
            inv = m[c][c].inverse()
            for i in range(c + 1, n):
                if m[i][c]:
                    f = m[i][c] * inv
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return det

    def is_invertible(self) -> bool:
        return self.rows == self.cols and bool(self.det())

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        ident = Matrix.identity(self.spec, n)
        aug = Matrix(
            self.spec,
            [list(self.entries[i]) + list(ident.entries[i]) for i in range(n)],
        )
        red, pivots = aug.rref()
        if pivots[:n] != tuple(range(n)):
            raise ValueError("matrix is singular")
        return Matrix(self.spec, [row[n:] for row in red.entries])

    def flatten(self):
        """Column-major flattening (matches unknown ordering elsewhere)."""
        return tuple(
            self.entries[i][j] for j in range(self.cols) for i in range(self.rows)
        )

    @classmethod
    def from_flat(cls, spec, n, flat):
        return cls(spec, [[flat[j * n + i] for j in range(n)] for i in range(n)])

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"Matrix[{body}]"


# ---------------------------------------------------------------------------
# linear systems
# ---------------------------------------------------------------------------

def solve_linear(a: Matrix, b):
    """One exact solution of A x = b, or None when inconsistent."""
    if len(b) != a.rows:
        raise ValueError("dimension mismatch")
    b = [a.spec.element(x) for x in b]
    aug = Matrix(a.spec, [list(a.entries[i]) + [b[i]] for i in range(a.rows)])
    red, pivots = aug.rref()
    if a.cols in pivots:
        return None
    x = [a.spec.zero] * a.cols
    for r, c in enumerate(pivots):
        x[c] = red.entries[r][a.cols]
    return tuple(x)


def kernel(a: Matrix):
    """Canonical basis of the null space (rows in reduced echelon form)."""
    red, pivots = a.rref()
    free = [c for c in range(a.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [a.spec.zero] * a.cols
        v[fc] = a.spec.one
        for r, pc in enumerate(pivots):
            v[pc] = -red.entries[r][fc]
        basis.append(tuple(v))
    return echelon_basis(a.spec, basis)


def echelon_basis(spec: FieldSpec, vectors):
    """Reduced echelon basis of the span of the given vectors."""
    vecs = [v for v in vectors]
    if not vecs:
        return []
    m = Matrix(spec, vecs)
    red, pivots = m.rref()
    return [tuple(red.entries[r]) for r in range(len(pivots))]


def reduce_against_echelon(spec: FieldSpec, basis, vec):
    """Residue of vec after eliminating the pivots of an echelon basis."""
    v = list(vec)
    for row in basis:
        p = next(i for i, x in enumerate(row) if x)
        if v[p]:
            f = v[p]
            v = [x - f * y for x, y in zip(v, row)]
    return tuple(v)


# ---------------------------------------------------------------------------
# univariate polynomials over a FieldSpec (little-endian coefficients)
# ---------------------------------------------------------------------------

class UniPoly:
    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs):
        cs = [spec.element(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def t(cls, spec):
        return cls(spec, [0, 1])

    @classmethod
    def constant(cls, spec, c):
        return cls(spec, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial has degree -1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def leading(self):
        if self.is_zero():
            raise ValueError("zero polynomial")
        return self.coeffs[-1]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        inv = self.leading().inverse()
        return UniPoly(self.spec, [inv * c for c in self.coeffs])

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.spec.zero
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return UniPoly(self.spec, [x + y for x, y in zip(a, b)])

    def __neg__(self):
        return UniPoly(self.spec, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FieldElement) or isinstance(other, int):
            c = self.spec.element(other)
            return UniPoly(self.spec, [c * x for x in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly(self.spec, [])
        z = self.spec.zero
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return UniPoly(self.spec, out)

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [self.spec.zero] * max(len(self.coeffs) - len(other.coeffs) + 1, 1)
        r = list(self.coeffs)
        inv = other.leading().inverse()
        d = other.degree
        while len(r) - 1 >= d and r:
            c = r[-1] * inv
            s = len(r) - 1 - d
            q[s] = c
            for i, oc in enumerate(other.coeffs):
                r[s + i] = r[s + i] - c * oc
            while r and r[-1].is_zero():
                r.pop()
        return UniPoly(self.spec, q), UniPoly(self.spec, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other) -> bool:
        return (other % self).is_zero()

    def evaluate_matrix(self, a: Matrix) -> Matrix:
        """p(A) by Horner's rule."""
        n = a.rows
        acc = Matrix.zero(self.spec, n, n)
        for c in reversed(self.coeffs):
            acc = acc @ a
            if c:
                acc = acc + Matrix.identity(self.spec, n).scale(c)
        return acc

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "t" if i == 1 else (f"t^{i}" if i else "")
            if i == 0:
                body = str(c)
            elif c.is_one():
                body = mono
            else:
                body = f"{c}*{mono}"
            parts.append(body)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"UniPoly({self})"


def companion_matrix(f: UniPoly) -> Matrix:
    """Companion matrix of a monic non-constant polynomial (column convention)."""
    d = f.degree
    if d < 1 or not f.leading().is_one():
        raise ValueError("companion matrix needs a monic non-constant polynomial")
    spec = f.spec
    z = spec.zero
    m = [[z] * d for _ in range(d)]
    for i in range(1, d):
        m[i][i - 1] = spec.one
    for i in range(d):
        m[i][d - 1] = -f.coeffs[i]
    return Matrix(spec, m)


# ---------------------------------------------------------------------------
# rational canonical form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RcfResult:
    invariant_factors: tuple
    transform: Matrix  # P with P A P^-1 block-companion

    def companion_form(self) -> Matrix:
        spec = self.transform.spec
        n = self.transform.rows
        z = spec.zero
        out = [[z] * n for _ in range(n)]
        at = 0
        for f in self.invariant_factors:
            c = companion_matrix(f)
            d = f.degree
            for i in range(d):
                for j in range(d):
                    out[at + i][at + j] = c.entries[i][j]
            at += d
        return Matrix(spec, out)


def _smith_with_left_inverse(m, spec):
    """Diagonalize a square polynomial matrix by row/column operations.

    Returns (diagonal entries, W) where W is the inverse of the accumulated
    row-operation matrix: row ops multiply on the left by U, and W tracks
    U^-1 by applying the inverse operation to its columns.
    """
    n = len(m)
    w = [
        [UniPoly.constant(spec, spec.one if i == j else spec.zero) for j in range(n)]
        for i in range(n)
    ]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        for r in range(n):
            w[r][i], w[r][j] = w[r][j], w[r][i]

    def swap_cols(i, j):
        for r in range(n):
            m[r][i], m[r][j] = m[r][j], m[r][i]

    def addmul_row(i, j, p):
        # row_i -= p * row_j ; W gets col_j += p * col_i
        for c in range(n):
            m[i][c] = m[i][c] - p * m[j][c]
        for r in range(n):
            w[r][j] = w[r][j] + p * w[r][i]

    def addmul_col(i, j, p):
        # col_i -= p * col_j
        for r in range(n):
            m[r][i] = m[r][i] - p * m[r][j]

    def scale_row(i, c):
        # c is a field element; W column picks up the inverse scale
        for col in range(n):
            m[i][col] = m[i][col] * c
        inv = c.inverse()
        for r in range(n):
            w[r][i] = w[r][i] * inv

    for r in range(n):
        while True:
            # pivot: nonzero entry of smallest degree in the trailing block
            best = None
            for i in range(r, n):
                for j in range(r, n):
                    if not m[i][j].is_zero():
                        if best is None or m[i][j].degree < m[best[0]][best[1]].degree:
                            best = (i, j)
            if best is None:
                raise ValueError("singular characteristic matrix")
            if best != (r, r):
                if best[0] != r:
                    swap_rows(r, best[0])
                if best[1] != r:
                    swap_cols(r, best[1])
            dirty = False
            for i in range(r + 1, n):
                if not m[i][r].is_zero():
                    q, rem = divmod(m[i][r], m[r][r])
                    addmul_row(i, r, q)
                    if not rem.is_zero():
                        dirty = True
            for j in range(r + 1, n):
                if not m[r][j].is_zero():
                    q, rem = divmod(m[r][j], m[r][r])
                    addmul_col(j, r, q)
                    if not rem.is_zero():
                        dirty = True
            if dirty:
                continue
            # pivot must divide every remaining entry
            offender = None
            for i in range(r + 1, n):
                for j in range(r + 1, n):
                    if not (m[i][j] % m[r][r]).is_zero():
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            addmul_row(r, offender, UniPoly.constant(spec, -spec.one))
        if not m[r][r].leading().is_one():
            scale_row(r, m[r][r].leading().inverse())

    diag = [m[i][i] for i in range(n)]
    return diag, w


def rcf(a: Matrix) -> RcfResult:
    """Rational canonical form with a certified change of basis.

    The invariant factors are the non-constant diagonal entries of the Smith
    normal form of tI - A; generators of the cyclic summands come from the
    tracked row operations, and their Krylov chains give the new basis.
    """
    if a.rows != a.cols:
        raise ValueError("rcf of a non-square matrix")
    spec = a.spec
    n = a.rows
    t = UniPoly.t(spec)
    char_matrix = [
        [
            t - UniPoly.constant(spec, a.entries[i][j])
            if i == j
            else UniPoly.constant(spec, -a.entries[i][j])
            for j in range(n)
        ]
        for i in range(n)
    ]
    diag, w = _smith_with_left_inverse(char_matrix, spec)

    factors = []
    basis_vectors = []
    for i in range(n):
        d = diag[i]
        if d.is_constant():
            continue
        factors.append(d)
        # generator of the cyclic summand: evaluate column i of W at A
        gen = [spec.zero] * n
        for j in range(n):
            pj = w[j][i]
            if pj.is_zero():
                continue
            col = pj.evaluate_matrix(a).column(j)
            gen = [x + y for x, y in zip(gen, col)]
        vec = tuple(gen)
        for _ in range(d.degree):
            basis_vectors.append(vec)
            vec = a.apply(vec)
    if sum(f.degree for f in factors) != n:
        raise AssertionError("invariant factor degrees do not sum to n")
    for k in range(len(factors) - 1):
        if not factors[k].divides(factors[k + 1]):
            raise AssertionError("invariant factor divisibility failed")
    q = Matrix.from_columns(spec, basis_vectors)
    p = q.inverse()
    result = RcfResult(tuple(factors), p)
    if p @ a @ q != result.companion_form():
        raise AssertionError("rcf verification failed")
    return result
