"""Lie algebras given by structure constants over an exact field.

Brackets are stored only for basis pairs i < j (1-based); the accessor
derives [x_j, x_i] = -[x_i, x_j] and [x_i, x_i] = 0, so tables are
alternating by construction in every characteristic.  Unlisted brackets
are zero.

Canonical JSON interchange:

    {"dim": n, "field": {...}, "brackets": [{"i": 1, "j": 2, "coeffs": [...]}]}

with scalars in the field's textual format and brackets sorted by (i, j).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from solvlie.field import FieldElement, FieldError, FieldSpec, QQ, GF
from solvlie.linalg import (
    Matrix,
    echelon_basis,
    kernel,
    reduce_against_echelon,
    solve_linear,
)

__all__ = [
    "LieAlgebra",
    "Derivation",
    "ValidationReport",
    "SolvabilityProfile",
    "validate",
    "solvability_profile",
    "derivations",
    "inner_derivations",
    "is_derivation",
    "extend_by_derivation",
    "base_change",
    "diagonal_rescale",
    "direct_sum",
    "algebra_to_json",
    "algebra_from_json",
]


class LieAlgebra:
    """Structure-constant presentation of a finite-dimensional algebra.

    ``table[(i, j)]`` (1-based, i < j) is the coefficient tuple of
    [x_i, x_j]; missing pairs are zero.
    """

    __slots__ = ("dim", "field", "table", "name")

    def __init__(self, dim: int, field: FieldSpec, table=None, name: str | None = None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "field", field)
        clean = {}
        for (i, j), coeffs in (table or {}).items():
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise ValueError(f"bracket index ({i},{j}) out of range")
            if i == j:
                raise ValueError("diagonal brackets are zero by convention")
            vec = tuple(field.element(c) for c in coeffs)
            if len(vec) != dim:
                raise ValueError("coefficient vector has wrong length")
            if i > j:
                i, j, vec = j, i, tuple(-c for c in vec)
            if any(vec):
                if (i, j) in clean:
                    raise ValueError(f"duplicate bracket ({i},{j})")
                clean[(i, j)] = vec
        object.__setattr__(self, "table", clean)
        object.__setattr__(self, "name", name)

    def __setattr__(self, *a):
        raise AttributeError("LieAlgebra is immutable")

    @classmethod
    def abelian(cls, dim: int, field: FieldSpec) -> "LieAlgebra":
        return cls(dim, field, {})

    def __eq__(self, other):
        return (
            isinstance(other, LieAlgebra)
            and self.dim == other.dim
            and self.field == other.field
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.dim, self.field, tuple(sorted(self.table.items()))))

    def __repr__(self):
        label = self.name or f"dim {self.dim} over {self.field}"
        return f"LieAlgebra<{label}>"

    # -- bracket ------------------------------------------------------------

    def bracket_basis(self, i: int, j: int):
        """[x_i, x_j] as a coefficient tuple (1-based indices)."""
        zero = self.field.zero
        if i == j:
            return (zero,) * self.dim
        if i < j:
            return self.table.get((i, j), (zero,) * self.dim)
        vec = self.table.get((j, i))
        if vec is None:
            return (zero,) * self.dim
        return tuple(-c for c in vec)

    def bracket(self, u, v):
        """Bilinear bracket of two coordinate vectors."""
        zero = self.field.zero
        out = [zero] * self.dim
        for i in range(self.dim):
            if not u[i]:
                continue
            for j in range(self.dim):
                if not v[j] or i == j:
                    continue
                c = u[i] * v[j]
                for k, w in enumerate(self.bracket_basis(i + 1, j + 1)):
                    if w:
                        out[k] = out[k] + c * w
        return tuple(out)

    def ad(self, i: int) -> Matrix:
        """Matrix of ad x_i (column convention)."""
        cols = [self.bracket_basis(i, j) for j in range(1, self.dim + 1)]
        return Matrix.from_columns(self.field, cols)

    def ad_vector(self, v) -> Matrix:
        cols = []
        basis = [
            tuple(
                self.field.one if k == j else self.field.zero
                for k in range(self.dim)
            )
            for j in range(self.dim)
        ]
        for e in basis:
            cols.append(self.bracket(v, e))
        return Matrix.from_columns(self.field, cols)

    def basis_vector(self, i: int):
        return tuple(
            self.field.one if k == i - 1 else self.field.zero
            for k in range(self.dim)
        )

    def rename(self, name: str) -> "LieAlgebra":
        return LieAlgebra(self.dim, self.field, self.table, name)


# ---------------------------------------------------------------------------
# validation and series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violation: tuple[int, int, int] | None = None
    message: str = ""

    def __bool__(self):
        return self.ok


def validate(lie: LieAlgebra) -> ValidationReport:
    """Check the Jacobi identity on all basis triples.

    Alternation ([x,x] = 0, including characteristic 2) holds by
    construction of the i < j table, so Jacobi is the whole condition.
    """
    n = lie.dim
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                acc = lie.bracket(lie.bracket_basis(i, j), lie.basis_vector(k))
                term = lie.bracket(lie.bracket_basis(j, k), lie.basis_vector(i))
                acc = tuple(a + b for a, b in zip(acc, term))
                term = lie.bracket(lie.bracket_basis(k, i), lie.basis_vector(j))
                acc = tuple(a + b for a, b in zip(acc, term))
                if any(acc):
                    return ValidationReport(
                        False, (i, j, k), f"Jacobi fails on (x{i}, x{j}, x{k})"
                    )
    return ValidationReport(True)


def _span_bracket(lie: LieAlgebra, rows_a, rows_b):
    """Echelon basis of [span(rows_a), span(rows_b)]."""
    prods = []
    for u in rows_a:
        for v in rows_b:
            w = lie.bracket(u, v)
            if any(w):
                prods.append(w)
    return echelon_basis(lie.field, prods)


@dataclass(frozen=True)
class SolvabilityProfile:
    derived_dims: tuple[int, ...]
    lower_central_dims: tuple[int, ...]
    is_solvable: bool
    is_nilpotent: bool
    derived_basis: tuple


def solvability_profile(lie: LieAlgebra) -> SolvabilityProfile:
    full = [lie.basis_vector(i) for i in range(1, lie.dim + 1)]

    derived_dims = [lie.dim]
    term = full
    derived_basis = None
    while True:
        nxt = _span_bracket(lie, term, term)
        if derived_basis is None:
            derived_basis = tuple(nxt)
        if len(nxt) == derived_dims[-1]:
            break
        derived_dims.append(len(nxt))
        term = nxt
        if not nxt:
            break

    lower_dims = [lie.dim]
    term = _span_bracket(lie, full, full)
    while True:
        if len(term) == lower_dims[-1]:
            break
        lower_dims.append(len(term))
        if not term:
            break
        term = _span_bracket(lie, full, term)

    return SolvabilityProfile(
        tuple(derived_dims),
        tuple(lower_dims),
        derived_dims[-1] == 0,
        lower_dims[-1] == 0,
        derived_basis,
    )


def derived_algebra(lie: LieAlgebra):
    """Echelon basis of [L, L]."""
    full = [lie.basis_vector(i) for i in range(1, lie.dim + 1)]
    return _span_bracket(lie, full, full)


# ---------------------------------------------------------------------------
# derivations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Derivation:
    algebra: LieAlgebra
    matrix: Matrix


def _leibniz_rows(lie: LieAlgebra):
    """Rows of the linear system for D: D[x_i,x_j] = [Dx_i,x_j] + [x_i,Dx_j].

    Unknowns are the n^2 entries of D flattened column-major.
    """
    n = lie.dim
    spec = lie.field
    zero = spec.zero
    rows = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            cij = lie.bracket_basis(i, j)
            for r in range(n):
                row = [zero] * (n * n)
                # D applied to [x_i, x_j]: sum_k c_k * d[r][k]
                for k in range(n):
                    if cij[k]:
                        row[k * n + r] = row[k * n + r] + cij[k]
                # minus [D x_i, x_j] = sum_m d[m][i-1] [x_m, x_j]
                for m in range(1, n + 1):
                    w = lie.bracket_basis(m, j)[r]
                    if w:
                        row[(i - 1) * n + (m - 1)] = row[(i - 1) * n + (m - 1)] - w
                # minus [x_i, D x_j] = sum_m d[m][j-1] [x_i, x_m]
                for m in range(1, n + 1):
                    w = lie.bracket_basis(i, m)[r]
                    if w:
                        row[(j - 1) * n + (m - 1)] = row[(j - 1) * n + (m - 1)] - w
                rows.append(row)
    return rows


def derivations(lie: LieAlgebra) -> list[Derivation]:
    """Echelonized basis of the derivation algebra."""
    rows = _leibniz_rows(lie)
    if not rows:
        basis = [
            tuple(
                lie.field.one if t == s else lie.field.zero
                for t in range(lie.dim**2)
            )
            for s in range(lie.dim**2)
        ]
    else:
        basis = kernel(Matrix(lie.field, rows))
    return [
        Derivation(lie, Matrix.from_flat(lie.field, lie.dim, flat)) for flat in basis
    ]


def is_derivation(lie: LieAlgebra, d: Matrix) -> bool:
    n = lie.dim
    if (d.rows, d.cols) != (n, n) or d.spec != lie.field:
        return False
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            lhs = d.apply(lie.bracket_basis(i, j))
            rhs_a = lie.bracket(d.column(i - 1), lie.basis_vector(j))
            rhs_b = lie.bracket(lie.basis_vector(i), d.column(j - 1))
            if lhs != tuple(a + b for a, b in zip(rhs_a, rhs_b)):
                return False
    return True


def inner_derivations(lie: LieAlgebra) -> list[Derivation]:
    """Echelonized span of the adjoint maps ad x_i."""
    flats = [lie.ad(i).flatten() for i in range(1, lie.dim + 1)]
    basis = echelon_basis(lie.field, [f for f in flats if any(f)])
    return [
        Derivation(lie, Matrix.from_flat(lie.field, lie.dim, flat)) for flat in basis
    ]


def inner_part(lie: LieAlgebra, d: Matrix):
    """Element k with ad k = d when d is inner, else None."""
    cols = [lie.ad(i).flatten() for i in range(1, lie.dim + 1)]
    a = Matrix.from_columns(lie.field, cols)
    return solve_linear(a, d.flatten())


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

class NotADerivationError(ValueError):
    pass


def extend_by_derivation(k: LieAlgebra, d) -> LieAlgebra:
    """One-dimensional extension: adjoin x_{n+1} acting on K by d."""
    mat = d.matrix if isinstance(d, Derivation) else d
    if not is_derivation(k, mat):
        raise NotADerivationError("matrix is not a derivation of the algebra")
    n = k.dim
    zero = k.field.zero
    table = {}
    for (i, j), coeffs in k.table.items():
        table[(i, j)] = coeffs + (zero,)
    for i in range(1, n + 1):
        col = mat.column(i - 1)
        table[(i, n + 1)] = tuple(-c for c in col) + (zero,)
    ext = LieAlgebra(n + 1, k.field, table)
    report = validate(ext)
    if not report:
        raise AssertionError(f"extension failed Jacobi: {report.message}")
    return ext


def base_change(lie: LieAlgebra, p: Matrix) -> LieAlgebra:
    """Structure constants in the basis y_i = sum_j P[i][j] x_j."""
    if p.spec != lie.field or p.rows != lie.dim or p.cols != lie.dim:
        raise ValueError("base change matrix has wrong shape or field")
    if not p.is_invertible():
        raise ValueError("base change matrix is singular")
    n = lie.dim
    to_new = p.transpose().inverse()  # old coordinates -> new coordinates
    table = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            w = lie.bracket(p.row(i - 1), p.row(j - 1))
            table[(i, j)] = to_new.apply(w)
    return LieAlgebra(n, lie.field, table)


def diagonal_rescale(lie: LieAlgebra, alphas) -> LieAlgebra:
    coeffs = [lie.field.element(a) for a in alphas]
    if len(coeffs) != lie.dim:
        raise ValueError("need one scale per basis vector")
    if not all(coeffs):
        raise ValueError("all scales must be nonzero")
    zero = lie.field.zero
    p = Matrix(
        lie.field,
        [
            [coeffs[i] if i == j else zero for j in range(lie.dim)]
            for i in range(lie.dim)
        ],
    )
    return base_change(lie, p)


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    if a.field != b.field:
        raise FieldError("direct sum needs a common field")
    zero = a.field.zero
    n, m = a.dim, b.dim
    table = {}
    for (i, j), coeffs in a.table.items():
        table[(i, j)] = coeffs + (zero,) * m
    for (i, j), coeffs in b.table.items():
        table[(i + n, j + n)] = (zero,) * n + coeffs
    return LieAlgebra(n + m, a.field, table)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def field_to_json(spec: FieldSpec) -> dict:
    if spec.is_rational:
        return {"characteristic": 0}
    if spec.degree == 1:
        return {"characteristic": spec.characteristic}
    return {
        "characteristic": spec.characteristic,
        "degree": spec.degree,
        "modulus": list(spec.modulus),
    }


def field_from_json(data: dict) -> FieldSpec:
    p = data["characteristic"]
    if p == 0:
        return QQ()
    degree = data.get("degree", 1)
    if degree == 1:
        return GF(p)
    modulus = data.get("modulus")
    return FieldSpec(p, degree, tuple(modulus) if modulus else None)


def algebra_to_json(lie: LieAlgebra) -> str:
    brackets = [
        {"i": i, "j": j, "coeffs": [str(c) for c in coeffs]}
        for (i, j), coeffs in sorted(lie.table.items())
    ]
    doc = {"dim": lie.dim, "field": field_to_json(lie.field), "brackets": brackets}
    if lie.name:
        doc["name"] = lie.name
    return json.dumps(doc, sort_keys=True)


def algebra_from_json(text: str) -> LieAlgebra:
    doc = json.loads(text)
    spec = field_from_json(doc["field"])
    table = {}
    for item in doc.get("brackets", []):
        table[(item["i"], item["j"])] = tuple(
            spec.parse(str(c)) for c in item["coeffs"]
        )
    return LieAlgebra(doc["dim"], spec, table, doc.get("name"))
