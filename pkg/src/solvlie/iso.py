"""Isomorphism of Lie algebras via polynomial systems.

For phi mapping basis x_c of the first algebra to column c of an unknown
matrix, the bracket-compatibility equations phi[x_i,x_j] = [phi x_i, phi x_j]
form a quadratic system; auxiliary variables D_k with D_k*det - 1 force
invertibility.  A lex Groebner basis of the system decides solvability:
basis {1} proves non-isomorphism over every extension, and a triangular
basis often yields an explicit witness.

Isomorphisms map derived algebras onto derived algebras, so with
``structural=True`` the unknowns are pre-constrained accordingly; when the
derived spans are aligned with coordinate subspaces this eliminates entries
and splits the determinant into one saturator per block.

Symbolic structure parameters are supported over Q; they are appended as
the smallest ring variables so that elimination exposes necessary
conditions on the parameters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from solvlie.field import FieldError, FieldSpec, QQ
from solvlie.groebner import GroebnerBasis, MultiPoly, PolyRing, buchberger
from solvlie.liealg import LieAlgebra, solvability_profile
from solvlie.linalg import Matrix
from solvlie.smallfield import IntAlgebra, SmallField, algebra_int_table

__all__ = [
    "SymbolicLieAlgebra",
    "IsoSystem",
    "IsoVerdict",
    "IsoResult",
    "build_iso_system",
    "decide_isomorphic",
    "verify_isomorphism",
    "brute_force_iso",
    "SearchLimitError",
]


class SearchLimitError(ValueError):
    pass


class SymbolicLieAlgebra:
    """Structure constants polynomial in named parameters over Q.

    ``brackets[(i, j)]`` entries may be numbers or polynomial text in the
    declared parameters, e.g. ``{(1, 2): (0, 1, 0), (1, 3): (0, 0, "a")}``.
    """

    __slots__ = ("dim", "params", "ring", "table")

    def __init__(self, dim: int, params, brackets):
        self.dim = dim
        self.params = tuple(params)
        self.ring = PolyRing(self.params, QQ())
        table = {}
        for (i, j), coeffs in brackets.items():
            vec = tuple(self._coeff(c) for c in coeffs)
            if i == j or not (1 <= i <= dim and 1 <= j <= dim):
                raise ValueError(f"bad bracket index ({i},{j})")
            if i > j:
                i, j, vec = j, i, tuple(-p for p in vec)
            if any(not p.is_zero() for p in vec):
                table[(i, j)] = vec
        self.table = table

    def _coeff(self, c) -> MultiPoly:
        if isinstance(c, MultiPoly):
            if c.ring != self.ring:
                raise ValueError("coefficient from a different parameter ring")
            return c
        if isinstance(c, str):
            return self.ring.parse(c)
        return self.ring.constant(c)

    def bracket_basis(self, i: int, j: int):
        zero = self.ring.zero()
        if i == j:
            return (zero,) * self.dim
        if i < j:
            return self.table.get((i, j), (zero,) * self.dim)
        vec = self.table.get((j, i))
        if vec is None:
            return (zero,) * self.dim
        return tuple(-p for p in vec)


class IsoVerdict(Enum):
    NOT_ISOMORPHIC = "not_isomorphic"
    ISOMORPHIC = "isomorphic"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class IsoResult:
    verdict: IsoVerdict
    witness: Matrix | None = None
    evidence: GroebnerBasis | None = None


@dataclass(frozen=True)
class IsoSystem:
    ring: PolyRing
    generators: tuple
    phi_vars: dict  # (row, col) 1-based -> variable name, or None when forced 0
    dim: int
    params: tuple

    def matrix_from_assignment(self, field: FieldSpec, values: dict) -> Matrix:
        zero = field.zero
        grid = [[zero] * self.dim for _ in range(self.dim)]
        for (r, c), name in self.phi_vars.items():
            if name is not None:
                grid[r - 1][c - 1] = field.element(values.get(name, 0))
        return Matrix(field, grid)


# ---------------------------------------------------------------------------
# building the polynomial system
# ---------------------------------------------------------------------------

def _as_symbolic_tables(l1, l2):
    """Common coefficient representation: params, base field and tables of
    MultiPoly over PolyRing(params, base)."""
    def info(alg):
        if isinstance(alg, SymbolicLieAlgebra):
            return alg.dim, alg.params, None
        return alg.dim, (), alg.field

    n1, p1, f1 = info(l1)
    n2, p2, f2 = info(l2)
    if n1 != n2:
        raise ValueError("dimension mismatch")
    params = p1 + tuple(x for x in p2 if x not in p1)
    fields = {f for f in (f1, f2) if f is not None}
    if len(fields) > 1:
        raise FieldError("algebras live over different fields")
    field = fields.pop() if fields else QQ()
    if params and not field.is_rational:
        raise FieldError("symbolic parameters are supported over Q only")
    ring = PolyRing(params, field)

    def lift(alg):
        if isinstance(alg, SymbolicLieAlgebra):
            positions = [params.index(p) for p in alg.params]

            def conv(p: MultiPoly) -> MultiPoly:
                out = {}
                for e, c in p.terms.items():
                    exp = [0] * len(params)
                    for k, d in enumerate(e):
                        exp[positions[k]] = d
                    out[tuple(exp)] = field.element(c.value)
                return MultiPoly(ring, out)

        else:
            def conv(c):
                return ring.constant(c)

        table = {}
        for i in range(1, n1 + 1):
            for j in range(i + 1, n1 + 1):
                vec = tuple(conv(c) for c in alg.bracket_basis(i, j))
                if any(not p.is_zero() for p in vec):
                    table[(i, j)] = vec
        return table

    return n1, params, field, ring, lift(l1), lift(l2)


def _poly_echelon(ring, rows):
    """Fraction-free echelon form of rows of MultiPoly, fully reduced."""
    work = [list(r) for r in rows if any(not p.is_zero() for p in r)]
    ncols = len(rows[0]) if rows else 0
    out = []
    col = 0
    while work and col < ncols:
        pivot = next((r for r in work if not r[col].is_zero()), None)
        if pivot is None:
            col += 1
            continue
        work.remove(pivot)
        pv = pivot[col]
        rest = []
        for r in work:
            if r[col].is_zero():
                rest.append(r)
                continue
            newr = [pv * x - r[col] * y for x, y in zip(r, pivot)]
            if any(not p.is_zero() for p in newr):
                rest.append(newr)
        work = rest
        out.append((col, pivot))
        col += 1
    # back-eliminate above pivots
    for k in range(len(out) - 1, -1, -1):
        pc, prow = out[k]
        pv = prow[pc]
        for t in range(k):
            row = out[t][1]
            if not row[pc].is_zero():
                out[t] = (
                    out[t][0],
                    [pv * x - row[pc] * y for x, y in zip(row, prow)],
                )
    return out  # list of (pivot_col, row)


def _derived_rows(ring, table, n):
    rows = [list(vec) for vec in table.values()]
    if not rows:
        return []
    return _poly_echelon(ring, rows)


def _aligned_columns(echelon, n):
    """Pivot set when the span is exactly a coordinate subspace, else None."""
    cols = set()
    for pc, row in echelon:
        nz = [k for k, p in enumerate(row) if not p.is_zero()]
        if nz != [pc]:
            return None
        cols.add(pc)
    return cols


def _det_poly(ring, grid):
    n = len(grid)
    total = ring.zero()
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        for s in range(n):
            if seen[s]:
                continue
            ln, t = 0, s
            while not seen[t]:
                seen[t] = True
                t = perm[t]
                ln += 1
            if ln % 2 == 0:
                sign = -sign
        term = ring.constant(sign)
        for r in range(n):
            term = term * grid[r][perm[r]]
            if term.is_zero():
                break
        total = total + term
    return total


def build_iso_system(l1, l2, structural: bool = True) -> IsoSystem:
    """Polynomial system whose solutions are the isomorphisms l1 -> l2."""
    n, params, field, ring0, t1, t2 = _as_symbolic_tables(l1, l2)

    ech1 = _derived_rows(ring0, t1, n)
    ech2 = _derived_rows(ring0, t2, n)
    s_cols = t_rows = None
    if structural:
        a1 = _aligned_columns(ech1, n)
        a2 = _aligned_columns(ech2, n)
        if a1 is not None and a2 is not None and len(a1) == len(a2) and 0 < len(a1) < n:
            s_cols, t_rows = a1, a2

    # unknown phi entries, column-major with per-column letters
    letters = [chr(ord("a") + c) for c in range(n)]
    if any(f"{ltr}{r}" in params for ltr in letters for r in range(1, n + 1)):
        letters = [f"m{c + 1}_" for c in range(n)]
    phi_vars = {}
    var_names = []
    for c in range(1, n + 1):
        for r in range(1, n + 1):
            if s_cols is not None and (c - 1) in s_cols and (r - 1) not in t_rows:
                phi_vars[(r, c)] = None
            else:
                name = f"{letters[c - 1]}{r}"
                phi_vars[(r, c)] = name
                var_names.append(name)

    n_sat = 2 if s_cols is not None else 1
    d_names = [f"D{k + 1}" for k in range(n_sat)]
    ring = PolyRing(tuple(d_names) + tuple(var_names) + params, field)

    def lift(p0: MultiPoly) -> MultiPoly:
        # param-ring polynomial into the big ring
        shift = len(d_names) + len(var_names)
        width = len(ring.variables)
        out = {}
        for e, c in p0.terms.items():
            exp = [0] * width
            for k, d in enumerate(e):
                exp[shift + k] = d
            out[tuple(exp)] = c
        return MultiPoly(ring, out)

    phi = {}
    for (r, c), name in phi_vars.items():
        phi[(r, c)] = ring.variable(name) if name is not None else ring.zero()

    t1_l = {key: tuple(lift(p) for p in vec) for key, vec in t1.items()}
    t2_l = {key: tuple(lift(p) for p in vec) for key, vec in t2.items()}

    def bracket2(i, j):
        if i == j:
            return (ring.zero(),) * n
        if i < j:
            return t2_l.get((i, j), (ring.zero(),) * n)
        vec = t2_l.get((j, i))
        return (ring.zero(),) * n if vec is None else tuple(-p for p in vec)

    generators = []
    zero_vec = (ring.zero(),) * n
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            image = [ring.zero()] * n
            for u in range(1, n + 1):
                for v in range(1, n + 1):
                    if u == v:
                        continue
                    fac = phi[(u, i)] * phi[(v, j)]
                    if fac.is_zero():
                        continue
                    base = bracket2(u, v)
                    for r in range(n):
                        if not base[r].is_zero():
                            image[r] = image[r] + fac * base[r]
            c1 = t1_l.get((i, j), zero_vec)
            for r in range(n):
                g = image[r]
                for k in range(1, n + 1):
                    if not c1[k - 1].is_zero():
                        g = g - c1[k - 1] * phi[(r + 1, k)]
                if not g.is_zero():
                    generators.append(g)

    if structural and s_cols is None:
        # derived span not coordinate-aligned: impose membership linearly
        rows2 = _poly_echelon(ring0, [list(v) for v in t2.values()]) if t2 else []
        rows2 = [(pc, [lift(p) for p in row]) for pc, row in rows2]
        for _, wrow in _derived_rows(ring0, t1, n):
            w = [lift(p) for p in wrow]
            img = [ring.zero()] * n
            for k in range(1, n + 1):
                if not w[k - 1].is_zero():
                    for r in range(1, n + 1):
                        img[r - 1] = img[r - 1] + w[k - 1] * phi[(r, k)]
            for pc, row in rows2:
                if not img[pc].is_zero():
                    img = [row[pc] * x - img[pc] * y for x, y in zip(img, row)]
            for g in img:
                if not g.is_zero():
                    generators.append(g)

    if s_cols is not None:
        outside = _det_poly(
            ring,
            [
                [phi[(r + 1, c + 1)] for c in range(n) if c not in s_cols]
                for r in range(n)
                if r not in t_rows
            ],
        )
        inside = _det_poly(
            ring,
            [
                [phi[(r + 1, c + 1)] for c in sorted(s_cols)]
                for r in sorted(t_rows)
            ],
        )
        generators.append(ring.variable("D1") * outside - ring.one())
        generators.append(ring.variable("D2") * inside - ring.one())
    else:
        full = _det_poly(ring, [[phi[(r, c)] for c in range(1, n + 1)] for r in range(1, n + 1)])
        generators.append(ring.variable("D1") * full - ring.one())

    return IsoSystem(ring, tuple(generators), phi_vars, n, params)


# ---------------------------------------------------------------------------
# explicit verification and brute force
# ---------------------------------------------------------------------------

def verify_isomorphism(l1: LieAlgebra, l2: LieAlgebra, phi: Matrix) -> bool:
    """Whether phi is invertible and phi[x,y] = [phi x, phi y] on all pairs."""
    n = l1.dim
    if l2.dim != n or phi.rows != n or phi.cols != n:
        return False
    if l1.field != l2.field or phi.spec != l1.field:
        return False
    if not phi.is_invertible():
        return False
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            lhs = phi.apply(l1.bracket_basis(i, j))
            rhs = l2.bracket(phi.column(i - 1), phi.column(j - 1))
            if tuple(lhs) != tuple(rhs):
                return False
    return True


BRUTE_FORCE_LIMIT = 2**32


def brute_force_iso(l1: LieAlgebra, l2: LieAlgebra):
    """Exhaustive column-by-column isomorphism search over a finite field.

    Returns some witness matrix, or None; deterministic first witness in
    vector index order.  Candidate columns are pruned by rank and by every
    bracket equation whose support is already determined.
    """
    if l1.field != l2.field:
        raise FieldError("field mismatch")
    if not l1.field.is_finite:
        raise FieldError("brute force needs a finite field")
    n = l1.dim
    if l2.dim != n:
        raise ValueError("dimension mismatch")
    sf = SmallField(l1.field)
    q = sf.q
    if q ** (n * n) > BRUTE_FORCE_LIMIT:
        raise SearchLimitError(f"search space {q}^{n * n} exceeds the limit")
    a1 = IntAlgebra(sf, n, algebra_int_table(l1, sf))
    a2 = IntAlgebra(sf, n, algebra_int_table(l2, sf))

    # bracket pair (i, j) is checkable once columns up to its level exist
    schedule = [[] for _ in range(n + 1)]
    for i in range(n):
        for j in range(i + 1, n):
            vec = a1.bracket_basis(i, j)
            support = max((m for m, c in enumerate(vec) if c), default=-1)
            level = max(j, support)
            schedule[level + 1].append((i, j, vec))

    vectors = list(itertools.product(range(q), repeat=n))
    images = [None] * n

    def extend(col, rows):
        for cand in vectors:
            rows_copy = list(rows)
            if not sf.echelon_insert(rows_copy, cand):
                continue
            images[col] = cand
            ok = True
            for i, j, vec in schedule[col + 1]:
                lhs = a2.bracket(images[i], images[j])
                rhs = (0,) * n
                for m, c in enumerate(vec):
                    if c:
                        rhs = sf.vec_add(rhs, sf.vec_scale(c, images[m]))
                if lhs != rhs:
                    ok = False
                    break
            if ok:
                if col + 1 == n:
                    return True
                if extend(col + 1, rows_copy):
                    return True
        images[col] = None
        return False

    if not extend(0, []):
        return None
    cols = [[sf.decode(c) for c in img] for img in images]
    phi = Matrix.from_columns(l1.field, cols)
    if not verify_isomorphism(l1, l2, phi):
        raise AssertionError("brute force produced a non-isomorphism")
    return phi


# ---------------------------------------------------------------------------
# decision procedure
# ---------------------------------------------------------------------------

def _rational_roots(coeffs):
    """Rational roots of a univariate polynomial given by Fraction coeffs
    (ascending).  Deterministic order."""
    from math import gcd, lcm

    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return [Fraction(0)]
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g:
        ints = [v // g for v in ints]
    roots = []
    if ints[0] == 0:
        roots.append(Fraction(0))
        while ints and ints[0] == 0:
            ints.pop(0)
    if not ints or len(ints) == 1:
        return roots

    def divisors(v):
        v = abs(v)
        out = [d for d in range(1, v + 1) if v % d == 0]
        return out

    lead = ints[-1]
    const = ints[0]
    seen = set()
    for p in divisors(const):
        for qd in divisors(lead):
            for cand in (Fraction(p, qd), Fraction(-p, qd)):
                if cand in seen:
                    continue
                seen.add(cand)
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.append(cand)
    roots.sort()
    return roots


def _search_rational_witness(system: IsoSystem, gb: GroebnerBasis, l1, l2, budget=4000):
    """Bounded back-substitution over Q: solve variables from the smallest
    up, branching on univariate constraints, with {0, 1, -1} for free ones."""
    ring = system.ring
    phi_names = [name for name in reversed(ring.variables) if name in
                 {v for v in system.phi_vars.values() if v is not None}]
    basis = list(gb.basis)
    nodes = 0

    def specialize(polys, name, value):
        out = []
        for p in polys:
            s = p.substitute({name: value})
            if s.is_zero():
                continue
            out.append(s)
        return out

    def contradiction(polys):
        return any(p.is_constant() and not p.is_zero() for p in polys)

    def recurse(polys, assignment, remaining):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchLimitError("witness search budget exhausted")
        if contradiction(polys):
            return None
        if not remaining:
            phi = system.matrix_from_assignment(l1.field, assignment)
            if verify_isomorphism(l1, l2, phi):
                return phi
            return None
        name = remaining[0]
        idx = ring.index(name)
        candidates = None
        for p in polys:
            if p.variables_present() == {idx}:
                coeffs = [Fraction(0)] * (p.total_degree() + 1)
                for e, c in p.terms.items():
                    coeffs[e[idx]] = c.value
                candidates = _rational_roots(coeffs)
                break
        if candidates is None:
            candidates = [Fraction(0), Fraction(1), Fraction(-1)]
        for val in candidates:
            sub = specialize(polys, name, l1.field.element(val))
            got = recurse(sub, {**assignment, name: l1.field.element(val)}, remaining[1:])
            if got is not None:
                return got
        return None

    try:
        return recurse(basis, {}, phi_names)
    except SearchLimitError:
        return None


def decide_isomorphic(l1, l2) -> IsoResult:
    """Decide isomorphism; never Undecided over finite fields.

    Concrete algebras over a finite field fall back to the exhaustive
    search when the Groebner basis is not {1}; over Q a witness is sought
    by back-substitution and failure to find one leaves the (sound)
    Groebner evidence as Undecided.
    """
    symbolic = isinstance(l1, SymbolicLieAlgebra) or isinstance(l2, SymbolicLieAlgebra)
    if not symbolic:
        if l1.dim != l2.dim:
            return IsoResult(IsoVerdict.NOT_ISOMORPHIC)
        if l1.field != l2.field:
            raise FieldError("field mismatch")
        if l1 == l2:
            return IsoResult(IsoVerdict.ISOMORPHIC, Matrix.identity(l1.field, l1.dim))
        p1, p2 = solvability_profile(l1), solvability_profile(l2)
        if (
            p1.derived_dims != p2.derived_dims
            or p1.lower_central_dims != p2.lower_central_dims
        ):
            return IsoResult(IsoVerdict.NOT_ISOMORPHIC)

    system = build_iso_system(l1, l2, structural=True)
    gb = buchberger(system.generators)
    if gb.is_trivial():
        return IsoResult(IsoVerdict.NOT_ISOMORPHIC, evidence=gb)
    if symbolic:
        return IsoResult(IsoVerdict.UNDECIDED, evidence=gb)
    if l1.field.is_finite:
        witness = brute_force_iso(l1, l2)
        if witness is None:
            return IsoResult(IsoVerdict.NOT_ISOMORPHIC)
        return IsoResult(IsoVerdict.ISOMORPHIC, witness)
    witness = _search_rational_witness(system, gb, l1, l2)
    if witness is not None:
        return IsoResult(IsoVerdict.ISOMORPHIC, witness)
    return IsoResult(IsoVerdict.UNDECIDED, evidence=gb)
