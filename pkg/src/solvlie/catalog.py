"""The classification tables in dimensions 3 and 4 as executable objects.

Families (with parameter counts) over a ground field F:

* dim 3: ``L1`` abelian; ``L2`` with [x3,x1]=x1, [x3,x2]=x2; ``L3(a)``;
  ``L4(a)``.
* dim 4: ``M1`` .. ``M14`` and the auxiliary ``N`` (characteristic != 2
  only; isomorphic to ``M13(0)`` and never emitted by identification).
* dims 1 and 2 get the bookkeeping families ``A1``, ``A2`` (abelian) and
  ``AFF2`` ([x1,x2] = x2).

``identify`` returns a canonical label: two solvable algebras of dimension
<= 4 are isomorphic exactly when their canonical labels are equal.  The
canonical parameter of a class is the minimum admissible representative in
coefficient-value order over a finite field, and a power-free integer
representative over Q (see ``canonicalize`` for the collapse map).

Label text: ``L3(a)``, ``M7(a,b)`` with scalars in the field's textual
format; parameters are separated by ";" over extension fields since
extension scalars themselves contain commas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from solvlie.field import (
    FieldElement,
    FieldError,
    FieldSpec,
    artin_schreier_solvable,
    exists_scaling,
    is_square,
    power_free_part,
    sqrt_element,
    t2_minus_t_has_root,
)
from solvlie.liealg import (
    LieAlgebra,
    derived_algebra,
    solvability_profile,
    validate,
)
from solvlie.linalg import (
    Matrix,
    echelon_basis,
    kernel,
    rcf,
    reduce_against_echelon,
    solve_linear,
)

__all__ = [
    "ClassLabel",
    "CanonicalLabel",
    "FAMILY_ARITY",
    "construct",
    "construct_raw",
    "param_equivalent",
    "canonicalize",
    "identify",
    "count_classes",
    "parse_label",
    "dim3_canonical_labels",
    "dim4_canonical_labels",
    "InadmissibleLabelError",
    "NonSolvableError",
]


FAMILY_ARITY = {
    "A1": 0,
    "A2": 0,
    "AFF2": 0,
    "L1": 0,
    "L2": 0,
    "L3": 1,
    "L4": 1,
    "M1": 0,
    "M2": 0,
    "M3": 1,
    "M4": 0,
    "M5": 0,
    "M6": 2,
    "M7": 2,
    "M8": 0,
    "M9": 1,
    "M10": 1,
    "M11": 2,
    "M12": 0,
    "M13": 1,
    "M14": 1,
    "N": 0,
}

FAMILY_DIM = {
    "A1": 1,
    "A2": 2,
    "AFF2": 2,
    **{f: 3 for f in ("L1", "L2", "L3", "L4")},
    **{f: 4 for f in FAMILY_ARITY if f.startswith("M") or f == "N"},
}


class InadmissibleLabelError(ValueError):
    pass


class NonSolvableError(ValueError):
    pass


@dataclass(frozen=True)
class ClassLabel:
    family: str
    params: tuple
    field: FieldSpec

    def __post_init__(self):
        if self.family not in FAMILY_ARITY:
            raise ValueError(f"unknown family {self.family!r}")
        if len(self.params) != FAMILY_ARITY[self.family]:
            raise ValueError(
                f"{self.family} takes {FAMILY_ARITY[self.family]} parameter(s)"
            )
        object.__setattr__(
            self, "params", tuple(self.field.element(p) for p in self.params)
        )

    def __str__(self):
        if not self.params:
            return self.family
        sep = ";" if self.field.is_finite and self.field.degree > 1 else ","
        return f"{self.family}({sep.join(str(p) for p in self.params)})"


class CanonicalLabel(ClassLabel):
    """A ClassLabel normalized so that equality decides isomorphism."""


def parse_label(text: str, field: FieldSpec) -> ClassLabel:
    text = text.strip()
    if "(" not in text:
        return ClassLabel(text, (), field)
    fam, _, rest = text.partition("(")
    if not rest.endswith(")"):
        raise ValueError(f"malformed label {text!r}")
    body = rest[:-1]
    arity = FAMILY_ARITY.get(fam)
    if arity is None:
        raise ValueError(f"unknown family {fam!r}")
    if arity == 1:
        parts = [body]
    else:
        sep = ";" if ";" in body else ","
        parts = body.split(sep)
    return ClassLabel(fam, tuple(field.parse(p) for p in parts), field)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def construct_raw(family: str, params, field: FieldSpec) -> LieAlgebra:
    """Multiplication table of a family, without admissibility checks."""
    params = tuple(field.element(p) for p in params)
    one = field.one

    def mk(dim, table):
        return LieAlgebra(dim, field, table, name=str(ClassLabel(family, params, field)))

    if family == "A1":
        return mk(1, {})
    if family == "A2":
        return mk(2, {})
    if family == "AFF2":
        return mk(2, {(1, 2): (0, 1)})
    if family == "L1":
        return mk(3, {})
    if family == "L2":
        return mk(3, {(3, 1): (1, 0, 0), (3, 2): (0, 1, 0)})
    if family == "L3":
        (a,) = params
        return mk(3, {(3, 1): (0, 1, 0), (3, 2): (a, one, 0)})
    if family == "L4":
        (a,) = params
        return mk(3, {(3, 1): (0, 1, 0), (3, 2): (a, 0, 0)})
    if family == "M1":
        return mk(4, {})
    if family == "M2":
        return mk(4, {(4, 1): (1, 0, 0, 0), (4, 2): (0, 1, 0, 0), (4, 3): (0, 0, 1, 0)})
    if family == "M3":
        (a,) = params
        return mk(
            4,
            {
                (4, 1): (1, 0, 0, 0),
                (4, 2): (0, 0, 1, 0),
                (4, 3): (0, -a, a + 1, 0),
            },
        )
    if family == "M4":
        return mk(4, {(4, 2): (0, 0, 1, 0), (4, 3): (0, 0, 1, 0)})
    if family == "M5":
        return mk(4, {(4, 2): (0, 0, 1, 0)})
    if family == "M6":
        a, b = params
        return mk(
            4,
            {
                (4, 1): (0, 1, 0, 0),
                (4, 2): (0, 0, 1, 0),
                (4, 3): (a, b, one, 0),
            },
        )
    if family == "M7":
        a, b = params
        return mk(
            4,
            {
                (4, 1): (0, 1, 0, 0),
                (4, 2): (0, 0, 1, 0),
                (4, 3): (a, b, 0, 0),
            },
        )
    if family == "M8":
        return mk(4, {(1, 2): (0, 1, 0, 0), (3, 4): (0, 0, 0, 1)})
    if family == "M9":
        (a,) = params
        return mk(
            4,
            {
                (4, 1): (one, a, 0, 0),
                (4, 2): (1, 0, 0, 0),
                (3, 1): (1, 0, 0, 0),
                (3, 2): (0, 1, 0, 0),
            },
        )
    if family == "M10":
        (a,) = params
        return mk(
            4,
            {
                (4, 1): (0, 1, 0, 0),
                (4, 2): (a, 0, 0, 0),
                (3, 1): (1, 0, 0, 0),
                (3, 2): (0, 1, 0, 0),
            },
        )
    if family == "M11":
        a, b = params
        return mk(
            4,
            {
                (4, 1): (1, 0, 0, 0),
                (4, 2): (0, b, 0, 0),
                (4, 3): (0, 0, one + b, 0),
                (3, 1): (0, 1, 0, 0),
                (3, 2): (a, 0, 0, 0),
            },
        )
    if family == "M12":
        return mk(
            4,
            {
                (4, 1): (1, 0, 0, 0),
                (4, 2): (0, 2, 0, 0),
                (4, 3): (0, 0, 1, 0),
                (3, 1): (0, 1, 0, 0),
            },
        )
    if family == "M13":
        (a,) = params
        return mk(
            4,
            {
                (4, 1): (one, 0, a, 0),
                (4, 2): (0, 1, 0, 0),
                (4, 3): (1, 0, 0, 0),
                (3, 1): (0, 1, 0, 0),
            },
        )
    if family == "M14":
        (a,) = params
        return mk(
            4,
            {
                (4, 1): (0, 0, a, 0),
                (4, 3): (1, 0, 0, 0),
                (3, 1): (0, 1, 0, 0),
            },
        )
    if family == "N":
        quarter = field.element(Fraction(1, 4)) if field.is_rational else (
            field.element(4).inverse()
        )
        return mk(
            4,
            {
                (4, 1): (one, -quarter, 0, 0),
                (4, 2): (1, 0, 0, 0),
                (3, 1): (1, 0, 0, 0),
                (3, 2): (0, 1, 0, 0),
            },
        )
    raise ValueError(f"unknown family {family!r}")


def _check_admissible(label: ClassLabel):
    fam, params, field = label.family, label.params, label.field
    if fam in ("M10", "M11") and field.characteristic != 2:
        raise InadmissibleLabelError(f"{fam} exists only in characteristic 2")
    if fam == "N" and field.characteristic == 2:
        raise InadmissibleLabelError("N needs 1/4, so characteristic 2 is rejected")
    if fam == "M9":
        (a,) = params
        if t2_minus_t_has_root(a):
            raise InadmissibleLabelError(
                "M9 needs T^2 - T - a without roots in the base field"
            )
    if fam == "M11":
        a, b = params
        if a.is_zero() or b.is_one():
            raise InadmissibleLabelError("M11 needs a != 0 and b != 1")


def construct(label: ClassLabel) -> LieAlgebra:
    """Multiplication table of an admissible label; always validates."""
    _check_admissible(label)
    lie = construct_raw(label.family, label.params, label.field)
    report = validate(lie)
    if not report:
        raise AssertionError(f"family table failed Jacobi: {report.message}")
    return lie


# ---------------------------------------------------------------------------
# parameter equivalence predicates
# ---------------------------------------------------------------------------

def _m7_equivalent(a, b, c, d) -> bool:
    # single alpha with a = alpha^3 c, b = alpha^2 d
    if a.is_zero() != c.is_zero() or b.is_zero() != d.is_zero():
        return False
    if a.is_zero() and b.is_zero():
        return True
    if b.is_zero():
        return exists_scaling(a, c, 3)
    if a.is_zero():
        return exists_scaling(b, d, 2)
    alpha = (a / c) / (b / d)
    return alpha**3 * c == a and alpha**2 * d == b


def _m10_equivalent(a, b) -> bool:
    # Y^2 + X^2 b + a = 0 solvable with X != 0
    spec = a.spec
    for x in spec.elements():
        if x.is_zero():
            continue
        for y in spec.elements():
            if (y * y + x * x * b + a).is_zero():
                return True
    return False


def _m11_equivalent(a, b, c, d) -> bool:
    one = a.spec.one
    delta = (b + one) / (d + one)
    return is_square((delta * delta + (b + one) * delta + b) / c) and is_square(a / c)


def _m9_equivalent(v, w) -> bool:
    spec = v.spec
    if spec.characteristic == 2:
        return artin_schreier_solvable(v + w)
    quarter = _quarter(spec)
    return exists_scaling(v + quarter, w + quarter, 2)


def _quarter(spec: FieldSpec):
    if spec.is_rational:
        return spec.element(Fraction(1, 4))
    return spec.element(4).inverse()


def param_equivalent(l1: ClassLabel, l2: ClassLabel) -> bool:
    """The family's isomorphism condition on parameters."""
    if l1.family != l2.family:
        raise ValueError("labels from different families")
    if l1.field != l2.field:
        raise FieldError("labels over different fields")
    fam = l1.family
    p, q = l1.params, l2.params
    if FAMILY_ARITY[fam] == 0:
        return True
    if fam in ("L3", "M3", "M13"):
        return p[0] == q[0]
    if fam == "M6":
        return p == q
    if fam in ("L4", "M14"):
        return exists_scaling(p[0], q[0], 2)
    if fam == "M7":
        return _m7_equivalent(p[0], p[1], q[0], q[1])
    if fam == "M9":
        return _m9_equivalent(p[0], q[0])
    if fam == "M10":
        return _m10_equivalent(p[0], q[0])
    if fam == "M11":
        return _m11_equivalent(p[0], p[1], q[0], q[1])
    raise AssertionError(f"unhandled family {fam}")


# ---------------------------------------------------------------------------
# canonical collapse map
# ---------------------------------------------------------------------------

def _m9_canonical_param(spec: FieldSpec, v):
    if spec.is_finite:
        for a in spec.elements():
            if not t2_minus_t_has_root(a) and _m9_equivalent(v, a):
                return a
        raise AssertionError("no admissible representative found")
    quarter = _quarter(spec)
    return power_free_part(v + quarter, 2) - quarter


def canonicalize(label: ClassLabel) -> CanonicalLabel:
    """Deterministic collapse onto the canonical representative.

    Applies both the in-family parameter normalizations and the cross-family
    identifications: N and (over finite fields) every M10 collapse to
    M13(0), M14(0) to M7(0,0), and M11 over a finite field to M11(1,0).
    """
    fam, params, field = label.family, label.params, label.field

    if fam == "N":
        return CanonicalLabel("M13", (field.zero,), field)
    if fam == "M10":
        if field.is_finite:
            return CanonicalLabel("M13", (field.zero,), field)
        raise InadmissibleLabelError("M10 labels exist over finite fields only")
    if fam == "M11":
        if field.is_finite:
            return CanonicalLabel("M11", (field.one, field.zero), field)
        raise InadmissibleLabelError("M11 labels exist over finite fields only")
    if fam == "M14":
        (a,) = params
        if a.is_zero():
            return CanonicalLabel("M7", (field.zero, field.zero), field)
        return CanonicalLabel("M14", (power_free_part(a, 2),), field)
    if fam == "L4":
        return CanonicalLabel("L4", (power_free_part(params[0], 2),), field)
    if fam == "M7":
        a, b = params
        if a.is_zero() and b.is_zero():
            return CanonicalLabel("M7", (a, b), field)
        if not a.is_zero() and not b.is_zero():
            c = b**3 / (a * a)  # alpha = a/b moves (a, b) to (c, c)
            return CanonicalLabel("M7", (c, c), field)
        if b.is_zero():
            return CanonicalLabel("M7", (power_free_part(a, 3), field.zero), field)
        return CanonicalLabel("M7", (field.zero, power_free_part(b, 2)), field)
    if fam == "M9":
        return CanonicalLabel("M9", (_m9_canonical_param(field, params[0]),), field)
    return CanonicalLabel(fam, params, field)


# ---------------------------------------------------------------------------
# identification
# ---------------------------------------------------------------------------

def _first_std_vector_outside(spec, rows, dim):
    for i in range(dim):
        e = tuple(spec.one if k == i else spec.zero for k in range(dim))
        if any(reduce_against_echelon(spec, rows, e)):
            return e
    raise AssertionError("no complement vector found")


def _coords_in_rows(spec, rows, vec):
    """Coordinates of vec in a reduced echelon row basis."""
    pivots = [next(i for i, x in enumerate(row) if x) for row in rows]
    coords = tuple(vec[p] for p in pivots)
    resid = list(vec)
    for c, row in zip(coords, rows):
        if c:
            resid = [x - c * y for x, y in zip(resid, row)]
    if any(resid):
        raise AssertionError("vector outside the span")
    return coords


def _combine(spec, rows, coords):
    out = [spec.zero] * len(rows[0])
    for c, row in zip(coords, rows):
        if c:
            out = [x + c * y for x, y in zip(out, row)]
    return tuple(out)


def _identify3_with_basis(lie: LieAlgebra):
    """(family, params, basis rows) with the basis realizing the family table."""
    spec = lie.field
    n = 3
    std = [lie.basis_vector(i) for i in range(1, 4)]
    derived = derived_algebra(lie)
    if not derived:
        return "L1", (), std

    if len(derived) == 2:
        w_rows = derived
    else:
        w = derived[0]
        central = all(not any(lie.bracket(w, e)) for e in std)
        if central:
            extra = _first_std_vector_outside(spec, derived, 3)
            w_rows = echelon_basis(spec, [w, extra])
        else:
            w_rows = kernel(lie.ad_vector(w))
            if len(w_rows) != 2:
                raise AssertionError("centralizer of the derived line is not a plane")
        if any(reduce_against_echelon(spec, w_rows, w)):
            raise AssertionError("derived line escaped the abelian plane")

    # safety: W is an abelian ideal
    if any(lie.bracket(w_rows[0], w_rows[1])):
        raise AssertionError("plane is not abelian")
    x = _first_std_vector_outside(spec, w_rows, 3)
    for e in std:
        img = lie.bracket(e, w_rows[0])
        if any(reduce_against_echelon(spec, w_rows, img)):
            raise AssertionError("plane is not an ideal")
        img = lie.bracket(e, w_rows[1])
        if any(reduce_against_echelon(spec, w_rows, img)):
            raise AssertionError("plane is not an ideal")

    m_cols = [
        _coords_in_rows(spec, w_rows, lie.bracket(x, w_rows[0])),
        _coords_in_rows(spec, w_rows, lie.bracket(x, w_rows[1])),
    ]
    m = Matrix.from_columns(spec, m_cols)

    if m[0, 1].is_zero() and m[1, 0].is_zero() and m[0, 0] == m[1, 1]:
        lam = m[0, 0]
        if lam.is_zero():
            raise AssertionError("plane acts trivially but derived is nonzero")
        inv = lam.inverse()
        basis = [w_rows[0], w_rows[1], tuple(inv * c for c in x)]
        return "L2", (), basis

    b = m[0, 0] + m[1, 1]
    a = -(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    # cyclic vector in the plane
    for coords in ((spec.one, spec.zero), (spec.zero, spec.one), (spec.one, spec.one)):
        img = m.apply(coords)
        if coords[0] * img[1] != coords[1] * img[0]:
            u1c, u2c = coords, img
            break
    else:
        raise AssertionError("no cyclic vector for a non-scalar plane action")
    u1 = _combine(spec, w_rows, u1c)
    u2 = _combine(spec, w_rows, u2c)

    if not b.is_zero():
        inv = b.inverse()
        basis = [u1, tuple(inv * c for c in u2), tuple(inv * c for c in x)]
        return "L3", (a / (b * b),), basis
    a_star = power_free_part(a, 2)
    if a.is_zero():
        alpha = spec.one
    elif spec.is_finite:
        alpha = next(
            y for y in spec.elements() if not y.is_zero() and y * y * a == a_star
        )
    else:
        alpha = sqrt_element(a_star / a)
    basis = [u1, tuple(alpha * c for c in u2), tuple(alpha * c for c in x)]
    return "L4", (a_star,), basis


def _restrict_to_rows(lie: LieAlgebra, rows):
    """The subalgebra spanned by echelon rows, as a LieAlgebra in row coords."""
    spec = lie.field
    k = len(rows)
    table = {}
    for i in range(k):
        for j in range(i + 1, k):
            w = lie.bracket(rows[i], rows[j])
            table[(i + 1, j + 1)] = _coords_in_rows(spec, rows, w)
    return LieAlgebra(k, spec, table)


def _kv_class(spec: FieldSpec, v):
    """Class of the extension with normalized plane action [(1,w=1),v]."""
    if spec.characteristic == 2:
        if artin_schreier_solvable(v):
            return "M8", ()
        return "M9", (v,)
    disc = spec.one + 4 * v
    if disc.is_zero():
        return "M13", (spec.zero,)
    if is_square(disc):
        return "M8", ()
    return "M9", (v,)


def _branch_abelian(spec: FieldSpec, d: Matrix):
    """Dim-4 classes from an abelian hyperplane and its outer action."""
    factors = rcf(d).invariant_factors
    if len(factors) == 3:
        lam = -factors[0].coeffs[0]
        if lam.is_zero():
            raise AssertionError("abelian hyperplane with zero action")
        return "M2", ()
    if len(factors) == 2:
        f1, f2 = factors
        s = -f1.coeffs[0]
        quot, rem = divmod(f2, f1)
        if not rem.is_zero():
            raise AssertionError("invariant factor divisibility broke")
        u = -quot.coeffs[0]
        if not s.is_zero():
            return "M3", (u / s,)
        if not u.is_zero():
            return "M4", ()
        return "M5", ()
    (f,) = factors
    s = -f.coeffs[0]
    t = -f.coeffs[1]
    u = -f.coeffs[2]
    if not u.is_zero():
        return "M6", (s / u**3, t / u**2)
    return "M7", (s, t)


def _l4zero_kill_corner(spec, d: Matrix):
    """Conjugate the outer action on the Heisenberg hyperplane so the (3,3)
    pattern entry vanishes; returns the new (u1, v1, u3) triple."""
    u1, v1, u3, v3 = d[0, 0], d[0, 2], d[2, 0], d[2, 2]
    zero, one = spec.zero, spec.one
    if v3.is_zero():
        return u1, v1, u3
    if not v1.is_zero():
        a1, g1, a3, g3 = one, zero, v3, -v1
    elif not u3.is_zero():
        a1, g1, a3, g3 = u3, v3, zero, one
    elif u1.is_zero():
        a1, g1, a3, g3 = zero, one, one, zero
    else:
        if u1 == v3:
            raise AssertionError("diagonal case must be handled before")
        a1, g1, a3, g3 = u1, v3, one, one
    nrm = a1 * g3 - a3 * g1
    phi = Matrix(spec, [[a1, zero, g1], [zero, nrm, zero], [a3, zero, g3]])
    d2 = phi @ d @ phi.inverse()
    # conjugates of derivations keep the derivation shape
    if not (d2[0, 1].is_zero() and d2[2, 1].is_zero() and d2[1, 1] == d2[0, 0] + d2[2, 2]):
        raise AssertionError("conjugation left the derivation family")
    if not d2[2, 2].is_zero():
        raise AssertionError("corner entry survived the conjugation")
    return d2[0, 0], d2[0, 2], d2[2, 0]


def _identify4(lie: LieAlgebra):
    spec = lie.field
    derived = derived_algebra(lie)
    if not derived:
        return "M1", ()

    k_rows = list(derived)
    for i in range(4):
        if len(k_rows) == 3:
            break
        e = lie.basis_vector(i + 1)
        if any(reduce_against_echelon(spec, k_rows, e)):
            k_rows = echelon_basis(spec, k_rows + [e])
    if len(k_rows) != 3:
        raise AssertionError("no hyperplane containing the derived algebra")

    k_alg = _restrict_to_rows(lie, k_rows)
    fam3, params3, basis3 = _identify3_with_basis(k_alg)
    amb = [_combine(spec, k_rows, b) for b in basis3]
    x4 = _first_std_vector_outside(spec, k_rows, 4)

    def coords_in(rows_, vec):
        # rows_ may be an arbitrary basis; solve for the coordinates
        sol = solve_linear(Matrix.from_columns(spec, rows_), vec)
        if sol is None:
            raise AssertionError("bracket escaped the ideal")
        return sol

    def action_matrix(acting, rows3):
        cols = [coords_in(rows3, lie.bracket(acting, r)) for r in rows3]
        return Matrix.from_columns(spec, cols)

    d = action_matrix(x4, amb)

    std_k = construct_raw(fam3, params3, spec)
    ad_cols = [std_k.ad(i).flatten() for i in range(1, 4)]
    inner_sol = solve_linear(Matrix.from_columns(spec, ad_cols), d.flatten())

    if inner_sol is not None:
        if fam3 == "L1":
            raise AssertionError("abelian hyperplane with inner action means abelian")
        # recenter: z = x4 - k is central, and the acting vector of the
        # standard basis extends an abelian hyperplane (b1, b2, z)
        z = list(x4)
        for c, row in zip(inner_sol, amb):
            if c:
                z = [x - c * y for x, y in zip(z, row)]
        rows = [amb[0], amb[1], tuple(z)]
        d2 = action_matrix(amb[2], rows)
        return _branch_abelian(spec, d2)

    if fam3 == "L1":
        return _branch_abelian(spec, d)

    if fam3 == "L2":
        for c in range(3):
            if not d[2, c].is_zero():
                raise AssertionError("action is not a derivation of L2")
        s = d[0, 0] - d[1, 1]
        t = d[0, 1]
        u = d[1, 0]
        if not s.is_zero():
            w = t / (s * s)
            v = u
            if w.is_zero():
                return "M8", ()
            return _kv_class(spec, v * w)
        # s = 0
        if not u.is_zero():
            aa = t / u
            if spec.characteristic == 2:
                return "M10", (aa,)
            return _kv_class(spec, aa - _quarter(spec))
        if not t.is_zero():
            if spec.characteristic == 2:
                return "M10", (spec.zero,)
            return "M13", (spec.zero,)
        raise AssertionError("inner action should have been recentered")

    if fam3 == "L3":
        (a3,) = params3
        if not a3.is_zero():
            u = d[0, 0]
            if u.is_zero():
                raise AssertionError("inner action should have been recentered")
            return _kv_class(spec, a3)
        u = d[0, 0]
        s = d[0, 2]
        if not u.is_zero():
            return _kv_class(spec, spec.zero)  # M8 in every characteristic
        if not s.is_zero():
            return "M6", (spec.zero, spec.zero)
        raise AssertionError("inner action should have been recentered")

    if fam3 == "L4":
        (a4,) = params3
        if not a4.is_zero():
            if spec.characteristic != 2:
                return _kv_class(spec, a4 - _quarter(spec))
            u = d[0, 0]
            w = d[2, 2]
            if w.is_zero():
                return "M10", (a4,)
            if u.is_zero():
                if a4.is_one():
                    return "M11", (spec.one, spec.zero)
                return "M11", (a4, a4)
            b = (u + w) / u
            return "M11", (a4, b)
        u1, v1, u3, v3 = d[0, 0], d[0, 2], d[2, 0], d[2, 2]
        if u1 == v3 and not u1.is_zero() and v1.is_zero() and u3.is_zero():
            return "M12", ()
        u1, v1, u3 = _l4zero_kill_corner(spec, d)
        if not u1.is_zero():
            return "M13", (v1 * u3 / (u1 * u1),)
        return "M14", (v1 * u3,)

    raise AssertionError(f"unexpected hyperplane family {fam3}")


def identify(lie: LieAlgebra) -> CanonicalLabel:
    """Canonical label of a solvable algebra of dimension <= 4."""
    if lie.dim > 4:
        raise ValueError("identification supports dimension at most 4")
    report = validate(lie)
    if not report:
        raise ValueError(f"not a Lie algebra: {report.message}")
    prof = solvability_profile(lie)
    if not prof.is_solvable:
        raise NonSolvableError("algebra is not solvable")
    spec = lie.field
    if lie.dim == 1:
        return CanonicalLabel("A1", (), spec)
    if lie.dim == 2:
        return CanonicalLabel("A2" if not lie.table else "AFF2", (), spec)
    if lie.dim == 3:
        fam, params, _ = _identify3_with_basis(lie)
        return canonicalize(ClassLabel(fam, params, spec))
    fam, params = _identify4(lie)
    return canonicalize(ClassLabel(fam, params, spec))


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------

def _prime_power(q: int):
    p = None
    for f in range(2, q + 1):
        if q % f == 0:
            p = f
            break
    if p is None:
        raise ValueError("q must be at least 2")
    n, m = q, 0
    while n % p == 0:
        n //= p
        m += 1
    if n != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, m


def count_classes(dim: int, q: int) -> int:
    """Number of isomorphism classes of solvable algebras over F_q."""
    p, _ = _prime_power(q)
    if dim == 3:
        return q + 5 if p != 2 else q + 4
    if dim == 4:
        extra = {1: 5, 2: 2, 3: 3, 4: 4, 5: 3}[q % 6]
        return q * q + 3 * q + 9 + extra
    raise ValueError("counting supports dimensions 3 and 4")


def _square_class_reps(spec: FieldSpec):
    reps = []
    for x in spec.elements():
        if x.is_zero():
            continue
        r = power_free_part(x, 2)
        if r not in reps:
            reps.append(r)
    return reps


def _cube_class_reps(spec: FieldSpec):
    reps = []
    for x in spec.elements():
        if x.is_zero():
            continue
        r = power_free_part(x, 3)
        if r not in reps:
            reps.append(r)
    return reps


def dim3_canonical_labels(spec: FieldSpec):
    labels = [CanonicalLabel("L1", (), spec), CanonicalLabel("L2", (), spec)]
    labels += [CanonicalLabel("L3", (a,), spec) for a in spec.elements()]
    labels.append(CanonicalLabel("L4", (spec.zero,), spec))
    labels += [CanonicalLabel("L4", (a,), spec) for a in _square_class_reps(spec)]
    return labels


def dim4_canonical_labels(spec: FieldSpec):
    zero, one = spec.zero, spec.one
    labels = [CanonicalLabel("M1", (), spec), CanonicalLabel("M2", (), spec)]
    labels += [CanonicalLabel("M3", (a,), spec) for a in spec.elements()]
    labels += [CanonicalLabel("M4", (), spec), CanonicalLabel("M5", (), spec)]
    labels += [
        CanonicalLabel("M6", (a, b), spec)
        for a in spec.elements()
        for b in spec.elements()
    ]
    labels += [CanonicalLabel("M7", (a, a), spec) for a in spec.elements()]
    labels += [CanonicalLabel("M7", (a, zero), spec) for a in _cube_class_reps(spec)]
    labels += [CanonicalLabel("M7", (zero, b), spec) for b in _square_class_reps(spec)]
    labels.append(CanonicalLabel("M8", (), spec))
    labels.append(CanonicalLabel("M9", (_m9_min_admissible(spec),), spec))
    if spec.characteristic == 2:
        labels.append(CanonicalLabel("M11", (one, zero), spec))
    labels.append(CanonicalLabel("M12", (), spec))
    labels += [CanonicalLabel("M13", (a,), spec) for a in spec.elements()]
    labels += [CanonicalLabel("M14", (a,), spec) for a in _square_class_reps(spec)]
    return labels


def _m9_min_admissible(spec: FieldSpec):
    for a in spec.elements():
        if not t2_minus_t_has_root(a):
            return a
    raise AssertionError("every quadratic splits; no admissible parameter")
