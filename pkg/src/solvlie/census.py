"""Brute-force census of solvable algebras over small finite fields,
automorphism groups, and one-dimensional extension classification.

The census enumerates every antisymmetric structure-constant table,
keeps the Jacobi-satisfying solvable ones (the kernel does the hot
filtering) and buckets them by canonical label.  Keying by identification
costs O(N) instead of O(N^2) pairwise isomorphism tests; sampled buckets
are cross-checked against the exhaustive oracle in the test suite.
"""

from __future__ import annotations

import itertools
import multiprocessing
from collections import Counter

from solvlie import kernel as _kernel
from solvlie.catalog import CanonicalLabel, identify, parse_label
from solvlie.field import FieldSpec, GF
from solvlie.iso import SearchLimitError, brute_force_iso
from solvlie.liealg import (
    LieAlgebra,
    derivations,
    extend_by_derivation,
    inner_derivations,
    solvability_profile,
)
from solvlie.linalg import Matrix
from solvlie.smallfield import IntAlgebra, SmallField, algebra_int_table, int_table_algebra

__all__ = [
    "enumerate_solvable",
    "census",
    "aut_group",
    "classify_extensions",
]

ENUMERATION_LIMIT = 2**25
CHUNK = 1 << 17


def _check_size(dim: int, q: int):
    if dim not in (3, 4):
        raise ValueError("census supports dimensions 3 and 4")
    total = _kernel.table_count(dim, q)
    if total > ENUMERATION_LIMIT:
        raise SearchLimitError(
            f"{q}^{dim * (dim - 1) // 2 * dim} tables exceed the enumeration limit"
        )
    return total


def enumerate_solvable(dim: int, q: int):
    """Stream every valid solvable table once, as LieAlgebra values."""
    total = _check_size(dim, q)
    spec = GF(q)
    sf = SmallField(spec)
    for start in range(0, total, CHUNK):
        stop = min(start + CHUNK, total)
        for flat in _kernel.jacobi_filter(dim, sf.q, sf.add, sf.mul, sf.neg, start, stop):
            if IntAlgebra(sf, dim, flat).is_solvable():
                yield int_table_algebra(flat, dim, sf)


# ---------------------------------------------------------------------------
# fast dimension-3 labeling on int tables (agrees with catalog.identify;
# cross-checked exhaustively in the tests)
# ---------------------------------------------------------------------------

def _int_kernel3(sf: SmallField, cols):
    """Kernel of the 3x3 int matrix with the given columns."""
    q = sf.q
    rows = [[cols[j][i] for j in range(3)] for i in range(3)]
    pivots = []
    r = 0
    for c in range(3):
        pr = next((i for i in range(r, 3) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = sf.inv[rows[r][c]]
        rows[r] = [sf.mul[inv * q + x] for x in rows[r]]
        for i in range(3):
            if i != r and rows[i][c]:
                f = sf.neg[rows[i][c]]
                rows[i] = [
                    sf.add[x * q + sf.mul[f * q + y]]
                    for x, y in zip(rows[i], rows[r])
                ]
        pivots.append(c)
        r += 1
    basis = []
    for fc in range(3):
        if fc in pivots:
            continue
        v = [0, 0, 0]
        v[fc] = 1
        for rr, pc in enumerate(pivots):
            v[pc] = sf.neg[rows[rr][fc]]
        basis.append(tuple(v))
    return basis


def _label3_fast(sf: SmallField, alg: IntAlgebra, sq_min, cube_min) -> str:
    q = sf.q
    add, mul, neg, inv = sf.add, sf.mul, sf.neg, sf.inv
    derived = [row for _, row in alg.derived_rows()]
    if not derived:
        return "L1"
    std = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    if len(derived) == 2:
        w_rows = derived
    else:
        w = derived[0]
        if all(not any(alg.bracket(e, w)) for e in std):
            rows = []
            sf.echelon_insert(rows, w)
            for e in std:
                if sf.echelon_insert(rows, e):
                    break
            w_rows = [row for _, row in rows]
        else:
            cols = [alg.bracket(e, w) for e in std]
            w_rows = _int_kernel3(sf, cols)
    rows_ech = []
    for v in w_rows:
        sf.echelon_insert(rows_ech, v)
    pivots = [p for p, _ in rows_ech]
    w_rows = [row for _, row in rows_ech]
    x = next(
        e for e in std if any(sf.eliminate(rows_ech, e))
    )
    m = []
    for wr in w_rows:
        img = alg.bracket(x, wr)
        m.append((img[pivots[0]], img[pivots[1]]))
    m00, m01 = m[0][0], m[1][0]
    m10, m11 = m[0][1], m[1][1]
    if m01 == 0 and m10 == 0 and m00 == m11:
        return "L2"
    b = add[m00 * q + m11]
    det = add[mul[m00 * q + m11] * q + neg[mul[m01 * q + m10]]]
    a = neg[det]
    if b:
        ib = inv[b]
        param = mul[a * q + mul[ib * q + ib]]
        return f"L3({sf.decode(param)})"
    return f"L4({sf.decode(sq_min[a])})"


def _class_tables(sf: SmallField):
    q = sf.q
    sq_min = [0] * q
    cube_min = [0] * q
    for x in range(q):
        best2 = best3 = None
        for alpha in range(1, q):
            y2 = sf.mul[sf.mul[alpha * q + alpha] * q + x]
            a3 = sf.mul[sf.mul[alpha * q + alpha] * q + alpha]
            y3 = sf.mul[a3 * q + x]
            best2 = y2 if best2 is None else min(best2, y2)
            best3 = y3 if best3 is None else min(best3, y3)
        sq_min[x] = best2
        cube_min[x] = best3
    return sq_min, cube_min


def _census_range(args):
    dim, q, start, stop = args
    spec = GF(q)
    sf = SmallField(spec)
    sq_min, cube_min = _class_tables(sf)
    counts = Counter()
    for flat in _kernel.jacobi_filter(dim, sf.q, sf.add, sf.mul, sf.neg, start, stop):
        alg = IntAlgebra(sf, dim, flat)
        if not alg.is_solvable():
            continue
        if dim == 3:
            counts[_label3_fast(sf, alg, sq_min, cube_min)] += 1
        else:
            counts[str(identify(int_table_algebra(flat, dim, sf)))] += 1
    return counts


def census(dim: int, q: int, workers: int = 1) -> dict:
    """Bucket every valid solvable table by canonical label."""
    total = _check_size(dim, q)
    spec = GF(q)
    pieces = max(workers * 4, 1)
    step = -(-total // pieces)
    jobs = [
        (dim, q, start, min(start + step, total)) for start in range(0, total, step)
    ]
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            parts = pool.map(_census_range, jobs)
    else:
        parts = [_census_range(j) for j in jobs]
    merged = Counter()
    for part in parts:
        merged.update(part)
    out = {}
    for text, count in sorted(merged.items()):
        lab = parse_label(text, spec)
        out[CanonicalLabel(lab.family, lab.params, spec)] = count
    return out


# ---------------------------------------------------------------------------
# automorphism groups and the extension procedure
# ---------------------------------------------------------------------------

AUT_LIMIT = 2**22


def aut_group(k: LieAlgebra) -> list[Matrix]:
    """All bracket-preserving invertible matrices, by pruned column search."""
    if not k.field.is_finite:
        raise ValueError("automorphism enumeration needs a finite field")
    n = k.dim
    sf = SmallField(k.field)
    q = sf.q
    if q ** (n * n) > AUT_LIMIT:
        raise SearchLimitError(f"GL({n},{q}) search exceeds the limit")
    alg = IntAlgebra(sf, n, algebra_int_table(k, sf))
    schedule = [[] for _ in range(n + 1)]
    for i in range(n):
        for j in range(i + 1, n):
            vec = alg.bracket_basis(i, j)
            support = max((m for m, c in enumerate(vec) if c), default=-1)
            schedule[max(j, support) + 1].append((i, j, vec))
    vectors = list(itertools.product(range(q), repeat=n))
    found = []
    images = [None] * n

    def extend(col, rows):
        for cand in vectors:
            rows_copy = list(rows)
            if not sf.echelon_insert(rows_copy, cand):
                continue
            images[col] = cand
            ok = True
            for i, j, vec in schedule[col + 1]:
                lhs = alg.bracket(images[i], images[j])
                rhs = (0,) * n
                for mm, c in enumerate(vec):
                    if c:
                        rhs = sf.vec_add(rhs, sf.vec_scale(c, images[mm]))
                if lhs != rhs:
                    ok = False
                    break
            if ok:
                if col + 1 == n:
                    found.append(tuple(images))
                else:
                    extend(col + 1, rows_copy)
        images[col] = None

    extend(0, [])
    out = []
    for img in found:
        cols = [[sf.decode(c) for c in v] for v in img]
        out.append(Matrix.from_columns(k.field, cols))
    return out


ORBIT_WORK_LIMIT = 10**7


def _int_matrix(sf, m: Matrix):
    return tuple(tuple(c.index() for c in row) for row in m.entries)


def _mat_mul(sf, a, b):
    q = sf.q
    n = len(a)
    return tuple(
        tuple(
            _dot(sf, [a[i][k] for k in range(n)], [b[k][j] for k in range(n)])
            for j in range(n)
        )
        for i in range(n)
    )


def _dot(sf, u, v):
    acc = 0
    q = sf.q
    for a, b in zip(u, v):
        if a and b:
            acc = sf.add[acc * q + sf.mul[a * q + b]]
    return acc


def classify_extensions(k: LieAlgebra) -> list[LieAlgebra]:
    """One (dim+1)-extension per orbit of scalings and automorphisms acting
    on the outer-derivation cosets, with isomorphic duplicates weeded out by
    the exhaustive oracle."""
    spec = k.field
    if not spec.is_finite:
        raise ValueError("extension classification needs a finite field")
    n = k.dim
    sf = SmallField(spec)
    q = sf.q

    ders = derivations(k)
    inner = inner_derivations(k)
    inner_rows = []
    for d in inner:
        sf.echelon_insert(inner_rows, tuple(c.index() for c in d.matrix.flatten()))
    outer_basis = []
    probe_rows = list(inner_rows)
    for d in ders:
        flat = tuple(c.index() for c in d.matrix.flatten())
        if sf.echelon_insert(probe_rows, flat):
            outer_basis.append(flat)

    group = aut_group(k)
    autos = [_int_matrix(sf, a) for a in group]
    inv_autos = [_int_matrix(sf, a.inverse()) for a in group]
    coset_count = q ** len(outer_basis)
    if coset_count * max(len(autos), 1) * max(q - 1, 1) > ORBIT_WORK_LIMIT:
        raise SearchLimitError("orbit computation exceeds the work limit")

    def reduce_coset(flat):
        return tuple(sf.eliminate(inner_rows, flat))

    def flat_to_mat(flat):
        return tuple(
            tuple(flat[j * n + i] for j in range(n)) for i in range(n)
        )

    def mat_to_flat(m):
        return tuple(m[i][j] for j in range(n) for i in range(n))

    reps = []
    seen = set()
    for coeffs in itertools.product(range(q), repeat=len(outer_basis)):
        flat = (0,) * (n * n)
        for c, basis_vec in zip(coeffs, outer_basis):
            if c:
                flat = sf.vec_add(flat, sf.vec_scale(c, basis_vec))
        key = reduce_coset(flat)
        if key in seen:
            continue
        # new orbit: close it under the group action
        reps.append(key)
        frontier = [key]
        seen.add(key)
        while frontier:
            current = frontier.pop()
            dmat = flat_to_mat(current)
            for sigma, sigma_inv in zip(autos, inv_autos):
                conj = _mat_mul(sf, sigma, _mat_mul(sf, dmat, sigma_inv))
                base = mat_to_flat(conj)
                for lam in range(1, q):
                    moved = reduce_coset(sf.vec_scale(lam, base))
                    if moved not in seen:
                        seen.add(moved)
                        frontier.append(moved)

    extensions = []
    for key in reps:
        cols = [
            [sf.decode(key[j * n + i]) for i in range(n)] for j in range(n)
        ]
        dm = Matrix.from_columns(spec, cols)
        extensions.append(extend_by_derivation(k, dm))

    # weed out isomorphic duplicates across orbits
    kept = []
    profiles = []
    for ext in extensions:
        prof = solvability_profile(ext)
        sig = (prof.derived_dims, prof.lower_central_dims)
        dup = False
        for other, osig in zip(kept, profiles):
            if sig == osig and brute_force_iso(ext, other) is not None:
                dup = True
                break
        if not dup:
            kept.append(ext)
            profiles.append(sig)
    return kept
