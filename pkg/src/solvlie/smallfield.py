"""Table-driven arithmetic for small finite fields.

Elements are coded by their coefficient-value index 0..q-1 (for prime fields
this is the usual residue).  Flat operation tables make the hot paths
(census filtering, brute-force isomorphism search) cheap and let prime and
extension fields share code; they are also the arithmetic handed to the
census kernels.
"""

from __future__ import annotations

from solvlie.field import FieldError, FieldSpec

__all__ = ["SmallField", "algebra_int_table", "int_table_algebra"]


class SmallField:
    __slots__ = ("spec", "q", "add", "mul", "neg", "inv", "elems")

    def __init__(self, spec: FieldSpec):
        if not spec.is_finite:
            raise FieldError("SmallField needs a finite field")
        elems = list(spec.elements())
        q = len(elems)
        add = bytearray(q * q)
        mul = bytearray(q * q)
        neg = bytearray(q)
        inv = bytearray(q)
        for i, x in enumerate(elems):
            neg[i] = (-x).index()
            if i:
                inv[i] = x.inverse().index()
            for j, y in enumerate(elems):
                add[i * q + j] = (x + y).index()
                mul[i * q + j] = (x * y).index()
        self.spec = spec
        self.q = q
        self.add = bytes(add)
        self.mul = bytes(mul)
        self.neg = bytes(neg)
        self.inv = bytes(inv)
        self.elems = elems

    def decode(self, i: int):
        return self.elems[i]

    def encode(self, x) -> int:
        return x.index()

    # -- vector helpers (tuples/lists of int codes) --------------------------

    def vec_add(self, u, v):
        add, q = self.add, self.q
        return tuple(add[a * q + b] for a, b in zip(u, v))

    def vec_scale(self, c, u):
        mul, q = self.mul, self.q
        return tuple(mul[c * q + a] for a in u)

    def vec_sub(self, u, v):
        add, neg, q = self.add, self.neg, self.q
        return tuple(add[a * q + neg[b]] for a, b in zip(u, v))

    def eliminate(self, rows, vec):
        """Reduce vec against echelon rows [(pivot_index, row), ...]."""
        v = list(vec)
        add, mul, neg, q = self.add, self.mul, self.neg, self.q
        for p, row in rows:
            c = v[p]
            if c:
                nc = neg[c]
                for k in range(len(v)):
                    v[k] = add[v[k] * q + mul[nc * q + row[k]]]
        return v

    def echelon_insert(self, rows, vec):
        """Insert vec into an echelon list; returns False if dependent."""
        v = self.eliminate(rows, vec)
        p = next((k for k, c in enumerate(v) if c), None)
        if p is None:
            return False
        c = self.inv[v[p]]
        rows.append((p, tuple(self.mul[c * self.q + a] for a in v)))
        return True


def _pair_slots(dim: int):
    pairs = [(i, j) for i in range(dim) for j in range(i + 1, dim)]
    return pairs, {pq: k for k, pq in enumerate(pairs)}


def algebra_int_table(lie, sf: SmallField):
    """Flat pair-major int table of a LieAlgebra (kernel layout)."""
    n = lie.dim
    pairs, _ = _pair_slots(n)
    flat = bytearray(len(pairs) * n)
    for k, (i, j) in enumerate(pairs):
        vec = lie.bracket_basis(i + 1, j + 1)
        for r in range(n):
            flat[k * n + r] = vec[r].index()
    return bytes(flat)


def int_table_algebra(flat, dim: int, sf: SmallField):
    from solvlie.liealg import LieAlgebra

    pairs, _ = _pair_slots(dim)
    table = {}
    for k, (i, j) in enumerate(pairs):
        coeffs = tuple(sf.decode(flat[k * dim + r]) for r in range(dim))
        if any(coeffs):
            table[(i + 1, j + 1)] = coeffs
    return LieAlgebra(dim, sf.spec, table)


class IntAlgebra:
    """Bracket operations on an int-coded structure-constant table."""

    __slots__ = ("sf", "dim", "flat", "pair_idx")

    def __init__(self, sf: SmallField, dim: int, flat):
        self.sf = sf
        self.dim = dim
        self.flat = flat
        _, self.pair_idx = _pair_slots(dim)

    def bracket_basis(self, i: int, j: int):
        """[x_i, x_j] with 0-based indices."""
        n = self.dim
        if i == j:
            return (0,) * n
        if i < j:
            k = self.pair_idx[(i, j)]
            return tuple(self.flat[k * n : k * n + n])
        k = self.pair_idx[(j, i)]
        neg = self.sf.neg
        return tuple(neg[c] for c in self.flat[k * n : k * n + n])

    def bracket(self, u, v):
        sf = self.sf
        n = self.dim
        q = sf.q
        add, mul = sf.add, sf.mul
        out = [0] * n
        for i in range(n):
            ui = u[i]
            if not ui:
                continue
            for j in range(n):
                vj = v[j]
                if not vj or i == j:
                    continue
                c = mul[ui * q + vj]
                if not c:
                    continue
                base = self.bracket_basis(i, j)
                for r in range(n):
                    if base[r]:
                        out[r] = add[out[r] * q + mul[c * q + base[r]]]
        return tuple(out)

    def derived_rows(self):
        sf = self.sf
        rows = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                vec = self.bracket_basis(i, j)
                if any(vec):
                    sf.echelon_insert(rows, vec)
        return rows

    def is_solvable(self) -> bool:
        sf = self.sf
        span = [row for _, row in self.derived_rows()]
        while span:
            rows = []
            for a in range(len(span)):
                for b in range(a + 1, len(span)):
                    vec = self.bracket(span[a], span[b])
                    if any(vec):
                        sf.echelon_insert(rows, vec)
            nxt = [row for _, row in rows]
            if len(nxt) == len(span):
                return False
            span = nxt
        return True
