"""Pure-Python census kernel: enumerate structure-constant tables and keep
those defining a Lie algebra (alternating by construction, Jacobi checked).

Tables are flat digit strings over 0..q-1: for basis pairs (i < j) in
lexicographic order, ``dim`` constants per pair, pair-major layout.  The
table with linear index ``n`` has digits of ``n`` base q, least significant
digit first.  Field arithmetic is table-driven (``add``/``mul``/``neg`` maps)
so prime and extension fields are handled alike.
"""

from __future__ import annotations

KERNEL_KIND = "pure"


def pair_order(dim: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(dim) for j in range(i + 1, dim)]


def table_count(dim: int, q: int) -> int:
    return q ** (dim * (dim - 1) // 2 * dim)


def jacobi_terms(dim: int):
    """Flattened Jacobi conditions: one term list per (triple, component).

    Each term is ``(slot_a, slot_b, negate)``; the condition is that the
    field sum of ``c[slot_a] * c[slot_b]`` (negated where flagged) vanishes.
    """
    pairs = pair_order(dim)
    pair_idx = {pq: n for n, pq in enumerate(pairs)}

    def bracket_slot(m, k):
        # returns (pair slot of [x_m, x_k], sign flip) or None when m == k
        if m == k:
            return None
        if m < k:
            return pair_idx[(m, k)], False
        return pair_idx[(k, m)], True

    conditions = []
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                groups = [
                    (pair_idx[(i, j)], k, False),
                    (pair_idx[(j, k)], i, False),
                    (pair_idx[(i, k)], j, True),  # [x_k,x_i] = -[x_i,x_k]
                ]
                for r in range(dim):
                    terms = []
                    for p_ab, other, flip in groups:
                        for m in range(dim):
                            slot_b = bracket_slot(m, other)
                            if slot_b is None:
                                continue
                            sb, bneg = slot_b
                            terms.append(
                                (p_ab * dim + m, sb * dim + r, flip ^ bneg)
                            )
                    conditions.append(tuple(terms))
    return conditions


def jacobi_filter(dim, q, add, mul, neg, start, stop):
    """Return the valid tables with linear index in [start, stop) as bytes."""
    nconst = dim * (dim - 1) // 2 * dim
    conditions = jacobi_terms(dim)

    digits = bytearray(nconst)
    n = start
    for pos in range(nconst):
        n, digits[pos] = divmod(n, q)

    out = []
    for _ in range(stop - start):
        ok = True
        for terms in conditions:
            acc = 0
            for sa, sb, ng in terms:
                ca = digits[sa]
                if not ca:
                    continue
                v = mul[ca * q + digits[sb]]
                acc = add[acc * q + (neg[v] if ng else v)]
            if acc:
                ok = False
                break
        if ok:
            out.append(bytes(digits))
        pos = 0
        while pos < nconst:
            d = digits[pos] + 1
            if d < q:
                digits[pos] = d
                break
            digits[pos] = 0
            pos += 1
    return out
