# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled census kernel; mirrors solvlie._pykernel exactly."""

from libc.stdlib cimport malloc, free

from solvlie._pykernel import jacobi_terms

KERNEL_KIND = "compiled"


def jacobi_filter(int dim, int q, add, mul, neg, long long start, long long stop):
    """Return the valid tables with linear index in [start, stop) as bytes."""
    cdef int nconst = dim * (dim - 1) // 2 * dim
    conditions = jacobi_terms(dim)

    cdef int ncond = len(conditions)
    cdef int total_terms = 0
    for terms in conditions:
        total_terms += len(terms)

    cdef unsigned char *cadd = <unsigned char *> malloc(q * q)
    cdef unsigned char *cmul = <unsigned char *> malloc(q * q)
    cdef unsigned char *cneg = <unsigned char *> malloc(q)
    cdef int *cond_off = <int *> malloc((ncond + 1) * sizeof(int))
    cdef int *term_a = <int *> malloc(total_terms * sizeof(int))
    cdef int *term_b = <int *> malloc(total_terms * sizeof(int))
    cdef unsigned char *term_ng = <unsigned char *> malloc(total_terms)
    cdef unsigned char *digits = <unsigned char *> malloc(nconst)

    cdef int i, t
    cdef long long n, count, step
    cdef int c_i, acc, v, ca, pos, d
    cdef bint ok

    if not (cadd and cmul and cneg and cond_off and term_a and term_b and term_ng and digits):
        raise MemoryError()

    try:
        for i in range(q * q):
            cadd[i] = add[i]
            cmul[i] = mul[i]
        for i in range(q):
            cneg[i] = neg[i]
        t = 0
        for i in range(ncond):
            cond_off[i] = t
            for sa, sb, ng in conditions[i]:
                term_a[t] = sa
                term_b[t] = sb
                term_ng[t] = 1 if ng else 0
                t += 1
        cond_off[ncond] = t

        n = start
        for i in range(nconst):
            digits[i] = n % q
            n //= q

        out = []
        count = stop - start
        for step in range(count):
            ok = True
            for c_i in range(ncond):
                acc = 0
                for t in range(cond_off[c_i], cond_off[c_i + 1]):
                    ca = digits[term_a[t]]
                    if ca == 0:
                        continue
                    v = cmul[ca * q + digits[term_b[t]]]
                    if term_ng[t]:
                        v = cneg[v]
                    acc = cadd[acc * q + v]
                if acc != 0:
                    ok = False
                    break
            if ok:
                out.append((<char *> digits)[:nconst])
            pos = 0
            while pos < nconst:
                d = digits[pos] + 1
                if d < q:
                    digits[pos] = d
                    break
                digits[pos] = 0
                pos += 1
        return out
    finally:
        free(cadd); free(cmul); free(cneg); free(cond_off)
        free(term_a); free(term_b); free(term_ng); free(digits)
