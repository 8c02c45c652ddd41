# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels (64-bit fast path).

Integer kernels raise OverflowError when an intermediate leaves the int64
range; ``cremona.kernels`` then retries with the pure-Python version.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static int _mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static int _add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static int _sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int _mul_ovf(long long a, long long b, long long *r)
    int _add_ovf(long long a, long long b, long long *r)
    int _sub_ovf(long long a, long long b, long long *r)


cdef int _reduce_inplace(long long *a, Py_ssize_t n, long long *phi, Py_ssize_t d) except -1:
    cdef Py_ssize_t i, j, base
    cdef long long c, t
    for i in range(n - 1, d - 1, -1):
        c = a[i]
        if c:
            base = i - d
            for j in range(d):
                if phi[j]:
                    if _mul_ovf(c, phi[j], &t) or _sub_ovf(a[base + j], t, &a[base + j]):
                        raise OverflowError("int64 overflow in reduction")
            a[i] = 0
    return 0


def reduce_raw(raw, phi):
    cdef Py_ssize_t d = len(phi) - 1
    cdef Py_ssize_t n = len(raw)
    cdef Py_ssize_t m = n if n > d else d
    cdef Py_ssize_t i
    cdef long long *a = <long long *> malloc(m * sizeof(long long))
    cdef long long *p = <long long *> malloc((d + 1) * sizeof(long long))
    try:
        for i in range(m):
            a[i] = raw[i] if i < n else 0
        for i in range(d + 1):
            p[i] = phi[i]
        _reduce_inplace(a, m, p, d)
        return [a[i] for i in range(d)]
    finally:
        free(a)
        free(p)


def mul_reduce(a, b, phi):
    cdef Py_ssize_t d = len(phi) - 1
    cdef Py_ssize_t n = 2 * d - 1 if d > 0 else 1
    cdef Py_ssize_t i, j
    cdef long long t
    cdef long long *ca = <long long *> malloc(d * sizeof(long long))
    cdef long long *cb = <long long *> malloc(d * sizeof(long long))
    cdef long long *raw = <long long *> malloc(n * sizeof(long long))
    cdef long long *p = <long long *> malloc((d + 1) * sizeof(long long))
    try:
        for i in range(d):
            ca[i] = a[i]
            cb[i] = b[i]
        for i in range(d + 1):
            p[i] = phi[i]
        for i in range(n):
            raw[i] = 0
        for i in range(d):
            if ca[i]:
                for j in range(d):
                    if cb[j]:
                        if _mul_ovf(ca[i], cb[j], &t) or _add_ovf(raw[i + j], t, &raw[i + j]):
                            raise OverflowError("int64 overflow in product")
        _reduce_inplace(raw, n, p, d)
        return [raw[i] for i in range(d)]
    finally:
        free(ca)
        free(cb)
        free(raw)
        free(p)


def cayley_table(right, words):
    cdef Py_ssize_t n = len(right)
    cdef Py_ssize_t k = len(right[0]) if n else 0
    cdef Py_ssize_t i, j, g, x
    cdef int *r = <int *> malloc(n * k * sizeof(int) + 1)
    cdef int *row = <int *> malloc(n * sizeof(int) + 1)
    try:
        for i in range(n):
            ri = right[i]
            for g in range(k):
                r[i * k + g] = ri[g]
        table = []
        for i in range(n):
            for j in range(n):
                x = i
                for g in words[j]:
                    x = r[x * k + g]
                row[j] = x
            table.append([row[j] for j in range(n)])
        return table
    finally:
        free(r)
        free(row)


def extend_hom(right_src, words_src, table_dst, images, int identity_dst):
    cdef Py_ssize_t n = len(right_src)
    cdef Py_ssize_t m = len(table_dst)
    cdef Py_ssize_t k = len(images)
    cdef Py_ssize_t i, j, g
    cdef int x
    cdef int *f = <int *> malloc(n * sizeof(int) + 1)
    cdef int *rs = <int *> malloc(n * k * sizeof(int) + 1)
    cdef int *cols = <int *> malloc(m * k * sizeof(int) + 1)
    try:
        for i in range(n):
            ri = right_src[i]
            for g in range(k):
                rs[i * k + g] = ri[g]
        for i in range(m):
            ti = table_dst[i]
            for g in range(k):
                cols[i * k + g] = ti[images[g]]
        f[0] = identity_dst
        for j in range(1, n):
            x = identity_dst
            for g in words_src[j]:
                x = cols[x * k + g]
            f[j] = x
        for i in range(n):
            for g in range(k):
                if f[rs[i * k + g]] != cols[f[i] * k + g]:
                    return None
        return [f[i] for i in range(n)]
    finally:
        free(f)
        free(rs)
        free(cols)
