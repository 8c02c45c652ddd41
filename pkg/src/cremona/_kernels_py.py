"""Pure-Python versions of the hot kernels.

Every function here has an identically named counterpart in ``_kernels.pyx``.
The compiled module is preferred when it imports; see ``cremona.kernels``.
"""

from __future__ import annotations


def reduce_raw(raw, phi):
    """Reduce an integer coefficient list modulo the monic polynomial ``phi``.

    ``phi`` is given low degree first and has leading coefficient 1.
    Returns a list of length ``len(phi) - 1``.
    """
    d = len(phi) - 1
    a = list(raw)
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            base = i - d
            for j in range(d):
                pj = phi[j]
                if pj:
                    a[base + j] -= c * pj
            a[i] = 0
    if len(a) < d:
        a.extend([0] * (d - len(a)))
    return a[:d]


def mul_reduce(a, b, phi):
    """Product of two reduced integer vectors, reduced modulo ``phi``."""
    d = len(phi) - 1
    raw = [0] * (2 * d - 1 if d else 1)
    for i in range(d):
        ai = a[i]
        if ai:
            for j in range(d):
                bj = b[j]
                if bj:
                    raw[i + j] += ai * bj
    return reduce_raw(raw, phi)


def cayley_table(right, words):
    """Full multiplication table from a right Cayley graph.

    ``right[i][g]`` is the index of ``element_i * gen_g`` and ``words[j]`` a
    word in generator indices evaluating to element ``j`` from the identity.
    Entry ``[i][j]`` of the result is the index of ``element_i * element_j``.
    """
    n = len(right)
    table = []
    for i in range(n):
        row = [0] * n
        for j in range(n):
            x = i
            for g in words[j]:
                x = right[x][g]
            row[j] = x
        table.append(row)
    return table


def extend_hom(right_src, words_src, table_dst, images, identity_dst):
    """Extend generator images to a homomorphism, or return None.

    Walks the source Cayley graph; every edge ``i -> i*g`` must map to
    ``f(i) -> f(i)*images[g]`` in the target.
    """
    n = len(right_src)
    f = [-1] * n
    f[0] = identity_dst
    for j in range(1, n):
        w = words_src[j]
        x = identity_dst
        for g in w:
            x = table_dst[x][images[g]]
        f[j] = x
    k = len(images)
    for i in range(n):
        fi = f[i]
        ri = right_src[i]
        for g in range(k):
            if f[ri[g]] != table_dst[fi][images[g]]:
                return None
    return f
