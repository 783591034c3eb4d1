# cython: language_level=3
"""Compiled kernels: exact-integer twins of compsigns._kernels_py.

Coefficient values stay Python ints (arbitrary precision); only loop
bookkeeping is typed.  Semantics must match _kernels_py bit for bit; the
test suite compares both backends on random inputs.
"""

from math import comb


def conv(list a, list b):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j
    cdef list out
    cdef object ai, bj
    if la == 0 or lb == 0:
        return []
    out = [0] * (la + lb - 1)
    for i in range(la):
        ai = a[i]
        if ai:
            for j in range(lb):
                bj = b[j]
                if bj:
                    out[i + j] = out[i + j] + ai * bj
    return out


def conv_trunc(list a, list b, Py_ssize_t order):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, top
    cdef list out = [0] * (order + 1)
    cdef object ai, bj
    for i in range(la):
        if i > order:
            break
        ai = a[i]
        if ai:
            top = lb - 1
            if order - i < top:
                top = order - i
            for j in range(top + 1):
                bj = b[j]
                if bj:
                    out[i + j] = out[i + j] + ai * bj
    return out


def comp_poly_rows(list members, Py_ssize_t n_max):
    cdef list rows = [[1]]
    cdef Py_ssize_t n, i, a, k, lp, lm = len(members)
    cdef list cur, prev
    cdef object c
    for n in range(1, n_max + 1):
        cur = [0] * (n + 1)
        for k in range(lm):
            a = members[k]
            if a > n:
                break
            prev = rows[n - a]
            lp = len(prev)
            for i in range(lp):
                c = prev[i]
                if c:
                    cur[i + 1] = cur[i + 1] + c
        while len(cur) > 0 and not cur[len(cur) - 1]:
            cur.pop()
        rows.append(cur)
    return rows


def eval_table(list members, Py_ssize_t n_max, t):
    cdef list vals = [1] + [0] * n_max
    cdef Py_ssize_t n, k, a, lm = len(members)
    cdef object s
    for n in range(1, n_max + 1):
        s = 0
        for k in range(lm):
            a = members[k]
            if a > n:
                break
            s = s + vals[n - a]
        vals[n] = t * s
    return vals


def delta_eval_table(list members, Py_ssize_t n_max, t, list vals):
    cdef list out = [0] * (n_max + 1)
    cdef Py_ssize_t n, k, a, na, lm = len(members)
    cdef object s
    for n in range(1, n_max + 1):
        s = 0
        for k in range(lm):
            a = members[k]
            if a > n:
                break
            na = n - a
            s = s + vals[na] + out[na]
        out[n] = t * s
    return out


def sk_rows(list members, Py_ssize_t k_max, Py_ssize_t n_max):
    cdef list g = [[0] * (n_max + 1) for _ in range(k_max + 1)]
    cdef list binom = [[comb(k, j) for j in range(k + 1)]
                       for k in range(k_max + 1)]
    cdef list h = [0] * (k_max + 1)
    cdef Py_ssize_t n, j, k, a, idx, na, lm = len(members)
    cdef list gj, bk, gk
    cdef object acc, hj
    (<list> g[0])[0] = 1
    for n in range(1, n_max + 1):
        for j in range(k_max + 1):
            h[j] = 0
        for idx in range(lm):
            a = members[idx]
            if a > n:
                break
            na = n - a
            for j in range(k_max + 1):
                gj = g[j]
                h[j] = h[j] + gj[na]
        for k in range(k_max + 1):
            bk = binom[k]
            acc = 0
            for j in range(k + 1):
                hj = h[j]
                if hj:
                    acc = acc + bk[j] * hj
            gk = g[k]
            gk[n] = -acc
    return g


def series_inv_int(list coeffs, Py_ssize_t order):
    cdef Py_ssize_t top, n, i, stop
    cdef list inv
    cdef object s, ci
    if len(coeffs) == 0 or coeffs[0] != 1:
        raise ValueError("series_inv_int needs constant term 1")
    top = len(coeffs) - 1
    inv = [1] + [0] * order
    for n in range(1, order + 1):
        s = 0
        stop = n if n < top else top
        for i in range(1, stop + 1):
            ci = coeffs[i]
            if ci:
                s = s + ci * inv[n - i]
        inv[n] = -s
    return inv


def first_violation(list members, Py_ssize_t horizon):
    cdef list g = [1] + [0] * horizon
    cdef Py_ssize_t n, k, a, lm = len(members)
    cdef object s, v
    for n in range(1, horizon + 1):
        s = 0
        for k in range(lm):
            a = members[k]
            if a > n:
                break
            s = s + g[n - a]
        v = -s
        g[n] = v
        if n % 2 == 1:
            v = -v
        if v < 0:
            return n
    return -1
