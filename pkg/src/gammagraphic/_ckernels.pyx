# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``; see that module for the
argument conventions. Integer label coordinates are summed in int64, so the
caller must only route labels here when the sums cannot overflow."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free, calloc

cnp.import_array()

BACKEND = "cython"

ctypedef cnp.int64_t i64


cdef inline Py_ssize_t _find(Py_ssize_t* parent, Py_ssize_t a) noexcept nogil:
    cdef Py_ssize_t root = a, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[a] != root:
        nxt = parent[a]
        parent[a] = root
        a = nxt
    return root


cdef inline i64 _addmod(i64 s, i64 x, i64 m) noexcept nogil:
    if m == 0:
        return s + x
    s = (s + x) % m
    if s < 0:
        s += m
    return s


cdef Py_ssize_t _contracted_kappa(Py_ssize_t n, Py_ssize_t m, const i64[::1] eu, const i64[::1] ev,
                                  const i64[:, ::1] labels, const i64[::1] moduli,
                                  const cnp.uint8_t[::1] in_x, const cnp.uint8_t[::1] in_y) except -1:
    cdef Py_ssize_t d = moduli.shape[0]
    cdef Py_ssize_t* cls = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    cdef Py_ssize_t* comp = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    cdef i64* sums = <i64*> calloc(n * d if n * d > 0 else 1, sizeof(i64))
    cdef char* bad = <char*> calloc(n if n > 0 else 1, sizeof(char))
    cdef Py_ssize_t v, e, a, b, j, r, count = 0
    cdef bint nz
    if cls == NULL or comp == NULL or sums == NULL or bad == NULL:
        free(cls); free(comp); free(sums); free(bad)
        raise MemoryError()
    with nogil:
        for v in range(n):
            cls[v] = v
            comp[v] = v
        for e in range(m):
            if in_x[e]:
                a = _find(cls, eu[e]); b = _find(cls, ev[e])
                if a != b:
                    cls[a] = b
            if not in_y[e]:
                a = _find(comp, eu[e]); b = _find(comp, ev[e])
                if a != b:
                    comp[a] = b
        for v in range(n):
            r = _find(cls, v)
            for j in range(d):
                sums[r * d + j] = _addmod(sums[r * d + j], labels[v, j], moduli[j])
        for v in range(n):
            if cls[v] == v:
                nz = False
                for j in range(d):
                    if sums[v * d + j] != 0:
                        nz = True
                        break
                if nz:
                    bad[_find(comp, v)] = 1
        for v in range(n):
            if _find(comp, v) == v and not bad[v]:
                count += 1
    free(cls); free(comp); free(sums); free(bad)
    return count


def contracted_kappa(Py_ssize_t n, const i64[::1] eu, const i64[::1] ev, const i64[:, ::1] labels,
                     const i64[::1] moduli, const cnp.uint8_t[::1] in_x, const cnp.uint8_t[::1] in_y):
    return _contracted_kappa(n, eu.shape[0], eu, ev, labels, moduli, in_x, in_y)


def separable(Py_ssize_t n, const i64[::1] eu, const i64[::1] ev, const i64[:, ::1] labels,
              const i64[::1] moduli, const cnp.uint8_t[::1] in_x, const cnp.uint8_t[::1] in_y,
              Py_ssize_t base_kappa):
    cdef Py_ssize_t m = eu.shape[0], e, a, b, v
    cdef bint cyclic = False
    cdef Py_ssize_t* parent = <Py_ssize_t*> malloc((n if n > 0 else 1) * sizeof(Py_ssize_t))
    if parent == NULL:
        raise MemoryError()
    with nogil:
        for v in range(n):
            parent[v] = v
        for e in range(m):
            if in_x[e]:
                a = _find(parent, eu[e]); b = _find(parent, ev[e])
                if a == b:
                    cyclic = True
                    break
                parent[a] = b
    free(parent)
    if cyclic:
        return False
    return _contracted_kappa(n, m, eu, ev, labels, moduli, in_x, in_y) == base_kappa


def enumerate_feasible(Py_ssize_t n, const i64[::1] eu, const i64[::1] ev, const i64[:, ::1] labels,
                       const i64[::1] moduli):
    cdef Py_ssize_t m = eu.shape[0], d = moduli.shape[0]
    cdef Py_ssize_t nn = n if n > 0 else 1
    cdef Py_ssize_t* gpar = <Py_ssize_t*> malloc(nn * sizeof(Py_ssize_t))
    cdef Py_ssize_t* gsize = <Py_ssize_t*> calloc(nn, sizeof(Py_ssize_t))
    cdef Py_ssize_t* parent = <Py_ssize_t*> malloc(nn * sizeof(Py_ssize_t))
    cdef Py_ssize_t* size = <Py_ssize_t*> malloc(nn * sizeof(Py_ssize_t))
    cdef char* anynz = <char*> malloc(nn * sizeof(char))
    cdef char* labnz = <char*> malloc(nn * sizeof(char))
    cdef i64* sums = <i64*> malloc((n * d if n * d > 0 else 1) * sizeof(i64))
    cdef cnp.uint32_t[::1] out = np.empty(1 << m, dtype=np.uint32)
    cdef Py_ssize_t count = 0, v, e, a, b, j, r
    cdef unsigned long mask, bits, total = 1UL << m
    cdef bint ok, nz
    if gpar == NULL or gsize == NULL or parent == NULL or size == NULL or anynz == NULL or labnz == NULL or sums == NULL:
        free(gpar); free(gsize); free(parent); free(size); free(anynz); free(labnz); free(sums)
        raise MemoryError()
    with nogil:
        for v in range(n):
            gpar[v] = v
            labnz[v] = 0
            for j in range(d):
                if labels[v, j] != 0:
                    labnz[v] = 1
        for e in range(m):
            a = _find(gpar, eu[e]); b = _find(gpar, ev[e])
            if a != b:
                gpar[a] = b
        for v in range(n):
            gpar[v] = _find(gpar, v)
            gsize[gpar[v]] += 1
        mask = 0
        while mask < total:
            for v in range(n):
                parent[v] = v
            ok = True
            bits = mask
            e = 0
            while bits:
                if bits & 1:
                    a = _find(parent, eu[e]); b = _find(parent, ev[e])
                    if a == b:
                        ok = False
                        break
                    parent[a] = b
                bits >>= 1
                e += 1
            if ok:
                for v in range(n):
                    size[v] = 0
                    anynz[v] = 0
                    for j in range(d):
                        sums[v * d + j] = 0
                for v in range(n):
                    r = _find(parent, v)
                    size[r] += 1
                    if labnz[v]:
                        anynz[r] = 1
                    for j in range(d):
                        sums[r * d + j] = _addmod(sums[r * d + j], labels[v, j], moduli[j])
                for v in range(n):
                    if parent[v] != v:
                        continue
                    if anynz[v]:
                        nz = False
                        for j in range(d):
                            if sums[v * d + j] != 0:
                                nz = True
                                break
                        if not nz:
                            ok = False
                            break
                    elif size[v] != gsize[gpar[v]]:
                        ok = False
                        break
                if ok:
                    out[count] = <cnp.uint32_t> mask
                    count += 1
            mask += 1
    free(gpar); free(gsize); free(parent); free(size); free(anynz); free(labnz); free(sums)
    return np.asarray(out[:count]).copy()


def exchange_violation(const cnp.uint32_t[::1] masks, Py_ssize_t m):
    cdef Py_ssize_t nf = masks.shape[0], i, k, e, f
    cdef unsigned long total = 1UL << m
    cdef unsigned long x, y, diff, t, be, g
    cdef char* member = <char*> calloc(total, sizeof(char))
    cdef unsigned long good[32]
    cdef bint found = False
    cdef unsigned long rx = 0, ry = 0
    cdef Py_ssize_t re = 0
    if member == NULL:
        raise MemoryError()
    with nogil:
        for i in range(nf):
            member[masks[i]] = 1
        for i in range(nf):
            x = masks[i]
            for e in range(m):
                be = 1UL << e
                g = 0
                for f in range(m):
                    if f == e:
                        t = x ^ be
                    else:
                        t = x ^ be ^ (1UL << f)
                    if member[t]:
                        g |= 1UL << f
                good[e] = g
            for k in range(nf):
                y = masks[k]
                diff = x ^ y
                for e in range(m):
                    if (diff >> e) & 1 and not (diff & good[e]):
                        found = True
                        rx = x; ry = y; re = e
                        break
                if found:
                    break
            if found:
                break
    free(member)
    if found:
        return (int(rx), int(ry), int(re))
    return None


cdef bint _nonsingular(i64* rows, Py_ssize_t s, const i64[::1] add_t, const i64[::1] mul_t,
                       const i64[::1] neg_t, const i64[::1] inv_t, Py_ssize_t q) noexcept nogil:
    cdef Py_ssize_t col, r, j, piv
    cdef i64 tmp, inv, c, factor
    for col in range(s):
        piv = -1
        for r in range(col, s):
            if rows[r * s + col] != 0:
                piv = r
                break
        if piv < 0:
            return False
        if piv != col:
            for j in range(s):
                tmp = rows[col * s + j]
                rows[col * s + j] = rows[piv * s + j]
                rows[piv * s + j] = tmp
        inv = inv_t[rows[col * s + col]]
        for r in range(col + 1, s):
            c = rows[r * s + col]
            if c != 0:
                factor = neg_t[mul_t[c * q + inv]]
                for j in range(col, s):
                    if rows[col * s + j] != 0:
                        rows[r * s + j] = add_t[rows[r * s + j] * q + mul_t[factor * q + rows[col * s + j]]]
    return True


def principal_nonsingular(const i64[:, ::1] mat, const i64[::1] add_t, const i64[::1] mul_t,
                          const i64[::1] neg_t, const i64[::1] inv_t):
    cdef Py_ssize_t n = mat.shape[0], q = neg_t.shape[0], s, i, j
    cdef unsigned long mask, total = 1UL << n
    cdef Py_ssize_t idx[64]
    cdef i64* rows = <i64*> malloc((n * n if n > 0 else 1) * sizeof(i64))
    cdef cnp.uint8_t[::1] out = np.zeros(total, dtype=np.uint8)
    if n > 64:
        free(rows)
        raise ValueError("matrix too large for principal-minor enumeration")
    if rows == NULL:
        raise MemoryError()
    with nogil:
        for mask in range(total):
            s = 0
            for i in range(n):
                if (mask >> i) & 1:
                    idx[s] = i
                    s += 1
            for i in range(s):
                for j in range(s):
                    rows[i * s + j] = mat[idx[i], idx[j]]
            out[mask] = _nonsingular(rows, s, add_t, mul_t, neg_t, inv_t, q)
    free(rows)
    return np.asarray(out)
