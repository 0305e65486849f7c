"""Pure-Python implementations of the hot kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when
the extension is not built or ``GAMMAGRAPHIC_PURE_PYTHON`` is set. Arguments
are numpy arrays:

    eu, ev    int64[m]     endpoints (vertex indices) of each edge
    labels    int64[n, d]  flat label coordinates per vertex
    moduli    int64[d]     modulus per coordinate, 0 for an integer coordinate
    in_x/in_y uint8[m]     membership flags

Labels may also be passed as nested lists of Python ints, which is how the
caller routes integer labels too large for int64 arithmetic.
"""
import numpy as np

BACKEND = "python"


def _tolist(a):
    return a.tolist() if hasattr(a, "tolist") else list(a)


def _find(parent, a):
    root = a
    while parent[root] != root:
        root = parent[root]
    while parent[a] != root:
        parent[a], a = root, parent[a]
    return root


def _reduce(vec, moduli):
    return [x % m if m else x for x, m in zip(vec, moduli)]


def contracted_kappa(n, eu, ev, labels, moduli, in_x, in_y):
    """kappa of (G, gamma)/X minus Y: zero-sum-only components after contraction."""
    eu, ev, in_x, in_y = _tolist(eu), _tolist(ev), _tolist(in_x), _tolist(in_y)
    labels, moduli = _tolist(labels), _tolist(moduli)
    cls = list(range(n))
    comp = list(range(n))
    for e in range(len(eu)):
        if in_x[e]:
            a, b = _find(cls, eu[e]), _find(cls, ev[e])
            if a != b:
                cls[a] = b
        if not in_y[e]:
            a, b = _find(comp, eu[e]), _find(comp, ev[e])
            if a != b:
                comp[a] = b
    sums = {}
    for v in range(n):
        r = _find(cls, v)
        acc = sums.get(r)
        lab = _tolist(labels[v])
        sums[r] = lab if acc is None else [x + y for x, y in zip(acc, lab)]
    bad = set()
    for r, s in sums.items():
        if any(_reduce(s, moduli)):
            bad.add(_find(comp, r))
    return sum(1 for v in range(n) if _find(comp, v) == v and v not in bad)


def separable(n, eu, ev, labels, moduli, in_x, in_y, base_kappa):
    """True iff X is acyclic and kappa((G,gamma)/X minus Y) equals ``base_kappa``."""
    eu_l, ev_l, in_x_l = _tolist(eu), _tolist(ev), _tolist(in_x)
    parent = list(range(n))
    for e in range(len(eu_l)):
        if in_x_l[e]:
            a, b = _find(parent, eu_l[e]), _find(parent, ev_l[e])
            if a == b:
                return False
            parent[a] = b
    return contracted_kappa(n, eu, ev, labels, moduli, in_x, in_y) == base_kappa


def enumerate_feasible(n, eu, ev, labels, moduli):
    """All edge masks F (ascending) that are acyclic and gamma-nonzero."""
    eu, ev = _tolist(eu), _tolist(ev)
    labels, moduli = [_tolist(row) for row in _tolist(labels)], _tolist(moduli)
    m = len(eu)
    d = len(moduli)
    # components of G itself, for the (G2) size test
    gpar = list(range(n))
    for e in range(m):
        a, b = _find(gpar, eu[e]), _find(gpar, ev[e])
        if a != b:
            gpar[a] = b
    gsize = {}
    groot = [_find(gpar, v) for v in range(n)]
    for r in groot:
        gsize[r] = gsize.get(r, 0) + 1
    nonzero = [any(x != 0 for x in row) for row in labels]
    out = []
    for mask in range(1 << m):
        parent = list(range(n))
        ok = True
        bits = mask
        e = 0
        while bits:
            if bits & 1:
                a, b = _find(parent, eu[e]), _find(parent, ev[e])
                if a == b:
                    ok = False
                    break
                parent[a] = b
            bits >>= 1
            e += 1
        if not ok:
            continue
        sums, size, anynz = {}, {}, {}
        for v in range(n):
            r = _find(parent, v)
            if r in sums:
                s = sums[r]
                for j in range(d):
                    s[j] += labels[v][j]
                size[r] += 1
                anynz[r] = anynz[r] or nonzero[v]
            else:
                sums[r] = list(labels[v])
                size[r] = 1
                anynz[r] = nonzero[v]
        for r, s in sums.items():
            if anynz[r]:
                if not any(_reduce(s, moduli)):
                    ok = False
                    break
            elif size[r] != gsize[groot[r]]:
                ok = False
                break
        if ok:
            out.append(mask)
    return np.array(out, dtype=np.uint32)


def exchange_violation(masks, m):
    """First (X, Y, e) violating symmetric exchange, or None."""
    masks = [int(x) for x in _tolist(masks)]
    member = set(masks)
    for x in masks:
        good = [0] * m
        for e in range(m):
            be = 1 << e
            g = 0
            for f in range(m):
                t = x ^ be if f == e else x ^ be ^ (1 << f)
                if t in member:
                    g |= 1 << f
            good[e] = g
        for y in masks:
            diff = x ^ y
            bits, e = diff, 0
            while bits:
                if bits & 1 and not diff & good[e]:
                    return (x, y, e)
                bits >>= 1
                e += 1
    return None


def _nonsingular(rows, add_t, mul_t, neg_t, inv_t, q):
    s = len(rows)
    for col in range(s):
        piv = -1
        for r in range(col, s):
            if rows[r][col]:
                piv = r
                break
        if piv < 0:
            return False
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = inv_t[rows[col][col]]
        prow = rows[col]
        for r in range(col + 1, s):
            c = rows[r][col]
            if c:
                factor = neg_t[mul_t[c * q + inv]]
                row = rows[r]
                for j in range(col, s):
                    if prow[j]:
                        row[j] = add_t[row[j] * q + mul_t[factor * q + prow[j]]]
    return True


def principal_nonsingular(mat, add_t, mul_t, neg_t, inv_t):
    """uint8[2**n]: entry S is 1 iff the principal submatrix on bitmask S is nonsingular.

    Field elements are integer codes; the tables are flattened q*q arrays.
    """
    mat = [_tolist(row) for row in _tolist(mat)]
    add_t, mul_t, neg_t, inv_t = _tolist(add_t), _tolist(mul_t), _tolist(neg_t), _tolist(inv_t)
    q = len(neg_t)
    n = len(mat)
    out = np.zeros(1 << n, dtype=np.uint8)
    for mask in range(1 << n):
        idx = [i for i in range(n) if mask >> i & 1]
        rows = [[mat[i][j] for j in idx] for i in idx]
        out[mask] = _nonsingular(rows, add_t, mul_t, neg_t, inv_t, q)
    return out
