"""Finite fields GF(p^ell), dense matrices over them, and the symmetric
matrix representation of Z_p^k-labelled graph delta-matroids.

Field elements are coded as integers ``sum(c_i * p**i)`` over the coefficient
vector (c_0, ..., c_{ell-1}) of their polynomial residue. The modulus is the
smallest monic irreducible polynomial of degree ell, scanning coefficient
vectors in increasing code order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product as iproduct
from typing import Iterable, Mapping, Sequence

import numpy as np

from .abelian import CyclicMod, VectorMod, is_prime
from .labelled_graph import LabelledGraph, natural_key

MAX_DEGREE = 8
TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


# --- polynomials over GF(p), coefficient lists low degree first ---------------

def _poly_mod(a: list, mod: Sequence[int], p: int) -> list:
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - 1 - dm
        c = a[-1] * inv_lead % p
        for i, m in enumerate(mod):
            a[shift + i] = (a[shift + i] - c * m) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(mod: Sequence[int], p: int) -> bool:
    deg = len(mod) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in iproduct(range(p), repeat=d):
            if not _poly_mod(mod, list(low) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, ell: int) -> tuple[int, ...]:
    """Monic irreducible polynomial of degree ell over GF(p), low degree first."""
    for code in range(p ** ell):
        low = [(code // p ** i) % p for i in range(ell)]
        mod = tuple(low) + (1,)
        if _is_irreducible(mod, p):
            return mod
    raise FieldError(f"no irreducible polynomial of degree {ell} over GF({p})")  # pragma: no cover


class GF:
    """The field GF(p^ell) acting on integer codes."""

    def __init__(self, p: int, ell: int = 1, modulus: Sequence[int] | None = None):
        if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
            raise FieldError(f"field characteristic must be prime, got {p!r}")
        if not isinstance(ell, int) or not 1 <= ell <= MAX_DEGREE:
            raise FieldError(f"extension degree must be in 1..{MAX_DEGREE}, got {ell!r}")
        if modulus is None:
            modulus = smallest_irreducible(p, ell)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != ell + 1 or modulus[-1] != 1 or not _is_irreducible(modulus, p):
            raise FieldError(f"{modulus} is not a monic irreducible of degree {ell} over GF({p})")
        self.p, self.ell, self.modulus = p, ell, modulus
        self.q = p ** ell

    def __repr__(self):
        return f"GF({self.p}^{self.ell})" if self.ell > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.ell, self.modulus) == (other.p, other.ell, other.modulus)

    def __hash__(self):
        return hash((self.p, self.ell, self.modulus))

    # codes <-> coefficient vectors
    def coeffs(self, a: int) -> tuple[int, ...]:
        p = self.p
        return tuple((a // p ** i) % p for i in range(self.ell))

    def code(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.ell:
            coeffs = _poly_mod(list(coeffs), self.modulus, self.p)
        return sum((c % self.p) * self.p ** i for i, c in enumerate(coeffs))

    def __call__(self, value) -> "FieldElement":
        """Element from an integer (embedded prime-field scalar) or a coefficient sequence."""
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        return FieldElement(self, self.code(list(value)))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def gen(self) -> "FieldElement":
        """The residue class of x (equal to 0 + 1*x when ell > 1)."""
        return FieldElement(self, self.code([0, 1]))

    def elements(self):
        return [FieldElement(self, c) for c in range(self.q)]

    # arithmetic on codes
    def add(self, a: int, b: int) -> int:
        if self.ell == 1:
            return (a + b) % self.p
        p, out, scale = self.p, 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.ell == 1:
            return -a % self.p
        return self.code([-c for c in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.ell == 1:
            return a * b % self.p
        if self.q <= TABLE_LIMIT:
            return int(self.tables[1][a * self.q + b])
        return self._mul_poly(a, b)

    def _mul_poly(self, a: int, b: int) -> int:
        p = self.p
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.ell - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self.code(_poly_mod(prod, self.modulus, p))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self.ell == 1:
            return pow(a, self.p - 2, self.p)
        return self._pow(a, self.q - 2)

    def _pow(self, a: int, n: int) -> int:
        out = 1
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    @cached_property
    def tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Flattened add/mul tables plus negation and inverse arrays, for the kernels."""
        if self.q > TABLE_LIMIT:
            raise FieldError(f"{self} is too large for lookup tables")
        q = self.q
        add_t = np.empty(q * q, dtype=np.int64)
        mul_t = np.empty(q * q, dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add_t[a * q + b] = self.add(a, b)
                mul_t[a * q + b] = a * b % self.p if self.ell == 1 else self._mul_poly(a, b)
        neg_t = np.array([self.neg(a) for a in range(q)], dtype=np.int64)
        inv_t = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            for b in range(1, q):
                if mul_t[a * q + b] == 1:
                    inv_t[a] = b
                    break
        return add_t, mul_t, neg_t, inv_t

    # linear algebra on lists of code rows
    def det(self, rows: Sequence[Sequence[int]]) -> int:
        """Determinant by Gaussian elimination."""
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise FieldError("determinant of a non-square matrix")
        det = 1
        for col in range(n):
            piv = next((r for r in range(col, n) if rows[r][col]), None)
            if piv is None:
                return 0
            if piv != col:
                rows[col], rows[piv] = rows[piv], rows[col]
                det = self.neg(det)
            pv = rows[col][col]
            det = self.mul(det, pv)
            inv = self.inv(pv)
            for r in range(col + 1, n):
                c = rows[r][col]
                if c:
                    f = self.mul(c, inv)
                    rows[r] = [self.sub(x, self.mul(f, y)) for x, y in zip(rows[r], rows[col])]
        return det

    def rank(self, rows: Sequence[Sequence[int]]) -> int:
        rows = [list(r) for r in rows]
        if not rows:
            return 0
        rank, ncols = 0, len(rows[0])
        for col in range(ncols):
            piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            inv = self.inv(rows[rank][col])
            for r in range(len(rows)):
                if r != rank and rows[r][col]:
                    f = self.mul(rows[r][col], inv)
                    rows[r] = [self.sub(x, self.mul(f, y)) for x, y in zip(rows[r], rows[rank])]
            rank += 1
        return rank

    def inverse_matrix(self, rows: Sequence[Sequence[int]]) -> list[list[int]]:
        n = len(rows)
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col]), None)
            if piv is None:
                raise FieldError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = self.inv(aug[col][col])
            aug[col] = [self.mul(inv, x) for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [self.sub(x, self.mul(f, y)) for x, y in zip(aug[r], aug[col])]
        return [row[n:] for row in aug]

    def matmul(self, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
        cols = list(zip(*b)) if b else []
        out = []
        for row in a:
            out_row = []
            for col in cols:
                acc = 0
                for x, y in zip(row, col):
                    if x and y:
                        acc = self.add(acc, self.mul(x, y))
                out_row.append(acc)
            out.append(out_row)
        return out


def field_ops(p: int, ell: int = 1) -> GF:
    return GF(p, ell)


@dataclass(frozen=True)
class FieldElement:
    field: GF
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.code)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixing elements of {self.field} and {other.field}")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.mul(self.code, self.field.inv(b)))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __bool__(self):
        return self.code != 0

    def is_zero(self) -> bool:
        return self.code == 0

    def __repr__(self):
        return f"{self.field}{list(self.coeffs)}"


# --- matrices ---------------------------------------------------------------

@dataclass(frozen=True)
class FieldMatrix:
    """Dense matrix over ``field`` with labelled rows and columns; entries are codes."""

    field: GF
    row_ids: tuple
    col_ids: tuple
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        object.__setattr__(self, "row_ids", tuple(self.row_ids))
        object.__setattr__(self, "col_ids", tuple(self.col_ids))
        object.__setattr__(self, "entries", tuple(tuple(int(x) for x in r) for r in self.entries))
        if len(self.entries) != len(self.row_ids) or any(len(r) != len(self.col_ids) for r in self.entries):
            raise FieldError("matrix dimensions do not match its row/column ids")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_ids), len(self.col_ids)

    def __getitem__(self, key) -> FieldElement:
        r, c = key
        return FieldElement(self.field, self.entries[self.row_ids.index(r)][self.col_ids.index(c)])

    def submatrix(self, rows: Iterable, cols: Iterable) -> "FieldMatrix":
        rows, cols = self._ordered(rows, self.row_ids), self._ordered(cols, self.col_ids)
        ri = [self.row_ids.index(r) for r in rows]
        ci = [self.col_ids.index(c) for c in cols]
        return FieldMatrix(self.field, rows, cols, [[self.entries[i][j] for j in ci] for i in ri])

    def principal(self, ids: Iterable) -> "FieldMatrix":
        return self.submatrix(ids, ids)

    @staticmethod
    def _ordered(ids, reference):
        ids = set(ids)
        missing = ids.difference(reference)
        if missing:
            raise FieldError(f"unknown index id(s) {sorted(map(str, missing))}")
        return tuple(x for x in reference if x in ids)

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.field, self.col_ids, self.row_ids, list(zip(*self.entries)) or [])

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.col_ids != other.row_ids:
            raise FieldError("inner index sets differ")
        return FieldMatrix(self.field, self.row_ids, other.col_ids, self.field.matmul(self.entries, other.entries))

    def det(self) -> FieldElement:
        if len(self.row_ids) != len(self.col_ids):
            raise FieldError("determinant of a non-square matrix")
        return FieldElement(self.field, self.field.det(self.entries))

    def rank(self) -> int:
        return self.field.rank(self.entries)

    def is_symmetric(self) -> bool:
        return self.row_ids == self.col_ids and all(
            self.entries[i][j] == self.entries[j][i] for i in range(len(self.row_ids)) for j in range(i))

    def is_skew_symmetric(self) -> bool:
        n, F = len(self.row_ids), self.field
        return self.row_ids == self.col_ids and all(self.entries[i][i] == 0 for i in range(n)) and all(
            self.entries[i][j] == F.neg(self.entries[j][i]) for i in range(n) for j in range(i))

    def to_json(self) -> dict:
        return {
            "field": {"p": self.field.p, "ell": self.field.ell, "modulus": list(self.field.modulus)},
            "rows": list(self.row_ids),
            "cols": list(self.col_ids),
            "entries": [[list(self.field.coeffs(x)) for x in r] for r in self.entries],
        }


def feasible_by_minor(a: FieldMatrix, f: Iterable) -> bool:
    """Is the principal submatrix a[f] nonsingular? The empty submatrix counts as nonsingular."""
    f = set(f)
    if not f:
        return True
    return not a.principal(f).det().is_zero()


def principal_nonsingular_masks(a: FieldMatrix, backend: str | None = None) -> set[int]:
    """Bitmasks (over ``a.col_ids``) of all nonsingular principal submatrices."""
    from . import kernels

    if a.row_ids != a.col_ids:
        raise FieldError("principal minors need a square matrix with equal row and column ids")
    mat = np.array(a.entries, dtype=np.int64).reshape(len(a.row_ids), len(a.col_ids))
    flags = kernels.get_backend(backend).principal_nonsingular(mat, *a.field.tables)
    return {int(i) for i in np.flatnonzero(flags)}


def pivot(a: FieldMatrix, x: Iterable) -> FieldMatrix:
    """Principal pivot a*X; rows and columns keep their original order."""
    F = a.field
    if a.row_ids != a.col_ids:
        raise FieldError("pivoting needs a square matrix with equal row and column ids")
    xs = set(x)
    ids = a.col_ids
    xi = [i for i, e in enumerate(ids) if e in xs]
    if len(xi) != len(xs):
        raise FieldError("pivot set is not a subset of the index set")
    yi = [i for i, e in enumerate(ids) if e not in xs]
    E = a.entries
    alpha = [[E[i][j] for j in xi] for i in xi]
    beta = [[E[i][j] for j in yi] for i in xi]
    gamma = [[E[i][j] for j in xi] for i in yi]
    delta = [[E[i][j] for j in yi] for i in yi]
    try:
        ainv = F.inverse_matrix(alpha)
    except FieldError:
        raise FieldError("pivot block is singular") from None
    ainv_beta = F.matmul(ainv, beta) if yi else [[] for _ in xi]
    gamma_ainv = F.matmul(gamma, ainv) if xi else [[] for _ in yi]
    g_ai_b = F.matmul(gamma_ainv, beta) if xi else [[0] * len(yi) for _ in yi]
    out = [[0] * len(ids) for _ in ids]
    for r, i in enumerate(xi):
        for c, j in enumerate(xi):
            out[i][j] = ainv[r][c]
        for c, j in enumerate(yi):
            out[i][j] = ainv_beta[r][c]
    for r, i in enumerate(yi):
        for c, j in enumerate(xi):
            out[i][j] = F.neg(gamma_ainv[r][c])
        for c, j in enumerate(yi):
            out[i][j] = F.sub(delta[r][c], g_ai_b[r][c])
    return FieldMatrix(F, ids, ids, out)


# --- graph representations ----------------------------------------------------

def incidence_matrix(g, field: GF, orientation: Mapping | None = None) -> FieldMatrix:
    """Signed V x E incidence matrix: -1 at the tail, +1 at the head, loops all zero.

    By default the tail is the endpoint with the smaller (natural) vertex id;
    ``orientation`` may map edge ids to explicit ``(tail, head)`` pairs.
    """
    vi = g.vertex_index
    minus_one = field.neg(1)
    cols = []
    for e in g.edge_ids:
        u, v = g.endpoints(e)
        col = [0] * len(g.vertices)
        if u != v:
            if orientation is not None and e in orientation:
                tail, head = orientation[e]
                if {tail, head} != {u, v}:
                    raise FieldError(f"orientation of {e!r} does not match its endpoints")
            else:
                tail, head = sorted((u, v), key=natural_key)
            col[vi[tail]] = minus_one
            col[vi[head]] = 1
        cols.append(col)
    rows = [list(r) for r in zip(*cols)] if cols else [[] for _ in g.vertices]
    return FieldMatrix(field, g.vertices, g.edge_ids, rows)


@dataclass(frozen=True)
class Homomorphism:
    """Injective map Z_p^k -> GF(p^ell), (c_1..c_k) -> sum c_i * images[i]."""

    p: int
    k: int
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.k:
            raise FieldError(f"need {self.k} images, got {len(self.images)}")
        field = self.images[0].field if self.images else None
        if field is None or field.p != self.p:
            raise FieldError("images must lie in a field of characteristic p")
        if GF(self.p, 1).rank([list(img.coeffs) for img in self.images]) != self.k:
            raise FieldError("images are not linearly independent over GF(p)")

    @property
    def field(self) -> GF:
        return self.images[0].field

    @classmethod
    def default(cls, field: GF, k: int) -> "Homomorphism":
        """Power basis 1, x, ..., x^(k-1)."""
        if k > field.ell:
            raise FieldError(f"Z_{field.p}^{k} does not embed in {field}")
        return cls(field.p, k, tuple(FieldElement(field, field.p ** i) for i in range(k)))

    def __call__(self, value: Sequence[int]) -> FieldElement:
        out = self.field.zero
        for c, img in zip(value, self.images):
            out = out + img * c
        return out


def _vector_rank(descriptor, field):
    if isinstance(descriptor, VectorMod):
        p, k = descriptor.p, descriptor.k
    elif isinstance(descriptor, CyclicMod) and is_prime(descriptor.k):
        p, k = descriptor.k, 1
    else:
        raise FieldError(f"representations are built for Z_p^k labellings, not {descriptor}")
    if p != field.p:
        raise FieldError(f"labels in Z_{p}^{k} need a field of characteristic {p}, got {field}")
    return p, k


def build_representation(g: LabelledGraph, field: GF, phi: Homomorphism | None = None,
                         orientation: Mapping | None = None) -> FieldMatrix:
    """Symmetric E x E matrix I^T B I with B = diag(1/phi(label)).

    Principal submatrix on F is nonsingular exactly when F is acyclic and
    gamma-nonzero. Every label must be nonzero (see ``nonzero_gadget``).
    """
    p, k = _vector_rank(g.descriptor, field)
    if k > field.ell:
        raise FieldError(f"{field} has degree {field.ell} < {k}")
    if phi is None:
        phi = Homomorphism.default(field, k)
    elif phi.field != field or phi.k != k:
        raise FieldError("homomorphism does not match the group and field")
    zero_labelled = [v for v in g.vertices if g.label(v).is_zero()]
    if zero_labelled:
        raise FieldError(f"zero-labelled vertices {sorted(map(str, zero_labelled))}; apply nonzero_gadget first")
    inc = incidence_matrix(g, field, orientation)
    binv = []
    for v in g.vertices:
        value = g.label(v).value
        binv.append(field.inv(phi(value if isinstance(value, tuple) else (value,)).code))
    I = inc.entries
    m = len(g.edge_ids)
    A = [[0] * m for _ in range(m)]
    for e in range(m):
        for f in range(e, m):
            acc = 0
            for vi, b in enumerate(binv):
                x, y = I[vi][e], I[vi][f]
                if x and y:
                    acc = field.add(acc, field.mul(field.mul(x, y), b))
            A[e][f] = A[f][e] = acc
    return FieldMatrix(field, g.edge_ids, g.edge_ids, A)


def nonzero_gadget(g: LabelledGraph) -> tuple[LabelledGraph, frozenset]:
    """Remove zero labels by pendant vertices.

    Each zero-labelled v is relabelled g0 (a fixed nonzero element) and gets a
    new pendant neighbour labelled -g0. Contracting the returned pendant edges
    gives back g up to renaming the merged vertices.
    """
    d = g.descriptor
    g0 = d.some_nonzero()
    if g0.is_zero():
        raise FieldError("the trivial group has no nonzero element")  # pragma: no cover
    labels, edges = {}, dict(g.edges)
    pendants = []
    taken_v, taken_e = set(g.vertices), set(g.edge_ids)
    for v in g.vertices:
        if g.label(v).is_zero():
            labels[v] = g0
            w = _fresh(f"{v}~w", taken_v)
            e = _fresh(f"{v}~pendant", taken_e)
            labels[w] = -g0
            edges[e] = (v, w)
            pendants.append(e)
        else:
            labels[v] = g.label(v)
    return LabelledGraph(d, labels, edges), frozenset(pendants)


def _fresh(base, taken):
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name
