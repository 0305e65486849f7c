import random
from itertools import combinations

import pytest

from oracles import brute_family, is_forest, leibniz_det, poly_mulmod, random_value, subsets
from gammagraphic.abelian import CyclicMod, Integers, VectorMod
from gammagraphic.delta_matroid import enumerate_gamma_graphic
from gammagraphic.gf_repr import (
    GF, FieldError, FieldMatrix, Homomorphism, build_representation, feasible_by_minor, field_ops,
    incidence_matrix, nonzero_gadget, pivot, principal_nonsingular_masks, smallest_irreducible,
)
from gammagraphic.labelled_graph import LabelledGraph, contract_set, is_acyclic

FIELDS = [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2), (5, 1)]


def coeff_rows(field, rows):
    return [[field.coeffs(x) for x in r] for r in rows]


def random_matrix(rng, field, n, kind="any"):
    a = [[rng.randrange(field.q) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i):
            if kind == "sym":
                a[i][j] = a[j][i]
            elif kind == "skew":
                a[i][j] = field.neg(a[j][i])
        if kind == "skew":
            a[i][i] = 0
    ids = [f"c{i}" for i in range(n)]
    return FieldMatrix(field, ids, ids, a)


def test_field_examples():
    gf2 = field_ops(2)
    assert gf2.add(1, 1) == 0
    gf4 = GF(2, 2)
    assert gf4.modulus == (1, 1, 1)
    x = gf4.gen()
    assert (x * x).coeffs == (1, 1)
    for p, ell in FIELDS:
        f = GF(p, ell)
        assert f.det([[1 if i == j else 0 for j in range(4)] for i in range(4)]) == 1


def test_field_errors():
    for args in ((4, 1), (2, 0), (1, 1), (2, 9)):
        with pytest.raises(FieldError):
            GF(*args)
    with pytest.raises(ZeroDivisionError):
        GF(3).inv(0)
    with pytest.raises(FieldError):
        GF(2, 2, modulus=(1, 0, 1))  # x^2 + 1 = (x + 1)^2


@pytest.mark.parametrize("p,ell", [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2)])
def test_multiplication_matches_polynomials(p, ell):
    f = GF(p, ell)
    for a in range(f.q):
        for b in range(f.q):
            want = poly_mulmod(list(f.coeffs(a)), list(f.coeffs(b)), f.modulus, p)
            assert f.coeffs(f.mul(a, b)) == tuple(want)
        if a:
            assert f.mul(a, f.inv(a)) == 1
        assert f.add(a, f.neg(a)) == 0


@pytest.mark.parametrize("p,ell", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)])
def test_smallest_irreducible_is_smallest(p, ell):
    # degrees 2 and 3: irreducible iff no root
    def has_root(mod):
        return any(sum(c * r ** i for i, c in enumerate(mod)) % p == 0 for r in range(p))

    mod = smallest_irreducible(p, ell)
    assert not has_root(mod)
    code = sum(c * p ** i for i, c in enumerate(mod[:-1]))
    for smaller in range(code):
        low = [(smaller // p ** i) % p for i in range(ell)]
        assert has_root(low + [1])


@pytest.mark.parametrize("p,ell", FIELDS)
def test_det_matches_leibniz(p, ell):
    rng = random.Random(p * 10 + ell)
    f = GF(p, ell)
    for n in range(1, 5):
        for _ in range(15):
            a = random_matrix(rng, f, n)
            assert a.det().coeffs == leibniz_det(p, f.modulus, coeff_rows(f, a.entries))
            if not a.det().is_zero():
                inv = f.inverse_matrix(a.entries)
                assert f.matmul(a.entries, inv) == [[int(i == j) for j in range(n)] for i in range(n)]
                assert a.rank() == n
            else:
                assert a.rank() < n


def test_incidence_examples():
    f = GF(3)
    g = LabelledGraph(CyclicMod(3), {"u": 1, "v": 1}, {"e": ("v", "u"), "l": ("u", "u")})
    inc = incidence_matrix(g, f)
    assert inc["u", "e"].code == 2 and inc["v", "e"].code == 1
    assert inc["u", "l"].is_zero() and inc["v", "l"].is_zero()


def random_tree(rng, n, descriptor=CyclicMod(3)):
    vertices = [f"t{i}" for i in range(n)]
    edges = {f"e{i}": (vertices[rng.randrange(i)], vertices[i]) for i in range(1, n)}
    return LabelledGraph(descriptor, {v: 1 for v in vertices}, edges)


@pytest.mark.parametrize("p,ell", FIELDS)
def test_tree_incidence_minor_is_unit(p, ell):
    rng = random.Random(p + ell)
    f = GF(p, ell)
    for n in range(2, 7):
        t = random_tree(rng, n)
        inc = incidence_matrix(t, f)
        for v in t.vertices:
            d = inc.submatrix(set(t.vertices) - {v}, t.edge_ids).det()
            assert d.code in (1, f.neg(1))


def random_labelled(rng, p, k, max_vertices=5, max_edges=7):
    d = CyclicMod(p) if k == 1 else VectorMod(p, k)
    n = rng.randint(1, max_vertices)
    vertices = [f"v{i}" for i in range(n)]
    labels = {}
    for v in vertices:
        val = random_value(rng, d)
        while d.element(val).is_zero():
            val = random_value(rng, d)
        labels[v] = val
    edges = {f"e{i}": (rng.choice(vertices), rng.choice(vertices)) for i in range(rng.randint(0, max_edges))}
    return LabelledGraph(d, labels, edges)


def random_orientation(rng, g):
    out = {}
    for e in g.edge_ids:
        u, v = g.endpoints(e)
        out[e] = (u, v) if rng.random() < 0.5 else (v, u)
    return out


def test_orientation_independence():
    rng = random.Random(31)
    f = GF(3)
    for _ in range(40):
        g = random_labelled(rng, 3, 1)
        i1 = incidence_matrix(g, f, random_orientation(rng, g))
        i2 = incidence_matrix(g, f, random_orientation(rng, g))
        for r in range(1, min(len(g.vertices), len(g.edge_ids)) + 1):
            for w in combinations(g.vertices, r):
                for fs in combinations(g.edge_ids, r):
                    d1, d2 = i1.submatrix(w, fs).det(), i2.submatrix(w, fs).det()
                    assert d1 * d1 == d2 * d2
        a1 = build_representation(g, f, orientation=random_orientation(rng, g))
        a2 = build_representation(g, f, orientation=random_orientation(rng, g))
        assert principal_nonsingular_masks(a1) == principal_nonsingular_masks(a2)


def test_incidence_rank_detects_cycles():
    rng = random.Random(32)
    for p, ell in FIELDS:
        f = GF(p, ell)
        for _ in range(10):
            g = random_labelled(rng, 2, 1)
            inc = incidence_matrix(g, f)
            for fs in subsets(g.edge_ids):
                independent = inc.submatrix(g.vertices, fs).rank() == len(fs)
                assert independent == is_acyclic(g, fs) == is_forest(g, fs)


def test_representation_examples():
    z2 = CyclicMod(2)
    g = LabelledGraph(z2, {"u": 1, "v": 1}, {"e": ("u", "v")})
    assert build_representation(g, GF(2)).entries == ((0,),)
    gf4 = GF(2, 2)
    phi = Homomorphism(2, 1, (gf4.gen(),))
    a = build_representation(g, gf4, phi)
    assert a.entries == ((0,),) and not feasible_by_minor(a, {"e"})
    h = LabelledGraph(VectorMod(2, 2), {"u": (1, 0), "v": (0, 1)}, {"e": ("u", "v")})
    a = build_representation(h, gf4)
    x = gf4.gen()
    assert a["e", "e"] == (gf4.one + x) / (gf4.one * x) and feasible_by_minor(a, {"e"})


def test_representation_errors():
    g = LabelledGraph(CyclicMod(2), {"u": 0, "v": 1}, {"e": ("u", "v")})
    with pytest.raises(FieldError, match="nonzero_gadget"):
        build_representation(g, GF(2))
    h = LabelledGraph(VectorMod(2, 2), {"u": (1, 0)}, {})
    with pytest.raises(FieldError):
        build_representation(h, GF(2))
    with pytest.raises(FieldError):
        build_representation(LabelledGraph(CyclicMod(2), {"u": 1}, {}), GF(3))
    with pytest.raises(FieldError):
        build_representation(LabelledGraph(Integers(), {"u": 1}, {}), GF(3))
    with pytest.raises(FieldError):
        Homomorphism(2, 2, (GF(2, 2).one, GF(2, 2).one))


def test_feasible_by_minor_examples(k23):
    f = GF(2)
    zero = FieldMatrix(f, "ab", "ab", [[0, 0], [0, 0]])
    assert feasible_by_minor(zero, ())
    assert not any(feasible_by_minor(zero, s) for s in ({"a"}, {"b"}, {"a", "b"}))
    a = build_representation(k23, f)
    pairs = {frozenset(s) for s in combinations(k23.edge_ids, 2) if feasible_by_minor(a, s)}
    assert pairs == {frozenset(map(str, p)) for p in
                     [(1, 2), (1, 3), (2, 3), (1, 4), (2, 5), (3, 6), (4, 5), (4, 6), (5, 6)]}


@pytest.mark.parametrize("p,k,ell", [(2, 1, 1), (2, 1, 2), (2, 2, 2), (2, 2, 3), (3, 1, 1), (3, 1, 2),
                                     (3, 2, 2), (3, 2, 3)])
def test_representation_matches_enumeration(p, k, ell, backend):
    rng = random.Random(p * 100 + k * 10 + ell)
    field = GF(p, ell)
    for _ in range(12):
        g = random_labelled(rng, p, k)
        a = build_representation(g, field)
        assert a.is_symmetric()
        m = enumerate_gamma_graphic(g)
        assert principal_nonsingular_masks(a, backend=backend) == set(m.masks)


def test_principal_masks_match_minors(backend):
    rng = random.Random(33)
    for p, ell in FIELDS:
        f = GF(p, ell)
        a = random_matrix(rng, f, 5, "sym")
        masks = principal_nonsingular_masks(a, backend=backend)
        for s in subsets(a.col_ids):
            mask = sum(1 << a.col_ids.index(c) for c in s)
            assert (mask in masks) == feasible_by_minor(a, s)


def test_cycle_gives_singular_minor():
    rng = random.Random(34)
    seen = 0
    for _ in range(60):
        p, k = rng.choice([(2, 1), (3, 1), (2, 2)])
        f = GF(p, k)
        g = random_labelled(rng, p, k)
        a = build_representation(g, f)
        inc = incidence_matrix(g, f)
        for fs in subsets(g.edge_ids):
            if fs and not is_acyclic(g, fs):
                seen += 1
                assert a.principal(fs).rank() <= inc.submatrix(g.vertices, fs).rank() < len(fs)
                assert not feasible_by_minor(a, fs)
    assert seen


def test_binet_cauchy_three_factors():
    rng = random.Random(35)
    f = GF(3)
    n, r = 4, 2
    rows, mid = [f"r{i}" for i in range(r)], [f"m{i}" for i in range(n)]
    for _ in range(30):
        L = FieldMatrix(f, rows, mid, [[rng.randrange(3) for _ in mid] for _ in rows])
        M = FieldMatrix(f, mid, mid, [[rng.randrange(3) for _ in mid] for _ in mid])
        N = FieldMatrix(f, mid, rows, [[rng.randrange(3) for _ in rows] for _ in mid])
        total = f.zero
        for s in combinations(mid, r):
            for t in combinations(mid, r):
                total = total + L.submatrix(rows, s).det() * M.submatrix(s, t).det() * N.submatrix(t, rows).det()
        assert (L @ M @ N).det() == total


def test_pivot_examples():
    f = GF(5)
    a = FieldMatrix(f, ["e"], ["e"], [[3]])
    assert pivot(a, {"e"}).entries == ((f.inv(3),),)
    with pytest.raises(FieldError):
        pivot(FieldMatrix(f, "ab", "ab", [[0, 1], [1, 0]]), {"a"})
    b = random_matrix(random.Random(1), f, 3)
    assert pivot(b, ()) == b


@pytest.mark.parametrize("p,ell", [(2, 1), (3, 1), (2, 2)])
@pytest.mark.parametrize("kind", ["sym", "skew"])
def test_pivot_twice_and_tucker(p, ell, kind):
    rng = random.Random(p * 7 + ell + len(kind))
    f = GF(p, ell)
    for _ in range(8):
        a = random_matrix(rng, f, 5, kind)
        for x in subsets(a.col_ids):
            if not feasible_by_minor(a, x):
                continue
            b = pivot(a, x)
            assert pivot(b, x) == a
            for y in subsets(a.col_ids):
                assert feasible_by_minor(b, y) == feasible_by_minor(a, x ^ y)


def test_gadget_examples():
    g = LabelledGraph(CyclicMod(3), {"a": 1, "b": 2}, {"ab": ("a", "b")})
    h, c = nonzero_gadget(g)
    assert h == g and c == frozenset()
    g = LabelledGraph(CyclicMod(3), {"z": 0}, {})
    h, c = nonzero_gadget(g)
    assert len(h.vertices) == 2 and len(c) == 1
    assert sorted(h.label(v).value for v in h.vertices) == [1, 2]
    back = contract_set(h, c)
    assert len(back.vertices) == 1 and back.label(back.vertices[0]).is_zero()


def test_gadget_preserves_family_after_contraction():
    rng = random.Random(36)
    for _ in range(80):
        p, k = rng.choice([(2, 1), (3, 1), (2, 2), (3, 2)])
        d = CyclicMod(p) if k == 1 else VectorMod(p, k)
        n = rng.randint(1, 5)
        vs = [f"v{i}" for i in range(n)]
        g = LabelledGraph(d, {v: (d.zero().value if rng.random() < 0.4 else random_value(rng, d)) for v in vs},
                          {f"e{i}": (rng.choice(vs), rng.choice(vs)) for i in range(rng.randint(0, 5))})
        h, c = nonzero_gadget(g)
        assert not any(h.label(v).is_zero() for v in h.vertices)
        assert enumerate_gamma_graphic(contract_set(h, c)).feasibles == brute_family(g)
        a = build_representation(h, GF(p, k))
        assert principal_nonsingular_masks(a) == set(enumerate_gamma_graphic(h).masks)
