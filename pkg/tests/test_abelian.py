import pytest
from hypothesis import given, strategies as st

from gammagraphic.abelian import (
    CyclicMod, GroupError, Integers, Product, VectorMod, add, descriptor_from_json, is_zero, negate,
    sum_elements,
)

Z, Z2, Z3, Z4 = Integers(), CyclicMod(2), CyclicMod(3), CyclicMod(4)
Z2_2 = VectorMod(2, 2)


def test_add_examples():
    assert add(Z3.element(2), Z3.element(2)) == Z3.element(1)
    assert add(Z.element(5), Z.element(-5)) == Z.element(0)
    assert add(Z2_2.element((1, 0)), Z2_2.element((1, 1))) == Z2_2.element((0, 1))


def test_add_rejects_mixed_groups():
    with pytest.raises(GroupError):
        add(Z3.element(1), Z4.element(1))


def test_negate_examples():
    assert negate(Z4.element(3)) == Z4.element(1)
    assert negate(Z.element(0)) == Z.element(0)
    assert negate(Z2.element(1)) == Z2.element(1)


def test_is_zero_examples():
    assert is_zero(Z3.element(0))
    assert not is_zero(Z2_2.element((0, 1)))
    assert not is_zero(Z.element(-7))


def test_sum_examples():
    assert sum_elements([Z3.element(1)] * 3) == Z3.zero()
    assert sum_elements([Z2.element(1)] * 3) == Z2.element(1)
    assert sum_elements([], Z) == Z.zero()
    with pytest.raises(GroupError):
        sum_elements([])
    with pytest.raises(GroupError):
        sum_elements([Z2.element(1), Z3.element(1)])


def test_canonical_residues():
    assert Z4.element(-1).value == 3
    assert Z2_2.element((3, -1)).value == (1, 1)
    assert hash(Z4.element(7)) == hash(Z4.element(3))


def test_integers_do_not_wrap():
    big = Z.element(2 ** 80)
    assert (big + big).value == 2 ** 81


@pytest.mark.parametrize("bad", [
    lambda: CyclicMod(1), lambda: VectorMod(4, 2), lambda: VectorMod(2, 0), lambda: Product(()),
])
def test_descriptor_invariants(bad):
    with pytest.raises(GroupError):
        bad()


@pytest.mark.parametrize("doc,expected", [
    ({"group": "Z"}, Integers()),
    ({"group": "Zk", "k": 3}, CyclicMod(3)),
    ({"group": "Zpk", "p": 2, "k": 2}, VectorMod(2, 2)),
    ({"group": "product", "factors": [{"group": "Z"}, {"group": "Zk", "k": 3}]},
     Product((Integers(), CyclicMod(3)))),
])
def test_descriptor_json_round_trip(doc, expected):
    assert descriptor_from_json(doc) == expected
    assert expected.to_json() == doc


def test_product_flat_json_labels():
    d = Product((CyclicMod(3), VectorMod(2, 2)))
    x = d.value_from_json([2, 1, 0])
    assert x.value == (2, (1, 0))
    assert d.value_to_json(x.value) == [2, 1, 0]


def test_malformed_descriptors():
    for doc in ({"group": "Q"}, {"group": "Zk"}, {"k": 3}, {"group": "Zk", "k": "3"}, {"group": "Zk", "k": True}):
        with pytest.raises(GroupError):
            descriptor_from_json(doc)


groups = st.sampled_from([Z, Z2, Z3, Z4, Z2_2, VectorMod(3, 2), Product((Z3, Z2_2)), Product((Z, Z2))])


def _value(d):
    if isinstance(d, Integers):
        return st.integers(-10 ** 6, 10 ** 6)
    if isinstance(d, CyclicMod):
        return st.integers(-50, 50)
    if isinstance(d, VectorMod):
        return st.tuples(*[st.integers(-9, 9)] * d.k)
    return st.tuples(*[_value(f) for f in d.factors])


@st.composite
def triples(draw):
    d = draw(groups)
    a, b, c = (d.element(draw(_value(d))) for _ in range(3))
    return d, a, b, c


@given(triples())
def test_group_axioms(t):
    d, a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a + negate(a)).is_zero()
    assert a + d.zero() == a


@given(triples())
def test_exponent_kills_elements(t):
    d, a, _, _ = t
    if isinstance(d, CyclicMod):
        assert sum_elements([a] * d.k).is_zero()
    elif isinstance(d, VectorMod):
        assert sum_elements([a] * d.p).is_zero()
