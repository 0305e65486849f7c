"""Finite(ly generated) abelian groups chosen at runtime.

Four descriptor kinds are supported: the integers, cyclic groups Z_k,
elementary abelian groups Z_p^k and finite direct products of these.
Element values are stored canonically (least non-negative residues, plain
Python ints for Z) so that equality and hashing are structural.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence


class GroupError(ValueError):
    """Raised on malformed descriptors, bad values or mixed-group arithmetic."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _as_int(value: Any, what: str) -> int:
    # bool is an int subclass; reject it so `true` in a JSON file is not read as 1
    if isinstance(value, bool) or not isinstance(value, int):
        raise GroupError(f"{what}: expected an integer, got {value!r}")
    return value


class GroupDescriptor:
    """Base class for group descriptors. Subclasses are frozen dataclasses."""

    def zero(self) -> "GroupElement":
        return GroupElement(self, self._zero())

    def element(self, value: Any) -> "GroupElement":
        """Build an element, reducing ``value`` to canonical form."""
        return GroupElement(self, self._canonical(value))

    def some_nonzero(self) -> "GroupElement":
        return GroupElement(self, self._some_nonzero())

    # flattened integer encoding used by the compiled kernels
    def moduli(self) -> tuple[int, ...]:
        """Per-coordinate moduli of the flat encoding; 0 means an integer coordinate."""
        raise NotImplementedError

    def width(self) -> int:
        return len(self.moduli())

    def flatten(self, value: Any) -> tuple[int, ...]:
        raise NotImplementedError

    def unflatten(self, coords: Sequence[int]) -> Any:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def value_to_json(self, value: Any) -> Any:
        raise NotImplementedError

    def value_from_json(self, obj: Any) -> "GroupElement":
        raise NotImplementedError

    def _zero(self) -> Any:
        raise NotImplementedError

    def _some_nonzero(self) -> Any:
        raise NotImplementedError

    def _canonical(self, value: Any) -> Any:
        raise NotImplementedError

    def _add(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def _neg(self, a: Any) -> Any:
        raise NotImplementedError

    def _is_zero(self, a: Any) -> bool:
        return a == self._zero()


@dataclass(frozen=True)
class Integers(GroupDescriptor):
    def __str__(self) -> str:
        return "Z"

    def moduli(self):
        return (0,)

    def flatten(self, value):
        return (value,)

    def unflatten(self, coords):
        return coords[0]

    def to_json(self):
        return {"group": "Z"}

    def value_to_json(self, value):
        return value

    def value_from_json(self, obj):
        return self.element(_as_int(obj, "Z label"))

    def _zero(self):
        return 0

    def _some_nonzero(self):
        return 1

    def _canonical(self, value):
        return _as_int(value, "Z value")

    def _add(self, a, b):
        return a + b

    def _neg(self, a):
        return -a


@dataclass(frozen=True)
class CyclicMod(GroupDescriptor):
    k: int

    def __post_init__(self):
        _as_int(self.k, "Zk order")
        if self.k < 2:
            raise GroupError(f"Z_k needs k >= 2, got {self.k}")

    def __str__(self) -> str:
        return f"Z_{self.k}"

    def moduli(self):
        return (self.k,)

    def flatten(self, value):
        return (value,)

    def unflatten(self, coords):
        return coords[0] % self.k

    def to_json(self):
        return {"group": "Zk", "k": self.k}

    def value_to_json(self, value):
        return value

    def value_from_json(self, obj):
        return self.element(_as_int(obj, f"{self} label"))

    def _zero(self):
        return 0

    def _some_nonzero(self):
        return 1

    def _canonical(self, value):
        return _as_int(value, f"{self} value") % self.k

    def _add(self, a, b):
        return (a + b) % self.k

    def _neg(self, a):
        return -a % self.k


@dataclass(frozen=True)
class VectorMod(GroupDescriptor):
    p: int
    k: int

    def __post_init__(self):
        _as_int(self.p, "Zpk prime")
        _as_int(self.k, "Zpk rank")
        if not is_prime(self.p):
            raise GroupError(f"Z_p^k needs prime p, got {self.p}")
        if self.k < 1:
            raise GroupError(f"Z_p^k needs k >= 1, got {self.k}")

    def __str__(self) -> str:
        return f"Z_{self.p}^{self.k}"

    def moduli(self):
        return (self.p,) * self.k

    def flatten(self, value):
        return tuple(value)

    def unflatten(self, coords):
        return tuple(c % self.p for c in coords)

    def to_json(self):
        return {"group": "Zpk", "p": self.p, "k": self.k}

    def value_to_json(self, value):
        return list(value)

    def value_from_json(self, obj):
        if not isinstance(obj, list):
            raise GroupError(f"{self} label: expected an array of {self.k} integers, got {obj!r}")
        return self.element(obj)

    def _zero(self):
        return (0,) * self.k

    def _some_nonzero(self):
        return (1,) + (0,) * (self.k - 1)

    def _canonical(self, value):
        if isinstance(value, int) and not isinstance(value, bool) and self.k == 1:
            value = (value,)
        try:
            coords = tuple(value)
        except TypeError:
            raise GroupError(f"{self} value: expected a sequence, got {value!r}") from None
        if len(coords) != self.k:
            raise GroupError(f"{self} value: expected {self.k} coordinates, got {len(coords)}")
        return tuple(_as_int(c, f"{self} coordinate") % self.p for c in coords)

    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)


@dataclass(frozen=True)
class Product(GroupDescriptor):
    factors: tuple[GroupDescriptor, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise GroupError("a product group needs at least one factor")
        for f in self.factors:
            if not isinstance(f, GroupDescriptor):
                raise GroupError(f"product factor is not a group descriptor: {f!r}")

    def __str__(self) -> str:
        return " x ".join(str(f) for f in self.factors)

    def moduli(self):
        return tuple(m for f in self.factors for m in f.moduli())

    def flatten(self, value):
        return tuple(c for f, v in zip(self.factors, value) for c in f.flatten(v))

    def unflatten(self, coords):
        out, i = [], 0
        for f in self.factors:
            w = f.width()
            out.append(f.unflatten(coords[i:i + w]))
            i += w
        return tuple(out)

    def to_json(self):
        return {"group": "product", "factors": [f.to_json() for f in self.factors]}

    def value_to_json(self, value):
        return list(self.flatten(value))

    def value_from_json(self, obj):
        if not isinstance(obj, list) or len(obj) != self.width():
            raise GroupError(f"{self} label: expected an array of {self.width()} integers, got {obj!r}")
        coords = [_as_int(c, f"{self} coordinate") for c in obj]
        return self.element(self.unflatten(coords))

    def _zero(self):
        return tuple(f._zero() for f in self.factors)

    def _some_nonzero(self):
        return (self.factors[0]._some_nonzero(),) + tuple(f._zero() for f in self.factors[1:])

    def _canonical(self, value):
        try:
            parts = tuple(value)
        except TypeError:
            raise GroupError(f"{self} value: expected a tuple, got {value!r}") from None
        if len(parts) != len(self.factors):
            raise GroupError(f"{self} value: expected {len(self.factors)} components, got {len(parts)}")
        return tuple(f._canonical(v) for f, v in zip(self.factors, parts))

    def _add(self, a, b):
        return tuple(f._add(x, y) for f, x, y in zip(self.factors, a, b))

    def _neg(self, a):
        return tuple(f._neg(x) for f, x in zip(self.factors, a))


@dataclass(frozen=True)
class GroupElement:
    descriptor: GroupDescriptor
    value: Any

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return add(self, other)

    def __neg__(self) -> "GroupElement":
        return negate(self)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return add(self, negate(other))

    def is_zero(self) -> bool:
        return self.descriptor._is_zero(self.value)

    def __repr__(self) -> str:
        return f"{self.descriptor}({self.value!r})"


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.descriptor != b.descriptor:
        raise GroupError(f"cannot add elements of {a.descriptor} and {b.descriptor}")
    return GroupElement(a.descriptor, a.descriptor._add(a.value, b.value))


def negate(a: GroupElement) -> GroupElement:
    return GroupElement(a.descriptor, a.descriptor._neg(a.value))


def is_zero(a: GroupElement) -> bool:
    return a.is_zero()


def sum_elements(elements: Iterable[GroupElement], descriptor: GroupDescriptor | None = None) -> GroupElement:
    """Fold ``add`` over ``elements`` starting from zero.

    ``descriptor`` is required when ``elements`` may be empty.
    """
    elements = list(elements)
    if descriptor is None:
        if not elements:
            raise GroupError("empty sum needs an explicit descriptor")
        descriptor = elements[0].descriptor
    total = descriptor._zero()
    for x in elements:
        if x.descriptor != descriptor:
            raise GroupError(f"cannot sum elements of {x.descriptor} into {descriptor}")
        total = descriptor._add(total, x.value)
    return GroupElement(descriptor, total)


def descriptor_from_json(obj: Any) -> GroupDescriptor:
    """Parse ``{"group": "Z"}``, ``{"group": "Zk", "k": 3}``, ``{"group": "Zpk", ...}`` or products."""
    if not isinstance(obj, dict) or "group" not in obj:
        raise GroupError(f"group descriptor must be an object with a 'group' field, got {obj!r}")
    kind = obj["group"]
    if kind == "Z":
        return Integers()
    if kind == "Zk":
        if "k" not in obj:
            raise GroupError("group 'Zk' requires field 'k'")
        return CyclicMod(_as_int(obj["k"], "group.k"))
    if kind == "Zpk":
        for field in ("p", "k"):
            if field not in obj:
                raise GroupError(f"group 'Zpk' requires field '{field}'")
        return VectorMod(_as_int(obj["p"], "group.p"), _as_int(obj["k"], "group.k"))
    if kind == "product":
        factors = obj.get("factors")
        if not isinstance(factors, list):
            raise GroupError("group 'product' requires an array field 'factors'")
        return Product(tuple(descriptor_from_json(f) for f in factors))
    raise GroupError(f"unknown group kind {kind!r}")
