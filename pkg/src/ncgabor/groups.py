"""Finite groups with counting Haar measure, and signals living on them.

Groups are stored as dense index tables: element ``i`` times element ``j``
is ``mul[i, j]`` and inverses are ``inv[i]``.  Human-readable labels are
metadata only; everything downstream works on integer indices.  The counting
measure (weight 1 per element) is used throughout, so no normalization is
hidden in the transforms; the Plancherel weights carry all of it.

Element ordering is part of the on-disk contract and is fixed per builder:

* cyclic:      ``0, 1, ..., n-1``
* dihedral:    ``r^0 .. r^{n-1}`` then ``s r^0 .. s r^{n-1}``
* heisenberg:  ``(x, y, z)`` lexicographic, index ``x q^2 + y q + z``
* quaternion:  ``1, -1, i, -i, j, -j, k, -k``
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FiniteGroup",
    "Signal",
    "build_cyclic",
    "build_dihedral",
    "build_heisenberg_mod",
    "build_quaternion",
    "catalog",
    "left_translate",
    "right_translate",
    "involution",
    "convolve",
    "verify_axioms",
    "save_group",
    "load_group",
]


def _frozen(a):
    a = np.asarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group as flat multiplication/inverse tables.

    Immutable after construction; safe to share between threads.
    """

    name: str
    labels: tuple
    mul: np.ndarray
    inv: np.ndarray
    identity: int
    family: str = "custom"
    param: int = 0

    def __post_init__(self):
        object.__setattr__(self, "mul", _frozen(np.asarray(self.mul, dtype=np.int64)))
        object.__setattr__(self, "inv", _frozen(np.asarray(self.inv, dtype=np.int64)))
        n = len(self.labels)
        if self.mul.shape != (n, n) or self.inv.shape != (n,):
            raise ValueError("table shapes do not match the number of elements")

    @property
    def order(self) -> int:
        return len(self.labels)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return (
            self.identity == other.identity
            and np.array_equal(self.mul, other.mul)
            and np.array_equal(self.inv, other.inv)
        )

    def __hash__(self):
        return hash((self.name, self.order, self.identity))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def _check_same_group(a: FiniteGroup, b: FiniteGroup, what: str):
    if a != b:
        raise ValueError(f"group mismatch in {what}: {a.name} vs {b.name}")


@dataclass(frozen=True)
class Signal:
    """A complex-valued function on a finite group, one value per element."""

    group: FiniteGroup
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        if v.shape != (self.group.order,):
            raise ValueError("signal length must equal the group order")
        object.__setattr__(self, "values", _frozen(v))

    @staticmethod
    def delta(group: FiniteGroup, index: int | None = None) -> "Signal":
        """Unit mass at one element (the identity by default)."""
        v = np.zeros(group.order, dtype=np.complex128)
        v[group.identity if index is None else index] = 1.0
        return Signal(group, v)

    @staticmethod
    def ones(group: FiniteGroup) -> "Signal":
        return Signal(group, np.ones(group.order, dtype=np.complex128))

    @staticmethod
    def zero(group: FiniteGroup) -> "Signal":
        return Signal(group, np.zeros(group.order, dtype=np.complex128))

    @staticmethod
    def random(group: FiniteGroup, rng: np.random.Generator) -> "Signal":
        """Standard complex Gaussian entries, seeded by the caller's rng."""
        v = rng.standard_normal(group.order) + 1j * rng.standard_normal(group.order)
        return Signal(group, v)

    def norm2(self) -> float:
        """Squared L2 norm under counting measure."""
        return float(np.sum(np.abs(self.values) ** 2))

    def inner(self, other: "Signal") -> complex:
        """<f, g> = sum_x f(x) conj(g(x)), linear in the first argument."""
        _check_same_group(self.group, other.group, "inner product")
        return complex(np.sum(self.values * np.conj(other.values)))

    def __add__(self, other: "Signal") -> "Signal":
        _check_same_group(self.group, other.group, "signal sum")
        return Signal(self.group, self.values + other.values)

    def __sub__(self, other: "Signal") -> "Signal":
        _check_same_group(self.group, other.group, "signal difference")
        return Signal(self.group, self.values - other.values)

    def __mul__(self, scalar) -> "Signal":
        return Signal(self.group, self.values * scalar)

    __rmul__ = __mul__


# ---------------------------------------------------------------------------
# catalog builders


def build_cyclic(n: int) -> FiniteGroup:
    """Z_n with addition mod n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    idx = np.arange(n)
    mul = (idx[:, None] + idx[None, :]) % n
    inv = (-idx) % n
    labels = tuple(str(k) for k in range(n))
    return FiniteGroup(f"Z{n}", labels, mul, inv, 0, family="cyclic", param=n)


def build_dihedral(n: int) -> FiniteGroup:
    """D_n of order 2n: rotations r^k (indices 0..n-1), reflections s r^k
    (indices n..2n-1), with r^n = s^2 = e and s r s = r^{-1}."""
    if n < 3:
        raise ValueError("n must be >= 3")
    order = 2 * n
    mul = np.empty((order, order), dtype=np.int64)
    a = np.arange(n)
    # r^a r^b = r^{a+b}; r^a (s r^b) = s r^{b-a}; (s r^a) r^b = s r^{a+b};
    # (s r^a)(s r^b) = r^{b-a}
    mul[:n, :n] = (a[:, None] + a[None, :]) % n
    mul[:n, n:] = n + (a[None, :] - a[:, None]) % n
    mul[n:, :n] = n + (a[:, None] + a[None, :]) % n
    mul[n:, n:] = (a[None, :] - a[:, None]) % n
    inv = np.concatenate([(-a) % n, n + a])
    labels = tuple(f"r{k}" for k in range(n)) + tuple(f"sr{k}" for k in range(n))
    return FiniteGroup(f"D{n}", labels, mul, inv, 0, family="dihedral", param=n)


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q**0.5) + 1))


def build_heisenberg_mod(q: int) -> FiniteGroup:
    """Heisenberg group over Z_q (q prime), order q^3.

    Group law: (x1,y1,z1)(x2,y2,z2) = (x1+x2, y1+y2, z1+z2+x1*y2) mod q.
    """
    if not _is_prime(q):
        raise ValueError(f"q must be prime, got {q}")
    n = q**3
    coords = np.array([(x, y, z) for x in range(q) for y in range(q) for z in range(q)])
    x, y, z = coords.T
    xs = (x[:, None] + x[None, :]) % q
    ys = (y[:, None] + y[None, :]) % q
    zs = (z[:, None] + z[None, :] + x[:, None] * y[None, :]) % q
    mul = xs * q * q + ys * q + zs
    ix, iy = (-x) % q, (-y) % q
    iz = (-z + x * y) % q
    inv = ix * q * q + iy * q + iz
    labels = tuple(f"({a},{b},{c})" for a, b, c in coords)
    return FiniteGroup(f"H{q}", labels, mul, inv, 0, family="heisenberg", param=q)


_Q8_TABLE = {
    # Hamilton products on unit quaternions, (sign, axis) with axis in e,i,j,k
    ("i", "i"): (-1, "e"), ("j", "j"): (-1, "e"), ("k", "k"): (-1, "e"),
    ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
    ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"),
    ("k", "i"): (1, "j"), ("i", "k"): (-1, "j"),
}


def build_quaternion() -> FiniteGroup:
    """The quaternion group Q8 = {1, -1, i, -i, j, -j, k, -k}."""
    units = ["e", "i", "j", "k"]
    elems = [(s, u) for u in units for s in (1, -1)]  # 1,-1,i,-i,j,-j,k,-k

    def times(a, b):
        sa, ua = a
        sb, ub = b
        if ua == "e":
            return (sa * sb, ub)
        if ub == "e":
            return (sa * sb, ua)
        s, u = _Q8_TABLE[(ua, ub)]
        return (sa * sb * s, u)

    index = {e: i for i, e in enumerate(elems)}
    mul = np.array([[index[times(a, b)] for b in elems] for a in elems])
    inv = np.array([index[(s, u)] if u == "e" else index[(-s, u)] for s, u in elems])
    pretty = {"e": "1", "i": "i", "j": "j", "k": "k"}
    labels = tuple(("" if s > 0 else "-") + pretty[u] for s, u in elems)
    return FiniteGroup("Q8", labels, mul, inv, 0, family="quaternion", param=8)


def catalog() -> dict:
    """The groups every verification suite runs over, keyed by name."""
    groups = [
        build_cyclic(2), build_cyclic(4), build_cyclic(6), build_cyclic(12),
        build_dihedral(3), build_dihedral(4), build_dihedral(6),
        build_heisenberg_mod(2), build_heisenberg_mod(3),
        build_quaternion(),
    ]
    return {g.name: g for g in groups}


# ---------------------------------------------------------------------------
# operators on signals


def left_translate(f: Signal, x: int) -> Signal:
    """(L_x f)(y) = f(x^{-1} y)."""
    g = f.group
    return Signal(g, f.values[g.mul[g.inv[x]]])


def right_translate(f: Signal, x: int) -> Signal:
    """(R_x f)(y) = f(y x)."""
    g = f.group
    return Signal(g, f.values[g.mul[:, x]])


def involution(f: Signal) -> Signal:
    """f~(y) = conj(f(y^{-1})); an isometry since counting measure is
    inversion-invariant."""
    g = f.group
    return Signal(g, np.conj(f.values[g.inv]))


def convolve(f: Signal, g: Signal) -> Signal:
    """(f * g)(x) = sum_y f(y) g(y^{-1} x)."""
    _check_same_group(f.group, g.group, "convolution")
    grp = f.group
    shifted = g.values[grp.mul[grp.inv]]  # [y, x] -> g(y^{-1} x)
    return Signal(grp, f.values @ shifted)


def verify_axioms(group: FiniteGroup) -> dict:
    """Exhaustive scan of the group axioms over the stored tables.

    Returns counts of violations per axiom; all zeros for a valid group.
    Cheap for the catalog sizes (order <= 27).
    """
    mul, inv, e = group.mul, group.inv, group.identity
    assoc = int(np.count_nonzero(mul[mul, :] != mul[:, mul]))
    ident = int(np.count_nonzero(mul[e, :] != np.arange(group.order))) + int(
        np.count_nonzero(mul[:, e] != np.arange(group.order))
    )
    idx = np.arange(group.order)
    inverse = int(np.count_nonzero(mul[idx, inv] != e)) + int(
        np.count_nonzero(mul[inv, idx] != e)
    )
    closure = int(np.count_nonzero((mul < 0) | (mul >= group.order)))
    return {
        "associativity": assoc,
        "identity": ident,
        "inverses": inverse,
        "closure": closure,
    }


# ---------------------------------------------------------------------------
# persistence


def write_atomic(path: str, text: str):
    """Write via a temp file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_group(group: FiniteGroup, path: str):
    doc = {
        "name": group.name,
        "order": group.order,
        "mul": group.mul.reshape(-1).tolist(),
        "inv": group.inv.tolist(),
        "identity": group.identity,
        "labels": list(group.labels),
        "family": group.family,
        "param": group.param,
    }
    write_atomic(path, json.dumps(doc, sort_keys=True))


def load_group(path: str) -> FiniteGroup:
    with open(path) as handle:
        doc = json.load(handle)
    n = doc["order"]
    return FiniteGroup(
        doc["name"],
        tuple(doc["labels"]),
        np.array(doc["mul"], dtype=np.int64).reshape(n, n),
        np.array(doc["inv"], dtype=np.int64),
        doc["identity"],
        family=doc.get("family", "custom"),
        param=doc.get("param", 0),
    )
