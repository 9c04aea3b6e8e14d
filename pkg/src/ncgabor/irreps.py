"""Complete unitary duals for the catalog groups, with Plancherel weights.

Each catalog family ships one explicit matrix representative per equivalence
class, so atlases are deterministic across runs and platforms:

* cyclic Z_n: characters chi_k(j) = exp(2 pi i j k / n);
* dihedral D_n: the one-dimensional characters plus the two-dimensional
  rho_k with rho_k(r) = diag(w^k, w^-k), rho_k(s) = antidiag(1, 1),
  w = exp(2 pi i / n), 0 < k < n/2;
* Heisenberg mod q: q^2 characters chi_{b,c}(x,y,z) = w^{bx+cy} plus, for
  a in 1..q-1, the dim-q representations (rho_a(x,y,z) f)(u) = w^{a(z+uy)}
  f(u+x) on coordinates u in Z_q;
* quaternion Q8: four sign characters plus the two-dimensional spin
  representation.

Two inner-product conventions coexist on purpose.  Character and
matrix-element orthonormality statements use the normalized average
(1/|G|) sum, in which the scaled matrix elements sqrt(d) pi_ij form an
orthonormal basis of L2(G).  The transform side keeps plain counting
measure, and the Plancherel weight d_pi / |G| reconciles the two.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .groups import FiniteGroup, Signal, _frozen, write_atomic

__all__ = [
    "UnitaryIrrep",
    "PlancherelAtlas",
    "AtlasReport",
    "dual_of",
    "verify_atlas",
    "matrix_element",
    "save_atlas",
    "load_atlas",
]


@dataclass(frozen=True)
class UnitaryIrrep:
    """One irreducible unitary representation: a d x d matrix per element."""

    label: str
    dim: int
    matrices: np.ndarray = field(repr=False)  # shape (|G|, d, d)

    def __post_init__(self):
        m = np.asarray(self.matrices, dtype=np.complex128)
        if m.ndim != 3 or m.shape[1] != self.dim or m.shape[2] != self.dim:
            raise ValueError("matrices must have shape (|G|, d, d)")
        object.__setattr__(self, "matrices", _frozen(m))

    def characters(self) -> np.ndarray:
        return np.trace(self.matrices, axis1=1, axis2=2)


@dataclass(frozen=True)
class PlancherelAtlas:
    """The unitary dual of a finite group plus its Plancherel weights."""

    group: FiniteGroup
    irreps: tuple
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "weights", _frozen(np.asarray(self.weights, dtype=np.float64))
        )

    @property
    def dims(self) -> tuple:
        return tuple(rep.dim for rep in self.irreps)

    def irrep_by_label(self, label: str) -> UnitaryIrrep:
        for rep in self.irreps:
            if rep.label == label:
                return rep
        raise KeyError(f"no irrep labelled {label!r}")


def _cyclic_dual(group: FiniteGroup):
    n = group.param
    j = np.arange(n)
    reps = []
    for k in range(n):
        chi = np.exp(2j * np.pi * j * k / n)
        reps.append(UnitaryIrrep(f"chi{k}", 1, chi.reshape(n, 1, 1)))
    return reps

def _dihedral_dual(group: FiniteGroup):
    n = group.param
    k_rot = np.arange(n)  # rotation exponent per element index
    is_refl = np.zeros(2 * n, dtype=bool)
    is_refl[n:] = True
    exponent = np.concatenate([k_rot, k_rot])

    def one_dim(label, on_r, on_s):
        vals = np.where(is_refl, on_s * on_r**exponent, on_r**exponent)
        return UnitaryIrrep(label, 1, vals.astype(complex).reshape(-1, 1, 1))

    reps = [one_dim("triv", 1.0, 1.0), one_dim("sgn_s", 1.0, -1.0)]
    if n % 2 == 0:
        reps.append(one_dim("sgn_r", -1.0, 1.0))
        reps.append(one_dim("sgn_rs", -1.0, -1.0))
    w = np.exp(2j * np.pi / n)
    for k in range(1, (n + 1) // 2):
        mats = np.zeros((2 * n, 2, 2), dtype=complex)
        # rho(r^a) = diag(w^{ka}, w^{-ka}); rho(s r^a) = antidiag(w^{-ka}, w^{ka})
        mats[:n, 0, 0] = w ** (k * k_rot)
        mats[:n, 1, 1] = w ** (-k * k_rot)
        mats[n:, 0, 1] = w ** (-k * k_rot)
        mats[n:, 1, 0] = w ** (k * k_rot)
        reps.append(UnitaryIrrep(f"rot{k}", 2, mats))
    return reps


def _heisenberg_dual(group: FiniteGroup):
    q = group.param
    coords = np.array([(x, y, z) for x in range(q) for y in range(q) for z in range(q)])
    x, y, z = coords.T
    w = np.exp(2j * np.pi / q)
    reps = []
    for b in range(q):
        for c in range(q):
            chi = w ** ((b * x + c * y) % q)
            reps.append(UnitaryIrrep(f"chi{b}{c}", 1, chi.reshape(-1, 1, 1)))
    u = np.arange(q)
    for a in range(1, q):
        mats = np.zeros((q**3, q, q), dtype=complex)
        rows = np.broadcast_to(u[None, :], (q**3, q))
        cols = (u[None, :] + x[:, None]) % q
        phases = w ** ((a * (z[:, None] + u[None, :] * y[:, None])) % q)
        elems = np.broadcast_to(np.arange(q**3)[:, None], (q**3, q))
        mats[elems, rows, cols] = phases
        reps.append(UnitaryIrrep(f"schr{a}", q, mats))
    return reps


def _quaternion_dual(group: FiniteGroup):
    # element order: 1, -1, i, -i, j, -j, k, -k
    signs = {
        "triv": [1, 1, 1, 1, 1, 1, 1, 1],
        "sgn_i": [1, 1, 1, 1, -1, -1, -1, -1],
        "sgn_j": [1, 1, -1, -1, 1, 1, -1, -1],
        "sgn_k": [1, 1, -1, -1, -1, -1, 1, 1],
    }
    reps = [
        UnitaryIrrep(label, 1, np.array(vals, dtype=complex).reshape(-1, 1, 1))
        for label, vals in signs.items()
    ]
    eye = np.eye(2, dtype=complex)
    mi = np.array([[1j, 0], [0, -1j]])
    mj = np.array([[0, 1], [-1, 0]], dtype=complex)
    mk = mi @ mj
    mats = np.stack([eye, -eye, mi, -mi, mj, -mj, mk, -mk])
    reps.append(UnitaryIrrep("spin", 2, mats))
    return reps


_DUAL_BUILDERS = {
    "cyclic": _cyclic_dual,
    "dihedral": _dihedral_dual,
    "heisenberg": _heisenberg_dual,
    "quaternion": _quaternion_dual,
}


def dual_of(group: FiniteGroup) -> PlancherelAtlas:
    """Complete dual of a catalog group, with weights d_pi / |G|."""
    try:
        builder = _DUAL_BUILDERS[group.family]
    except KeyError:
        raise ValueError(f"unknown group family {group.family!r}") from None
    reps = builder(group)
    weights = np.array([rep.dim / group.order for rep in reps])
    return PlancherelAtlas(group, tuple(reps), weights)


def matrix_element(group: FiniteGroup, irrep: UnitaryIrrep, i: int, j: int) -> Signal:
    """The signal x -> pi(x)_{ij}."""
    if not (0 <= i < irrep.dim and 0 <= j < irrep.dim):
        raise IndexError(f"matrix element ({i},{j}) out of range for dim {irrep.dim}")
    return Signal(group, irrep.matrices[:, i, j])


@dataclass(frozen=True)
class AtlasReport:
    """Max deviations of the dual-integrity checks, one entry per check."""

    group: str
    tolerance: float
    deviations: dict
    complete: bool

    @property
    def passed(self) -> bool:
        return self.complete and all(v <= self.tolerance for v in self.deviations.values())

    def failures(self) -> list:
        bad = [name for name, v in self.deviations.items() if v > self.tolerance]
        if not self.complete:
            bad.append("completeness")
        return bad

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "tolerance": self.tolerance,
            "deviations": dict(self.deviations),
            "complete": self.complete,
            "pass": self.passed,
            "failures": self.failures(),
        }


def verify_atlas(atlas: PlancherelAtlas, tolerance: float = 1e-10) -> AtlasReport:
    """Scan unitarity, the homomorphism law, character orthonormality,
    matrix-element orthogonality, completeness and the weight convention.

    Deviations are reported per check; failures never raise.
    """
    group = atlas.group
    n = group.order
    dev = {}

    hs = lambda m: np.sqrt(np.sum(np.abs(m) ** 2, axis=(-2, -1)))

    unit = 0.0
    hom = 0.0
    for rep in atlas.irreps:
        m = rep.matrices
        eye = np.eye(rep.dim)
        unit = max(unit, float(hs(np.conj(np.transpose(m, (0, 2, 1))) @ m - eye).max()))
        prod = np.einsum("xab,ybc->xyac", m, m, optimize=True)
        hom = max(hom, float(hs(prod - m[group.mul]).max()))
    dev["unitarity"] = unit
    dev["homomorphism"] = hom

    chars = np.stack([rep.characters() for rep in atlas.irreps], axis=1)  # (|G|, r)
    gram = np.conj(chars.T) @ chars / n
    dev["character_orthonormality"] = float(np.abs(gram - np.eye(len(atlas.irreps))).max())

    cols = [
        np.sqrt(rep.dim / n) * rep.matrices[:, i, j]
        for rep in atlas.irreps
        for i in range(rep.dim)
        for j in range(rep.dim)
    ]
    basis = np.stack(cols, axis=1)
    if basis.shape[1] == n:
        dev["matrix_element_orthogonality"] = float(
            np.abs(np.conj(basis.T) @ basis - np.eye(n)).max()
        )
    else:
        dev["matrix_element_orthogonality"] = float("inf")

    complete = sum(rep.dim**2 for rep in atlas.irreps) == n
    expected = np.array([rep.dim / n for rep in atlas.irreps])
    dev["plancherel_weights"] = float(np.abs(atlas.weights - expected).max())

    return AtlasReport(group.name, tolerance, dev, complete)


# ---------------------------------------------------------------------------
# persistence


def _matrix_to_json(m: np.ndarray):
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def _matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def save_atlas(atlas: PlancherelAtlas, path: str):
    doc = {
        "group": atlas.group.name,
        "irreps": [
            {
                "label": rep.label,
                "dim": rep.dim,
                "matrices": [_matrix_to_json(m) for m in rep.matrices],
            }
            for rep in atlas.irreps
        ],
        "weights": atlas.weights.tolist(),
    }
    write_atomic(path, json.dumps(doc, sort_keys=True))


def load_atlas(group: FiniteGroup, path: str) -> PlancherelAtlas:
    with open(path) as handle:
        doc = json.load(handle)
    if doc["group"] != group.name:
        raise ValueError(f"atlas file is for {doc['group']!r}, not {group.name!r}")
    reps = tuple(
        UnitaryIrrep(
            entry["label"],
            entry["dim"],
            np.stack([_matrix_from_json(m) for m in entry["matrices"]]),
        )
        for entry in doc["irreps"]
    )
    return PlancherelAtlas(group, reps, np.array(doc["weights"]))
