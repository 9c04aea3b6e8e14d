"""The noncommutative Fourier transform on finite groups.

A transform is an operator field: one complex d x d block per irrep,
f_hat(pi) = sum_x f(x) pi(x)^*.  With counting measure on the group and
Plancherel weights d_pi / |G| on the dual, the transform is unitary:

    sum_x |f(x)|^2 = sum_pi w_pi ||f_hat(pi)||_HS^2

and inversion reads f(x) = sum_pi w_pi tr[pi(x) f_hat(pi)].
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .groups import FiniteGroup, Signal, _check_same_group, write_atomic
from .irreps import PlancherelAtlas

__all__ = [
    "OperatorField",
    "fourier_transform",
    "inverse_fourier",
    "plancherel_norm2",
    "plancherel_inner",
    "save_operator_field",
    "load_operator_field",
]


@dataclass(frozen=True)
class OperatorField:
    """One complex block per irrep of the attached atlas, in atlas order."""

    atlas: PlancherelAtlas
    blocks: tuple = field(repr=False)

    def __post_init__(self):
        if len(self.blocks) != len(self.atlas.irreps):
            raise ValueError("need exactly one block per irrep")
        frozen = []
        for rep, block in zip(self.atlas.irreps, self.blocks):
            b = np.asarray(block, dtype=np.complex128)
            if b.shape != (rep.dim, rep.dim):
                raise ValueError(f"block for {rep.label} must be {rep.dim}x{rep.dim}")
            b.flags.writeable = False
            frozen.append(b)
        object.__setattr__(self, "blocks", tuple(frozen))

    @staticmethod
    def zero(atlas: PlancherelAtlas) -> "OperatorField":
        return OperatorField(
            atlas, tuple(np.zeros((r.dim, r.dim), complex) for r in atlas.irreps)
        )


def fourier_transform(f: Signal, atlas: PlancherelAtlas) -> OperatorField:
    """f_hat(pi) = sum_x f(x) pi(x)^* for every irrep in the atlas."""
    _check_same_group(f.group, atlas.group, "fourier transform")
    blocks = tuple(
        np.einsum("x,xba->ab", f.values, np.conj(rep.matrices), optimize=True)
        for rep in atlas.irreps
    )
    return OperatorField(atlas, blocks)


def inverse_fourier(field: OperatorField) -> Signal:
    """f(x) = sum_pi w_pi tr[pi(x) F(pi)]."""
    atlas = field.atlas
    out = np.zeros(atlas.group.order, dtype=np.complex128)
    for w, rep, block in zip(atlas.weights, atlas.irreps, field.blocks):
        out += w * np.einsum("xab,ba->x", rep.matrices, block, optimize=True)
    return Signal(atlas.group, out)


def plancherel_norm2(field: OperatorField) -> float:
    """sum_pi w_pi ||F(pi)||_HS^2."""
    return float(
        sum(
            w * np.sum(np.abs(b) ** 2)
            for w, b in zip(field.atlas.weights, field.blocks)
        )
    )


def plancherel_inner(field: OperatorField, other: OperatorField) -> complex:
    """sum_pi w_pi tr[K(pi)^* F(pi)], the polarized form of the norm."""
    if field.atlas is not other.atlas and field.atlas.group != other.atlas.group:
        raise ValueError("operator fields live on different atlases")
    total = 0.0 + 0.0j
    for w, f, k in zip(field.atlas.weights, field.blocks, other.blocks):
        total += w * np.sum(np.conj(k) * f)  # tr(K^* F) entrywise
    return complex(total)


def save_operator_field(field: OperatorField, path: str):
    doc = {
        "atlas": field.atlas.group.name,
        "blocks": [
            {
                "irrep": rep.label,
                "block": [[[v.real, v.imag] for v in row] for row in b],
            }
            for rep, b in zip(field.atlas.irreps, field.blocks)
        ],
    }
    write_atomic(path, json.dumps(doc, sort_keys=True))


def load_operator_field(atlas: PlancherelAtlas, path: str) -> OperatorField:
    with open(path) as handle:
        doc = json.load(handle)
    if doc["atlas"] != atlas.group.name:
        raise ValueError(f"field is for group {doc['atlas']!r}")
    by_label = {entry["irrep"]: entry["block"] for entry in doc["blocks"]}
    blocks = tuple(
        np.array([[complex(re, im) for re, im in row] for row in by_label[rep.label]])
        for rep in atlas.irreps
    )
    return OperatorField(atlas, blocks)
