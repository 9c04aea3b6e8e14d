"""Windowed (Gabor) analysis over a finite group and its dual.

The transform of a signal f against a nonzero window psi is the field

    G[f](x, pi) = sum_y f(y) conj(psi(x^{-1} y)) pi(y)^*

over all pairs (x, pi) of group element and irrep.  Under the product of
counting measure and the Plancherel weights, the transform scales energy by
||psi||^2, satisfies an orthogonality relation, and inverts through the
frame adjoint whenever the analysis and synthesis windows are not
orthogonal.  All of that is exact here up to floating point, and each
identity is exposed as a checkable operation.

Blocks are stored plainly: the fiber inner product of the ambient space at
(x, pi) agrees with the Hilbert-Schmidt inner product of the stored blocks
because pi(x) is unitary, so nothing is gained by materializing pi(x) HS.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from .groups import FiniteGroup, Signal, _check_same_group, left_translate, write_atomic
from .irreps import PlancherelAtlas, UnitaryIrrep
from .fourier import fourier_transform

__all__ = [
    "GaborField",
    "ModulatedWindow",
    "modulate",
    "pairing",
    "gabor_transform",
    "gabor_via_fourier",
    "gabor_adjoint_block",
    "factorization_defect",
    "sigma_norm2",
    "sigma_inner",
    "frame_adjoint",
    "reconstruct",
    "tensor_apply",
    "identity_resolution_matrix",
    "cross_gram_matrix",
    "spectrogram_rows",
    "save_spectrogram",
    "save_gabor_field",
    "load_gabor_field",
]

ORTHOGONAL_WINDOW_GUARD = 1e-12


@dataclass(frozen=True)
class GaborField:
    """Transform values: per irrep, an array of shape (|G|, d, d)."""

    atlas: PlancherelAtlas
    blocks: tuple = field(repr=False)

    def __post_init__(self):
        n = self.atlas.group.order
        frozen = []
        for rep, b in zip(self.atlas.irreps, self.blocks):
            arr = np.asarray(b, dtype=np.complex128)
            if arr.shape != (n, rep.dim, rep.dim):
                raise ValueError(f"blocks for {rep.label} must be ({n},{rep.dim},{rep.dim})")
            arr.flags.writeable = False
            frozen.append(arr)
        object.__setattr__(self, "blocks", tuple(frozen))

    def block(self, x: int, irrep_index: int) -> np.ndarray:
        return self.blocks[irrep_index][x]

    def hs_norm_sq_table(self) -> np.ndarray:
        """||G[f](x, pi)||_HS^2 as an (|G|, n_irreps) array, the spectrogram."""
        return np.stack(
            [np.sum(np.abs(b) ** 2, axis=(1, 2)) for b in self.blocks], axis=1
        )

    @staticmethod
    def zero(atlas: PlancherelAtlas) -> "GaborField":
        n = atlas.group.order
        return GaborField(
            atlas, tuple(np.zeros((n, r.dim, r.dim), complex) for r in atlas.irreps)
        )


class ModulatedWindow:
    """A window tensored against one irrep: x -> psi(x) pi(x), kept lazy.

    Only the scalars are stored; the shared irrep matrices provide the
    operator part.  Modulation is an isometry since every pi(x) has
    operator norm one.
    """

    def __init__(self, irrep: UnitaryIrrep, scalars: np.ndarray):
        self.irrep = irrep
        self.scalars = np.asarray(scalars, dtype=np.complex128)

    def operator(self, x: int) -> np.ndarray:
        return self.scalars[x] * self.irrep.matrices[x]

    def operators(self) -> np.ndarray:
        """Dense (|G|, d, d) realization."""
        return self.scalars[:, None, None] * self.irrep.matrices

    def norm2(self) -> float:
        """Integral of the squared operator norms; equals ||psi||^2."""
        return float(np.sum(np.abs(self.scalars) ** 2))


def modulate(window: Signal, irrep: UnitaryIrrep) -> ModulatedWindow:
    return ModulatedWindow(irrep, window.values)


def pairing(f: Signal, phi) -> np.ndarray:
    """The operator-valued pairing <f, phi> = sum_y f(y) phi(y)^*.

    ``phi`` is a ModulatedWindow or any (|G|, d, d) array of operators.
    The result is a d x d matrix with operator norm at most
    ||f|| * sqrt(sum_y ||phi(y)||_op^2).
    """
    ops = phi.operators() if isinstance(phi, ModulatedWindow) else np.asarray(phi)
    if ops.shape[0] != f.group.order:
        raise ValueError("operator field length must equal the group order")
    return np.einsum("y,yba->ab", f.values, np.conj(ops), optimize=True)


def _require_window(window: Signal):
    if not np.any(window.values):
        raise ValueError("window must be a nonzero signal")


def gabor_transform(f: Signal, window: Signal, atlas: PlancherelAtlas) -> GaborField:
    """Direct evaluation of the windowed transform on all of (x, pi).

    Parameters
    ----------
    f : Signal
        The analyzed signal.
    window : Signal
        A nonzero window; its translates localize f before transforming.
    atlas : PlancherelAtlas
        Dual of the common group, fixing block order and weights.
    """
    _check_same_group(f.group, atlas.group, "gabor transform")
    _check_same_group(window.group, atlas.group, "gabor transform")
    _require_window(window)
    group = atlas.group
    inv_rows = group.mul[group.inv]  # [x, y] -> x^{-1} y
    weighted = f.values[None, :] * np.conj(window.values[inv_rows])
    blocks = tuple(
        np.einsum("xy,yba->xab", weighted, np.conj(rep.matrices), optimize=True)
        for rep in atlas.irreps
    )
    return GaborField(atlas, blocks)


def gabor_via_fourier(f: Signal, window: Signal, atlas: PlancherelAtlas) -> GaborField:
    """Same field, assembled per x as the transform of the windowed cut
    y -> f(y) conj(window(x^{-1} y)).  Agrees with gabor_transform to
    rounding; kept as an independent path for cross-checking."""
    _check_same_group(f.group, atlas.group, "gabor transform")
    _require_window(window)
    group = atlas.group
    per_irrep = [[] for _ in atlas.irreps]
    for x in range(group.order):
        cut = Signal(group, f.values * np.conj(left_translate(window, x).values))
        hat = fourier_transform(cut, atlas)
        for store, block in zip(per_irrep, hat.blocks):
            store.append(block)
    return GaborField(atlas, tuple(np.stack(s) for s in per_irrep))


def gabor_adjoint_block(
    f: Signal, window: Signal, atlas: PlancherelAtlas, x: int, irrep_index: int
) -> np.ndarray:
    """Fourier transform of the involuted windowed cut at (x, pi).

    Equals the conjugate transpose of the corresponding transform block.
    """
    from .groups import involution

    _require_window(window)
    group = atlas.group
    cut = Signal(group, f.values * np.conj(left_translate(window, x).values))
    rep = atlas.irreps[irrep_index]
    tilde = involution(cut)
    return np.einsum("y,yba->ab", tilde.values, np.conj(rep.matrices), optimize=True)


def factorization_defect(
    f: Signal, window: Signal, atlas: PlancherelAtlas, x: int, irrep_index: int
) -> float:
    """HS distance between the transform block at (x, pi) and
    pi(x) . fourier(R_{x^{-1}}(f . conj(L_x window)))(pi); zero in exact
    arithmetic."""
    from .groups import right_translate

    group = atlas.group
    rep = atlas.irreps[irrep_index]
    direct = gabor_transform(f, window, atlas).block(x, irrep_index)
    cut = Signal(group, f.values * np.conj(left_translate(window, x).values))
    shifted = right_translate(cut, group.inv[x])
    hat = np.einsum("y,yba->ab", shifted.values, np.conj(rep.matrices), optimize=True)
    factored = rep.matrices[x] @ hat
    return float(np.sqrt(np.sum(np.abs(direct - factored) ** 2)))


def sigma_norm2(field: GaborField) -> float:
    """sum_x sum_pi w_pi ||F(x, pi)||_HS^2."""
    table = field.hs_norm_sq_table()
    return float(np.sum(table @ field.atlas.weights))


def sigma_inner(field: GaborField, other: GaborField) -> complex:
    """sum_x sum_pi w_pi tr[K(x, pi)^* F(x, pi)]."""
    if field.atlas.group != other.atlas.group:
        raise ValueError("gabor fields live on different atlases")
    total = 0.0 + 0.0j
    for w, f, k in zip(field.atlas.weights, field.blocks, other.blocks):
        total += w * np.sum(np.conj(k) * f)
    return complex(total)


def frame_adjoint(field: GaborField, window: Signal) -> Signal:
    """The synthesis map S[F](x) = sum_y sum_pi w_pi tr[F(y, pi)
    window(y^{-1} x) pi(x)]; adjoint to the analysis map with the same
    window."""
    atlas = field.atlas
    group = atlas.group
    translated = window.values[group.mul[group.inv]]  # [y, x] -> window(y^{-1} x)
    out = np.zeros(group.order, dtype=np.complex128)
    for w, rep, blocks in zip(atlas.weights, atlas.irreps, field.blocks):
        traces = np.einsum("yab,xba->yx", blocks, rep.matrices, optimize=True)
        out += w * np.einsum("yx,yx->x", traces, translated, optimize=True)
    return Signal(group, out)


def reconstruct(field: GaborField, window: Signal, dual_window: Signal) -> Signal:
    """Invert a transform taken with ``window`` using ``dual_window``.

    Requires <dual_window, window> away from zero; the synthesis sum is
    divided by that overlap.  Raises when the windows are orthogonal to
    within the guard threshold.
    """
    overlap = dual_window.inner(window)
    scale = np.sqrt(dual_window.norm2() * window.norm2())
    if abs(overlap) <= ORTHOGONAL_WINDOW_GUARD * scale:
        raise ValueError("windows are orthogonal; reconstruction is ill posed")
    return frame_adjoint(field, dual_window) * (1.0 / overlap)


def tensor_apply(phi, phi_prime, f: Signal) -> np.ndarray:
    """Rank-style operator: f -> <f, phi'> phi, returned as the dense
    (|G|, d, d) field x -> <f, phi'> . phi(x)."""
    left = phi.operators() if isinstance(phi, ModulatedWindow) else np.asarray(phi)
    coeff = pairing(f, phi_prime)
    if left.shape[-1] != coeff.shape[0]:
        raise ValueError("operator dimensions do not match")
    return np.einsum("ab,xbc->xac", coeff, left, optimize=True)


def identity_resolution_matrix(
    window: Signal, dual_window: Signal, atlas: PlancherelAtlas
) -> np.ndarray:
    """Assemble, over the delta basis, the operator

        f -> <dual, window>^{-1} sum_y sum_pi w_pi
             tr[ (M_pi L_y dual) tensor (M_pi L_y window) (f) ]

    which resolves the identity on L2(G).  Returns the |G| x |G| matrix;
    the caller compares it against the identity.
    """
    group = atlas.group
    n = group.order
    overlap = dual_window.inner(window)
    scale = np.sqrt(dual_window.norm2() * window.norm2())
    if abs(overlap) <= ORTHOGONAL_WINDOW_GUARD * scale:
        raise ValueError("windows are orthogonal; resolution is ill posed")
    mod_dual = [
        [modulate(left_translate(dual_window, y), rep).operators() for rep in atlas.irreps]
        for y in range(n)
    ]
    mod_win = [
        [modulate(left_translate(window, y), rep).operators() for rep in atlas.irreps]
        for y in range(n)
    ]
    out = np.zeros((n, n), dtype=np.complex128)
    for j in range(n):
        f = Signal.delta(group, j)
        acc = np.zeros(n, dtype=np.complex128)
        for y in range(n):
            for p, w in enumerate(atlas.weights):
                applied = tensor_apply(mod_dual[y][p], mod_win[y][p], f)
                acc += w * np.trace(applied, axis1=1, axis2=2)
        out[:, j] = acc / overlap
    return out


def cross_gram_matrix(
    window: Signal, dual_window: Signal, atlas: PlancherelAtlas
) -> np.ndarray:
    """Matrix of (synthesis with dual) o (analysis with window) over the
    delta basis; equals <dual, window> I when the machinery is exact."""
    group = atlas.group
    n = group.order
    out = np.empty((n, n), dtype=np.complex128)
    for j in range(n):
        col = frame_adjoint(gabor_transform(Signal.delta(group, j), window, atlas), dual_window)
        out[:, j] = col.values
    return out


# ---------------------------------------------------------------------------
# export


def spectrogram_rows(field: GaborField):
    """Rows (x_index, x_label, irrep_label, hs_norm_sq), one per cell."""
    group = field.atlas.group
    table = field.hs_norm_sq_table()
    for x in range(group.order):
        for p, rep in enumerate(field.atlas.irreps):
            yield x, group.labels[x], rep.label, float(table[x, p])


def save_spectrogram(field: GaborField, path: str):
    import io

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["x_index", "x_label", "irrep_label", "hs_norm_sq"])
    for row in spectrogram_rows(field):
        writer.writerow([row[0], row[1], row[2], repr(row[3])])
    write_atomic(path, buf.getvalue())


def save_gabor_field(field: GaborField, path: str):
    group = field.atlas.group
    cells = []
    for p, rep in enumerate(field.atlas.irreps):
        for x in range(group.order):
            block = field.blocks[p][x]
            cells.append(
                {
                    "x": x,
                    "irrep": rep.label,
                    "block": [[[v.real, v.imag] for v in row] for row in block],
                }
            )
    doc = {"atlas": group.name, "group": group.name, "cells": cells}
    write_atomic(path, json.dumps(doc, sort_keys=True))


def load_gabor_field(atlas: PlancherelAtlas, path: str) -> GaborField:
    with open(path) as handle:
        doc = json.load(handle)
    if doc["group"] != atlas.group.name:
        raise ValueError(f"field is for group {doc['group']!r}")
    n = atlas.group.order
    store = {
        rep.label: np.zeros((n, rep.dim, rep.dim), complex) for rep in atlas.irreps
    }
    for cell in doc["cells"]:
        store[cell["irrep"]][cell["x"]] = np.array(
            [[complex(re, im) for re, im in row] for row in cell["block"]]
        )
    return GaborField(atlas, tuple(store[rep.label] for rep in atlas.irreps))
