"""SL(2,R) demonstration engine: principal and complementary series on a
sampled line, characters of the upper-triangular subgroup, Plancherel
densities, and a toy windowed-transform quadrature over a chart box.

The principal series at parameter t with parity +/- acts by

    (rep(A) f)(x) = m(-b x + d) |-b x + d|^{-1-it} f((a x - c) / (-b x + d))

with m identically one for parity + and the sign function for parity -.
Discretely the Mobius pullback uses linear interpolation with compact
support: arguments leaving the sample window contribute zero, and nodes too
close to the singular locus -b x + d = 0 are masked.  The continuum action
is unitary; the sampled action only approaches that under refinement, and
norm or composition defects are reported rather than hidden.

Chart-box quadrature for the toy transform follows the four-entry Lebesgue
integral literally on a compact box; each node is projected to determinant
one by solving for the last entry, and no measure-theoretic fidelity is
claimed at this scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Sl2Matrix",
    "PrincipalSeriesPoint",
    "mobius_pullback",
    "principal_apply",
    "complementary_apply",
    "s_norm2",
    "p2_character",
    "plancherel_density",
    "Sl2ChartGrid",
    "sl2_gaussian_window",
    "sl2_gabor_demo",
]

DET_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Sl2Matrix:
    """A real 2x2 matrix with determinant one (checked on construction)."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > DET_TOLERANCE:
            raise ValueError(f"determinant must be 1, got {det!r}")

    def inverse(self) -> "Sl2Matrix":
        return Sl2Matrix(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "Sl2Matrix") -> "Sl2Matrix":
        return Sl2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def frobenius_sq(self) -> float:
        return self.a**2 + self.b**2 + self.c**2 + self.d**2


@dataclass(frozen=True)
class PrincipalSeriesPoint:
    """Parameter of one principal-series representative.

    The parameter t and its negative give equivalent representations; one
    representative per |t| is enough for plots, but nothing here relies on
    that identification.
    """

    t: float
    parity: str

    def __post_init__(self):
        if self.parity not in ("+", "-"):
            raise ValueError("parity must be '+' or '-'")


def mobius_pullback(mat: Sl2Matrix, x: np.ndarray, singular_eps: float = 1e-8):
    """Pullback arguments (a x - c) / (-b x + d) plus a validity mask.

    Nodes with |-b x + d| <= eps are reported invalid; the caller masks them.
    """
    denom = -mat.b * x + mat.d
    valid = np.abs(denom) > singular_eps
    safe = np.where(valid, denom, 1.0)
    return (mat.a * x - mat.c) / safe, denom, valid


def _interp_complex(u: np.ndarray, x: np.ndarray, f: np.ndarray) -> np.ndarray:
    re = np.interp(u, x, f.real, left=0.0, right=0.0)
    im = np.interp(u, x, f.imag, left=0.0, right=0.0)
    return re + 1j * im


def principal_apply(
    mat: Sl2Matrix,
    point: PrincipalSeriesPoint,
    x: np.ndarray,
    f: np.ndarray,
    singular_eps: float = 1e-8,
) -> np.ndarray:
    """Sampled principal-series action; masked nodes return zero.

    Compact support is assumed: pullback arguments outside the sample
    window contribute nothing.  Raises if every node is singular.
    """
    u, denom, valid = mobius_pullback(mat, x, singular_eps)
    if not valid.any():
        raise ValueError("all nodes fall on the singular locus")
    pulled = _interp_complex(u, x, np.asarray(f, dtype=complex))
    mod = np.abs(denom)
    factor = mod ** (-1.0) * np.exp(-1j * point.t * np.log(mod))
    if point.parity == "-":
        factor = factor * np.sign(denom)
    return np.where(valid, factor * pulled, 0.0)


def complementary_apply(
    mat: Sl2Matrix,
    s: float,
    x: np.ndarray,
    f: np.ndarray,
    singular_eps: float = 1e-8,
) -> np.ndarray:
    """Sampled complementary-series action for 0 < s < 1."""
    if not 0.0 < s < 1.0:
        raise ValueError("s must lie in (0, 1)")
    u, denom, valid = mobius_pullback(mat, x, singular_eps)
    if not valid.any():
        raise ValueError("all nodes fall on the singular locus")
    pulled = _interp_complex(u, x, np.asarray(f, dtype=complex))
    factor = np.abs(denom) ** (-1.0 - s)
    return np.where(valid, factor * pulled, 0.0)


def s_norm2(f: np.ndarray, s: float, x: np.ndarray) -> float:
    """The norm (s/2) integral of f(x) conj(f(y)) |x-y|^{s-1} dx dy.

    Double rectangle-rule quadrature; the integrable diagonal singularity is
    replaced by the exact cell integral of |u - v|^{s-1} over one dx^2 cell,
    2 dx^{s+1} / (s (s+1)).
    """
    if not 0.0 < s < 1.0:
        raise ValueError("s must lie in (0, 1)")
    f = np.asarray(f, dtype=complex)
    dx = float(x[1] - x[0])
    diff = np.abs(x[:, None] - x[None, :])
    kernel = np.zeros_like(diff)
    off = diff > 0
    kernel[off] = diff[off] ** (s - 1.0) * dx * dx
    np.fill_diagonal(kernel, 2.0 * dx ** (s + 1.0) / (s * (s + 1.0)))
    total = np.einsum("i,ij,j->", f, kernel, np.conj(f), optimize=True)
    return float((s / 2.0) * total.real)


def p2_character(a: float, b: float, t: float, parity: str) -> complex:
    """Character |a|^{it} (times sign a for parity -) of the upper-triangular
    matrix with diagonal (a, 1/a); independent of b."""
    if a == 0:
        raise ValueError("a must be nonzero")
    if parity not in ("+", "-"):
        raise ValueError("parity must be '+' or '-'")
    value = np.exp(1j * t * np.log(abs(a)))
    if parity == "-":
        value *= np.sign(a)
    return complex(value)


def plancherel_density(series: str, param) -> float:
    """Plancherel density per series.

    principal+ : t/2 tanh(pi t / 2)
    principal- : t/2 coth(pi t / 2), extended by continuity to 1/pi at t = 0
    discrete   : n - 1 for integer n >= 1 (n = 1 is the weightless mock pair)
    complementary, mock, trivial : 0
    """
    if series == "principal+":
        t = float(param)
        return float(t / 2.0 * np.tanh(np.pi * t / 2.0))
    if series == "principal-":
        t = float(param)
        if t == 0.0:
            return 1.0 / np.pi
        return float(t / 2.0 / np.tanh(np.pi * t / 2.0))
    if series == "discrete":
        n = int(param)
        if n < 1:
            raise ValueError("discrete series index must be >= 1")
        return float(n - 1)
    if series in ("complementary", "mock", "trivial"):
        return 0.0
    raise ValueError(f"unknown series tag {series!r}")


@dataclass(frozen=True)
class Sl2ChartGrid:
    """Uniform 4-d box in the matrix-entry chart, rectangle rule.

    Nodes with |first entry| <= x_eps cannot be projected to determinant one
    and are masked.
    """

    half_width: float = 1.25
    count: int = 6
    x_eps: float = 0.05

    def axes(self) -> np.ndarray:
        step = 2.0 * self.half_width / self.count
        return -self.half_width + (np.arange(self.count) + 0.5) * step

    @property
    def cell(self) -> float:
        return (2.0 * self.half_width / self.count) ** 4

    def matrices(self):
        """All unmasked nodes as (index tuple, Sl2Matrix, raw node)."""
        axes = self.axes()
        out = []
        for i, xx in enumerate(axes):
            if abs(xx) <= self.x_eps:
                continue
            for j, yy in enumerate(axes):
                for l, zz in enumerate(axes):
                    for m, _ in enumerate(axes):
                        # last entry solved from det = 1
                        out.append(
                            (
                                (i, j, l, m),
                                Sl2Matrix(xx, yy, zz, (1.0 + yy * zz) / xx),
                            )
                        )
        return out


def sl2_gaussian_window(mat: Sl2Matrix) -> float:
    """2 exp(-pi ||X||^2) with the Frobenius norm."""
    return 2.0 * np.exp(-np.pi * mat.frobenius_sq())


def sl2_gabor_demo(
    f,
    position: Sl2Matrix,
    point: PrincipalSeriesPoint,
    g: np.ndarray,
    k: np.ndarray,
    chart: Sl2ChartGrid,
    x: np.ndarray,
    window=sl2_gaussian_window,
) -> complex:
    """Toy quadrature of the windowed-transform matrix element at
    (position, principal series point), paired against line vectors (g, k).

    ``f`` is an array of samples indexed like the chart axes, or a callable
    of an Sl2Matrix.  The value is linear in f and k and conjugate-linear in
    g; |value| is bounded by the product of the four quadrature norms.
    Strictly a toy: tiny chart boxes only.
    """
    x = np.asarray(x, dtype=float)
    dx = float(x[1] - x[0])
    pos_inv = position.inverse()
    total = 0.0 + 0.0j
    for index, mat in chart.matrices():
        fval = f(mat) if callable(f) else f[index]
        if fval == 0:
            continue
        wval = np.conj(window(pos_inv @ mat))
        acted = principal_apply(mat.inverse(), point, x, k)
        total += fval * wval * dx * np.vdot(g, acted)
    return complex(chart.cell * total)
