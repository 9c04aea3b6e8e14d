"""Discretized Heisenberg group H^1: group law, Schrodinger representations,
group Fourier transform by quadrature, and Plancherel convergence studies.

Points are triples (t, q, p) with the polarized law

    (t1,q1,p1)(t2,q2,p2) = (t1+t2 + (p1 q2 - p2 q1)/2, q1+q2, p1+p2)

and Lebesgue measure as Haar measure.  For each nonzero lambda the
representation acts on a periodized line of circumference L = 2 X sampled at
M points (M a power of two):

    (rep(t,q,p) v)(x) = exp(i(t lam + sgn(lam) sqrt|lam| q x + lam q p / 2))
                        v(x + sqrt|lam| p)

with the fractional translation realized by trigonometric interpolation, an
exactly unitary Fourier multiplier.  Matrices are therefore unitary at every
point.  Operator identities (adjoint-by-inversion, the composition law) hold
exactly on the periodized model only at *admissible* points: the modulation
frequency sqrt|lam| q must sit on the 2 pi / L frequency lattice, and for
composition the translation sqrt|lam| p must sit on the sample lattice.
``SchrodingerRep.snap`` projects a point onto that lattice pair and reports
the distances moved.  Quadratures evaluate the representation at raw,
unsnapped nodes: they sample the continuum formula pointwise, which is what
converges under grid refinement.

All quadrature is the plain rectangle rule on uniform nodes, matching the
flat Haar measure; integrands here decay fast enough that this converges
quickly at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "heisenberg_mul",
    "heisenberg_inv",
    "dilate",
    "char_xieta",
    "LineGrid",
    "HeisenbergGrid",
    "SchrodingerRep",
    "rep_matrix",
    "gaussian_window",
    "h_fourier",
    "h_fourier_direct",
    "symmetric_lambda_grid",
    "plancherel_weight",
    "h_plancherel_defect",
    "LadderSpec",
    "run_ladder",
    "gabor_matrix_element",
    "weak_reconstruct_pair",
]


def heisenberg_mul(h1, h2):
    """Group law on (t, q, p) triples."""
    t1, q1, p1 = h1
    t2, q2, p2 = h2
    return (t1 + t2 + 0.5 * (p1 * q2 - p2 * q1), q1 + q2, p1 + p2)


def heisenberg_inv(h):
    t, q, p = h
    return (-t, -q, -p)


def dilate(lam: float, h):
    """The automorphism (t,q,p) -> (lam t, sgn(lam) sqrt|lam| q, sqrt|lam| p)."""
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    t, q, p = h
    root = np.sqrt(abs(lam))
    return (lam * t, np.sign(lam) * root * q, root * p)


def char_xieta(xi: float, eta: float, h) -> complex:
    """One-dimensional character exp(i(xi q + eta p)).

    These carry zero Plancherel weight and never enter the quadratures;
    they are exposed for completeness of the dual description.
    """
    _, q, p = h
    return complex(np.exp(1j * (xi * q + eta * p)))


@dataclass(frozen=True)
class LineGrid:
    """Periodized line of circumference 2*half_width with ``count`` samples.

    ``count`` must be a power of two so fractional shifts go through the FFT.
    """

    half_width: float
    count: int

    def __post_init__(self):
        if self.half_width <= 0:
            raise ValueError("half_width must be positive")
        m = self.count
        if m < 2 or m & (m - 1):
            raise ValueError("count must be a power of two")

    @property
    def dx(self) -> float:
        return 2.0 * self.half_width / self.count

    @property
    def circumference(self) -> float:
        return 2.0 * self.half_width

    @property
    def nodes(self) -> np.ndarray:
        return -self.half_width + self.dx * np.arange(self.count)

    @property
    def freqs(self) -> np.ndarray:
        """Angular frequencies of the FFT modes, multiples of 2 pi / L."""
        return 2.0 * np.pi * np.fft.fftfreq(self.count, d=self.dx)

    def inner(self, g: np.ndarray, u: np.ndarray) -> complex:
        """Quadrature inner product, conjugate-linear in the first slot."""
        return complex(self.dx * np.vdot(g, u))

    def norm2(self, g: np.ndarray) -> float:
        return float(self.dx * np.sum(np.abs(g) ** 2))


@dataclass(frozen=True)
class HeisenbergGrid:
    """Rectangle-rule grid on [-T,T) x [-Q,Q) x [-P,P)."""

    t_half: float
    q_half: float
    p_half: float
    n_t: int
    n_q: int
    n_p: int

    def __post_init__(self):
        for n in (self.n_t, self.n_q, self.n_p):
            if n < 2 or n % 2:
                raise ValueError("node counts must be even and >= 2")

    @property
    def dt(self):
        return 2.0 * self.t_half / self.n_t

    @property
    def dq(self):
        return 2.0 * self.q_half / self.n_q

    @property
    def dp(self):
        return 2.0 * self.p_half / self.n_p

    @property
    def weight(self) -> float:
        """Quadrature weight per node."""
        return self.dt * self.dq * self.dp

    @property
    def t_nodes(self):
        return -self.t_half + self.dt * np.arange(self.n_t)

    @property
    def q_nodes(self):
        return -self.q_half + self.dq * np.arange(self.n_q)

    @property
    def p_nodes(self):
        return -self.p_half + self.dp * np.arange(self.n_p)

    def mesh(self):
        """Broadcastable (t, q, p) coordinate arrays of shape (n_t, n_q, n_p)."""
        return (
            self.t_nodes[:, None, None],
            self.q_nodes[None, :, None],
            self.p_nodes[None, None, :],
        )

    def sample(self, fn) -> np.ndarray:
        t, q, p = self.mesh()
        return np.asarray(
            np.broadcast_to(fn(t, q, p), (self.n_t, self.n_q, self.n_p)),
            dtype=np.complex128,
        )

    def norm2(self, values: np.ndarray) -> float:
        return float(self.weight * np.sum(np.abs(values) ** 2))

    def inner(self, f: np.ndarray, k: np.ndarray) -> complex:
        return complex(self.weight * np.sum(f * np.conj(k)))


def gaussian_window(t, q, p):
    """Unit-norm Gaussian 2^{3/4} exp(-pi (t^2 + q^2 + p^2))."""
    return 2.0**0.75 * np.exp(-np.pi * (t * t + q * q + p * p))


@dataclass(frozen=True)
class SchrodingerRep:
    """The representation at one nonzero ``lam`` on a periodized line."""

    lam: float
    grid: LineGrid

    def __post_init__(self):
        if self.lam == 0:
            raise ValueError("lambda must be nonzero")

    @property
    def root(self) -> float:
        return float(np.sqrt(abs(self.lam)))

    def _shift_kernel(self, a: float) -> np.ndarray:
        """Row kernel of the translation v(x) -> v(x + a); circulant rows."""
        return np.fft.ifft(np.exp(1j * self.grid.freqs * a))

    def matrix(self, h) -> np.ndarray:
        """The M x M unitary at the point h = (t, q, p)."""
        t, q, p = h
        lam = self.lam
        sgn = np.sign(lam)
        nu = sgn * self.root * q
        shift = self.root * p
        phase = np.exp(1j * (t * lam + lam * q * p / 2.0 + nu * self.grid.nodes))
        kernel = self._shift_kernel(shift)
        m = self.grid.count
        idx = (np.arange(m)[:, None] - np.arange(m)[None, :]) % m
        return phase[:, None] * kernel[idx]

    def snap(self, h):
        """Project (t, q, p) onto the admissible lattice pair.

        Returns (snapped point, q distance moved, p distance moved).  At
        snapped points the matrix adjoint equals the matrix of the inverse
        point, and products of matrices follow the group law exactly.
        """
        t, q, p = h
        sgn = np.sign(self.lam)
        dk = 2.0 * np.pi / self.grid.circumference
        nu = sgn * self.root * q
        q_adm = sgn * dk * np.round(nu / dk) / self.root
        a = self.root * p
        p_adm = self.grid.dx * np.round(a / self.grid.dx) / self.root
        return (t, float(q_adm), float(p_adm)), abs(q - q_adm), abs(p - p_adm)


def rep_matrix(rep: SchrodingerRep, h) -> np.ndarray:
    return rep.matrix(h)


def _batch_fourier(cuts: np.ndarray, grid: HeisenbergGrid, rep: SchrodingerRep):
    """Transforms of a batch of signals, shape (B, n_t, n_q, n_p) -> (B, M, M).

    Evaluates sum_h w f(h) rep(h)^adj with the t-sum, the q-modulations and
    the p-shift kernels factored out; algebraically identical to the direct
    node-by-node sum.
    """
    lam = rep.lam
    line = rep.grid
    x = line.nodes
    sgn = np.sign(lam)
    nu = sgn * rep.root * grid.q_nodes
    shifts = rep.root * grid.p_nodes

    phase_t = np.exp(-1j * lam * grid.t_nodes)
    partial = grid.dt * np.einsum("btqp,t->bqp", cuts, phase_t, optimize=True)
    qp = grid.q_nodes[:, None] * grid.p_nodes[None, :]
    c = (grid.dq * grid.dp) * partial * np.exp(-0.5j * lam * qp)[None]

    modcol = np.exp(-1j * nu[:, None] * x[None, :])  # (n_q, M)
    e = np.einsum("bqp,ql->bpl", c, modcol, optimize=True)

    kernels = np.fft.ifft(np.exp(-1j * line.freqs[None, :] * shifts[:, None]), axis=1)
    m = line.count
    idx = (np.arange(m)[:, None] - np.arange(m)[None, :]) % m
    gathered = kernels[:, idx]  # (n_p, M, M)
    return np.einsum("pjl,bpl->bjl", gathered, e, optimize=True)


def h_fourier(f: np.ndarray, grid: HeisenbergGrid, rep: SchrodingerRep) -> np.ndarray:
    """Group Fourier transform at rep: quadrature of f against rep(h)^adj.

    ``f`` holds samples on ``grid``; the caller is responsible for f decaying
    inside the box.  Returns an M x M matrix whose squared Frobenius norm
    approximates the squared Hilbert-Schmidt norm of the continuum operator.
    """
    if f.shape != (grid.n_t, grid.n_q, grid.n_p):
        raise ValueError("sample array does not match the grid")
    return _batch_fourier(f[None], grid, rep)[0]


def h_fourier_direct(f: np.ndarray, grid: HeisenbergGrid, rep: SchrodingerRep):
    """Literal node-by-node quadrature; only sane for tiny grids."""
    m = rep.grid.count
    out = np.zeros((m, m), dtype=np.complex128)
    for i, t in enumerate(grid.t_nodes):
        for j, q in enumerate(grid.q_nodes):
            for l, p in enumerate(grid.p_nodes):
                out += f[i, j, l] * np.conj(rep.matrix((t, q, p)).T)
    return grid.weight * out


def symmetric_lambda_grid(floor: float, top: float, count: int):
    """``count`` midpoint nodes split evenly over -[top,floor] and [floor,top].

    Returns (nodes, spacing).  The floor keeps the grid away from lambda = 0
    where the Plancherel density vanishes and the dilation degenerates.
    """
    if floor <= 0 or top <= floor:
        raise ValueError("need 0 < floor < top")
    if count < 2 or count % 2:
        raise ValueError("count must be even and >= 2")
    half = count // 2
    step = (top - floor) / half
    pos = floor + (np.arange(half) + 0.5) * step
    return np.concatenate([-pos[::-1], pos]), step


def plancherel_weight(lam: float, spacing: float) -> float:
    """Weight of one lambda node: (2 pi)^{-2} |lam| * spacing (n = 1)."""
    return abs(lam) * spacing / (2.0 * np.pi) ** 2


def h_plancherel_defect(
    f: np.ndarray,
    grid: HeisenbergGrid,
    line_grid: LineGrid,
    lambdas: np.ndarray,
    spacing: float,
) -> float:
    """Relative gap |  ||f||^2 - sum_lam w_lam ||f_hat(lam)||_HS^2 | / ||f||^2.

    Zero signal convention: defect 0.
    """
    lhs = grid.norm2(f)
    if lhs == 0.0:
        return 0.0
    rhs = 0.0
    for lam in np.asarray(lambdas, dtype=float):
        hat = h_fourier(f, grid, SchrodingerRep(lam, line_grid))
        rhs += plancherel_weight(lam, spacing) * float(np.sum(np.abs(hat) ** 2))
    return abs(lhs - rhs) / lhs


@dataclass(frozen=True)
class LadderSpec:
    """One rung of the refinement ladder; ``refine`` doubles every count."""

    box_half: float = 3.0
    n_box: int = 8
    line_half: float = 10.0
    line_count: int = 16
    lam_floor: float = 0.125
    lam_top: float = 5.0
    lam_count: int = 16

    def refine(self) -> "LadderSpec":
        return replace(
            self,
            n_box=2 * self.n_box,
            line_count=2 * self.line_count,
            lam_count=2 * self.lam_count,
        )

    def build(self):
        grid = HeisenbergGrid(
            self.box_half, self.box_half, self.box_half,
            self.n_box, self.n_box, self.n_box,
        )
        line = LineGrid(self.line_half, self.line_count)
        lambdas, spacing = symmetric_lambda_grid(
            self.lam_floor, self.lam_top, self.lam_count
        )
        return grid, line, lambdas, spacing

    def as_dict(self) -> dict:
        return {
            "box_half": self.box_half,
            "n_box": self.n_box,
            "line_half": self.line_half,
            "line_count": self.line_count,
            "lam_floor": self.lam_floor,
            "lam_top": self.lam_top,
            "lam_count": self.lam_count,
        }


def run_ladder(spec: LadderSpec, steps: int = 3, window=gaussian_window) -> list:
    """Plancherel defects over ``steps`` rungs, doubling all counts per rung."""
    out = []
    current = spec
    for _ in range(steps):
        grid, line, lambdas, spacing = current.build()
        f = grid.sample(window)
        defect = h_plancherel_defect(f, grid, line, lambdas, spacing)
        out.append({"spec": current.as_dict(), "defect": defect})
        current = current.refine()
    return out


def _inverse_translate(h, t, q, p):
    """Components of h^{-1} . (t, q, p) under the group law."""
    t0, q0, p0 = h
    return (t - t0 + 0.5 * (q0 * p - p0 * q), q - q0, p - p0)


def _windowed_cut(f_values: np.ndarray, window, h, grid: HeisenbergGrid):
    """Samples of y -> f(y) conj(window(h^{-1} y)) on the grid."""
    t, q, p = grid.mesh()
    return f_values * np.conj(window(*_inverse_translate(h, t, q, p)))


def gabor_matrix_element(
    f: np.ndarray,
    window,
    h,
    rep: SchrodingerRep,
    grid: HeisenbergGrid,
    g: np.ndarray,
    k: np.ndarray,
) -> complex:
    """Weak matrix element of the windowed transform at (h, rep).

    Computes the quadrature of sum_y w f(y) conj(window(h^{-1} y))
    <g, rep(y)^adj k> with <g, u> = dx sum conj(g) u, so the value is linear
    in f and k and conjugate-linear in g.  ``window`` must be callable since
    its argument h^{-1} y falls off the grid.
    """
    line = rep.grid
    lam = rep.lam
    cut = _windowed_cut(np.asarray(f, dtype=complex), window, h, grid)

    phase_t = np.exp(-1j * lam * grid.t_nodes)
    partial = grid.dt * np.einsum("tqp,t->qp", cut, phase_t, optimize=True)
    qp = grid.q_nodes[:, None] * grid.p_nodes[None, :]
    c = (grid.dq * grid.dp) * partial * np.exp(-0.5j * lam * qp)

    nu = np.sign(lam) * rep.root * grid.q_nodes
    modulated = np.exp(-1j * nu[:, None] * line.nodes[None, :]) * k[None, :]
    spectra = np.fft.fft(modulated, axis=1)  # (n_q, M)
    shifts = rep.root * grid.p_nodes
    multipliers = np.exp(-1j * line.freqs[None, :] * shifts[:, None])  # (n_p, M)
    moved = np.fft.ifft(spectra[:, None, :] * multipliers[None, :, :], axis=2)
    ips = line.dx * np.einsum("j,qpj->qp", np.conj(g), moved, optimize=True)
    return complex(np.sum(c * ips))


def weak_reconstruct_pair(
    f: np.ndarray,
    k: np.ndarray,
    window,
    grid: HeisenbergGrid,
    line_grid: LineGrid,
    lambdas: np.ndarray,
    spacing: float,
):
    """Both sides of the weak reconstruction identity, as (direct, synthesized).

    The direct side is the plain quadrature inner product <f, k>.  The
    synthesized side pairs the transforms of f and k over every grid point
    and every lambda node, weighting by Haar times Plancherel measure.  The
    window is normalized to unit grid norm first.  Cost grows with the cube
    of the box count squared; intended for toy grids.
    """
    scale = 1.0 / np.sqrt(grid.norm2(grid.sample(window)))
    unit_window = lambda t, q, p: scale * window(t, q, p)

    lhs = grid.inner(f, k)

    points = [
        (t, q, p)
        for t in grid.t_nodes
        for q in grid.q_nodes
        for p in grid.p_nodes
    ]
    same = f is k or np.array_equal(f, k)
    reps = [SchrodingerRep(lam, line_grid) for lam in np.asarray(lambdas, dtype=float)]
    weights = [plancherel_weight(rep.lam, spacing) for rep in reps]

    rhs = 0.0 + 0.0j
    chunk = max(1, (1 << 22) // (grid.n_t * grid.n_q * grid.n_p))
    for start in range(0, len(points), chunk):
        batch = points[start : start + chunk]
        cuts_f = np.stack([_windowed_cut(f, unit_window, h, grid) for h in batch])
        cuts_k = (
            cuts_f
            if same
            else np.stack([_windowed_cut(k, unit_window, h, grid) for h in batch])
        )
        for rep, w in zip(reps, weights):
            hat_f = _batch_fourier(cuts_f, grid, rep)
            hat_k = hat_f if same else _batch_fourier(cuts_k, grid, rep)
            traces = np.einsum("bjl,bjl->", np.conj(hat_k), hat_f, optimize=True)
            rhs += w * grid.weight * traces
    return complex(lhs), complex(rhs)
