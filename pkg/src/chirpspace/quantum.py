"""Phase-space representations of operators and states.

An operator H is held as its position kernel <q1|H|q2> on an axis pair
(continuum normalization, hbar = 1; the discrete cell weight is the axis
step).  The module provides the mutually inverse maps between kernels and
phase-space symbols,

    quantize:  <q1|H|q2> = (1/2pi) int dp  h(p, (q1+q2)/2) e^{ i p (q1-q2)}
    symbol:    h(p, q)   =         int du  e^{-i p u} <q + u/2|H|q - u/2>

(symbols are always stored momentum-first), the Wigner transforms of signals
and density operators (symbol/2pi with the same sign convention), mixed
momentum-bra/position-ket matrix elements, the oscillator-exponential
correspondence, Kirkwood-Rihaczek closed forms, and ordered characteristic
functions evaluated through matrix exponentials in a truncated oscillator
eigenbasis.

The headline consistency identity tying this module to the chirp transform:

    T[symbol of H](x, y) = sqrt(2 pi) <p = x|H|y> e^{ixy}.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.linalg import expm

from .grid import (
    Axis,
    PhaseGrid,
    SampledField,
    Signal,
    sample_field,
    trapezoid_weights,
)
from .hermite import hermite_functions
from .xform import forward_fast, inverse_fast

__all__ = [
    "OperatorKernel",
    "HermiteBasis",
    "make_hermite_basis",
    "validate_density",
    "wigner_of_signal",
    "weyl_quantize",
    "weyl_symbol",
    "mixed_matrix_element",
    "SymbolIdentityResiduals",
    "symbol_identity_residual",
    "oscillator_exponential_symbol",
    "oscillator_exponential_kernel",
    "wigner_of_density",
    "kirkwood_qp_closed",
    "kirkwood_pq_closed",
    "KirkwoodResiduals",
    "wigner_to_kirkwood_residual",
    "char_function_qp",
    "char_function_pq",
]

BOUNDARY_TINY = 1e-12


@dataclass(frozen=True)
class OperatorKernel:
    """Position-representation kernel <q1|H|q2> on an axis pair."""

    q1_axis: Axis
    q2_axis: Axis
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.ascontiguousarray(self.values, dtype=complex)
        shape = (self.q1_axis.n, self.q2_axis.n)
        if arr.shape != shape:
            raise ValueError(f"kernel shape {arr.shape} does not match axes {shape}")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise ValueError("kernel contains non-finite values")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)


def validate_density(rho: OperatorKernel, tol: float = 1e-8) -> None:
    """Check the density-operator invariants: Hermiticity and unit trace."""
    if rho.q1_axis != rho.q2_axis:
        raise ValueError("density operator needs identical q1/q2 axes")
    herm = np.abs(rho.values - rho.values.conj().T).max()
    if herm > tol:
        raise ValueError(f"density operator not Hermitian: max asymmetry {herm:.3g} > {tol:g}")
    tr = rho.q1_axis.step * np.trace(rho.values)
    if abs(tr - 1.0) > tol:
        raise ValueError(f"density operator trace {tr:.6g} differs from 1 by more than {tol:g}")


@dataclass(frozen=True)
class HermiteBasis:
    """Oscillator eigenfunctions psi_n tabulated on an axis, n = 0..n_max."""

    n_max: int
    axis: Axis
    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.ascontiguousarray(self.table, dtype=float)
        if arr.shape != (self.n_max + 1, self.axis.n):
            raise ValueError("basis table shape does not match n_max/axis")
        arr.setflags(write=False)
        object.__setattr__(self, "table", arr)


def make_hermite_basis(n_max: int, axis: Axis) -> HermiteBasis:
    """Tabulate psi_0..psi_{n_max} on the axis.

    Discrete orthonormality (step * sum psi_m psi_n = delta_mn) holds once
    the axis covers roughly [-sqrt(2 n_max) - 4, sqrt(2 n_max) + 4] and the
    step resolves the fastest oscillation.
    """
    return HermiteBasis(n_max, axis, hermite_functions(n_max, axis.values))


# ---------------------------------------------------------------------------
# interpolation helpers

def _linear_1d(values: np.ndarray, axis: Axis, at: np.ndarray) -> np.ndarray:
    """Linear interpolation, exact on grid nodes; caller guarantees range."""
    t = (np.asarray(at) - axis.min) / axis.step
    i0 = np.clip(np.floor(t).astype(int), 0, axis.n - 2)
    s = t - i0
    return (1.0 - s) * values[i0] + s * values[i0 + 1]


def _antidiagonal_transform(values: np.ndarray, axis: Axis,
                            p_out: np.ndarray, q_out: np.ndarray) -> np.ndarray:
    """int du e^{-i p u} values(q + u/2, q - u/2) for each output (p, q).

    The u-lattice advances by one axis cell per node (du = 2 step), so the
    anti-diagonal samples land on kernel nodes for on-grid q and on bilinear
    blends of the four neighbors for fractional q.
    """
    n = axis.n
    step = axis.step
    out = np.empty((len(p_out), len(q_out)), dtype=complex)
    for b, q0 in enumerate(q_out):
        if q0 < axis.min - 1e-12 or q0 > axis.max + 1e-12:
            raise ValueError(f"q={q0} outside the kernel axis [{axis.min}, {axis.max}]")
        t = min(max((q0 - axis.min) / step, 0.0), float(n - 1))
        k0 = min(int(np.floor(t + 1e-12)), n - 1)
        s = t - k0
        if s < 1e-12:
            s = 0.0
        hi = n - 1 if s == 0.0 else n - 2
        jmax = min(k0, hi - k0)
        j = np.arange(-jmax, jmax + 1)
        if s == 0.0:
            diag = values[k0 + j, k0 - j]
        else:
            diag = ((1 - s) ** 2 * values[k0 + j, k0 - j]
                    + s * (1 - s) * (values[k0 + j + 1, k0 - j] + values[k0 + j, k0 - j + 1])
                    + s ** 2 * values[k0 + j + 1, k0 - j + 1])
        u = 2.0 * step * j
        w = trapezoid_weights(len(u)) if len(u) > 1 else np.ones(1)
        out[:, b] = (np.exp(-1j * np.outer(p_out, u)) * (w * diag)).sum(axis=1) * 2.0 * step
    return out


# ---------------------------------------------------------------------------
# Wigner / Weyl maps

def wigner_of_signal(psi: Signal, grid: PhaseGrid) -> SampledField:
    """Wigner transform of a signal,

        W(p, q) = (1/2pi) int du e^{i p u} conj(psi)(q + u/2) psi(q - u/2),

    by trapezoid quadrature on a u-lattice matched to the signal sampling
    (half-step values read off by linear interpolation, exact for on-grid q).
    """
    ax = psi.axis
    qv = grid.q_axis.values
    if qv[0] < ax.min - 1e-12 or qv[-1] > ax.max + 1e-12:
        raise ValueError(
            f"signal axis [{ax.min}, {ax.max}] too small for requested q-range "
            f"[{qv[0]}, {qv[-1]}]"
        )
    pv = grid.p_axis.values
    vals = np.empty(grid.shape, dtype=complex)
    step = ax.step
    for b, q0 in enumerate(qv):
        room = min(q0 - ax.min, ax.max - q0)
        jmax = int(np.floor(room / step + 1e-12))
        j = np.arange(-jmax, jmax + 1)
        u = 2.0 * step * j
        plus = _linear_1d(psi.values, ax, q0 + u / 2.0)
        minus = _linear_1d(psi.values, ax, q0 - u / 2.0)
        prod = np.conj(plus) * minus
        w = trapezoid_weights(len(u)) if len(u) > 1 else np.ones(1)
        vals[:, b] = (np.exp(1j * np.outer(pv, u)) * (w * prod)).sum(axis=1) * (
            2.0 * step / (2.0 * np.pi))
    return SampledField(grid, vals)


def weyl_quantize(h: SampledField, q1_axis: Axis, q2_axis: Axis) -> OperatorKernel:
    """Operator kernel of a phase-space symbol:

        <q1|H|q2> = (1/2pi) int dp h(p, (q1+q2)/2) e^{i p (q1 - q2)}.

    Quadrature runs over the symbol's p-axis; the midpoint column is read by
    linear interpolation in q (exact when midpoints land on symbol nodes).
    A symbol that has not decayed at the p-boundary degrades accuracy and is
    reported as a warning, not an error.
    """
    ax_p, ax_q = h.grid.p_axis, h.grid.q_axis
    edge = max(np.abs(h.values[0, :]).max(), np.abs(h.values[-1, :]).max())
    if edge > BOUNDARY_TINY:
        warnings.warn(
            f"symbol magnitude {edge:.3g} at the p-boundary exceeds {BOUNDARY_TINY:g}; "
            "p-truncation may dominate the quantization error",
            stacklevel=2,
        )
    q1 = q1_axis.values
    q2 = q2_axis.values
    lo, hi = (q1[0] + q2[0]) / 2.0, (q1[-1] + q2[-1]) / 2.0
    if lo < ax_q.min - 1e-12 or hi > ax_q.max + 1e-12:
        raise ValueError(
            f"midpoints [{lo}, {hi}] fall outside the symbol q-range [{ax_q.min}, {ax_q.max}]"
        )
    p = ax_p.values
    wp = trapezoid_weights(ax_p.n)[:, None]
    vals = np.empty((q1_axis.n, q2_axis.n), dtype=complex)
    for i, q1v in enumerate(q1):
        mid = (q1v + q2) / 2.0
        t = (mid - ax_q.min) / ax_q.step
        j0 = np.clip(np.floor(t).astype(int), 0, ax_q.n - 2)
        s = t - j0
        cols = h.values[:, j0] * (1.0 - s) + h.values[:, j0 + 1] * s
        phase = np.exp(1j * np.outer(p, q1v - q2))
        vals[i, :] = (wp * cols * phase).sum(axis=0) * ax_p.step / (2.0 * np.pi)
    return OperatorKernel(q1_axis, q2_axis, vals)


def weyl_symbol(H: OperatorKernel, grid: PhaseGrid) -> SampledField:
    """Phase-space symbol of an operator kernel (momentum-first storage):

        h(p, q) = int du e^{-i p u} <q + u/2|H|q - u/2>.

    q-values on the kernel lattice sample the anti-diagonals exactly;
    off-lattice q falls back to bilinear interpolation (error O(step^2)),
    so tight tolerances call for aligned grids.
    """
    if H.q1_axis != H.q2_axis:
        raise ValueError("symbol extraction needs identical q1/q2 axes")
    vals = _antidiagonal_transform(H.values, H.q1_axis,
                                   grid.p_axis.values, grid.q_axis.values)
    return SampledField(grid, vals)


def wigner_of_density(rho: OperatorKernel, grid: PhaseGrid) -> SampledField:
    """Wigner function of a density operator: symbol / (2 pi), same sign."""
    sym = weyl_symbol(rho, grid)
    return SampledField(grid, sym.values / (2.0 * np.pi))


def _mixed_grid(H: OperatorKernel, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    ax1, ax2 = H.q1_axis, H.q2_axis
    ys = np.asarray(ys, dtype=float)
    if ys.min() < ax2.min - 1e-12 or ys.max() > ax2.max + 1e-12:
        raise ValueError(f"y outside the kernel q2 axis [{ax2.min}, {ax2.max}]")
    iy = np.round((ys - ax2.min) / ax2.step).astype(int)
    w = trapezoid_weights(ax1.n)
    E = np.exp(-1j * np.outer(np.asarray(xs, float), ax1.values)) * w
    return (E @ H.values[:, iy]) * ax1.step / np.sqrt(2.0 * np.pi)


def mixed_matrix_element(H: OperatorKernel, x: float, y: float) -> complex:
    """Momentum-bra matrix element <p = x|H|y>:

        (2 pi)^{-1/2} int dq1 e^{-i x q1} <q1|H|y>,

    with y snapped to the nearest q2 column (tests choose y on-grid, which
    keeps tight tolerances honest; snapping beats silently interpolating).
    """
    return complex(_mixed_grid(H, np.array([float(x)]), np.array([float(y)]))[0, 0])


class SymbolIdentityResiduals(NamedTuple):
    transform_side: float
    inverse_side: float


def symbol_identity_residual(
    H: OperatorKernel,
    symbol_grid: PhaseGrid,
    out_grid: PhaseGrid,
) -> SymbolIdentityResiduals:
    """Residuals of the operator/transform correspondence, both directions.

    transform_side: max |T[symbol](x, y) - sqrt(2 pi) <p=x|H|y> e^{ixy}|
    inverse_side:   max |sqrt(2 pi) T^{-1}[<p=x|H|y> e^{ixy}](p, q) - symbol(p, q)|

    The two sides follow independent code paths (quadrature + resampled
    transform vs a single Fourier contraction of the kernel).  out_grid's
    y-values should lie on the kernel's q2 columns and capture the matrix
    element's support.
    """
    sym = weyl_symbol(H, symbol_grid)
    xs = out_grid.p_axis.values
    ys = out_grid.q_axis.values
    me = _mixed_grid(H, xs, ys)
    phase = np.exp(1j * np.outer(xs, ys))

    ts = forward_fast(sym, out_grid).values
    res_a = float(np.abs(ts - np.sqrt(2 * np.pi) * me * phase).max())

    G = SampledField(out_grid, me * phase)
    back = inverse_fast(G, symbol_grid).values * np.sqrt(2 * np.pi)
    res_b = float(np.abs(back - sym.values).max())
    return SymbolIdentityResiduals(res_a, res_b)


# ---------------------------------------------------------------------------
# oscillator exponential

def oscillator_exponential_symbol(f: complex, grid: PhaseGrid) -> SampledField:
    """Symbol of exp(f * (P^2 + Q^2 - 1)/2) = exp(f * N):

        h(p, q) = (2/(e^f + 1)) * exp( ((e^f - 1)/(e^f + 1)) (p^2 + q^2) ).

    The exponent coefficient is fixed by the spectral oracle
    (``oscillator_exponential_kernel`` + ``weyl_quantize`` round trip): at
    e^f -> 0 it reproduces the ground-state projector symbol 2 e^{-(p^2+q^2)},
    and at f = i(pi/2 - alpha) the chirplet exp(i tan(pi/4 - alpha/2) rho^2)
    scaled by 2/(i e^{-i alpha} + 1).
    """
    z = np.exp(complex(f))
    if abs(z + 1.0) < 1e-9:
        raise ValueError(f"e^f={z} is within 1e-9 of -1 (singular correspondence)")
    c = (z - 1.0) / (z + 1.0)
    pref = 2.0 / (z + 1.0)
    return sample_field(lambda P, Q: pref * np.exp(c * (P**2 + Q**2)), grid)


def oscillator_exponential_kernel(f: complex, basis: HermiteBasis) -> OperatorKernel:
    """Spectral kernel sum_{n <= n_max} e^{f n} psi_n(q1) psi_n(q2).

    Exact oracle for the oscillator exponential on the truncated eigenbasis;
    requires Re(f) <= 0 so the coefficients stay bounded.
    """
    f = complex(f)
    if f.real > 1e-12:
        raise ValueError(f"Re(f) must be <= 0 for a bounded spectral sum, got {f}")
    coeff = np.exp(f * np.arange(basis.n_max + 1))
    vals = (basis.table.T * coeff) @ basis.table
    return OperatorKernel(basis.axis, basis.axis, vals)


# ---------------------------------------------------------------------------
# Kirkwood-Rihaczek closed forms and characteristic functions

def _fourier_of_signal(psi: Signal, p) -> np.ndarray:
    """psi~(p) = (2 pi)^{-1/2} int dq e^{-i p q} psi(q), trapezoid."""
    q = psi.axis.values
    w = trapezoid_weights(psi.axis.n)
    p = np.atleast_1d(np.asarray(p, dtype=float))
    E = np.exp(-1j * np.outer(p, q))
    return (E @ (w * psi.values)) * psi.axis.step / np.sqrt(2.0 * np.pi)


def kirkwood_qp_closed(psi: Signal, p, q):
    """Kirkwood-Rihaczek value for the pure state |psi><psi|:

        conj(psi)(q) * psi~(p) * e^{i p q} / sqrt(2 pi).

    Broadcasts over array p, q; psi(q) is exact for q on the signal lattice
    and linearly interpolated otherwise.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    ft = _fourier_of_signal(psi, p.ravel()).reshape(p.shape)
    pq = _linear_1d(psi.values, psi.axis, q)
    out = np.conj(pq) * ft * np.exp(1j * p * q) / np.sqrt(2.0 * np.pi)
    return complex(out) if out.ndim == 0 else out


def kirkwood_pq_closed(psi: Signal, p, q):
    """Anti-ordered partner: psi(q) * conj(psi~)(p) * e^{-i p q} / sqrt(2 pi)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    ft = _fourier_of_signal(psi, p.ravel()).reshape(p.shape)
    pq = _linear_1d(psi.values, psi.axis, q)
    out = pq * np.conj(ft) * np.exp(-1j * p * q) / np.sqrt(2.0 * np.pi)
    return complex(out) if out.ndim == 0 else out


class KirkwoodResiduals(NamedTuple):
    qp: float
    pq: float


def wigner_to_kirkwood_residual(
    psi: Signal,
    wigner_grid: PhaseGrid,
    out_grid: PhaseGrid,
) -> KirkwoodResiduals:
    """Residuals of the transform-of-Wigner identities for a pure state.

    qp: max |T[W](x -> p, y -> q) - kirkwood_qp_closed(psi, p, q)|
    pq: max |T^{-1}[W](p, q)      - kirkwood_pq_closed(psi, p, q)|
    """
    W = wigner_of_signal(psi, wigner_grid)
    P, Q = out_grid.meshes()
    fw = forward_fast(W, out_grid).values
    res_qp = float(np.abs(fw - kirkwood_qp_closed(psi, P, Q)).max())
    bw = inverse_fast(W, out_grid).values
    res_pq = float(np.abs(bw - kirkwood_pq_closed(psi, P, Q)).max())
    return KirkwoodResiduals(res_qp, res_pq)


def _project_density(rho: OperatorKernel, basis: HermiteBasis, tol: float) -> np.ndarray:
    if rho.q1_axis != basis.axis or rho.q2_axis != basis.axis:
        raise ValueError("density operator must be sampled on the basis axis")
    w = trapezoid_weights(basis.axis.n)
    step = basis.axis.step
    wk = rho.values * np.outer(w, w)
    R = (basis.table @ wk @ basis.table.T) * step * step
    recon = basis.table.T @ R @ basis.table
    denom = np.linalg.norm(rho.values)
    resid = np.linalg.norm(rho.values - recon) / denom if denom > 0 else 0.0
    if resid > tol:
        raise ValueError(
            f"density operator poorly represented in the basis "
            f"(projection residual {resid:.3g} > {tol:g}); increase n_max or the axis range"
        )
    return R


def _qp_matrices(n_max: int) -> tuple[np.ndarray, np.ndarray]:
    off = np.sqrt(np.arange(1, n_max + 1) / 2.0)
    Qm = np.diag(off, 1)
    Qm = Qm + Qm.T
    Pm = np.diag(-1j * off, 1)
    Pm = Pm + Pm.conj().T
    return Qm, Pm


def char_function_qp(rho: OperatorKernel, basis: HermiteBasis, u: float, v: float,
                     q: float = 0.0, p: float = 0.0,
                     projection_tol: float = 1e-8) -> complex:
    """Ordered characteristic function Tr[rho e^{i(q-Q)u} e^{i(p-P)v}].

    The operator part Tr[rho e^{-iQu} e^{-iPv}] is evaluated through matrix
    exponentials of the tridiagonal Q, P representations in the truncated
    eigenbasis, then multiplied by e^{i(qu + pv)}.
    """
    R = _project_density(rho, basis, projection_tol)
    Qm, Pm = _qp_matrices(basis.n_max)
    val = np.trace(R @ expm(-1j * u * Qm) @ expm(-1j * v * Pm))
    return complex(val * np.exp(1j * (q * u + p * v)))


def char_function_pq(rho: OperatorKernel, basis: HermiteBasis, u: float, v: float,
                     q: float = 0.0, p: float = 0.0,
                     projection_tol: float = 1e-8) -> complex:
    """Anti-ordered characteristic function Tr[rho e^{i(p-P)v} e^{i(q-Q)u}].

    Equals the conjugate of the ordered one at (-u, -v) for Hermitian rho.
    """
    R = _project_density(rho, basis, projection_tol)
    Qm, Pm = _qp_matrices(basis.n_max)
    val = np.trace(R @ expm(-1j * v * Pm) @ expm(-1j * u * Qm))
    return complex(val * np.exp(1j * (q * u + p * v)))
