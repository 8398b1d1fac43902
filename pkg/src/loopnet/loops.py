"""Sobolev loop calculus on the circle.

Loop-algebra elements are finitely supported Fourier series with matrix
coefficients; group-valued loops are uniform grids of special-unitary
samples (power-of-two length, so spectral differentiation is an FFT away).
The module provides the weighted coefficient norms, the derivation and
multiplication actions of scalar fields, the central 2-cocycle

    B(X, Y) = integral <X, Y'> dtheta / 2pi = sum_k i k <a_{-k}, b_k>,

the adjoint-action cocycles c(gamma, X) and c(gamma, h) by spectrally
accurate trapezoid quadrature, loop splitting at marked points, and the
closed-form exponential of the semidirect product with a rotation flow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .errors import (
    AlgebraMismatchError,
    NormDivergedError,
    NotSplittableError,
    NumericError,
    ResolutionError,
    VerificationError,
)
from .lie import AlgebraElement, CompactSimpleAlgebra

__all__ = [
    "FourierLoopElement",
    "ScalarField",
    "GridLoop",
    "SplitPair",
    "sobolev_norm",
    "act_derivation",
    "multiply_field",
    "bracket_elements",
    "central_term_B",
    "maurer_cartan",
    "cocycle_c",
    "cocycle_c_field",
    "cocycle_b",
    "cocycle_b_field",
    "split_loop",
    "semidirect_exp",
    "kernel_bound_check",
    "kernel_bound_sweep",
    "loop_from_factors",
    "identity_loop",
    "loop_fourier_coefficients",
]

_DROP = 1e-16          # coefficients below this Frobenius norm are discarded
_REALITY_TOL = 1e-12
_TAIL_GUARD = 1e-10    # relative tail mass allowed above mode N/4


class FourierLoopElement:
    """Finitely supported series X(theta) = sum_k a_k e^{i k theta}, a_k matrices.

    ``real_form`` marks pointwise membership in the compact real form, which
    on coefficients reads a_{-k} = -(a_k)^dagger.  ``decay_rate`` optionally
    declares an asymptotic bound |a_k| = O((1+|k|)^{-decay_rate}) for norm
    divergence checks; the stored coefficients are always finite in number.
    """

    __slots__ = ("coefficients", "algebra", "real_form", "decay_rate")

    def __init__(self, coefficients: Mapping[int, np.ndarray],
                 algebra: CompactSimpleAlgebra,
                 real_form: bool | None = None,
                 decay_rate: float | None = None):
        n = algebra.n
        coeffs = {}
        for k, a in coefficients.items():
            a = np.asarray(a, dtype=complex)
            if a.shape != (n, n):
                raise AlgebraMismatchError(
                    f"coefficient at mode {k} has shape {a.shape}, expected {(n, n)}")
            if np.linalg.norm(a) > _DROP:
                coeffs[int(k)] = a
        if real_form is None:
            real_form = all(
                np.allclose(coeffs.get(-k, np.zeros((n, n))), -a.conj().T,
                            atol=_REALITY_TOL)
                for k, a in coeffs.items())
        elif real_form:
            worst = max((np.linalg.norm(coeffs.get(-k, np.zeros((n, n))) + a.conj().T)
                         for k, a in coeffs.items()), default=0.0)
            if worst > _REALITY_TOL:
                raise ValueError(
                    f"real-form tag violated: coefficient reality residual {worst:.2e}")
        self.coefficients = coeffs
        self.algebra = algebra
        self.real_form = real_form
        self.decay_rate = decay_rate

    def modes(self) -> list[int]:
        return sorted(self.coefficients)

    def evaluate(self, thetas: np.ndarray) -> np.ndarray:
        """Pointwise values, shape (len(thetas), n, n)."""
        thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
        n = self.algebra.n
        out = np.zeros((len(thetas), n, n), dtype=complex)
        for k, a in self.coefficients.items():
            out += np.exp(1j * k * thetas)[:, None, None] * a
        return out

    def derivative(self) -> "FourierLoopElement":
        return FourierLoopElement(
            {k: 1j * k * a for k, a in self.coefficients.items()},
            self.algebra, real_form=self.real_form)

    def star(self) -> "FourierLoopElement":
        """Pointwise involution; coefficient at m is (a_{-m})^dagger."""
        return FourierLoopElement(
            {-k: a.conj().T for k, a in self.coefficients.items()}, self.algebra)

    def __add__(self, other):
        _same_algebra(self, other)
        keys = set(self.coefficients) | set(other.coefficients)
        z = np.zeros((self.algebra.n,) * 2)
        return FourierLoopElement(
            {k: self.coefficients.get(k, z) + other.coefficients.get(k, z)
             for k in keys}, self.algebra)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __rmul__(self, scalar):
        return FourierLoopElement(
            {k: scalar * a for k, a in self.coefficients.items()}, self.algebra)

    def __repr__(self):
        return (f"FourierLoopElement(su({self.algebra.n}), "
                f"modes={self.modes()}, real_form={self.real_form})")


class ScalarField:
    """Finitely supported scalar series h(theta) = sum_k h_k e^{i k theta}."""

    __slots__ = ("coefficients", "real", "decay_rate")

    def __init__(self, coefficients: Mapping[int, complex],
                 real: bool | None = None, decay_rate: float | None = None):
        coeffs = {int(k): complex(v) for k, v in coefficients.items()
                  if abs(v) > _DROP}
        if real is None:
            real = all(abs(np.conj(v) - coeffs.get(-k, 0.0)) <= _REALITY_TOL
                       for k, v in coeffs.items())
        elif real:
            worst = max((abs(np.conj(v) - coeffs.get(-k, 0.0))
                         for k, v in coeffs.items()), default=0.0)
            if worst > _REALITY_TOL:
                raise ValueError(f"real tag violated, residual {worst:.2e}")
        self.coefficients = coeffs
        self.real = real
        self.decay_rate = decay_rate

    @staticmethod
    def constant(value: complex = 1.0) -> "ScalarField":
        return ScalarField({0: value})

    @staticmethod
    def from_callable(f: Callable[[np.ndarray], np.ndarray], n_modes: int = 64,
                      n_samples: int = 512) -> "ScalarField":
        """Fourier coefficients of a smooth periodic callable, |k| <= n_modes."""
        thetas = 2 * np.pi * np.arange(n_samples) / n_samples
        vals = np.asarray(f(thetas), dtype=complex)
        hats = np.fft.fft(vals) / n_samples
        ks = np.fft.fftfreq(n_samples, d=1.0 / n_samples).astype(int)
        return ScalarField({int(k): hats[i] for i, k in enumerate(ks)
                            if abs(k) <= n_modes and abs(hats[i]) > 1e-15})

    def modes(self) -> list[int]:
        return sorted(self.coefficients)

    def evaluate(self, thetas: np.ndarray) -> np.ndarray:
        thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
        out = np.zeros(len(thetas), dtype=complex)
        for k, v in self.coefficients.items():
            out += v * np.exp(1j * k * thetas)
        return out

    def __repr__(self):
        return f"ScalarField(modes={self.modes()}, real={self.real})"


def _same_algebra(x, y):
    if x.algebra != y.algebra:
        raise AlgebraMismatchError("operands live in different algebras")


def _coeff_norms(x) -> dict[int, float]:
    if isinstance(x, FourierLoopElement):
        return {k: float(np.linalg.norm(a)) for k, a in x.coefficients.items()}
    if isinstance(x, ScalarField):
        return {k: abs(v) for k, v in x.coefficients.items()}
    raise TypeError(f"expected FourierLoopElement or ScalarField, got {type(x)}")


def sobolev_norm(x, s: float, p: float = 1.0) -> float:
    """Weighted coefficient norm ( sum_k (1+|k|)^{sp} |a_k|^p )^{1/p}.

    The single-index norm |X|_t is the p = 1 case.  Matrix coefficients are
    measured in Frobenius norm.  With a declared decay profile the norm is
    checked for convergence first and NormDivergedError raised when the tail
    does not converge absolutely.
    """
    if p < 1.0:
        raise ValueError(f"p must be >= 1, got {p}")
    norms = _coeff_norms(x)
    if x.decay_rate is not None and (s - x.decay_rate) * p >= -1.0:
        raise NormDivergedError(
            f"norm (s={s}, p={p}) diverges for declared decay rate {x.decay_rate}")
    total = sum((1.0 + abs(k)) ** (s * p) * v ** p for k, v in norms.items())
    return float(total ** (1.0 / p))


def act_derivation(h: ScalarField, x: FourierLoopElement) -> FourierLoopElement:
    """The action h.X = h(theta) dX/dtheta; mode m gets sum_k h_{m-k} (ik) a_k."""
    out: dict[int, np.ndarray] = {}
    for kh, v in h.coefficients.items():
        for kx, a in x.coefficients.items():
            m = kh + kx
            term = v * (1j * kx) * a
            out[m] = out.get(m, 0) + term
    return FourierLoopElement(out, x.algebra)


def multiply_field(h: ScalarField, x: FourierLoopElement) -> FourierLoopElement:
    """Pointwise product hX by coefficient convolution."""
    out: dict[int, np.ndarray] = {}
    for kh, v in h.coefficients.items():
        for kx, a in x.coefficients.items():
            m = kh + kx
            out[m] = out.get(m, 0) + v * a
    return FourierLoopElement(out, x.algebra)


def bracket_elements(x: FourierLoopElement, y: FourierLoopElement) -> FourierLoopElement:
    """Pointwise bracket [X, Y](theta); mode m gets sum_k [a_k, b_{m-k}]."""
    _same_algebra(x, y)
    out: dict[int, np.ndarray] = {}
    for kx, a in x.coefficients.items():
        for ky, b in y.coefficients.items():
            m = kx + ky
            out[m] = out.get(m, 0) + (a @ b - b @ a)
    return FourierLoopElement(out, x.algebra)


def central_term_B(x: FourierLoopElement, y: FourierLoopElement) -> complex:
    """The 2-cocycle B(X, Y) = sum_k i k tr(a_{-k} b_k); antisymmetric."""
    _same_algebra(x, y)
    total = 0.0 + 0.0j
    for k, b in y.coefficients.items():
        a = x.coefficients.get(-k)
        if a is not None:
            total += 1j * k * np.trace(a @ b)
    return complex(total)


# ---------------------------------------------------------------------------
# Grid loops
# ---------------------------------------------------------------------------

class GridLoop:
    """Group-valued loop sampled at theta_j = 2 pi j / N, N a power of two."""

    __slots__ = ("samples", "algebra")

    def __init__(self, samples: np.ndarray, algebra: CompactSimpleAlgebra,
                 check: bool = True):
        samples = np.asarray(samples, dtype=complex)
        n_samp = samples.shape[0]
        if n_samp & (n_samp - 1) or n_samp < 4:
            raise ValueError(f"sample count must be a power of two >= 4, got {n_samp}")
        if samples.shape[1:] != (algebra.n, algebra.n):
            raise AlgebraMismatchError("sample shape does not match the algebra")
        if check:
            eye = np.eye(algebra.n)
            uerr = np.abs(np.einsum("jab,jcb->jac", samples, samples.conj())
                          - eye).max()
            derr = np.abs(np.linalg.det(samples) - 1.0).max()
            if max(uerr, derr) > 1e-10:
                raise NumericError(
                    f"samples not special unitary: unitarity {uerr:.2e}, det {derr:.2e}")
        self.samples = samples
        self.algebra = algebra

    @property
    def n_samples(self) -> int:
        return self.samples.shape[0]

    @property
    def thetas(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.n_samples) / self.n_samples

    def inverse(self) -> "GridLoop":
        return GridLoop(self.samples.conj().transpose(0, 2, 1), self.algebra,
                        check=False)

    def __matmul__(self, other: "GridLoop") -> "GridLoop":
        _same_algebra(self, other)
        if self.n_samples != other.n_samples:
            raise ValueError("sample counts differ")
        return GridLoop(np.einsum("jab,jbc->jac", self.samples, other.samples),
                        self.algebra, check=False)


def identity_loop(algebra: CompactSimpleAlgebra, n_samples: int = 256) -> GridLoop:
    eye = np.broadcast_to(np.eye(algebra.n, dtype=complex),
                          (n_samples, algebra.n, algebra.n)).copy()
    return GridLoop(eye, algebra, check=False)


def _eig_factor(x_matrix: np.ndarray):
    """Eigendecomposition X = U diag(i d) U* of an anti-hermitian matrix."""
    w, u = np.linalg.eigh(1j * x_matrix)   # hermitian; X = -i * (i X)
    return u, -w                            # X = U diag(i * (-w)) U*


def _exp_profile(u: np.ndarray, d: np.ndarray, f_vals: np.ndarray) -> np.ndarray:
    """exp(f X) for all f in f_vals at once, X = U diag(i d) U*."""
    phases = np.exp(1j * np.outer(f_vals, d))
    return np.einsum("ab,jb,cb->jac", u, phases, u.conj())


def loop_from_factors(algebra: CompactSimpleAlgebra,
                      factors: list[tuple[np.ndarray | AlgebraElement,
                                          Callable[[np.ndarray], np.ndarray] | ScalarField]],
                      n_samples: int = 256) -> GridLoop:
    """Pointwise product of exponentials exp(f_j(theta) X_j) on the grid."""
    thetas = 2 * np.pi * np.arange(n_samples) / n_samples
    samples = np.broadcast_to(np.eye(algebra.n, dtype=complex),
                              (n_samples, algebra.n, algebra.n)).copy()
    for x, profile in factors:
        xm = x.matrix if isinstance(x, AlgebraElement) else np.asarray(x, complex)
        if isinstance(profile, ScalarField):
            f_vals = profile.evaluate(thetas)
            if np.abs(f_vals.imag).max() > 1e-12:
                raise ValueError("loop profile must be real")
            f_vals = f_vals.real
        else:
            f_vals = np.asarray(profile(thetas), dtype=float)
        u, d = _eig_factor(xm)
        samples = np.einsum("jab,jbc->jac", samples, _exp_profile(u, d, f_vals))
    return GridLoop(samples, algebra)


def loop_fourier_coefficients(gamma: GridLoop, drop: float = 1e-14) -> dict[int, np.ndarray]:
    """Matrix-valued Fourier coefficients of the sampled loop."""
    n_samp = gamma.n_samples
    hats = np.fft.fft(gamma.samples, axis=0) / n_samp
    ks = np.fft.fftfreq(n_samp, d=1.0 / n_samp).astype(int)
    scale = max(np.linalg.norm(hats[i]) for i in range(n_samp))
    return {int(k): hats[i] for i, k in enumerate(ks)
            if np.linalg.norm(hats[i]) > drop * scale}


def _spectral_derivative(samples: np.ndarray) -> np.ndarray:
    n_samp = samples.shape[0]
    hats = np.fft.fft(samples, axis=0)
    ks = np.fft.fftfreq(n_samp, d=1.0 / n_samp)
    ks[n_samp // 2] = 0.0  # zero the unpaired Nyquist mode
    return np.fft.ifft(1j * ks[:, None, None] * hats, axis=0)


def _check_resolution(gamma: GridLoop) -> None:
    n_samp = gamma.n_samples
    hats = np.fft.fft(gamma.samples, axis=0) / n_samp
    ks = np.abs(np.fft.fftfreq(n_samp, d=1.0 / n_samp).astype(int))
    norms = np.linalg.norm(hats.reshape(n_samp, -1), axis=1)
    scale = norms.max()
    tail = norms[ks >= n_samp // 4].max(initial=0.0)
    if tail > _TAIL_GUARD * scale:
        raise ResolutionError(
            f"Fourier tail {tail / scale:.2e} above mode N/4 exceeds {_TAIL_GUARD}; "
            f"resample more finely", suggested_n=2 * n_samp)


def _current_samples(gamma: GridLoop, side: str) -> np.ndarray:
    """Pointwise Maurer-Cartan current, anti-hermitian part enforced."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    _check_resolution(gamma)
    dot = _spectral_derivative(gamma.samples)
    inv = gamma.samples.conj().transpose(0, 2, 1)
    if side == "left":
        cur = np.einsum("jab,jbc->jac", inv, dot)
    else:
        cur = np.einsum("jab,jbc->jac", dot, inv)
    anti = 0.5 * (cur - cur.conj().transpose(0, 2, 1))
    herm_resid = np.abs(cur - anti).max()
    if herm_resid > 1e-9:
        raise NumericError(
            f"current not anti-hermitian to tolerance: residual {herm_resid:.2e}")
    return anti


def maurer_cartan(gamma: GridLoop, side: str = "right") -> FourierLoopElement:
    """Logarithmic derivative as a Fourier element: gamma^-1 gamma' (left) or
    gamma' gamma^-1 (right)."""
    cur = _current_samples(gamma, side)
    n_samp = gamma.n_samples
    hats = np.fft.fft(cur, axis=0) / n_samp
    ks = np.fft.fftfreq(n_samp, d=1.0 / n_samp).astype(int)
    scale = max(np.linalg.norm(hats.reshape(n_samp, -1), axis=1).max(), 1e-300)
    coeffs = {int(k): hats[i] for i, k in enumerate(ks)
              if abs(k) < n_samp // 2 and np.linalg.norm(hats[i]) > 1e-14 * scale}
    elem = FourierLoopElement(coeffs, gamma.algebra)
    # reality a_{-k} = -(a_k)^dagger is automatic after the pointwise
    # anti-hermitian projection; assert rather than re-project
    if not elem.real_form:
        raise NumericError("Maurer-Cartan output failed the reality check")
    return elem


def _trapezoid_mean(values: np.ndarray) -> complex:
    # uniform periodic grid: the trapezoid rule is the plain mean
    return complex(values.mean())


def cocycle_c(gamma: GridLoop, x: FourierLoopElement, level: float = 1.0) -> float:
    """Adjoint-action cocycle c(gamma, X) = -l * mean_theta <gamma^-1 gamma', X>."""
    _same_algebra(gamma, x)
    cur = _current_samples(gamma, "left")
    xs = x.evaluate(gamma.thetas)
    vals = np.einsum("jab,jba->j", cur, xs)
    c = -level * _trapezoid_mean(vals)
    if abs(c.imag) > 1e-9 * max(1.0, abs(c.real)):
        raise NumericError(f"cocycle acquired imaginary part {c.imag:.2e}")
    return float(c.real)


def cocycle_c_field(gamma: GridLoop, h: ScalarField, level: float = 1.0) -> float:
    """Field cocycle c(gamma, h) = -(l/2) mean_theta h <gamma^-1 gamma', gamma^-1 gamma'>."""
    if not h.real:
        raise ValueError("field cocycle needs a real scalar field")
    cur = _current_samples(gamma, "left")
    hv = h.evaluate(gamma.thetas).real
    vals = hv * np.einsum("jab,jba->j", cur, cur)
    c = -0.5 * level * _trapezoid_mean(vals)
    return float(c.real)


def cocycle_b(gamma: GridLoop, x: FourierLoopElement, level: float = 1.0) -> float:
    """Inverse-side cocycle b(gamma, X) = c(gamma^-1, X)."""
    return cocycle_c(gamma.inverse(), x, level)


def cocycle_b_field(gamma: GridLoop, h: ScalarField, level: float = 1.0) -> float:
    """Inverse-side field cocycle b(gamma, h) = c(gamma^-1, h)."""
    return cocycle_c_field(gamma.inverse(), h, level)


# ---------------------------------------------------------------------------
# Loop splitting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplitPair:
    """Factors gamma = left * right supported on complementary arcs."""

    left: GridLoop
    right: GridLoop
    cut_from: float
    cut_to: float


def _grid_index(gamma: GridLoop, angle: float) -> int:
    n_samp = gamma.n_samples
    step = 2 * np.pi / n_samp
    idx = int(round((angle % (2 * np.pi)) / step)) % n_samp
    if abs((angle % (2 * np.pi)) - idx * step) > 1e-12 and \
       abs((angle % (2 * np.pi)) - idx * step - 2 * np.pi) > 1e-12:
        raise ValueError(
            f"cut angle {angle} is not a grid point (spacing {step:.3e})")
    return idx


def split_loop(gamma: GridLoop, z: float, w: float) -> SplitPair:
    """Factor gamma into arc-supported pieces meeting at z and w.

    Requires gamma(z) = gamma(w) = Id and vanishing derivative there, both to
    1e-8; the left factor agrees with gamma on the arc (z, w) traversed
    counterclockwise and is the identity elsewhere, and symmetrically for the
    right factor, so the pointwise product reproduces gamma exactly on the
    grid.
    """
    iz, iw = _grid_index(gamma, z), _grid_index(gamma, w)
    if iz == iw:
        raise ValueError("cut angles coincide on the grid")
    eye = np.eye(gamma.algebra.n)
    dot = _spectral_derivative(gamma.samples)
    residuals = {}
    for angle, idx in ((z, iz), (w, iw)):
        residuals[float(angle)] = (
            float(np.linalg.norm(gamma.samples[idx] - eye)),
            float(np.linalg.norm(dot[idx])),
        )
    worst = max(max(pair) for pair in residuals.values())
    if worst > 1e-8:
        raise NotSplittableError(
            f"loop not splittable at the requested points; worst residual {worst:.2e}",
            residuals)
    n_samp = gamma.n_samples
    on_left = ((np.arange(n_samp) - iz) % n_samp) < ((iw - iz) % n_samp)
    left = np.where(on_left[:, None, None], gamma.samples, eye)
    right = np.where(on_left[:, None, None], eye, gamma.samples)
    # both factors are Id at the cut points themselves
    for idx in (iz, iw):
        left[idx] = eye
        right[idx] = eye
    step = 2 * np.pi / n_samp
    return SplitPair(GridLoop(left, gamma.algebra, check=False),
                     GridLoop(right, gamma.algebra, check=False),
                     cut_from=iz * step, cut_to=iw * step)


# ---------------------------------------------------------------------------
# Semidirect exponential
# ---------------------------------------------------------------------------

def _flow_angles(h: ScalarField, thetas: np.ndarray, time: float,
                 n_steps: int = 1000) -> np.ndarray:
    """Integrate d theta/ds = h(theta) from the given angles for the given time."""
    if n_steps <= 0:
        return thetas.copy()
    dt = time / n_steps
    th = thetas.astype(float).copy()

    def rhs(t):
        return h.evaluate(t).real

    for _ in range(n_steps):
        k1 = rhs(th)
        k2 = rhs(th + 0.5 * dt * k1)
        k3 = rhs(th + 0.5 * dt * k2)
        k4 = rhs(th + dt * k3)
        th += (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return th


def _ode_exponential(x: FourierLoopElement, alpha: float, h: ScalarField,
                     t: float, n_samples: int, dt: float) -> np.ndarray:
    """Explicit RK4 integration of d gamma/dt = X gamma - alpha h d_theta gamma."""
    thetas = 2 * np.pi * np.arange(n_samples) / n_samples
    xs = x.evaluate(thetas)
    hv = h.evaluate(thetas).real[:, None, None]
    gam = np.broadcast_to(np.eye(x.algebra.n, dtype=complex),
                          (n_samples, x.algebra.n, x.algebra.n)).copy()

    def rhs(g):
        return np.einsum("jab,jbc->jac", xs, g) - alpha * hv * _spectral_derivative(g)

    n_steps = max(1, int(round(abs(t) / dt)))
    step = t / n_steps
    for _ in range(n_steps):
        k1 = rhs(gam)
        k2 = rhs(gam + 0.5 * step * k1)
        k3 = rhs(gam + 0.5 * step * k2)
        k4 = rhs(gam + step * k3)
        gam = gam + (step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return gam


def semidirect_exp(x: FourierLoopElement, alpha: float,
                   h: ScalarField | None = None, t: float = 1.0,
                   n_samples: int = 256, verify: bool = True,
                   ode_dt: float = 1e-3, tol: float = 1e-6) -> tuple[GridLoop, float]:
    """Exponential exp(t(X + alpha h)) in the semidirect product with the flow of h.

    Returns the loop part and the accumulated flow time alpha * t.  The loop
    part is the pointwise exponential of the flow-averaged symbol

        Y_t(theta) = integral_0^t X(R_{alpha tau}^{-1}(theta)) d tau,

    which is the integral-curve solution whenever the rotated family of
    generators commutes pointwise along the flow (single-generator elements
    X = f(theta) X0 always qualify); the endpoint-rotated symbol t X(theta -
    alpha t) fails even the one-parameter group law and is not used.  For
    the rigid rotation h = 1 the average is exact in Fourier modes,
    a_k -> a_k (1 - e^{-i k alpha t})/(i k alpha); a general real field h is
    handled by quadrature along its numerically integrated flow.

    When ``verify`` is set the result is compared against an explicit
    fourth-order integration of

        d gamma/dt = X gamma - alpha h d_theta gamma

    and a VerificationError carrying the sup-norm residual is raised above
    ``tol``; this is also what rejects closed forms for non-commuting
    generator families.
    """
    if not x.real_form:
        raise ValueError("semidirect exponential needs a real-form element")
    if h is None:
        h = ScalarField.constant(1.0)
    if not h.real:
        raise ValueError("the flow field must be real")
    thetas = 2 * np.pi * np.arange(n_samples) / n_samples
    rotation = alpha * t
    is_rigid = h.modes() in ([], [0])
    n = x.algebra.n
    if is_rigid:
        speed = h.coefficients.get(0, complex(0.0)).real
        avg = {}
        for k, a in x.coefficients.items():
            phi = k * alpha * speed
            if k == 0 or phi == 0.0:
                avg[k] = t * a
            else:
                avg[k] = a * (1.0 - np.exp(-1j * phi * t)) / (1j * phi)
        ys = FourierLoopElement(avg, x.algebra).evaluate(thetas)
    else:
        nodes, weights = np.polynomial.legendre.leggauss(64)
        taus = 0.5 * t * (nodes + 1.0)
        ys = np.zeros((n_samples, n, n), dtype=complex)
        for tau, w in zip(taus, weights):
            pre = _flow_angles(h, thetas, -alpha * tau)
            ys += (0.5 * t * w) * x.evaluate(pre)
    samples = np.empty((n_samples, n, n), dtype=complex)
    for j in range(n_samples):
        w, u = np.linalg.eigh(1j * ys[j])
        samples[j] = (u * np.exp(-1j * w)) @ u.conj().T
    loop = GridLoop(samples, x.algebra)
    if verify:
        ode = _ode_exponential(x, alpha, h, t, n_samples, ode_dt)
        resid = float(np.abs(samples - ode).max())
        if resid > tol:
            raise VerificationError(
                f"closed form vs ODE integration differ by {resid:.2e} > {tol:.1e}",
                resid)
    return loop, rotation


# ---------------------------------------------------------------------------
# Scalar kernel bound
# ---------------------------------------------------------------------------

def kernel_bound_check(eps: float, n: int, k: int) -> bool:
    """Check |f_{n,k+n}(eps)|^2 (1+k+n) <= 2 (1+|n|)^2 for f_{n,k}(e) = e^{-ek} - e^{-e(k-n)}.

    Valid for eps >= 0, k >= 0 and n + k >= 0.
    """
    if eps < 0 or k < 0 or n + k < 0:
        raise ValueError("need eps >= 0, k >= 0 and n + k >= 0")
    f = math.exp(-eps * (k + n)) - math.exp(-eps * k)
    return f * f * (1 + k + n) <= 2.0 * (1 + abs(n)) ** 2 + 1e-12


def kernel_bound_sweep(eps_values, n_values, k_values) -> bool:
    """Vectorized exhaustive sweep; True iff the bound holds everywhere."""
    eps = np.asarray(list(eps_values), dtype=float)[:, None, None]
    ns = np.asarray(list(n_values), dtype=float)[None, :, None]
    ks = np.asarray(list(k_values), dtype=float)[None, None, :]
    valid = (ks >= 0) & (ns + ks >= 0)
    f = np.exp(-eps * (ks + ns)) - np.exp(-eps * ks)
    lhs = f * f * (1 + ks + ns)
    rhs = 2.0 * (1 + np.abs(ns)) ** 2
    return bool(np.all(np.where(valid, lhs <= rhs + 1e-12, True)))
