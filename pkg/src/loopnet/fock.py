"""Truncated level-1 fermionic model of the loop-group representation.

States are occupation configurations of n "colors" of fermions on integer
modes: particles sit at modes k >= 0 with energy k, holes at modes k < 0
with energy -k, and the truncated space keeps every configuration of total
energy up to a cutoff N.  The current operators are normal-ordered fermion
bilinears; ``current(space, X, m)`` hops a fermion from mode k to mode k - m,
so for m > 0 it lowers the energy grading by m and annihilates the vacuum.
With this orientation the mode operators x(m) satisfy the level-1 relations

    [x(a), y(b)] = [x, y](a + b) + a delta_{a+b,0} tr(xy) Id,
    x(m)^dagger  = -x(-m)            (real-form x),
    [d, x(m)]    = -m x(m),

and the quadratic (Sugawara) combination

    L_m = 1/(2(l+g)) sum_{m' >= -m/2} (2 - delta_{m',-m/2}) x_i(-m') x^i(m'+m)

represents the Virasoro algebra with central charge c = l*dim/(l+g) on the
protected part of the space.

Truncation discipline: every operator carries ``protected_energy``; columns
of basis states with energy at or below it are exact matrix elements of the
untruncated operator, and all identity checks restrict to those columns.
Operator composition propagates the protected range conservatively, which is
the central correctness mechanism of the module.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse

from .affine_data import LevelData
from .errors import CapacityError, WindowError
from .lie import AlgebraElement, CompactSimpleAlgebra, build_su
from .loops import FourierLoopElement, bracket_elements, central_term_B

__all__ = [
    "TruncatedFockSpace",
    "FockOperator",
    "HSReport",
    "build_fock",
    "current",
    "sugawara",
    "rotation_generator",
    "pi_element",
    "vacuum_cocycle_check",
    "hs_defect",
    "implement_exponential",
    "adjoint_action_check",
    "commutator",
    "identity_reports",
    "DEFAULT_DIM_LIMIT",
]

DEFAULT_DIM_LIMIT = 20000
_DIM_LIMIT_ENV = "LOOPNET_DIM_LIMIT"


def _dim_limit(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(_DIM_LIMIT_ENV)
    return int(env) if env else DEFAULT_DIM_LIMIT


def _occupation_mask(n: int, cutoff: int, particles, holes) -> int:
    """Window bitmask: filled sea below 0, minus holes, plus particles."""
    mask = 0
    for k in range(-cutoff, 0):
        for j in range(n):
            mask |= 1 << ((k + cutoff) * n + j)
    for (k, j) in particles:
        mask |= 1 << ((k + cutoff) * n + j)
    for (k, j) in holes:
        mask &= ~(1 << ((k + cutoff) * n + j))
    return mask


def _count_states(n: int, cutoff: int, charge: int | None) -> int:
    """Exact dimension via the two-variable generating polynomial."""
    # counts[(energy, charge)] -> number of configurations, energy <= cutoff
    counts = {(0, 0): 1}
    for k in range(1, cutoff + 1):
        for dq in (1, -1):  # particle at +k / hole at -k, both cost k
            for _ in range(n):
                new = dict(counts)
                for (e, q), c in counts.items():
                    if e + k <= cutoff:
                        key = (e + k, q + dq)
                        new[key] = new.get(key, 0) + c
                counts = new
    total = 0
    for (e, q), c in counts.items():
        for size in range(n + 1):
            if charge is None or q + size == charge:
                total += c * math.comb(n, size)
    return total


@dataclass(frozen=True)
class TruncatedFockSpace:
    """Energy-cutoff basis of particle/hole configurations.

    ``masks`` are occupation bitmasks over the window of modes (k, color)
    with |k| <= cutoff; the Dirac-sea modes below the window are permanently
    filled and never touched by any operator assembled here, so bilinear
    matrix elements computed in the window are exact.
    """

    n: int
    cutoff: int
    charge: int | None
    masks: list[int]
    energies: np.ndarray
    charges: np.ndarray
    occupations: list[tuple[tuple, tuple]]   # (particles, holes) per state
    index: dict[int, int] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.masks)

    def mode_bit(self, k: int, color: int) -> int:
        return (k + self.cutoff) * self.n + color

    @property
    def vacuum_index(self) -> int:
        if self.charge not in (None, 0):
            raise ValueError("vacuum lives in the charge-0 sector")
        return self.index[_occupation_mask(self.n, self.cutoff, (), ())]

    def state_label(self, i: int) -> str:
        particles, holes = self.occupations[i]
        return f"p{list(particles)}h{list(holes)}"


def build_fock(n: int, cutoff: int, charge: int | None = None,
               dim_limit: int | None = None) -> TruncatedFockSpace:
    """Enumerate the truncated space, ordered by (energy, charge, occupation).

    ``charge`` restricts to a single charge sector, which every operator in
    this module preserves; the restriction is exact for identity checks and
    cuts the dimension roughly by the number of sectors.  The exact dimension
    is computed up front and ``CapacityError`` raised if it exceeds the limit
    (default 20000, overridable via the LOOPNET_DIM_LIMIT environment
    variable or the ``dim_limit`` argument).
    """
    if n < 2 or cutoff < 0:
        raise ValueError(f"need n >= 2 and cutoff >= 0, got n={n}, cutoff={cutoff}")
    limit = _dim_limit(dim_limit)
    total = _count_states(n, cutoff, charge)
    if total > limit:
        raise CapacityError(
            f"truncated dimension {total} exceeds limit {limit}", total)

    colors = range(n)
    levels = []  # (particles at k>=1, holes at k<=-1) configurations with cost
    def extend(k, budget, particles, holes, out):
        if k > cutoff:
            out.append((tuple(particles), tuple(holes)))
            return
        max_total = budget // k
        color_subsets = [c for size in range(min(n, max_total) + 1)
                         for c in itertools.combinations(colors, size)]
        for psub in color_subsets:
            cost_p = k * len(psub)
            if cost_p > budget:
                continue
            for hsub in color_subsets:
                cost = cost_p + k * len(hsub)
                if cost > budget:
                    continue
                extend(k + 1, budget - cost,
                       particles + [(k, j) for j in psub],
                       holes + [(-k, j) for j in hsub], out)

    configs: list[tuple[tuple, tuple]] = []
    if cutoff >= 1:
        extend(1, cutoff, [], [], configs)
    else:
        configs.append(((), ()))

    states = []
    for zero_size in range(n + 1):
        for zsub in itertools.combinations(colors, zero_size):
            zmodes = tuple((0, j) for j in zsub)
            for particles, holes in configs:
                p_all = tuple(sorted(zmodes + particles))
                energy = sum(k for k, _ in p_all) + sum(-k for k, _ in holes)
                q = len(p_all) - len(holes)
                if charge is not None and q != charge:
                    continue
                states.append((energy, q, p_all, tuple(sorted(holes))))
    states.sort()

    space_masks, energies, charges, occupations = [], [], [], []
    for energy, q, particles, holes in states:
        mask = _occupation_mask(n, cutoff, particles, holes)
        space_masks.append(mask)
        energies.append(energy)
        charges.append(q)
        occupations.append((particles, holes))
    index = {m: i for i, m in enumerate(space_masks)}
    if len(index) != len(space_masks):
        raise RuntimeError("duplicate states in enumeration")
    return TruncatedFockSpace(n, cutoff, charge, space_masks,
                              np.array(energies, dtype=int),
                              np.array(charges, dtype=int),
                              occupations, index)


# ---------------------------------------------------------------------------
# Operators
# ---------------------------------------------------------------------------

@dataclass
class FockOperator:
    """Sparse operator on the truncated basis with truncation bookkeeping.

    ``degree`` is the uniform energy shift for graded operators (None for
    non-homogeneous ones such as exponentials); ``max_raise`` bounds how much
    the operator can increase a state's energy; ``protected_energy`` is the
    largest column energy for which the stored matrix elements are exact.
    """

    matrix: scipy.sparse.csr_matrix
    space: TruncatedFockSpace
    degree: int | None
    protected_energy: int
    max_raise: int

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        _same_space(self, other)
        deg = (self.degree + other.degree
               if self.degree is not None and other.degree is not None else None)
        return FockOperator(
            (self.matrix @ other.matrix).tocsr(), self.space, deg,
            min(other.protected_energy, self.protected_energy - other.max_raise),
            self.max_raise + other.max_raise)

    def __add__(self, other: "FockOperator") -> "FockOperator":
        _same_space(self, other)
        deg = self.degree if self.degree == other.degree else None
        return FockOperator(
            (self.matrix + other.matrix).tocsr(), self.space, deg,
            min(self.protected_energy, other.protected_energy),
            max(self.max_raise, other.max_raise))

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        return self + (-1.0) * other

    def __rmul__(self, scalar) -> "FockOperator":
        return FockOperator(scalar * self.matrix, self.space, self.degree,
                            self.protected_energy, self.max_raise)

    def adjoint(self) -> "FockOperator":
        if self.degree is None:
            prot, raise_ = -1, self.space.cutoff
        else:
            prot = self.protected_energy + self.degree
            raise_ = max(0, -self.degree)
        return FockOperator(self.matrix.conj().T.tocsr(), self.space,
                            None if self.degree is None else -self.degree,
                            prot, raise_)

    def protected_columns(self) -> np.ndarray:
        return self.space.energies <= self.protected_energy

    def max_protected_abs(self) -> float:
        """Largest matrix-element magnitude over truncation-exact columns."""
        cols = np.nonzero(self.protected_columns())[0]
        if len(cols) == 0:
            raise ValueError("no protected columns; identity not checkable "
                             f"(protected_energy={self.protected_energy})")
        sub = self.matrix.tocsc()[:, cols]
        return float(np.abs(sub.data).max()) if sub.nnz else 0.0


def _same_space(a: FockOperator, b: FockOperator) -> None:
    if a.space is not b.space:
        raise ValueError("operators live on different truncated spaces")


def commutator(a: FockOperator, b: FockOperator) -> FockOperator:
    return a @ b - b @ a


def identity_operator(space: TruncatedFockSpace) -> FockOperator:
    return FockOperator(scipy.sparse.identity(space.dim, dtype=complex,
                                              format="csr"),
                        space, 0, space.cutoff, 0)


def _apply_annihilate(mask: int, bit: int) -> tuple[int, int] | None:
    if not (mask >> bit) & 1:
        return None
    sign = -1 if (mask & ((1 << bit) - 1)).bit_count() & 1 else 1
    return mask & ~(1 << bit), sign


def _apply_create(mask: int, bit: int) -> tuple[int, int] | None:
    if (mask >> bit) & 1:
        return None
    sign = -1 if (mask & ((1 << bit) - 1)).bit_count() & 1 else 1
    return mask | (1 << bit), sign


def _bilinear(space: TruncatedFockSpace, xmat: np.ndarray, m: int) -> scipy.sparse.csr_matrix:
    """Matrix of the normal-ordered bilinear sum_k a^dag(k-m) X a(k)."""
    n, cutoff = space.n, space.cutoff
    entries = [(i, j, xmat[i, j]) for i in range(n) for j in range(n)
               if abs(xmat[i, j]) > 1e-15]
    if m == 0 and abs(np.trace(xmat)) > 1e-12:
        raise ValueError("zero-mode currents are defined for traceless "
                         "generators only")
    k_lo = max(-cutoff, -cutoff + m)
    k_hi = min(cutoff, cutoff + m)
    rows, cols, data = [], [], []
    for col, mask in enumerate(space.masks):
        for k in range(k_lo, k_hi + 1):
            for i, j, xij in entries:
                res = _apply_annihilate(mask, space.mode_bit(k, j))
                if res is None:
                    continue
                mid, s1 = res
                res = _apply_create(mid, space.mode_bit(k - m, i))
                if res is None:
                    continue
                out, s2 = res
                row = space.index.get(out)
                if row is not None:
                    rows.append(row)
                    cols.append(col)
                    data.append(xij * s1 * s2)
    mat = scipy.sparse.csr_matrix(
        (np.array(data, dtype=complex), (rows, cols)),
        shape=(space.dim, space.dim))
    mat.sum_duplicates()
    return mat


def current(space: TruncatedFockSpace, x, m: int) -> FockOperator:
    """Current mode x(m): normal-ordered bilinear of the generator x.

    Lowers the energy grading by m; charge-preserving; columns of energy at
    most cutoff - max(0, -m) are truncation-exact.  On that block the modes
    satisfy the level-1 relation
    [x(a), y(b)] = [x,y](a+b) + a delta_{a+b,0} tr(xy) Id.
    """
    if abs(m) > space.cutoff:
        raise WindowError(f"|m| = {abs(m)} exceeds the cutoff {space.cutoff}")
    xmat = x.matrix if isinstance(x, AlgebraElement) else np.asarray(x, complex)
    if xmat.shape != (space.n, space.n):
        raise ValueError(f"generator shape {xmat.shape} does not match n={space.n}")
    return FockOperator(_bilinear(space, xmat, m), space,
                        degree=-m,
                        protected_energy=space.cutoff - max(0, -m),
                        max_raise=max(0, -m))


def rotation_generator(space: TruncatedFockSpace) -> FockOperator:
    """Diagonal matrix of state energies; satisfies [d, x(m)] = -m x(m)."""
    mat = scipy.sparse.diags(space.energies.astype(complex)).tocsr()
    return FockOperator(mat, space, 0, space.cutoff, 0)


def sugawara(space: TruncatedFockSpace, m: int, data: LevelData) -> FockOperator:
    """Stress-tensor mode L_m by the normal-ordered quadratic current sum.

    The mode sum runs over m' >= ceil(-m/2) with weight 2 except at the
    symmetric point m' = -m/2 (weight 1), which is the reordered form of the
    double sum with annihilating factors on the right; on the truncated space
    it terminates at m' = cutoff - max(m, 0) because higher terms vanish
    identically.  Columns of energy at most cutoff - |m| are exact.
    """
    if abs(m) > space.cutoff // 2:
        raise WindowError(
            f"|m| = {abs(m)} exceeds cutoff/2 = {space.cutoff // 2}")
    if data.family != "A" or data.rank != space.n - 1:
        raise ValueError("level data does not match the space's algebra")
    algebra = build_su(space.n)
    lo = math.ceil(-m / 2)
    hi = space.cutoff - max(m, 0)
    total = scipy.sparse.csr_matrix((space.dim, space.dim), dtype=complex)
    for mp in range(lo, hi + 1):
        weight = 1.0 if 2 * mp == -m else 2.0
        for i in range(algebra.dimension):
            xi = algebra.basis[i]
            left = _bilinear(space, xi, -mp)
            right = _bilinear(space, -xi, mp + m)   # dual basis x^i = -x_i
            total = total + weight * (left @ right)
    scale = 1.0 / (2.0 * (data.level + data.dual_coxeter))
    return FockOperator(scale * total.tocsr(), space,
                        degree=-m,
                        protected_energy=space.cutoff - abs(m),
                        max_raise=max(0, -m))


def pi_element(space: TruncatedFockSpace, x: FourierLoopElement,
               max_mode: int | None = None) -> FockOperator:
    """Representation of a polynomial loop-algebra element: sum_k x_k(k)."""
    if max_mode is None:
        max_mode = space.cutoff
    modes = x.modes()
    if modes and max(abs(k) for k in modes) > max_mode:
        raise WindowError(
            f"element has modes up to {max(abs(k) for k in modes)}, "
            f"window allows {max_mode}")
    mat = scipy.sparse.csr_matrix((space.dim, space.dim), dtype=complex)
    raise_ = 0
    for k, a in x.coefficients.items():
        mat = mat + _bilinear(space, a, k)
        raise_ = max(raise_, max(0, -k))
    degree = -modes[0] if len(modes) == 1 else (0 if not modes else None)
    return FockOperator(mat.tocsr(), space, degree, space.cutoff - raise_, raise_)


def vacuum_cocycle_check(space: TruncatedFockSpace, x: FourierLoopElement,
                         y: FourierLoopElement) -> complex:
    """Vacuum expectation of [pi(X), pi(Y)] - pi([X, Y]).

    Equals i * l * B(X, Y) with l = 1 and B the coefficient-side 2-cocycle;
    the comparison value is computed independently by ``central_term_B``.
    """
    half = space.cutoff // 2
    px = pi_element(space, x, max_mode=half)
    py = pi_element(space, y, max_mode=half)
    pbr = pi_element(space, bracket_elements(x, y), max_mode=2 * half)
    resid = commutator(px, py) - pbr
    if resid.protected_energy < 0:
        raise WindowError("vacuum column not protected; lower the mode window")
    iv = space.vacuum_index
    return complex(resid.matrix[iv, iv])


# ---------------------------------------------------------------------------
# Hilbert-Schmidt defect of the Hardy compression
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HSReport:
    """Two routes to ||[P, M_gamma]||_2^2 and their agreement."""

    fourier_value: float
    truncated_value: float
    window: int
    relative_gap: float
    tail_ok: bool
    tail_fraction: float


def hs_defect(fourier_data, window: int) -> HSReport:
    """Compare sum_k |k| ||g_k||^2 with the windowed commutator block norm.

    ``fourier_data`` maps mode k to the n x n Fourier coefficient of a
    group-valued loop.  The truncated value builds the block matrix
    M_{pq} = g_{p-q} for |p|, |q| <= window, applies the Hardy projection
    P = [q >= 0] and takes the Frobenius norm of the commutator directly.
    A coefficient tail above the window larger than 1e-10 of the total mass
    flags ``tail_ok = False`` instead of raising.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    data = {int(k): np.asarray(v, dtype=complex) for k, v in fourier_data.items()}
    n = next(iter(data.values())).shape[0]
    mass = {k: float(np.linalg.norm(v) ** 2) for k, v in data.items()}
    fourier_value = sum(abs(k) * m for k, m in mass.items())
    total_mass = sum(mass.values())
    tail = sum(m for k, m in mass.items() if abs(k) > window)
    tail_fraction = tail / total_mass if total_mass else 0.0
    tail_ok = tail_fraction <= 1e-10

    size = (2 * window + 1) * n
    big = np.zeros((size, size), dtype=complex)
    offsets = {p: (p + window) * n for p in range(-window, window + 1)}
    for p in range(-window, window + 1):
        for q in range(-window, window + 1):
            g = data.get(p - q)
            if g is not None:
                big[offsets[p]:offsets[p] + n, offsets[q]:offsets[q] + n] = g
    pdiag = np.zeros(size)
    for p in range(0, window + 1):
        pdiag[offsets[p]:offsets[p] + n] = 1.0
    comm = pdiag[:, None] * big - big * pdiag[None, :]
    truncated_value = float(np.linalg.norm(comm) ** 2)
    gap = abs(truncated_value - fourier_value) / fourier_value if fourier_value else 0.0
    return HSReport(float(fourier_value), truncated_value, window, gap,
                    tail_ok, tail_fraction)


# ---------------------------------------------------------------------------
# Exponentials and adjoint-action verification
# ---------------------------------------------------------------------------

def implement_exponential(space: TruncatedFockSpace,
                          x: FourierLoopElement) -> FockOperator:
    """Unitary implementer exp(pi(X)) of the loop exp(X), as a dense exponential.

    Exactness degrades with energy (the exponential mixes all grades), so the
    result carries no protected columns; use ``adjoint_action_check`` for a
    quantitative report instead of trusting the matrix blindly.
    """
    if not x.real_form:
        raise ValueError("implementer needs a real-form element")
    modes = x.modes()
    if modes and max(abs(k) for k in modes) > space.cutoff // 4:
        raise WindowError("element modes exceed cutoff/4; exponential would "
                          "be truncation-dominated")
    px = pi_element(space, x)
    mat = scipy.linalg.expm(px.dense())
    return FockOperator(scipy.sparse.csr_matrix(mat), space, None, -1,
                        space.cutoff)


def adjoint_action_check(space: TruncatedFockSpace, x: FourierLoopElement,
                         y: FourierLoopElement, level: float = 1.0,
                         block_energy: int | None = None,
                         n_samples: int = 256,
                         tolerance: float = 1e-6) -> dict:
    """Report on e^{pi(X)} pi(Y) e^{-pi(X)} = pi(Ad(gamma) Y) + i c(gamma, Y).

    The right-hand side is built independently on a sample grid from the
    pointwise conjugated symbol and the quadrature cocycle of the ``loops``
    module.  Returns a verification report dict (never raises on mismatch);
    the residual is truncation-limited and measured on columns with energy
    at most ``block_energy`` (default cutoff/4).
    """
    from . import loops as _loops

    if block_energy is None:
        block_energy = space.cutoff // 4
    algebra = x.algebra
    gamma = _loop_of_element(x, n_samples)
    u = implement_exponential(space, x)
    py = pi_element(space, y)
    lhs = (u @ py) @ _unitary_inverse(u)
    thetas = gamma.thetas
    ys = y.evaluate(thetas)
    conj = np.einsum("jab,jbc,jdc->jad", gamma.samples, ys, gamma.samples.conj())
    hats = np.fft.fft(conj, axis=0) / n_samples
    ks = np.fft.fftfreq(n_samples, d=1.0 / n_samples).astype(int)
    keep = {int(k): hats[i] for i, k in enumerate(ks)
            if abs(k) <= space.cutoff and np.linalg.norm(hats[i]) > 1e-13}
    ady = FourierLoopElement(keep, algebra)
    c_val = _loops.cocycle_c(gamma, y, level)
    rhs = pi_element(space, ady) + (1j * c_val) * identity_operator(space)
    resid_op = lhs - rhs
    cols = np.nonzero(space.energies <= block_energy)[0]
    sub = resid_op.matrix.tocsc()[:, cols]
    residual = float(np.abs(sub.data).max()) if sub.nnz else 0.0
    return {
        "identity": "adjoint-action",
        "block": int(block_energy),
        "residual_max": residual,
        "tolerance": tolerance,
        "pass": bool(residual <= tolerance),
        "scalar_part": c_val,
    }


def _loop_of_element(x: FourierLoopElement, n_samples: int):
    """Pointwise exponential exp(X(theta)) of a real-form element on the grid."""
    from .loops import GridLoop

    thetas = 2 * np.pi * np.arange(n_samples) / n_samples
    xs = x.evaluate(thetas)
    n = x.algebra.n
    samples = np.empty((n_samples, n, n), dtype=complex)
    for j in range(n_samples):
        w, u = np.linalg.eigh(1j * xs[j])
        samples[j] = (u * np.exp(-1j * w)) @ u.conj().T
    return GridLoop(samples, x.algebra)


def _unitary_inverse(u: FockOperator) -> FockOperator:
    return FockOperator(u.matrix.conj().T.tocsr(), u.space, None, -1,
                        u.space.cutoff)


# ---------------------------------------------------------------------------
# Identity suites (consumed by the CLI and the tests)
# ---------------------------------------------------------------------------

def _report(identity, block, residual, tol, **extra):
    rep = {"identity": identity, "block": int(block),
           "residual_max": float(residual), "tolerance": float(tol),
           "pass": bool(residual <= tol)}
    rep.update(extra)
    return rep


def identity_reports(n: int, cutoff: int, level: int = 1,
                     identities: tuple[str, ...] = ("affine", "commutator",
                                                    "virasoro", "rotation",
                                                    "adjoint", "vacuum-cocycle"),
                     mode_range: int = 2, tol: float = 1e-10,
                     charge: int | None = None, seed: int = 7,
                     dim_limit: int | None = None) -> list[dict]:
    """Run the operator-identity suite on the truncated level-1 model.

    Returns one report dict per identity with the worst residual over the
    protected block.  ``charge`` restricts to a sector (cheaper, equally
    exact for these charge-preserving identities).
    """
    from .affine_data import level_data as _level_data

    algebra = build_su(n)
    data = _level_data(algebra, level)
    space = build_fock(n, cutoff, charge=charge, dim_limit=dim_limit)
    rng = np.random.default_rng(seed)
    reports = []
    # keep every probed mode (including sums a+b) inside the cutoff window
    mode_range = max(1, min(mode_range, cutoff // 2))

    basis = [algebra.basis[i] for i in range(algebra.dimension)]
    pair_idx = [(i, j) for i in range(len(basis)) for j in range(len(basis))]
    if len(pair_idx) > 12:
        sel = rng.choice(len(pair_idx), size=12, replace=False)
        pair_idx = [pair_idx[int(s)] for s in sel]

    if "affine" in identities:
        worst, block = 0.0, cutoff
        for (i, j) in pair_idx:
            xm, ym = basis[i], basis[j]
            brk = xm @ ym - ym @ xm
            pairing = complex(np.trace(xm @ ym))
            for a in range(-mode_range, mode_range + 1):
                for b in range(-mode_range, mode_range + 1):
                    lhs = commutator(current(space, xm, a), current(space, ym, b))
                    rhs = current(space, brk, a + b)
                    if a + b == 0:
                        rhs = rhs + (a * level * pairing) * identity_operator(space)
                    resid = lhs - rhs
                    worst = max(worst, resid.max_protected_abs())
                    block = min(block, resid.protected_energy)
        reports.append(_report("affine", block, worst, tol))

    need_l = ("commutator" in identities) or ("virasoro" in identities)
    lmodes = {}
    if need_l:
        l_max = min(2 * mode_range, cutoff // 2)
        for m in range(-l_max, l_max + 1):
            lmodes[m] = sugawara(space, m, data)

    if "commutator" in identities:
        worst, block = 0.0, cutoff
        xm = basis[0]
        for m in range(-mode_range, mode_range + 1):
            for k in range(-mode_range, mode_range + 1):
                resid = commutator(lmodes[m], current(space, xm, k)) \
                    + float(k) * current(space, xm, m + k)
                worst = max(worst, resid.max_protected_abs())
                block = min(block, resid.protected_energy)
        reports.append(_report("commutator", block, worst, tol))

    if "virasoro" in identities:
        worst, block = 0.0, cutoff
        c_val = float(data.central_charge)
        for a in range(-mode_range, mode_range + 1):
            for b in range(-mode_range, mode_range + 1):
                if a + b not in lmodes and a != b:
                    continue
                resid = commutator(lmodes[a], lmodes[b])
                if a != b:
                    resid = resid - float(a - b) * lmodes[a + b]
                if a + b == 0:
                    central = c_val * a * (a * a - 1) / 12.0
                    resid = resid - central * identity_operator(space)
                worst = max(worst, resid.max_protected_abs())
                block = min(block, resid.protected_energy)
        reports.append(_report("virasoro", block, worst, tol))

    if "rotation" in identities:
        worst, block = 0.0, cutoff
        d_op = rotation_generator(space)
        xm = basis[0]
        for m in range(-mode_range, mode_range + 1):
            xop = current(space, xm, m)
            resid = commutator(d_op, xop) + float(m) * xop
            worst = max(worst, resid.max_protected_abs())
            block = min(block, resid.protected_energy)
        reports.append(_report("rotation", block, worst, tol))

    if "adjoint" in identities:
        worst, block = 0.0, cutoff
        for i in range(min(3, len(basis))):
            for m in range(0, mode_range + 1):
                xop = current(space, basis[i], m)
                resid = xop.adjoint() + current(space, basis[i], -m)
                worst = max(worst, resid.max_protected_abs())
                block = min(block, resid.protected_energy)
        reports.append(_report("adjoint", block, worst, tol))

    if "vacuum-cocycle" in identities and charge in (None, 0):
        worst = 0.0
        half = max(1, cutoff // 2)
        for _ in range(10):
            x = _random_polynomial(algebra, rng, half)
            y = _random_polynomial(algebra, rng, half)
            got = vacuum_cocycle_check(space, x, y)
            want = 1j * level * central_term_B(x, y)
            worst = max(worst, abs(got - want))
        reports.append(_report("vacuum-cocycle", 0, worst, max(tol, 1e-12)))

    return reports


def _random_polynomial(algebra: CompactSimpleAlgebra, rng, max_mode: int,
                       real_form: bool = True) -> FourierLoopElement:
    """Random finitely supported element; real-form by hermitian pairing."""
    coeffs: dict[int, np.ndarray] = {}
    modes = rng.integers(1, max_mode + 1, size=2)
    for k in modes:
        k = int(k)
        a = sum(rng.normal() * algebra.basis[i] + 1j * rng.normal() * algebra.basis[i]
                for i in range(algebra.dimension))
        coeffs[k] = coeffs.get(k, 0) + a
        if real_form:
            coeffs[-k] = coeffs.get(-k, 0) + (-a.conj().T)
    z = sum(rng.normal() * algebra.basis[i] for i in range(algebra.dimension))
    coeffs[0] = coeffs.get(0, 0) + z
    return FourierLoopElement(coeffs, algebra, real_form=real_form or None)
