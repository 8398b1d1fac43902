import itertools

import numpy as np
import pytest
import scipy.sparse.linalg

from loopnet import affine_data, fock, lie, loops
from loopnet.errors import CapacityError, WindowError
from loopnet.loops import FourierLoopElement, ScalarField

from conftest import random_antihermitian


@pytest.fixture(scope="module")
def space6(su2):
    return fock.build_fock(2, 6)


@pytest.fixture(scope="module")
def level1_su2(su2):
    return affine_data.level_data(su2, 1)


def brute_force_dimension(n, cutoff):
    """Independent state count: explicit enumeration over all mode subsets."""
    modes = [(k, j) for k in range(-cutoff, cutoff + 1) for j in range(n)]
    count = 0
    # iterate over subsets of "excited" modes: particles at k >= 0, holes at k < 0
    excitable = [(abs(k), (k, j)) for k, j in modes]
    for size in range(len(excitable) + 1):
        for combo in itertools.combinations(excitable, size):
            if sum(e for e, _ in combo) <= cutoff:
                count += 1
    return count


def test_build_fock_dimensions(su2):
    assert fock.build_fock(2, 0).dim == 4
    got = fock.build_fock(2, 1).dim
    assert got == brute_force_dimension(2, 1)
    assert fock.build_fock(2, 2).dim == brute_force_dimension(2, 2)


def test_build_fock_ordering_and_vacuum(space6):
    assert np.all(np.diff(space6.energies) >= 0)
    iv = space6.vacuum_index
    assert space6.energies[iv] == 0
    assert space6.charges[iv] == 0
    assert space6.occupations[iv] == ((), ())
    # energy-0 subspace is the 2^n zero-mode exterior algebra
    assert int(np.sum(space6.energies == 0)) == 4


def test_capacity_error():
    with pytest.raises(CapacityError) as err:
        fock.build_fock(2, 6, dim_limit=100)
    assert err.value.estimate == 1520


def test_capacity_env_override(monkeypatch):
    monkeypatch.setenv("LOOPNET_DIM_LIMIT", "10")
    with pytest.raises(CapacityError):
        fock.build_fock(2, 2)
    monkeypatch.setenv("LOOPNET_DIM_LIMIT", "100000")
    assert fock.build_fock(2, 2).dim > 10


def test_charge_sector_restriction(su2):
    full = fock.build_fock(2, 3)
    sectors = [fock.build_fock(2, 3, charge=q) for q in range(-5, 8)]
    assert sum(s.dim for s in sectors) == full.dim


def test_current_window_error(space6, su2):
    with pytest.raises(WindowError):
        fock.current(space6, su2.basis[0], 7)


def test_zero_mode_annihilates_vacuum(space6, su2):
    for x in (su2.basis[0], np.array([[0, 1], [0, 0]], complex)):
        op = fock.current(space6, x, 0)
        col = op.matrix[:, space6.vacuum_index]
        assert np.abs(col.toarray()).max() == 0


def test_level_one_relation_ladder(space6):
    e = np.array([[0, 1], [0, 0]], complex)
    f = np.array([[0, 0], [1, 0]], complex)
    h = e @ f - f @ e
    lhs = fock.commutator(fock.current(space6, e, 1), fock.current(space6, f, -1))
    rhs = fock.current(space6, h, 0) + complex(np.trace(e @ f)) * \
        fock.identity_operator(space6)
    assert (lhs - rhs).max_protected_abs() < 1e-12


def test_current_adjoint(space6, su2):
    for m in (0, 1, 2):
        op = fock.current(space6, su2.basis[1], m)
        resid = op.adjoint() + fock.current(space6, su2.basis[1], -m)
        assert resid.max_protected_abs() < 1e-12


def test_identity_suite_su2(space6, su2):
    reports = fock.identity_reports(2, 6, tol=1e-10)
    assert {r["identity"] for r in reports} == {
        "affine", "commutator", "virasoro", "rotation", "adjoint",
        "vacuum-cocycle"}
    for r in reports:
        assert r["pass"], r


def test_identity_suite_su3_sector():
    # the charge-0 sector cuts the cutoff-6 dimension to a tractable size
    # (1867 states) while keeping every identity exact on protected columns
    reports = fock.identity_reports(3, 6, charge=0, mode_range=1, tol=1e-10)
    for r in reports:
        assert r["pass"], r


def test_rotation_commutator_sign(space6, su2):
    d = fock.rotation_generator(space6)
    x1 = fock.current(space6, su2.basis[0], 1)
    resid = fock.commutator(d, x1) + 1.0 * x1
    assert resid.max_protected_abs() < 1e-12


def test_sugawara_window(space6, level1_su2):
    with pytest.raises(WindowError):
        fock.sugawara(space6, 4, level1_su2)


def test_central_charge_vacuum_expectation(space6, level1_su2):
    l2 = fock.sugawara(space6, 2, level1_su2)
    lm2 = fock.sugawara(space6, -2, level1_su2)
    comm = fock.commutator(l2, lm2)
    iv = space6.vacuum_index
    assert comm.matrix[iv, iv] == pytest.approx(0.5, abs=1e-10)


def test_l0_spectrum_per_sector(space6, level1_su2):
    l0 = fock.sugawara(space6, 0, level1_su2)
    dense = l0.dense()
    assert np.abs(dense - dense.conj().T).max() < 1e-12
    mins = {}
    for q in (0, 1, -1, 2):
        idx = np.nonzero(space6.charges == q)[0]
        mins[q] = np.linalg.eigvalsh(dense[np.ix_(idx, idx)]).min()
    assert mins[0] == pytest.approx(0.0, abs=1e-10)
    assert mins[1] == pytest.approx(0.25, abs=1e-10)
    assert mins[-1] == pytest.approx(0.25, abs=1e-10)
    assert mins[2] == pytest.approx(0.0, abs=1e-10)


def test_l0_one_particle_weight(space6, level1_su2):
    l0 = fock.sugawara(space6, 0, level1_su2)
    idx = [i for i in range(space6.dim)
           if space6.occupations[i] == (((0, 0),), ())]
    col = l0.matrix[:, idx[0]].toarray().ravel()
    assert col[idx[0]] == pytest.approx(0.25, abs=1e-12)


def test_operator_norm_estimate(space6, su2, level1_su2):
    # || pi(X) xi ||_t <= sqrt(2(l+g)) |X|_{|t|+1/2} || xi ||_{t+1/2}
    rng = np.random.default_rng(8)
    const = np.sqrt(2.0 * (1 + 2))
    energies = space6.energies
    for _ in range(25):
        a = random_antihermitian(su2, rng)
        b = random_antihermitian(su2, rng)
        x = FourierLoopElement({0: a, 2: 0.5 * b, -2: -0.5 * b.conj().T}, su2,
                               real_form=True)
        px = fock.pi_element(space6, x)
        xi = rng.normal(size=space6.dim) + 1j * rng.normal(size=space6.dim)
        xi[energies > space6.cutoff - 2] = 0.0
        v = px.matrix @ xi
        for t in (0.0, 1.0):
            lhs = np.linalg.norm((1.0 + energies) ** t * v)
            rhs = const * loops.sobolev_norm(x, t + 0.5) * \
                np.linalg.norm((1.0 + energies) ** (t + 0.5) * xi)
            assert lhs <= rhs + 1e-9


def test_stress_tensor_bound(space6, level1_su2):
    # ||(1+L0)^k L_n xi|| <= sqrt(c/2) (1+|n|)^{k+3/2} ||(1+L0)^{k+1} xi||
    rng = np.random.default_rng(9)
    l0 = fock.sugawara(space6, 0, level1_su2).dense()
    one_plus = l0 + np.eye(space6.dim)
    for n in (-2, -1, 1, 2):
        ln = fock.sugawara(space6, n, level1_su2)
        for _ in range(10):
            xi = rng.normal(size=space6.dim) + 1j * rng.normal(size=space6.dim)
            xi[space6.energies > space6.cutoff - abs(n) - 1] = 0.0
            v = ln.matrix @ xi
            for k in (0, 1):
                lhs = np.linalg.norm(np.linalg.matrix_power(one_plus, k) @ v)
                rhs = np.sqrt(0.5) * (1 + abs(n)) ** (k + 1.5) * \
                    np.linalg.norm(np.linalg.matrix_power(one_plus, k + 1) @ xi)
                assert lhs <= rhs + 1e-9


def test_heat_contraction_bound(su2):
    # ||[x(m), e^{-eps d}]|| <= 2 sqrt(l+g) (1+|m|)^{3/2} ||X||_F
    space = fock.build_fock(2, 4)
    d = np.asarray(space.energies, dtype=float)
    for eps in (0.05, 0.3, 1.0):
        e_heat = np.diag(np.exp(-eps * d))
        for m in (-2, 1, 3):
            x = su2.basis[0]
            xm = fock.current(space, x, m).dense()
            comm = xm @ e_heat - e_heat @ xm
            bound = 2.0 * np.sqrt(3.0) * (1 + abs(m)) ** 1.5 * np.linalg.norm(x)
            assert np.linalg.norm(comm, 2) <= bound + 1e-9


def test_vacuum_cocycle_examples(space6, su2):
    e = np.array([[0, 1], [0, 0]], complex)
    f = np.array([[0, 0], [1, 0]], complex)
    x = FourierLoopElement({1: e, -1: f}, su2)       # constants pair to zero
    y = FourierLoopElement({0: su2.basis[2]}, su2)
    assert abs(fock.vacuum_cocycle_check(space6, y, y)) < 1e-12
    xe = FourierLoopElement({1: e}, su2)
    yf = FourierLoopElement({-1: f}, su2)
    got = fock.vacuum_cocycle_check(space6, xe, yf)
    assert got == pytest.approx(1j * loops.central_term_B(xe, yf), abs=1e-12)
    assert got == pytest.approx(complex(np.trace(e @ f)), abs=1e-12)
    # antisymmetry
    assert fock.vacuum_cocycle_check(space6, xe, yf) == pytest.approx(
        -fock.vacuum_cocycle_check(space6, yf, xe), abs=1e-12)


def test_vacuum_cocycle_random(space6, su2):
    rng = np.random.default_rng(10)
    for _ in range(50):
        x = fock._random_polynomial(su2, rng, 3)
        y = fock._random_polynomial(su2, rng, 3)
        got = fock.vacuum_cocycle_check(space6, x, y)
        want = 1j * loops.central_term_B(x, y)
        assert abs(got - want) <= 1e-12 * max(1.0, abs(want))


# ---------------------------------------------------------------------------
# Hilbert-Schmidt defect
# ---------------------------------------------------------------------------

def test_hs_defect_constant_loop():
    rep = fock.hs_defect({0: np.eye(2)}, 8)
    assert rep.fourier_value == 0.0
    assert rep.truncated_value == 0.0


def test_hs_defect_diagonal_phase_loop():
    data = {1: np.diag([1.0, 0.0]), -1: np.diag([0.0, 1.0])}
    for window in (2, 8):
        rep = fock.hs_defect(data, window)
        assert rep.fourier_value == pytest.approx(2.0, abs=1e-15)
        assert rep.truncated_value == pytest.approx(2.0, abs=1e-12)
        assert rep.tail_ok


def test_hs_defect_monotone_in_window(su2):
    gamma = loops.loop_from_factors(
        su2, [(su2.basis[0], lambda th: 0.9 * np.sin(th) + 0.3 * np.cos(2 * th))],
        512)
    data = loops.loop_fourier_coefficients(gamma)
    values = [fock.hs_defect(data, k).truncated_value for k in (2, 4, 8, 16, 64)]
    assert all(a <= b + 1e-12 for a, b in zip(values, values[1:]))
    full = fock.hs_defect(data, 64)
    assert full.truncated_value <= full.fourier_value + 1e-12
    assert full.relative_gap <= 1e-3


def test_hs_defect_tail_warning():
    data = {k: 0.1 * np.eye(2) for k in range(-6, 7)}
    rep = fock.hs_defect(data, 2)
    assert not rep.tail_ok


# ---------------------------------------------------------------------------
# Exponential implementers
# ---------------------------------------------------------------------------

def test_implement_exponential_zero(su2):
    space = fock.build_fock(2, 4)
    u = fock.implement_exponential(space, FourierLoopElement({}, su2))
    assert np.abs(u.dense() - np.eye(space.dim)).max() < 1e-14


def test_implement_exponential_window(su2):
    space = fock.build_fock(2, 4)
    a = su2.basis[0]
    x = FourierLoopElement({2: a, -2: a}, su2)
    with pytest.raises(WindowError):
        fock.implement_exponential(space, x)


def test_implement_exponential_first_order(su2):
    # e^{eps pi(X)} pi(Y) e^{-eps pi(X)} - pi(Y) - eps [pi(X), pi(Y)] = O(eps^2)
    space = fock.build_fock(2, 4)
    a = su2.basis[0]
    b = su2.basis[1]
    x = FourierLoopElement({1: 0.5 * a, -1: 0.5 * a}, su2)
    y = FourierLoopElement({1: 0.5 * b, -1: 0.5 * b}, su2)
    px = fock.pi_element(space, x).dense()
    py = fock.pi_element(space, y).dense()
    comm = px @ py - py @ px
    resids = []
    for eps in (1e-2, 1e-3):
        import scipy.linalg
        u = scipy.linalg.expm(eps * px)
        uinv = scipy.linalg.expm(-eps * px)
        d = u @ py @ uinv - py - eps * comm
        resids.append(np.linalg.norm(d, 2))
    ratio = resids[0] / resids[1]
    assert 60 < ratio < 140  # second-order scaling


def test_implement_exponential_scalar_part(su2):
    # vacuum expectation of the first-order defect is eps * i * B(X, Y)
    space = fock.build_fock(2, 6)
    a, b = su2.basis[0], su2.basis[1]
    x = FourierLoopElement({1: 0.4 * a, -1: 0.4 * a}, su2)
    y = FourierLoopElement({1: 0.3 * b, -1: 0.3 * b}, su2)
    got = fock.vacuum_cocycle_check(space, x, y)
    assert got == pytest.approx(1j * loops.central_term_B(x, y), abs=1e-12)


def test_adjoint_action_report(su2):
    space = fock.build_fock(2, 8, charge=0, dim_limit=40000)
    x = FourierLoopElement({1: 0.2 * su2.basis[0], -1: 0.2 * su2.basis[0]},
                           su2)
    y = FourierLoopElement({1: 0.25 * su2.basis[1], -1: 0.25 * su2.basis[1]},
                           su2)
    report = fock.adjoint_action_check(space, x, y, block_energy=1,
                                       tolerance=1e-3)
    assert report["identity"] == "adjoint-action"
    assert report["residual_max"] < 1e-3
    assert report["pass"]
