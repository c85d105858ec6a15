"""Hitting and mixing analyzers."""

import math

import numpy as np
import pytest

from qwalk import (
    BOSON,
    ConvergenceError,
    HermitianOperator,
    basis_state,
    classical_hitting,
    classical_mixing_time,
    classical_stationary,
    extended_graph,
    generate_cycle,
    generate_erdos_renyi,
    generate_glued_tree,
    generate_hypercube,
    generate_path,
    hitting_scaling,
    permute_graph,
    quantum_hitting,
    quantum_mixing_time,
)


def _k2():
    return HermitianOperator([[0, 1], [1, 0]])


# -- hitting -------------------------------------------------------------


def test_k2_quantum_hitting():
    res = quantum_hitting(_k2(), 0, 1, 3.0, 0.01)
    assert math.isclose(res.efficiency, 1.0, abs_tol=1e-9)
    assert math.isclose(res.t_opt, math.pi / 2, abs_tol=1e-6)


def test_k2_classical_hitting_half():
    res = classical_hitting(generate_path(2), 0, 1, 50.0, 0.5)
    assert math.isclose(res.efficiency, 0.5, abs_tol=1e-6)


def test_hitting_validation():
    with pytest.raises(ValueError):
        quantum_hitting(_k2(), 0, 0, 3.0, 0.01)
    with pytest.raises(ValueError):
        quantum_hitting(_k2(), 0, 1, 3.0, 1.0)  # dt > t_max / 10


def test_hitting_relabeling_invariance():
    g = generate_erdos_renyi(7, 0.5, seed=3)
    h = HermitianOperator.from_graph(g)
    res = quantum_hitting(h, 0, 6, 20.0, 0.02)
    perm = list(np.random.default_rng(0).permutation(7))
    gp = permute_graph(g, perm)
    resp = quantum_hitting(HermitianOperator.from_graph(gp),
                           perm[0], perm[6], 20.0, 0.02)
    assert abs(res.efficiency - resp.efficiency) < 1e-9
    assert abs(res.t_opt - resp.t_opt) < 1e-6


def test_glued_tree_mirror_symmetry():
    g = generate_glued_tree(5)
    h = HermitianOperator.from_graph(g)
    fwd = quantum_hitting(h, 0, g.n - 1, 20.0, 0.05)
    bwd = quantum_hitting(h, g.n - 1, 0, 20.0, 0.05)
    assert np.abs(fwd.profile - bwd.profile).max() < 1e-9


def test_hitting_scaling_needs_two_sizes():
    res = quantum_hitting(_k2(), 0, 1, 3.0, 0.01)
    with pytest.raises(ValueError):
        hitting_scaling({2: res})


def test_ecube_sweep_classical_drops_quantum_does_not():
    q_eff, c_eff = [], []
    for dim in (1, 2, 3, 4):
        base = generate_hypercube(dim)
        basis, ext = extended_graph(base, BOSON)
        s, t = basis.index(0, 0), basis.index(base.n - 1, base.n - 1)
        q = quantum_hitting(HermitianOperator.from_graph(ext), s, t, 20.0, 0.01)
        c = classical_hitting(ext, s, t, 1000.0, 1.0)
        q_eff.append(q.efficiency)
        c_eff.append(c.efficiency)
    assert all(b < a for a, b in zip(c_eff, c_eff[1:]))  # strictly decreasing
    assert min(q_eff) > 0.9  # mirror-symmetric transfer stays near-perfect
    assert q_eff[-1] / c_eff[-1] > 100


def test_hypercube_pair_transfer_is_perfect():
    base = generate_hypercube(4)
    basis, ext = extended_graph(base, BOSON)
    h = HermitianOperator.from_graph(ext)
    res = quantum_hitting(h, basis.index(0, 0), basis.index(15, 15), 3.0, 0.01)
    assert math.isclose(res.efficiency, 1.0, abs_tol=1e-9)
    assert math.isclose(res.t_opt, math.pi / 2, abs_tol=1e-6)


# -- mixing --------------------------------------------------------------


def test_quantum_mixing_h0_immediate():
    h = HermitianOperator(np.zeros((3, 3)))
    res = quantum_mixing_time(h, basis_state(3, 0), 0.25, 10.0, 0.1)
    assert math.isclose(res.t_mix, 0.1)


def test_classical_mixing_k2_closed_form():
    # TV(t) = exp(-2 t) / 2 for start (1, 0), so the settle time is
    # ln(1 / (2 eps)) / 2 up to grid resolution
    eps, dt = 0.1, 0.001
    res = classical_mixing_time(generate_path(2), [1.0, 0.0], eps, 10.0, dt)
    assert abs(res.t_mix - math.log(1 / (2 * eps)) / 2) <= dt + 1e-9


def test_classical_mixing_from_stationary_immediate():
    g = generate_cycle(6)
    res = classical_mixing_time(g, classical_stationary(g), 0.5, 10.0, 0.1)
    assert math.isclose(res.t_mix, 0.1)


def test_mixing_eps_monotone():
    g = generate_erdos_renyi(8, 0.4, seed=5)
    p0 = np.zeros(8)
    p0[0] = 1.0
    t_small = classical_mixing_time(g, p0, 0.05, 100.0, 0.01).t_mix
    t_large = classical_mixing_time(g, p0, 0.3, 100.0, 0.01).t_mix
    assert t_small >= t_large


def test_mixing_nonconvergence_raises():
    g = generate_cycle(12)
    p0 = np.zeros(12)
    p0[0] = 1.0
    with pytest.raises(ConvergenceError):
        classical_mixing_time(g, p0, 0.01, 1.0, 0.05)


def test_mixing_validation():
    h = HermitianOperator(np.zeros((2, 2)))
    with pytest.raises(ValueError):
        quantum_mixing_time(h, basis_state(2, 0), 1.5, 10.0, 0.1)
    with pytest.raises(ValueError):
        quantum_mixing_time(h, basis_state(2, 0), 0.25, 1.0, 0.5)


def test_quantum_mixing_stays_below_rule():
    h = HermitianOperator.from_graph(generate_cycle(5))
    res = quantum_mixing_time(h, basis_state(5, 0), 0.25, 100.0, 0.05)
    after = res.trace[res.times >= res.t_mix - 1e-12]
    assert np.all(after <= res.epsilon + 1e-12)
    # the point just before t_mix (if any) was above epsilon
    before = res.trace[res.times < res.t_mix - 1e-12]
    if len(before):
        assert before[-1] > res.epsilon


def test_enet_quantum_halves_classical():
    base = generate_cycle(20)
    basis, ext = extended_graph(base, BOSON)
    start = basis.index(0, 0)
    h = HermitianOperator.from_graph(ext)
    qt = quantum_mixing_time(h, basis_state(ext.n, start), 0.25, 200.0, 0.05).t_mix
    p0 = np.zeros(ext.n)
    p0[start] = 1.0
    ct = classical_mixing_time(ext, p0, 0.25, 400.0, 0.05).t_mix
    assert qt <= 0.6 * ct
