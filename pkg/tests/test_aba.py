import random

import pytest

from helpers import draw_q, draw_w, draw_z

from bethelab.aba import (
    DOWN,
    UP,
    ZERO,
    ModelParams,
    PoleEncountered,
    RedundantFactorZero,
    StateVector,
    asymptotic_check,
    bethe_equations_residual,
    bethe_vector,
    cyclic_check,
    exchange_check,
    magnetisation,
    monodromy_apply,
    recurrence_check,
    renormalised_vector,
    s_prime_apply,
    scattering_check,
    spin_reversal_apply,
    state_from_str,
    state_index,
    state_str,
    theta2,
    transfer1_apply,
    transfer2_apply,
    vacuum,
    vacuum_a,
    vacuum_d,
    vector_laurent_coefficients,
)
from bethelab.field import RAT, Scalar, brk
from bethelab.rmatrix import r22


def params_n(n, q=RAT(2), w=None, twist="pi"):
    if w is None:
        w = [RAT(k + 2, 1) for k in range(n)]
    return ModelParams(n, q, w, twist)


def random_vector(rng, params, n_terms=4):
    entries = {}
    for _ in range(n_terms):
        key = tuple(rng.randint(0, 2) for _ in range(params.n))
        entries[key] = params.sc(RAT(rng.randint(-9, 9), rng.randint(1, 9)))
    return StateVector(params.n, entries)


# ---------------------------------------------------------------------
# basics
# ---------------------------------------------------------------------

def test_state_helpers():
    key = state_from_str("U0D")
    assert key == (UP, ZERO, DOWN)
    assert state_str(key) == "U0D"
    assert magnetisation(key) == 0
    assert state_index((0, 1, 2)) == 5


def test_monodromy_single_site_b():
    p = params_n(1, w=[RAT(1)])
    v = monodromy_apply("B", p.sc(p.w[0]), p, vacuum(p))
    assert v.entries == {(ZERO,): p.vw.s}
    assert v.sector == 0


def test_vacuum_eigenvalues_and_c_annihilation():
    rng = random.Random(31)
    for n in (1, 2, 3):
        q = draw_q(rng)
        p = ModelParams(n, q, draw_w(rng, n, q))
        z = p.sc(draw_z(rng))
        av = monodromy_apply("A", z, p, vacuum(p))
        assert av == vacuum(p).scale(vacuum_a(z, p))
        dv = monodromy_apply("D", z, p, vacuum(p))
        assert dv == vacuum(p).scale(vacuum_d(z, p))
        assert monodromy_apply("C", z, p, vacuum(p)).is_zero()


def test_b_operators_commute_on_random_vectors():
    rng = random.Random(55)
    p = params_n(3)
    v = random_vector(rng, p)
    z1, z2 = p.sc(RAT(3, 7)), p.sc(RAT(8, 5))
    b12 = monodromy_apply("B", z1, p, monodromy_apply("B", z2, p, v))
    b21 = monodromy_apply("B", z2, p, monodromy_apply("B", z1, p, v))
    assert b12 == b21


def test_transfer2_commute_on_random_vectors():
    rng = random.Random(56)
    p = params_n(2)
    v = random_vector(rng, p)
    z1, z2 = p.sc(RAT(4, 3)), p.sc(RAT(9, 2))
    t12 = transfer2_apply(z1, p, transfer2_apply(z2, p, v))
    t21 = transfer2_apply(z2, p, transfer2_apply(z1, p, v))
    assert t12 == t21


def test_transfer2_single_site_against_partial_trace():
    p = params_n(1, w=[RAT(3, 2)])
    z = p.sc(RAT(7, 4))
    m = r22(z * p.sc(p.w[0]).inv(), p.vw)
    omega = (-1, 1, -1)
    for site in range(3):
        basis = StateVector(1, {(site,): p.vw.one})
        got = transfer2_apply(z, p, basis)
        for out in range(3):
            acc = Scalar(0, d=p.d)
            for a in range(3):
                term = m.entry(a, out, a, site)
                acc = acc + (term if omega[a] == 1 else -term)
            want = got.entries.get((out,))
            if want is None:
                assert acc.is_zero()
            else:
                assert acc == want


def test_bethe_vector_n1():
    p = params_n(1, w=[RAT(5, 3)])
    assert bethe_vector(p).entries == {(ZERO,): p.vw.s}
    assert renormalised_vector(p).entries == {(ZERO,): p.vw.one}


def test_bethe_vector_sector_zero():
    rng = random.Random(77)
    for n in (2, 3, 4, 5, 6):
        q = draw_q(rng)
        p = ModelParams(n, q, draw_w(rng, n, q))
        v = bethe_vector(p)
        assert not v.is_zero()
        assert all(magnetisation(k) == 0 for k in v.entries)


def test_transfer2_homogeneous_at_unit_argument_is_twisted_shift():
    # T2(z=1 | w=1) = ([q][q^2])^N S'
    rng = random.Random(78)
    for n in (2, 3):
        q = draw_q(rng)
        p = ModelParams(n, q, [RAT(1)] * n)
        scale = p.sc((brk(q) * brk(q * q)) ** n)
        for _ in range(3):
            key = tuple(rng.randint(0, 2) for _ in range(n))
            v = StateVector(n, {key: p.vw.one})
            assert transfer2_apply(p.vw.one, p, v) == \
                s_prime_apply(v).scale(scale)


def test_renormalised_n3_closed_form():
    # representative components at N = 3:
    #   psi~_{U0D} = [q][q w2/w1][q w3/w2]
    #   psi~_{000} = [q]^2 [q^2] + [w2/w1][w3/w1][w3/w2]
    rng = random.Random(101)
    for _ in range(3):
        q = draw_q(rng)
        w = draw_w(rng, 3, q)
        p = ModelParams(3, q, w)
        v = renormalised_vector(p)
        want_u0d = p.sc(brk(q) * brk(q * w[1] / w[0]) * brk(q * w[2] / w[1]))
        assert v.entries.get((UP, ZERO, DOWN)) == want_u0d
        want_000 = p.sc(brk(q) ** 2 * brk(q * q)
                        + brk(w[1] / w[0]) * brk(w[2] / w[0]) * brk(w[2] / w[1]))
        assert v.entries.get((ZERO, ZERO, ZERO)) == want_000


def test_renormalised_homogeneous_n3_matches_singlet_pattern():
    # w = (1,1,1): components equal [q]^3 times (1, -1, x) pattern
    q = RAT(2)
    p = ModelParams(3, q, [RAT(1)] * 3)
    v = renormalised_vector(p)
    cube = p.sc(brk(q) ** 3)
    x = q + 1 / q
    assert v.entries.get(state_from_str("U0D")) == cube
    assert v.entries.get(state_from_str("D0U")) == cube
    assert v.entries.get(state_from_str("DU0")) == -cube
    assert v.entries.get(state_from_str("0DU")) == -cube
    assert v.entries.get(state_from_str("UD0")) == -cube
    assert v.entries.get(state_from_str("0UD")) == -cube
    assert v.entries.get(state_from_str("000")) == cube * p.sc(x)
    assert len(v.entries) == 7


def test_renormalised_divisor_zero_raises():
    q = RAT(2)
    with pytest.raises(RedundantFactorZero):
        renormalised_vector(ModelParams(2, q, [RAT(2), RAT(4)]))  # w2 = q w1


# ---------------------------------------------------------------------
# eigenvalue structure
# ---------------------------------------------------------------------

def test_theta2_examples():
    p = params_n(1, w=[RAT(4, 7)])
    assert theta2(p.sc(p.w[0]), p) == p.sc(brk(RAT(2)) * brk(RAT(4)))
    assert theta2(p.sc(2 * p.w[0]), p).is_zero()  # z = q w_1
    p2 = ModelParams(2, RAT(2), [RAT(1), RAT(1)])
    assert theta2(p2.sc(RAT(1)), p2) == p2.sc(RAT(-2025, 64))


def test_transfer_eigen_relations():
    rng = random.Random(919)
    for n in (1, 2, 3, 4):
        q = draw_q(rng)
        p = ModelParams(n, q, draw_w(rng, n, q))
        psi = bethe_vector(p)
        for _ in range(2):
            z = p.sc(draw_z(rng))
            assert transfer2_apply(z, p, psi) == psi.scale(theta2(z, p))
            assert transfer1_apply(z, p, psi).is_zero()


def test_transfer1_untwisted_vacuum():
    p = params_n(2, twist="0")
    z = p.sc(RAT(5, 3))
    got = transfer1_apply(z, p, vacuum(p))
    assert got == vacuum(p).scale(vacuum_a(z, p) + vacuum_d(z, p))


def test_fusion_identity_on_random_vectors():
    rng = random.Random(13)
    for n in (1, 2, 3):
        q = draw_q(rng)
        p = ModelParams(n, q, draw_w(rng, n, q))
        v = random_vector(rng, p)
        z = p.sc(draw_z(rng))
        lhs = transfer1_apply(z, p,
                              transfer1_apply(z * p.sc(q), p, v))
        scal = p.vw.one
        for w in p.w:
            scal = scal * p.vw.bracket(p.sc(q * w) * z.inv())
            scal = scal * p.vw.bracket(z * p.sc(q * q / w))
        if n % 2 == 0:
            scal = -scal
        assert lhs + v.scale(scal) == transfer2_apply(z, p, v)


def test_bethe_residuals_zero_at_roots():
    rng = random.Random(14)
    for n in (1, 2, 3, 4):
        q = draw_q(rng)
        p = ModelParams(n, q, draw_w(rng, n, q))
        res = bethe_equations_residual([p.sc(w) for w in p.w], p)
        assert all(r.is_zero() for r in res)


def test_bethe_residual_n1_structure():
    # single equation [q z/w]/[z/(q w)] = -1, satisfied at z = w
    p = params_n(1, w=[RAT(3)])
    z = p.sc(RAT(3))
    num = p.vw.bracket(z * p.sc(p.q / p.w[0]))
    den = p.vw.bracket(z * p.sc(1 / (p.q * p.w[0])))
    assert num / den == p.sc(-1)
    assert bethe_equations_residual([z], p)[0].is_zero()


def test_bethe_residuals_nonzero_off_shell():
    p = params_n(2, w=[RAT(3), RAT(7)])
    res = bethe_equations_residual([p.sc(RAT(4)), p.sc(RAT(9))], p)
    assert any(not r.is_zero() for r in res)


def test_bethe_residual_pole():
    p = params_n(1, w=[RAT(1)])
    with pytest.raises(PoleEncountered):
        bethe_equations_residual([p.sc(p.q)], p)  # z = q w_1


# ---------------------------------------------------------------------
# qKZ-type relations
# ---------------------------------------------------------------------

def test_exchange_relation():
    rng = random.Random(2020)
    for n in (2, 3):
        q = draw_q(rng)
        p = ModelParams(n, q, draw_w(rng, n, q))
        for j in range(1, n):
            assert exchange_check(j, p)


def test_exchange_explicit_instance():
    p = ModelParams(2, RAT(2), [RAT(3), RAT(5)])
    assert exchange_check(1, p)


def test_exchange_equal_arguments_is_identity_point():
    # w_j = w_{j+1}: Rhat(1) = [q][q^2] Id, both sides [q][q^2] |psi~>
    q = RAT(3)
    p = ModelParams(3, q, [RAT(5), RAT(5), RAT(2)])
    assert exchange_check(1, p)


def test_cyclic_relation():
    rng = random.Random(2021)
    for n in (1, 2, 3):
        q = draw_q(rng)
        p = ModelParams(n, q, draw_w(rng, n, q))
        assert cyclic_check(p)


def test_recurrence_relation():
    rng = random.Random(2022)
    for n in (3, 4):
        q = draw_q(rng)
        p = ModelParams(n, q, draw_w(rng, n, q))
        assert recurrence_check(p)


def test_asymptotic_relations():
    rng = random.Random(2023)
    for n in (2, 3):
        q = draw_q(rng)
        p = ModelParams(n, q, draw_w(rng, n, q))
        for j in range(1, n + 1):
            assert asymptotic_check(j, "inf", p)
            assert asymptotic_check(j, "zero", p)


def test_scattering_relation():
    rng = random.Random(2024)
    for n in (2, 3):
        q = draw_q(rng)
        p = ModelParams(n, q, draw_w(rng, n, q))
        for j in range(1, n + 1):
            assert scattering_check(j, p)


def test_scattering_homogeneous_reduces_to_shift():
    p = ModelParams(3, RAT(2), [RAT(1)] * 3)
    assert scattering_check(2, p)


def test_degree_width_bound_and_attainment():
    rng = random.Random(2025)
    for n in (2, 3):
        q = draw_q(rng)
        p = ModelParams(n, q, draw_w(rng, n, q))
        for j in range(1, n + 1):
            polys = vector_laurent_coefficients(p, j, -(n - 1), 2 * (n - 1))
            widths = [poly.degree_width() for poly in polys.values()
                      if not poly.is_zero()]
            assert max(widths) == 2 * (n - 1)


def test_spin_reversal_symmetry():
    rng = random.Random(2026)
    for n in (1, 2, 3, 4, 5):
        q = draw_q(rng)
        p = ModelParams(n, q, draw_w(rng, n, q))
        v = renormalised_vector(p)
        assert spin_reversal_apply(v) == v


def test_s_prime_on_basis():
    p = params_n(3)
    v = StateVector(3, {state_from_str("00U"): p.vw.one})
    got = s_prime_apply(v)
    assert got.entries == {state_from_str("U00"): -p.vw.one}
    w = StateVector(3, {state_from_str("U00"): p.vw.one})
    assert s_prime_apply(w).entries == {state_from_str("0U0"): p.vw.one}


def test_json_dump_shape():
    p = params_n(1, w=[RAT(1)])
    v = bethe_vector(p)
    obj = v.to_json_dict(p)
    assert obj["twist"] == "pi" and obj["n"] == 1
    assert obj["components"][0]["state"] == "0"
    assert obj["components"][0]["value"]["b"] == "1/1"
