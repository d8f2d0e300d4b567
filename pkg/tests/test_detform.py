import random

import pytest

from helpers import draw_q, draw_w, draw_distinct

from bethelab.aba import ModelParams, PoleEncountered, transfer1_apply
from bethelab.asm import dwbc_partition_brute
from bethelab.detform import (
    CoincidentParameters,
    brute_scalar_product,
    component_from_b_reduction,
    f_fn,
    g_fn,
    ik_determinant,
    ik_or_asm_sum,
    partition_Z,
    partition_Z_via_ik,
    scalar_product_reduction_rhs,
    simple_component_direct,
    simple_component_even,
    simple_component_odd,
    slavnov,
)
from bethelab.field import RAT, brk
from bethelab.rmatrix import VertexWeights


def draw_params(rng, n, twist="pi"):
    q = draw_q(rng)
    return ModelParams(n, q, draw_w(rng, n, q), twist)


def draw_zeta(rng, params):
    # distinct from each other and from every w (the g-division poles)
    avoid = set(params.w) | {-x for x in params.w}
    return draw_distinct(rng, params.n, avoid=avoid)


# ---------------------------------------------------------------------
# f and g
# ---------------------------------------------------------------------

def test_f_example():
    vw = VertexWeights(RAT(2))
    assert f_fn(vw.sc(2), vw.sc(1), vw).is_zero()  # numerator [q w/z] = [1]


def test_g_example():
    vw = VertexWeights(RAT(2))
    assert g_fn(vw.sc(1), vw.sc(2), vw) == vw.one  # [q]/[2] = 1 at q = 2


def test_fg_pole():
    vw = VertexWeights(RAT(2))
    with pytest.raises(PoleEncountered):
        f_fn(vw.sc(3), vw.sc(3), vw)
    with pytest.raises(PoleEncountered):
        g_fn(vw.sc(3), vw.sc(-3), vw)


def test_f_product_generic():
    vw = VertexWeights(RAT(2))
    val = f_fn(vw.sc(3), vw.sc(5), vw) * f_fn(vw.sc(5), vw.sc(3), vw)
    assert val.is_rational()


# ---------------------------------------------------------------------
# Slavnov's formula
# ---------------------------------------------------------------------

def test_slavnov_n1_explicit():
    # S_1 = [q][q^2] independently of zeta (single flip in and out)
    p = ModelParams(1, RAT(2), [RAT(1)])
    for z in (RAT(3), RAT(7, 2)):
        got = slavnov([p.sc(p.w[0])], [p.sc(z)], p)
        assert got == p.vw.bq * p.vw.bq2
        assert got == brute_scalar_product([p.sc(p.w[0])], [p.sc(z)], p)


def test_slavnov_matches_operator_oracle():
    rng = random.Random(616)
    for n in (1, 2, 3, 4):
        p = draw_params(rng, n)
        zeta = draw_zeta(rng, p)
        roots = [p.sc(w) for w in p.w]
        zs = [p.sc(z) for z in zeta]
        assert slavnov(roots, zs, p) == brute_scalar_product(roots, zs, p)


def test_slavnov_reduction_to_ik():
    rng = random.Random(617)
    for n in (1, 2, 3, 4):
        p = draw_params(rng, n)
        zeta = draw_zeta(rng, p)
        roots = [p.sc(w) for w in p.w]
        zs = [p.sc(z) for z in zeta]
        assert slavnov(roots, zs, p) == scalar_product_reduction_rhs(zeta, p)


# ---------------------------------------------------------------------
# Izergin-Korepin determinant
# ---------------------------------------------------------------------

def test_ik_n1_is_c_weight():
    p = ModelParams(1, RAT(2), [RAT(3)])
    assert ik_determinant([RAT(7)], [RAT(3)], p) == p.vw.bq2


def test_ik_matches_brute():
    rng = random.Random(618)
    for n in (1, 2, 3, 4):
        p = draw_params(rng, n)
        zeta = draw_distinct(rng, n)
        w = draw_distinct(rng, n, avoid=zeta)
        got = ik_determinant(zeta, w, p)
        assert got == dwbc_partition_brute(zeta, w, p.vw)


def test_ik_symmetric_in_each_family():
    rng = random.Random(619)
    p = draw_params(rng, 3)
    zeta = list(draw_distinct(rng, 3))
    w = list(draw_distinct(rng, 3, avoid=zeta))
    base = ik_determinant(zeta, w, p)
    zeta2 = [zeta[1], zeta[0], zeta[2]]
    w2 = [w[0], w[2], w[1]]
    assert ik_determinant(zeta2, w, p) == base
    assert ik_determinant(zeta, w2, p) == base


def test_ik_coincident_raises_and_fallback_agrees():
    p = ModelParams(2, RAT(2), [RAT(3), RAT(5)])
    with pytest.raises(CoincidentParameters):
        ik_determinant([RAT(3), RAT(3)], [RAT(3), RAT(5)], p)
    got = ik_or_asm_sum([RAT(3), RAT(3)], [RAT(3), RAT(5)], p)
    assert got == dwbc_partition_brute([RAT(3), RAT(3)], [RAT(3), RAT(5)],
                                       p.vw)


# ---------------------------------------------------------------------
# partition function sum rule
# ---------------------------------------------------------------------

def test_partition_n1_is_one():
    p = ModelParams(1, RAT(2), [RAT(4, 7)])
    assert partition_Z(p) == p.vw.one


def test_partition_matches_ik_route():
    rng = random.Random(620)
    for n in (1, 2, 3, 4):
        p = draw_params(rng, n)
        assert partition_Z(p) == partition_Z_via_ik(p)


def test_partition_homogeneous_sum_rule():
    # w = 1: Z = A_N(x^2) since psi~ = [q]^(N(N-1)/2) Phi and the square
    # norm of Phi is the ASM generating polynomial at t = x^2
    from bethelab.asm import gen_poly

    for n in (1, 2, 3):
        q = RAT(2)
        p = ModelParams(n, q, [RAT(1)] * n)
        x = q + 1 / q
        want = brk(q) ** (n * (n - 1)) * gen_poly(n).eval_at(x * x)
        assert partition_Z(p) == p.sc(want)


# ---------------------------------------------------------------------
# simple components
# ---------------------------------------------------------------------

def test_simple_component_even_matches_direct():
    rng = random.Random(621)
    for n in (2, 4):
        p = draw_params(rng, n)
        assert simple_component_even(p) == simple_component_direct(p)


def test_simple_component_odd_matches_direct():
    rng = random.Random(622)
    for n in (1, 3, 5):
        p = draw_params(rng, n)
        assert simple_component_odd(p) == simple_component_direct(p)


def test_simple_component_odd_n3_closed_form():
    rng = random.Random(623)
    p = draw_params(rng, 3)
    w = p.w
    want = p.sc(brk(p.q) * brk(p.q * w[1] / w[0]) * brk(p.q * w[2] / w[1]))
    # psi~_{U0D} = [q][q w2/w1][q w3/w2]; the closed form uses the
    # rearrangement [q w2/w1][q w3/w2] -> [q w2/w1][q w3/w2]
    assert simple_component_direct(p) == want
    assert simple_component_odd(p) == want


def test_simple_component_homogeneous_values():
    # w = 1: the component equals [q]^(N(N-1)/2) A_{N//2}(x^2)
    q = RAT(2)
    x = q + 1 / q
    from bethelab.asm import gen_poly

    for n in (2, 3, 4, 5):
        p = ModelParams(n, q, [RAT(1)] * n)
        got = simple_component_even(p) if n % 2 == 0 else \
            simple_component_odd(p)
        expect = p.sc(brk(q) ** (n * (n - 1) // 2)
                      * gen_poly(n // 2).eval_at(x * x))
        assert got == expect
        assert got == simple_component_direct(p)


def test_component_from_b_reduction():
    rng = random.Random(624)
    for n in (2, 4):
        p = draw_params(rng, n)
        assert component_from_b_reduction(p) == simple_component_direct(p)


# ---------------------------------------------------------------------
# orthogonality structure
# ---------------------------------------------------------------------

def test_orthogonality_on_ik_variety():
    # frozen rational point of the N=2 variety Z_IK(zeta; w) = 0 (found by
    # an exact grid search over small rationals): the off-shell state at
    # this zeta is orthogonal to the Bethe state, through all three routes
    p = ModelParams(2, RAT(2), [RAT(1), RAT(1, 5)])
    zeta = [RAT(2, 9), RAT(31, 82)]
    roots = [p.sc(w) for w in p.w]
    zs = [p.sc(z) for z in zeta]
    assert ik_determinant(zeta, p.w, p).is_zero()
    assert slavnov(roots, zs, p).is_zero()
    assert brute_scalar_product(roots, zs, p).is_zero()


def test_left_kernel_orthogonality():
    # <psi~(1/w)| is a left zero-eigenvector of T1, so it annihilates the
    # image of T1: every other transfer eigenvector is orthogonal to the
    # Bethe state.
    from bethelab.aba import StateVector, renormalised_vector

    rng = random.Random(625)
    for n in (2, 3):
        p = draw_params(rng, n)
        inv = p.with_w(tuple(1 / x for x in p.w))
        bra = renormalised_vector(inv)
        for _ in range(3):
            entries = {tuple(rng.randint(0, 2) for _ in range(n)):
                       p.sc(RAT(rng.randint(-5, 5), rng.randint(1, 5)))
                       for _ in range(4)}
            u = StateVector(n, entries)
            z = p.sc(RAT(rng.randint(1, 30), rng.randint(1, 30)))
            tu = transfer1_apply(z, p, u)
            acc = p.sc(0)
            for key, val in tu.entries.items():
                other = bra.entries.get(key)
                if other is not None:
                    acc = acc + val * other
            assert acc.is_zero()
