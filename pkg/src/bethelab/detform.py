"""Determinant formulas: Slavnov scalar products, the Izergin-Korepin
partition function, sum rules and closed-form simple components.

With the vacuum functions a(z) = prod_j [q z / w_j], d(z) = prod_j
[z / (q w_j)] and

    f(z, w) = [q w / z] / [w / z],      g(z, w) = [q] / [w / z],

Slavnov's formula evaluates <vac| prod C(z_j) prod B(zeta_j) |vac> for
on-shell roots z and arbitrary zeta as a single n x n determinant.  At the
explicit roots z = w it collapses (exactly, verified against the operator
oracle) to

    S_N = (-1)^N prod_j d(w_j) * Z_IK(zeta; w),

where Z_IK is the Izergin-Korepin determinant for the six-vertex model
with domain-wall boundaries and weights fa(z) = [q z], fb(z) = [q / z],
fc(z) = [q^2].  Coincident parameters make the determinant singular; those
points are evaluated through the alternating-sign-matrix sum instead
(never by a limit).
"""

from __future__ import annotations

from bethelab.aba import (
    ModelParams,
    PoleEncountered,
    monodromy_apply,
    renormalised_vector,
    vacuum,
    vacuum_a,
    vacuum_d,
)
from bethelab.asm import dwbc_partition_brute
from bethelab.field import Scalar, brk
from bethelab.linalg import det_bareiss
from bethelab.rmatrix import DOWN, UP, VertexWeights


class CoincidentParameters(ZeroDivisionError):
    """Repeated spectral parameters make the determinant formula singular;
    the ASM-sum route must be used instead."""


def f_fn(z: Scalar, w: Scalar, vw: VertexWeights) -> Scalar:
    """f(z, w) = [q w / z] / [w / z]."""
    den = vw.bracket(w * z.inv())
    if den.is_zero():
        raise PoleEncountered("f(z, w) has a pole at w = +-z")
    return vw.bracket(vw.sc(vw.q) * w * z.inv()) / den


def g_fn(z: Scalar, w: Scalar, vw: VertexWeights) -> Scalar:
    """g(z, w) = [q] / [w / z]."""
    den = vw.bracket(w * z.inv())
    if den.is_zero():
        raise PoleEncountered("g(z, w) has a pole at w = +-z")
    return vw.bq / den


def slavnov(roots, zeta, params: ModelParams) -> Scalar:
    """Slavnov determinant for <vac| prod C(roots) prod B(zeta) |vac>.

    `roots` must solve the Bethe equations at the twist of `params`
    (the explicit solution roots = w is the intended use); `zeta` is
    arbitrary but entrywise distinct from the roots.  A zero determinant
    is a legitimate value (orthogonal states), not an error.
    """
    vw = params.vw
    zs = [params.coerce(z) for z in roots]
    cs = [params.coerce(z) for z in zeta]
    n = len(zs)
    if len(cs) != n:
        raise ValueError("roots and zeta must have equal length")
    phase = -vw.one if params.twist == "pi" else vw.one
    pref = vw.one
    for j in range(n):
        pref = pref * vacuum_d(zs[j], params) * vacuum_d(cs[j], params)
    for j in range(n):
        for k in range(j):
            # k < j pairs: g(z_j, z_k) g(zeta_k, zeta_j)
            pref = pref * g_fn(zs[j], zs[k], vw) * g_fn(cs[k], cs[j], vw)
    for j in range(n):
        for k in range(n):
            pref = pref * f_fn(zs[j], cs[k], vw) / g_fn(zs[j], cs[k], vw)
    ratio = []  # a(zeta_k)/d(zeta_k) * prod_m f(zeta_k, z_m)/f(z_m, zeta_k)
    for k in range(n):
        dk = vacuum_d(cs[k], params)
        if dk.is_zero():
            raise PoleEncountered("d(zeta_k) = 0")
        r = vacuum_a(cs[k], params) / dk
        for m in range(n):
            r = r * f_fn(cs[k], zs[m], vw) / f_fn(zs[m], cs[k], vw)
        ratio.append(r)
    matrix = []
    for j in range(n):
        row = []
        for k in range(n):
            gjk = g_fn(zs[j], cs[k], vw)
            gkj = g_fn(cs[k], zs[j], vw)
            row.append(phase * gjk * gjk / f_fn(zs[j], cs[k], vw)
                       - gkj * gkj / f_fn(cs[k], zs[j], vw) * ratio[k])
        matrix.append(row)
    return pref * det_bareiss(matrix)


def brute_scalar_product(roots, zeta, params: ModelParams) -> Scalar:
    """<vac| prod_j C(roots_j) prod_j B(zeta_j) |vac> by operator sweeps."""
    v = vacuum(params)
    for z in reversed(list(zeta)):
        v = monodromy_apply("B", z, params, v)
    for z in reversed(list(roots)):
        v = monodromy_apply("C", z, params, v)
    amp = v.entries.get((UP,) * params.n)
    return amp if amp is not None else Scalar(0, d=params.d)


def ik_determinant(zeta, w, params: ModelParams) -> Scalar:
    """Izergin-Korepin determinant Z_IK(zeta; w):

        prod_{j,k} fa(zeta_j/w_k) fb(zeta_j/w_k)
        / prod_{j<k} [zeta_j/zeta_k][w_k/w_j]
        * det( fc / (fa fb) (zeta_j/w_k) ).
    """
    vw = params.vw
    zs = [params.coerce(z) for z in zeta]
    ws = [params.coerce(x) for x in w]
    n = len(zs)
    if len(ws) != n:
        raise ValueError("zeta and w must have equal length")
    qs = vw.sc(vw.q)
    den = vw.one
    for j in range(n):
        for k in range(j + 1, n):
            bz = vw.bracket(zs[j] * zs[k].inv())
            bw = vw.bracket(ws[k] * ws[j].inv())
            if bz.is_zero() or bw.is_zero():
                raise CoincidentParameters(
                    "coincident zeta or w; use the ASM-sum route")
            den = den * bz * bw
    pref = vw.one
    matrix = []
    for j in range(n):
        row = []
        for k in range(n):
            fa = vw.bracket(qs * zs[j] * ws[k].inv())
            fb = vw.bracket(qs * ws[k] * zs[j].inv())
            if fa.is_zero() or fb.is_zero():
                raise PoleEncountered("fa or fb vanishes where divided")
            pref = pref * fa * fb
            row.append(vw.bq2 / (fa * fb))
        matrix.append(row)
    return pref / den * det_bareiss(matrix)


def ik_or_asm_sum(zeta, w, params: ModelParams) -> Scalar:
    """Z_IK through the determinant, or the exact ASM sum when parameters
    coincide (the determinant formula is singular there)."""
    try:
        return ik_determinant(zeta, w, params)
    except CoincidentParameters:
        return dwbc_partition_brute(zeta, w, params.vw)


def partition_Z(params: ModelParams) -> Scalar:
    """Square norm Z(w) = sum_sigma psi~_sigma(1/w) psi~_sigma(w) of the
    renormalised vector under the real (bilinear) pairing."""
    v = renormalised_vector(params)
    inverted = params.with_w(tuple(1 / x for x in params.w))
    vi = renormalised_vector(inverted)
    acc = Scalar(0, d=params.d)
    for key, val in v.entries.items():
        other = vi.entries.get(key)
        if other is not None:
            acc = acc + val * other
    return acc


def partition_Z_via_ik(params: ModelParams) -> Scalar:
    """[q^2]^(-N) Z_IK(w; w), the determinant route to the same sum rule."""
    scale = params.vw.bq2 ** params.n
    return ik_or_asm_sum(params.w, params.w, params) / scale


def scalar_product_reduction_rhs(zeta, params: ModelParams) -> Scalar:
    """(-1)^N prod_j d(w_j) * Z_IK(zeta; w): the closed form of the
    on-shell scalar product S_N."""
    acc = ik_or_asm_sum(zeta, params.w, params)
    for w in params.w:
        acc = acc * vacuum_d(params.sc(w), params)
    return acc if params.n % 2 == 0 else -acc


def simple_component_even(params: ModelParams) -> Scalar:
    """Closed form of the component psi~_{U...U D...D} for N = 2n:

        ([q]/[q^2])^n prod_{j<k<=n} [q w_k/w_j]
        prod_{n<j<k} [q w_k/w_j] * Z_IK(w_1..w_n; w_{n+1}..w_{2n}).
    """
    if params.n % 2 != 0:
        raise ValueError("even-length component needs N = 2n")
    n = params.n // 2
    vw = params.vw
    acc = (vw.bq / vw.bq2) ** n
    w = params.w
    for block in (w[:n], w[n:]):
        for j in range(n):
            for k in range(j + 1, n):
                acc = acc * vw.sc(brk(params.q * block[k] / block[j]))
    return acc * ik_or_asm_sum(w[:n], w[n:], params)


def simple_component_odd(params: ModelParams) -> Scalar:
    """Closed form of psi~_{U...U 0 D...D} for N = 2n+1: strip the middle
    site's factors and reduce to the even formula without w_{n+1}."""
    if params.n % 2 != 1:
        raise ValueError("odd-length component needs N = 2n+1")
    n = params.n // 2
    vw = params.vw
    w = params.w
    mid = w[n]
    acc = vw.one
    for j in range(n):
        acc = acc * vw.sc(brk(params.q * mid / w[j]))
    for j in range(n + 1, 2 * n + 1):
        acc = acc * vw.sc(brk(params.q * w[j] / mid))
    if n == 0:
        return acc
    reduced = params.with_w(w[:n] + w[n + 1:])
    return acc * simple_component_even(reduced)


def simple_component_direct(params: ModelParams) -> Scalar:
    """The same component read off the renormalised vector itself."""
    n = params.n
    if n % 2 == 0:
        key = (UP,) * (n // 2) + (DOWN,) * (n // 2)
    else:
        key = (UP,) * (n // 2) + (1,) + (DOWN,) * (n // 2)
    val = renormalised_vector(params).entries.get(key)
    return val if val is not None else Scalar(0, d=params.d)


def component_from_b_reduction(params: ModelParams) -> Scalar:
    """System-size reduction of the even simple component: the length-n
    matrix element

        <all-down| prod_{j=1..2n} B(w_j | w_{n+1}..w_{2n}) |all-up>

    times prod_{j,k<=n} [w_j/(q w_k)] / ( ([q][q^2])^n prod_{j<k} [q w_j/w_k] ).
    """
    if params.n % 2 != 0:
        raise ValueError("size reduction applies to N = 2n")
    n = params.n // 2
    vw = params.vw
    w = params.w
    small = ModelParams(n, params.q, w[n:], params.twist)
    v = vacuum(small)
    for z in w:
        v = monodromy_apply("B", small.sc(z), small, v)
    amp = v.entries.get((DOWN,) * n)
    if amp is None:
        amp = Scalar(0, d=params.d)
    num = vw.one
    for j in range(2 * n):
        for k in range(n):
            num = num * vw.sc(brk(w[j] / (params.q * w[k])))
    den = vw.sc((brk(params.q) * brk(params.q * params.q)) ** n)
    for j in range(2 * n):
        for k in range(j + 1, 2 * n):
            den = den * vw.sc(brk(params.q * w[j] / w[k]))
    return num / den * amp
