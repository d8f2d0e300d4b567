"""Batch verification front end.

Subcommands:

    verify   --suite {rmatrix,aba,detform,asm,spinchain,all} [--n --q --w --seed]
    vector   --n --q --w          dump the Bethe vector as JSON
    singlet  --n                  dump the homogeneous singlet components
    ikdet    --n [--q --seed]     Izergin-Korepin vs. brute partition sum
    asm      {count,genpoly} --n  ASM enumeration

Rationals are written p/r on the command line (e.g. --q 5/2,
--w 1/1,3/2,7/3).  Random parameters are drawn with numerators and
denominators uniform in [1, 97], retried until they avoid the excluded
sets (q^4 = 1, squares that would degenerate the scalar extension,
coincident w, the singular lattices w_j = q^{+-1,+-2} w_k).  With a fixed
seed and configuration the JSON output is byte-identical across runs;
checks always appear sorted by name.  Exit codes: 0 all checks pass,
1 at least one failed, 2 configuration error.  The environment variable
BETHE_LAB_MAX_N caps sizes (default 6).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from bethelab import aba, asm, detform, spinchain
from bethelab.field import RAT, brk, is_rational_square, rat_str
from bethelab.rmatrix import (
    check_fusion_r22,
    check_ybe,
    crossing_transpose_check,
    inversion_check,
    magnetisation_pattern_check,
    permutation_check,
    rank_one_check,
)


class ConfigError(ValueError):
    pass


# -- seeded rational draws ----------------------------------------------


def draw_q(rng: random.Random) -> RAT:
    """q with [q], [q^2] != 0 and a valid scalar session constant."""
    while True:
        q = RAT(rng.randint(1, 97), rng.randint(1, 97))
        if q == 0 or q * q == 1:
            continue
        d = brk(q) * brk(q * q)
        if is_rational_square(d) or is_rational_square(-d):
            continue
        return q


def draw_w(rng: random.Random, n: int, q: RAT):
    """Pairwise distinct w avoiding the singular lattices q^{+-1,+-2} w_k."""
    while True:
        w = [RAT(rng.randint(1, 97), rng.randint(1, 97)) for _ in range(n)]
        ok = len(set(w)) == n
        if ok:
            for a in w:
                for b in w:
                    if a is not b and a / b in (q, 1 / q, q * q, 1 / (q * q)):
                        ok = False
        if ok:
            return tuple(w)


def draw_z(rng: random.Random) -> RAT:
    return RAT(rng.randint(1, 97), rng.randint(1, 97))


def draw_distinct(rng: random.Random, n: int, avoid=()):
    avoid = set(avoid)
    out = []
    while len(out) < n:
        z = RAT(rng.randint(1, 97), rng.randint(1, 97))
        if z not in avoid and z not in out:
            out.append(z)
    return tuple(out)


# -- config parsing -------------------------------------------------------


def parse_rat(text: str) -> RAT:
    try:
        return RAT(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad rational {text!r}") from exc


def parse_w_list(text: str):
    return tuple(parse_rat(t) for t in text.split(","))


def max_n_cap() -> int:
    return int(os.environ.get("BETHE_LAB_MAX_N", "6"))


def resolve_params(args, need_w=True):
    """Build ModelParams from flags, drawing anything missing from the seed."""
    n = args.n
    if n is None or n < 1:
        raise ConfigError("--n must be a positive integer")
    if n > max_n_cap():
        raise ConfigError(f"--n exceeds the cap {max_n_cap()} "
                          "(override with BETHE_LAB_MAX_N)")
    rng = random.Random(args.seed)
    q = parse_rat(args.q) if args.q else draw_q(rng)
    if args.w:
        w = parse_w_list(args.w)
        if len(w) != n:
            raise ConfigError("--w must list exactly n rationals")
    elif need_w:
        w = draw_w(rng, n, q)
    else:
        w = (RAT(1),) * n
    try:
        return aba.ModelParams(n, q, w), rng
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


# -- check registry -------------------------------------------------------


def _record(name, params, passed, **extra):
    rec = {"check": name, "params": params, "pass": bool(passed)}
    rec.update(extra)
    return rec


def _param_str(params: "aba.ModelParams"):
    return {"n": params.n, "q": rat_str(params.q),
            "w": [rat_str(x) for x in params.w]}


def checks_rmatrix(params, rng):
    q = params.q
    out = []
    z, w = draw_z(rng), draw_z(rng)
    for m in (1, 2):
        for n_ in (1, 2):
            for p_ in (1, 2):
                name = f"rmatrix.ybe_{m}{n_}{p_}"
                out.append((name, {"q": rat_str(q), "z": rat_str(z),
                                   "w": rat_str(w)},
                            lambda m=m, n_=n_, p_=p_, z=z, w=w:
                            check_ybe(m, n_, p_, z, w, q)))
    zr = draw_z(rng)
    out.append(("rmatrix.permutation_point", {"q": rat_str(q)},
                lambda: permutation_check(RAT(1), q)))
    out.append(("rmatrix.rank_one_point", {"q": rat_str(q)},
                lambda: rank_one_check(q)))
    out.append(("rmatrix.inversion", {"q": rat_str(q), "z": rat_str(zr)},
                lambda: inversion_check(zr, q)))
    out.append(("rmatrix.crossing", {"q": rat_str(q), "z": rat_str(zr)},
                lambda: crossing_transpose_check(zr, q)))
    out.append(("rmatrix.fusion_block", {"q": rat_str(q), "z": rat_str(zr)},
                lambda: check_fusion_r22(zr, q)))
    out.append(("rmatrix.magnetisation_pattern",
                {"q": rat_str(q), "z": rat_str(zr)},
                lambda: magnetisation_pattern_check(zr, q)))
    return out


def checks_aba(params, rng):
    out = []
    ps = _param_str(params)
    psi = aba.bethe_vector(params)
    zs = [params.sc(draw_z(rng)) for _ in range(3)]

    def eigen_t2():
        return all(aba.transfer2_apply(z, params, psi)
                   == psi.scale(aba.theta2(z, params)) for z in zs)

    def eigen_t1():
        return all(aba.transfer1_apply(z, params, psi).is_zero() for z in zs)

    def residuals():
        res = aba.bethe_equations_residual(
            [params.sc(x) for x in params.w], params)
        return all(r.is_zero() for r in res)

    out.append(("aba.transfer2_eigenvalue", ps, eigen_t2))
    out.append(("aba.transfer1_annihilates", ps, eigen_t1))
    out.append(("aba.bethe_residuals_zero", ps, residuals))
    out.append(("aba.cyclic_shift", ps, lambda: aba.cyclic_check(params)))
    for j in range(1, params.n):
        out.append((f"aba.exchange_{j}", ps,
                    lambda j=j: aba.exchange_check(j, params)))
    if params.n >= 3:
        out.append(("aba.recurrence", ps,
                    lambda: aba.recurrence_check(params)))
    for j in range(1, params.n + 1):
        out.append((f"aba.scattering_{j}", ps,
                    lambda j=j: aba.scattering_check(j, params)))
    if params.n == 1:
        out.append(("aba.bethe_vector_components", ps,
                    lambda: aba.bethe_vector(params).entries
                    == {(1,): params.vw.s},
                    {"value": aba.bethe_vector(params).to_json_dict(params)}))
    return out


def checks_detform(params, rng):
    out = []
    ps = _param_str(params)
    zeta = draw_distinct(rng, params.n,
                         avoid=set(params.w) | {-x for x in params.w})
    roots = [params.sc(x) for x in params.w]
    zs = [params.sc(z) for z in zeta]

    out.append(("detform.slavnov_vs_operator_oracle",
                dict(ps, zeta=[rat_str(z) for z in zeta]),
                lambda: detform.slavnov(roots, zs, params)
                == detform.brute_scalar_product(roots, zs, params)))
    out.append(("detform.slavnov_reduction_to_ik",
                dict(ps, zeta=[rat_str(z) for z in zeta]),
                lambda: detform.slavnov(roots, zs, params)
                == detform.scalar_product_reduction_rhs(zeta, params)))
    wb = draw_distinct(rng, params.n, avoid=zeta)
    out.append(("detform.ik_vs_brute",
                {"zeta": [rat_str(z) for z in zeta],
                 "w": [rat_str(x) for x in wb], "q": ps["q"]},
                lambda: detform.ik_determinant(zeta, wb, params)
                == asm.dwbc_partition_brute(zeta, wb, params.vw)))
    out.append(("detform.partition_sum_rule", ps,
                lambda: detform.partition_Z(params)
                == detform.partition_Z_via_ik(params)))
    name = ("detform.simple_component_even" if params.n % 2 == 0
            else "detform.simple_component_odd")
    fn = (detform.simple_component_even if params.n % 2 == 0
          else detform.simple_component_odd)
    out.append((name, ps,
                lambda: fn(params) == detform.simple_component_direct(params)))
    return out


def checks_asm(params, rng):
    n = params.n
    out = []
    poly = asm.gen_poly(n)
    out.append(("asm.counts_match_independent_generator", {"n": n},
                lambda: poly.total() == asm.count_asms_by_columns(n),
                {"value": poly.total()}))
    out.append(("asm.gen_poly", {"n": n},
                lambda: poly.degree() <= ((n - 1) ** 2) // 4,
                {"value": str(poly)}))
    out.append(("asm.bijection_roundtrip", {"n": n},
                lambda: all(asm.dwbc_to_asm(asm.asm_to_dwbc(a)) == a
                            for a in asm.generate_asms(n))))
    out.append(("asm.vertex_count_audit", {"n": n},
                lambda: all(asm.vertex_count_audit(a)
                            for a in asm.generate_asms(n))))
    return out


def checks_spinchain(params, rng):
    n = params.n
    q = params.q
    out = []
    ps = {"n": n, "q": rat_str(q)}
    if n >= 2:
        phi = spinchain.singlet(n)
        out.append(("spinchain.hamiltonian_annihilates_singlet", ps,
                    lambda: spinchain.hamiltonian_apply_poly(phi).is_zero()))
        out.append(("spinchain.twisted_translation_eigenvector", ps,
                    lambda: spinchain.twisted_translation_apply(phi)
                    == (phi if n % 2 == 1 else phi.scale(-1))))
        norm = spinchain.singlet_norm(phi)
        want = asm.gen_poly(n)
        coeffs = [0] * (4 * want.degree() + 1)
        for k, c in enumerate(want.coeffs):
            coeffs[4 * k] = c
        from bethelab.field import HalfPowerPoly

        out.append(("spinchain.sum_rule_norm_equals_genpoly", ps,
                    lambda: norm == HalfPowerPoly(coeffs),
                    {"value": norm.to_json_dict()}))
        audit = spinchain.singlet_normalisation_audit(phi)
        out.append(("spinchain.normalisation_audit", ps,
                    lambda: audit["pass"], {"value": audit}))
    out.append(("spinchain.homogeneous_consistency", ps,
                lambda: spinchain.homogeneous_consistency_check(n, q)))
    if n <= 3 and n >= 2:
        dim = spinchain.transfer1_zero_kernel_dimension(n, q)
        extra = {"value": dim}
        if dim != 1:
            extra["warning"] = "zero eigenspace not one-dimensional at this q"
        out.append(("spinchain.uniqueness_probe_logged", ps,
                    lambda: True, extra))
    return out


SUITES = {
    "rmatrix": checks_rmatrix,
    "aba": checks_aba,
    "detform": checks_detform,
    "asm": checks_asm,
    "spinchain": checks_spinchain,
}


def run_suite(suite: str, params, rng):
    names = list(SUITES) if suite == "all" else [suite]
    specs = []
    for nm in names:
        specs.extend(SUITES[nm](params, rng))
    records = []

    def run_one(item):
        name, ps, fn = item[0], item[1], item[2]
        extra = item[3] if len(item) > 3 else {}
        t0 = time.perf_counter()
        try:
            passed = fn()
        except Exception as exc:  # a failing identity is a failed check
            return _record(name, ps, False, error=repr(exc),
                           elapsed_ms=0.0, **extra)
        ms = (time.perf_counter() - t0) * 1000.0
        return _record(name, ps, passed, elapsed_ms=ms, **extra)

    with ThreadPoolExecutor(max_workers=min(8, os.cpu_count() or 1)) as pool:
        records = list(pool.map(run_one, specs))
    records.sort(key=lambda r: r["check"])
    return records


# -- output ---------------------------------------------------------------


def emit(records_or_obj, fmt: str, out_path):
    if fmt == "json":
        if isinstance(records_or_obj, list):
            body = {"checks": [{k: v for k, v in r.items()
                                if k != "elapsed_ms"}
                               for r in records_or_obj],
                    "pass": all(r["pass"] for r in records_or_obj)}
        else:
            body = records_or_obj
        text = json.dumps(body, sort_keys=True, indent=2, default=str) + "\n"
    elif fmt == "csv":
        lines = ["check,params,pass,elapsed_ms"]
        for r in records_or_obj:
            ps = json.dumps(r["params"], sort_keys=True, default=str)
            ps = '"' + ps.replace('"', '""') + '"'
            lines.append(f"{r['check']},{ps},{str(r['pass']).lower()},"
                         f"{r.get('elapsed_ms', 0):.1f}")
        text = "\n".join(lines) + "\n"
    else:
        lines = []
        for r in (records_or_obj if isinstance(records_or_obj, list)
                  else [records_or_obj]):
            status = "PASS" if r.get("pass") else "FAIL"
            lines.append(f"{status} {r.get('check', '')} {r.get('params', '')}")
        text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands ----------------------------------------------------------


def cmd_verify(args) -> int:
    params, rng = resolve_params(args)
    if args.suite not in set(SUITES) | {"all"}:
        raise ConfigError(f"unknown suite {args.suite!r}")
    records = run_suite(args.suite, params, rng)
    emit(records, args.format, args.out)
    return 0 if all(r["pass"] for r in records) else 1


def cmd_vector(args) -> int:
    params, _ = resolve_params(args)
    vec = aba.bethe_vector(params)
    emit(vec.to_json_dict(params), args.format, args.out)
    return 0


def cmd_singlet(args) -> int:
    n = args.n
    if n is None or n < 1:
        raise ConfigError("--n must be a positive integer")
    if n > max_n_cap():
        raise ConfigError(f"--n exceeds the cap {max_n_cap()}")
    phi = spinchain.singlet(n)
    comps = [{"state": aba.state_str(k), "value": v.to_json_dict()}
             for k, v in sorted(phi.entries.items())]
    emit({"n": n, "components": comps}, args.format,
         args.out or args.emit)
    return 0


def cmd_ikdet(args) -> int:
    params, rng = resolve_params(args)
    zeta = (parse_w_list(args.zeta) if args.zeta
            else draw_distinct(rng, params.n, avoid=params.w))
    if len(zeta) != params.n:
        raise ConfigError("--zeta must list exactly n rationals")
    z_ik = detform.ik_or_asm_sum(zeta, params.w, params)
    z_direct = asm.dwbc_partition_brute(zeta, params.w, params.vw)
    emit({"Z_IK": z_ik.to_json_dict(), "Z_direct": z_direct.to_json_dict(),
          "match": z_ik == z_direct}, args.format, args.out)
    return 0


def cmd_asm(args) -> int:
    n = args.n
    if n is None or n < 1:
        raise ConfigError("--n must be a positive integer")
    if n > min(max_n_cap(), asm.MAX_SIZE):
        raise ConfigError(f"--n exceeds the cap")
    if args.action == "count":
        emit({"n": n, "count": asm.gen_poly(n).total()}, args.format, args.out)
    else:
        poly = asm.gen_poly(n)
        emit({"n": n, "coeffs": list(poly.coeffs), "poly": str(poly)},
             args.format, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bethelab",
        description="exact finite-size checks for the twisted "
                    "nineteen-vertex model")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, w_flags=True):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "csv", "text"),
                       default="json")
        p.add_argument("--out", default=None)
        if w_flags:
            p.add_argument("--q", default=None, help="rational p/r")
            p.add_argument("--w", default=None,
                           help="comma-separated rationals p1/r1,p2/r2,...")

    pv = sub.add_parser("verify", help="run an invariant suite")
    pv.add_argument("--suite", default="all",
                    choices=tuple(SUITES) + ("all",))
    common(pv)
    pv.set_defaults(fn=cmd_verify)

    pvec = sub.add_parser("vector", help="dump the Bethe vector")
    common(pvec)
    pvec.set_defaults(fn=cmd_vector)

    ps = sub.add_parser("singlet", help="dump the homogeneous singlet")
    common(ps, w_flags=False)
    ps.add_argument("--emit", default=None, help="output path (alias of --out)")
    ps.set_defaults(fn=cmd_singlet)

    pik = sub.add_parser("ikdet", help="determinant vs. brute partition sum")
    common(pik)
    pik.add_argument("--zeta", default=None,
                     help="comma-separated rationals for the row parameters")
    pik.set_defaults(fn=cmd_ikdet)

    pa = sub.add_parser("asm", help="alternating sign matrix enumeration")
    pa.add_argument("action", choices=("count", "genpoly"))
    common(pa, w_flags=False)
    pa.set_defaults(fn=cmd_asm)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
