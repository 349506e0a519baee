"""Command-line front end.  Every subcommand prints JSON to stdout.

    pade-tilings count aztec --N 3 --m 2 --k 1 --a 1/2
    pade-tilings ratio multigap --N 4 --m 3 --gaps "1:1,3:inf" --jstar 2
    pade-tilings verify --suite pade --max-N 6 --jobs 4
    pade-tilings sample --method shuffle --N 3 --trials 10000 --m 2 --k 2
    pade-tilings render --N 50 --seed 1 --out diamond.svg
    pade-tilings kernel det --N 2 --m 2 --gaps "1:inf"

The exit code is 0 exactly when every check that was run passed.
"""
from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import approximants as ap
from . import kernels as kn
from . import oracle as orc
from . import regions as rg
from .errors import CapacityExceeded, PadeTilingsError, PreconditionViolation, Untileable
from .exact import rational_str, to_rational
from .gaps import GapSet, parse_gapset
from .render import render_svg
from .shuffling import mc_gap_probability, shuffle_sample

JOBS_ENV = "PADE_TILINGS_JOBS"
SUITES = ("pade", "closed-forms", "hermite", "multigap-aztec", "multigap-hexagon", "determinants")


# ------------------------------------------------------------------ verify


@dataclass
class RunReport:
    command: list
    grid: dict
    cases: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["match"] for c in self.cases)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "grid": self.grid,
            "cases": self.cases,
            "total": len(self.cases),
            "failures": sum(1 for c in self.cases if not c["match"]),
            "passed": self.passed,
        }


def _fmt(v):
    if isinstance(v, (Fraction, int)):
        return rational_str(v)
    return v


def _aztec_multigap_oracle(N, m, eps, gaps, a):
    region = rg.build_aztec_region(N, "multigap", m=m, eps=eps, gaps=gaps)
    return orc.count_weighted_domino(region, a)


def _case_pade(N, m, k, a):
    return ap.aztec_count(N, m, k, a), orc.count_weighted_domino(rg.build_aztec_region(N, "reduced", m=m, k=k), a)


def _case_closed(N, m, a):
    kappas = [ap.aztec_pade(N, m, j, a).kappa for j in range(1, m + 1)]
    prod = Fraction(1)
    for x in kappas:
        prod *= x
    got = (
        prod,
        kappas[0],
        kappas[-1],
        ap.aztec_count(N, m, 1, a),
        ap.aztec_count(N, N, N, a),
    )
    want = (
        (1 + a * a) ** (m * (N + 1 - m)),
        ap.kappa_closed_form(N, m, "k1", a),
        ap.kappa_closed_form(N, m, "km", a),
        ap.aztec_special_count("mirror_k1", N, m, a),
        ap.aztec_special_count("top_removed_NN", N, None, a),
    )
    return list(got), list(want)


def _case_hermite(L, M, N, r, k):
    if k is None:
        return ap.macmahon(L, M, N), orc.count_lozenge(rg.build_hexagon_region(L, M, N))
    return ap.hexagon_reduced_count(L, M, N, r, k), orc.count_lozenge(rg.build_hexagon_region(L, M, N, "reduced", r=r, k=k))


def _case_multigap_aztec(N, m, eps, ks, jstar, a):
    gaps = GapSet(ks)
    before = _aztec_multigap_oracle(N, m, eps, gaps, a)
    after = _aztec_multigap_oracle(N, m, eps, gaps.bump(jstar), a)
    return ap.aztec_multigap_ratio(N, m, eps, gaps, jstar, a), (after / before if before else None)


def _case_multigap_hexagon(L, M, N, r, ks, k0):
    gaps = GapSet(ks, k0)
    before = orc.lgv_gap_count(L, M, N, r, gaps)
    after = orc.lgv_gap_count(L, M, N, r, gaps.bump(0))
    region = orc.count_lozenge(rg.build_hexagon_region(L, M, N, "multigap", r=r, gaps=gaps))
    try:
        ratio = ap.hexagon_multigap_ratio(L, M, N, r, gaps)
    except Untileable:
        # an empty gap event has no ratio; agreement means the oracle also finds no tiling
        ratio = "untileable"
    want = Fraction(after, before) if before else "untileable"
    return [ratio, region], [want, before]


def _case_det(kind, params, ks, k0):
    gaps = GapSet(ks, k0)
    if kind == "aztec":
        N, m, eps, a = params
        spec = kn.KrawtchoukKernelSpec(N, m, eps, a)
        return ap.aztec_full_count(N, a) * kn.gap_determinant(spec, gaps), _aztec_multigap_oracle(N, m, eps, gaps, a)
    L, M, N, r = params
    spec = kn.HexKernelSpec(L, M, N, r)
    return ap.macmahon(L, M, N) * kn.gap_determinant(spec, gaps), orc.lgv_gap_count(L, M, N, r, gaps)


_CASES = {
    "pade": _case_pade,
    "closed-forms": _case_closed,
    "hermite": _case_hermite,
    "multigap-aztec": _case_multigap_aztec,
    "multigap-hexagon": _case_multigap_hexagon,
    "determinants": _case_det,
}


def run_case(case: tuple) -> dict:
    suite, params = case
    start = time.perf_counter()
    try:
        theorem, oracle = _CASES[suite](*params)
        match = theorem == oracle
        out = {"theorem": _jsonable(theorem), "oracle": _jsonable(oracle), "match": match}
    except CapacityExceeded as exc:
        out = {"theorem": None, "oracle": None, "match": False, "error": f"CapacityExceeded: {exc}"}
    except PadeTilingsError as exc:
        out = {"theorem": None, "oracle": None, "match": False, "error": f"{type(exc).__name__}: {exc}"}
    out["params"] = _jsonable(list(params))
    out["suite"] = suite
    out["seconds"] = round(time.perf_counter() - start, 6)
    return out


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return _fmt(v)


def _two_cluster_gapsets(lo: int, hi: int, top_unbounded: bool, max_q: int = 1):
    for q in range(0, max_q + 1):
        width = 2 * q + 1 + (0 if top_unbounded else 1)
        for ks in itertools.combinations_with_replacement(range(lo, hi + 1), width):
            try:
                if top_unbounded:
                    yield GapSet(ks)
                else:
                    yield GapSet(ks[:-1], ks[-1])
            except PreconditionViolation:
                continue


def build_cases(suite: str, max_N: int = 6, max_L: int = 8, max_hex_N: int = 8,
                weights: Sequence = (Fraction(1), Fraction(1, 2))) -> list:
    cases = []
    weights = [to_rational(a) for a in weights]
    if suite == "pade":
        for N in range(1, max_N + 1):
            for m in range(1, N + 1):
                for k in range(1, m + 2):
                    for a in weights:
                        cases.append((suite, (N, m, k, a)))
    elif suite == "closed-forms":
        for N in range(1, max_N + 1):
            for m in range(1, N + 1):
                for a in weights:
                    cases.append((suite, (N, m, a)))
    elif suite == "hermite":
        for L in range(2, max_L + 1):
            for M in range(1, L):
                for N in range(1, max_hex_N + 1):
                    cases.append((suite, (L, M, N, 0, None)))
                    for r in range(1, L):
                        lo, hi = ap.hexagon_k_range(L, M, N, r)
                        for k in range(lo, hi + 1):
                            cases.append((suite, (L, M, N, r, k)))
    elif suite == "multigap-aztec":
        for N in range(2, max_N + 1):
            for m in range(1, N + 1):
                for eps in (0, 1):
                    for gaps in _two_cluster_gapsets(m - N - eps + 1, m, True):
                        if gaps.q != 1:
                            continue
                        try:
                            ap.check_aztec_multigap(N, m, eps, gaps)
                        except PreconditionViolation:
                            continue
                        for jstar in range(1, 2 * gaps.q + 2):
                            try:
                                ap.check_bump(gaps, jstar)
                                if gaps.k(1) == m + 1 and jstar == 1:
                                    continue
                                gaps.bump(jstar)
                            except PreconditionViolation:
                                continue
                            for a in weights:
                                cases.append((suite, (N, m, eps, gaps.ks, jstar, a)))
    elif suite == "multigap-hexagon":
        for L in range(3, max_L + 1):
            for M in range(1, L):
                for N in range(1, max_hex_N + 1):
                    for r in range(1, L):
                        for gaps in _two_cluster_gapsets(0, M + N - 1, False):
                            if ap.hexagon_multigap_conditions(L, M, N, r, gaps, bumped=True):
                                cases.append((suite, (L, M, N, r, gaps.ks, gaps.k0)))
    elif suite == "determinants":
        for N in range(1, max_N + 1):
            for m in range(1, N + 1):
                for eps in (0, 1):
                    for k in range(1 - N, m + 2):
                        for a in weights:
                            cases.append((suite, ("aztec", (N, m, eps, a), (k,), None)))
        for L in range(2, max_L + 1):
            for M in range(1, L):
                for N in range(1, max_hex_N + 1):
                    for r in range(0, L + 1):
                        for k in range(0, M + N + 1):
                            cases.append((suite, ("hexagon", (L, M, N, r), (k,), None)))
    else:
        raise PreconditionViolation(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return cases


def run_verify_sweep(suites: Sequence[str], jobs: int = 1, command: Optional[list] = None, **grid) -> RunReport:
    cases = []
    for suite in suites:
        cases.extend(build_cases(suite, **grid))
    report = RunReport(command or [], {"suites": list(suites), **{k: _jsonable(v) for k, v in grid.items()}})
    if jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            report.cases = list(pool.map(run_case, cases, chunksize=max(1, len(cases) // (8 * jobs))))
    else:
        report.cases = [run_case(c) for c in cases]
    return report


# ------------------------------------------------------------------ handlers


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")


def _cmd_count(args) -> int:
    if args.model == "aztec":
        a = to_rational(args.a)
        if args.k is None:
            value = ap.aztec_full_count(args.N, a)
        else:
            value = ap.aztec_count(args.N, args.m, args.k, a, args.eps)
        out = {"model": "aztec", "N": args.N, "m": args.m, "k": args.k, "eps": args.eps, "a": rational_str(a),
               "count": rational_str(value)}
        ok = True
        if args.oracle:
            if args.k is None:
                region = rg.build_aztec_region(args.N)
            elif args.eps == 1:
                region = rg.build_aztec_region(args.N, "reduced", m=args.m, k=args.k)
            else:
                region = rg.build_aztec_region(args.N, "tilde", m=args.m, k=args.k)
            check = orc.count_weighted_domino(region, a)
            out["oracle"] = rational_str(check)
            ok = out["match"] = check == value
    else:
        if args.k is None:
            value = ap.macmahon(args.L, args.M, args.N)
            region = rg.build_hexagon_region(args.L, args.M, args.N)
        else:
            value = ap.hexagon_reduced_count(args.L, args.M, args.N, args.r, args.k)
            region = rg.build_hexagon_region(args.L, args.M, args.N, "reduced", r=args.r, k=args.k)
        out = {"model": "hexagon", "L": args.L, "M": args.M, "N": args.N, "r": args.r, "k": args.k,
               "count": str(value)}
        ok = True
        if args.oracle:
            check = orc.count_lozenge(region)
            out["oracle"] = str(check)
            ok = out["match"] = check == value
    _emit(out)
    return 0 if ok else 1


def _cmd_ratio(args) -> int:
    if args.kind == "pade":
        sol = ap.aztec_pade(args.N, args.m, args.j, to_rational(args.a), args.eps)
        _emit({"kappa": rational_str(sol.kappa), "p": sol.p.to_json(), "q": sol.q.to_json()})
    elif args.kind == "hermite":
        sol = ap.hexagon_hermite_pade(args.L, args.M, args.N, args.r, args.k)
        _emit({"ratio": rational_str(sol.ratio), "q": sol.qM.to_json(), "P": sol.Pmonic.to_json(), "p": sol.p.to_json()})
    elif args.model == "hexagon":
        gaps = parse_gapset(args.gaps)
        sol = ap.hexagon_multigap_solve(args.L, args.M, args.N, args.r, gaps)
        _emit({"gaps": gaps.to_json(), "ratio": rational_str(sol.ratio), "p": sol.p.to_json()})
    else:
        gaps = parse_gapset(args.gaps)
        sol = ap.aztec_multigap_solve(args.N, args.m, args.eps, gaps, args.jstar, to_rational(args.a))
        _emit({"gaps": gaps.to_json(), "jstar": args.jstar, "ratio": rational_str(sol.ratio),
               "coefficients": [rational_str(c) for c in sol.coefficients], "q": sol.q.to_json()})
    return 0


def _cmd_verify(args) -> int:
    jobs = args.jobs or int(os.environ.get(JOBS_ENV, "1"))
    suites = SUITES if args.suite == "all" else (args.suite,)
    report = run_verify_sweep(
        suites,
        jobs=jobs,
        command=sys.argv[1:] if args.argv is None else args.argv,
        max_N=args.max_N,
        max_L=args.max_L,
        max_hex_N=args.max_hex_N,
        weights=[to_rational(a) for a in args.weights.split(",")],
    )
    out = report.to_json()
    if not args.all_cases:
        out["cases"] = [c for c in out["cases"] if not c["match"]]
    _emit(out)
    return 0 if report.passed else 1


def _sample_tiling(args):
    rng = random.Random(args.seed)
    if args.hexagon:
        L, M, N = (int(x) for x in args.hexagon.split(","))
        return orc.sample_tiling(rg.build_hexagon_region(L, M, N), rng=rng)
    if args.frozen:
        return rg.frozen_tiling(args.N)
    if args.method == "dp":
        return orc.sample_tiling(rg.build_aztec_region(args.N), to_rational(args.a), rng=rng)
    return shuffle_sample(args.N, to_rational(args.a), args.seed)


def _cmd_sample(args) -> int:
    if args.trials:
        if args.method != "shuffle":
            raise PreconditionViolation("gap estimates use --method shuffle")
        est = mc_gap_probability(args.N, args.m, args.k, args.eps, to_rational(args.a), args.trials, args.seed)
        out = est.to_json()
        ok = est.sigmas <= 4
        out["within_4_sigma"] = ok
        _emit(out)
        return 0 if ok else 1
    t = _sample_tiling(args)
    _emit(t.to_json())
    return 0


def _cmd_render(args) -> int:
    t = _sample_tiling(args)
    paths = rg.tiling_to_paths(t) if args.paths else None
    svg = render_svg(t, paths)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    _emit({"out": args.out, "bytes": len(svg.encode("utf-8"))})
    return 0


def _kernel_spec(args):
    if args.model == "hexagon":
        return kn.HexKernelSpec(args.L, args.M, args.N, args.r)
    return kn.KrawtchoukKernelSpec(args.N, args.m, args.eps, to_rational(args.a))


def _cmd_kernel(args) -> int:
    spec = _kernel_spec(args)
    if args.kind == "entry":
        _emit({"n": args.n, "n2": args.n2, "value": rational_str(kn.kernel_entry(spec, args.n, args.n2))})
        return 0
    gaps = parse_gapset(args.gaps)
    gammas = [to_rational(g) for g in args.gammas.split(",")] if args.gammas else None
    exact = kn.thinned_determinant(spec, gaps, gammas) if gammas else kn.gap_determinant(spec, gaps)
    if args.kind == "det":
        _emit({"gaps": gaps.to_json(), "determinant": rational_str(exact)})
        return 0
    approx = kn.fredholm_nystrom(spec, gaps, args.nodes, gammas)
    ok = abs(approx - float(exact)) < 1e-8
    _emit({"gaps": gaps.to_json(), "nystrom": approx, "exact": rational_str(exact), "match": ok})
    return 0 if ok else 1


# ------------------------------------------------------------------ parser


def _add_aztec(p, need_m=True):
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--m", type=int, required=need_m)
    p.add_argument("--eps", type=int, default=1, choices=(0, 1))
    p.add_argument("--a", default="1", help='vertical weight, e.g. "1/2"')


def _add_hexagon(p):
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--r", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pade-tilings", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", help="tiling counts from the approximant formulas")
    csub = count.add_subparsers(dest="model", required=True)
    ca = csub.add_parser("aztec")
    _add_aztec(ca, need_m=False)
    ca.add_argument("--k", type=int)
    ca.add_argument("--oracle", action="store_true", help="also count with the transfer-matrix oracle")
    ch = csub.add_parser("hexagon")
    _add_hexagon(ch)
    ch.add_argument("--k", type=int)
    ch.add_argument("--oracle", action="store_true")
    count.set_defaults(func=_cmd_count)

    ratio = sub.add_parser("ratio", help="single approximant solutions")
    rsub = ratio.add_subparsers(dest="kind", required=True)
    rp = rsub.add_parser("pade")
    _add_aztec(rp)
    rp.add_argument("--j", type=int, required=True)
    rh = rsub.add_parser("hermite")
    _add_hexagon(rh)
    rh.add_argument("--k", type=int, required=True)
    rm = rsub.add_parser("multigap")
    rm.add_argument("--model", choices=("aztec", "hexagon"), default="aztec")
    rm.add_argument("--N", type=int, required=True)
    rm.add_argument("--m", type=int)
    rm.add_argument("--eps", type=int, default=1, choices=(0, 1))
    rm.add_argument("--a", default="1")
    rm.add_argument("--L", type=int)
    rm.add_argument("--M", type=int)
    rm.add_argument("--r", type=int)
    rm.add_argument("--gaps", required=True, help='clusters "lo:hi,...", hi may be "inf"')
    rm.add_argument("--jstar", type=int, default=1)
    ratio.set_defaults(func=_cmd_ratio)

    verify = sub.add_parser("verify", help="compare formulas against oracles over a grid")
    verify.add_argument("--suite", choices=SUITES + ("all",), default="all")
    verify.add_argument("--max-N", dest="max_N", type=int, default=6)
    verify.add_argument("--max-L", dest="max_L", type=int, default=8)
    verify.add_argument("--max-hex-N", dest="max_hex_N", type=int, default=8)
    verify.add_argument("--weights", default="1,1/2")
    verify.add_argument("--jobs", type=int, default=0, help=f"worker processes (default ${JOBS_ENV} or 1)")
    verify.add_argument("--all-cases", action="store_true", help="list passing cases too")
    verify.set_defaults(func=_cmd_verify, argv=None)

    for name, func in (("sample", _cmd_sample), ("render", _cmd_render)):
        sp = sub.add_parser(name)
        sp.add_argument("--method", choices=("shuffle", "dp"), default="shuffle")
        sp.add_argument("--N", type=int, default=3)
        sp.add_argument("--a", default="1")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--hexagon", help='sample a uniform lozenge tiling of "L,M,N" instead')
        sp.add_argument("--frozen", action="store_true", help="the all-horizontal tiling")
        if name == "sample":
            sp.add_argument("--trials", type=int, default=0, help="estimate a gap probability instead")
            sp.add_argument("--m", type=int, default=1)
            sp.add_argument("--k", type=int, default=1)
            sp.add_argument("--eps", type=int, default=1, choices=(0, 1))
        else:
            sp.add_argument("--out", required=True)
            sp.add_argument("--paths", action="store_true", help="overlay the lattice paths")
        sp.set_defaults(func=func)

    kernel = sub.add_parser("kernel", help="kernel entries and gap determinants")
    ksub = kernel.add_subparsers(dest="kind", required=True)
    for name in ("entry", "det", "nystrom"):
        kp = ksub.add_parser(name)
        kp.add_argument("--model", choices=("aztec", "hexagon"), default="aztec")
        kp.add_argument("--N", type=int, required=True)
        kp.add_argument("--m", type=int, default=1)
        kp.add_argument("--eps", type=int, default=1, choices=(0, 1))
        kp.add_argument("--a", default="1")
        kp.add_argument("--L", type=int)
        kp.add_argument("--M", type=int)
        kp.add_argument("--r", type=int)
        if name == "entry":
            kp.add_argument("--n", type=int, required=True)
            kp.add_argument("--n2", type=int, required=True)
        else:
            kp.add_argument("--gaps", required=True)
            kp.add_argument("--gammas", help="one weight per cluster, top cluster first")
            if name == "nystrom":
                kp.add_argument("--nodes", type=int, default=8)
    kernel.set_defaults(func=_cmd_kernel)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        args.argv = list(argv) if argv is not None else sys.argv[1:]
    try:
        return args.func(args)
    except PadeTilingsError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
