"""Command-line front end: ``cosetbounds <command> ...``.

Exit codes: 0 success, 1 inapplicable bound or failed computation, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from typing import Any, Optional, Sequence

import numpy as np

from . import bounds as B
from . import delta_sets as DS
from .curve_model import (P, Q, DivClass, LatticeDivisor, ProfileError, TwoPointCurve,
                          curve_from_name, dump_profile, validate_profile)

log = logging.getLogger("cosetbounds")


class UsageError(Exception):
    pass


class Failure(Exception):
    """A well-formed request whose result is inapplicable or failed."""

    def __init__(self, msg: str, payload: Optional[dict] = None):
        super().__init__(msg)
        self.payload = payload or {}


# -- argument parsing helpers ----------------------------------------------------

def parse_divisor(text: str) -> LatticeDivisor:
    try:
        k, l = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'k,l', got {text!r}") from None
    return LatticeDivisor(k, l)


def parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def parse_vector(text: str) -> list[int]:
    text = text.strip()
    if text.startswith("["):
        return [int(x) for x in json.loads(text)]
    return [int(x) for x in text.split(",")]


def _curve(args) -> TwoPointCurve:
    try:
        return curve_from_name(args.curve)
    except (ValueError, ProfileError, OSError) as exc:
        raise UsageError(str(exc)) from None


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _jsonable(x: Any):
    if isinstance(x, np.ndarray):
        return x.tolist()
    return B._jsonable(x)


# -- command implementations -------------------------------------------------------

def cmd_profile(args) -> tuple[dict, str]:
    curve = _curve(args)
    if args.action == "validate":
        problems = validate_profile(curve)
        res = {"valid": not problems, "problems": problems}
        if problems:
            raise Failure("invalid profile", res)
        return res, "valid"
    if args.action == "dump":
        return {"profile": dump_profile(curve)}, dump_profile(curve).rstrip()
    res = {"label": curve.label, "genus": curve.genus, "period": curve.period,
           "disc_deg": list(curve.disc_deg), "canonical": curve.canonical}
    text = (f"{curve.label}: genus {curve.genus}, period {curve.period}\n"
            f"disc_deg {' '.join(map(str, curve.disc_deg))}\n"
            f"canonical class deg {curve.canonical.deg} res {curve.canonical.res}")
    return res, text


def cmd_dim(args) -> tuple[dict, str]:
    _need(args, "A")
    d = _curve(args).dim_l(args.A)
    return {"A": args.A, "dim": d}, str(d)


def cmd_gamma(args) -> tuple[dict, str]:
    _need(args, "A")
    ok = _curve(args).in_gamma(args.A, args.point)
    return {"A": args.A, "point": args.point, "in_gamma": ok}, str(ok).lower()


def cmd_delta(args) -> tuple[dict, str]:
    _need(args, "C")
    curve = _curve(args)
    if args.B is None:
        s = DS.delta_p(curve, args.C, args.point)
        res = {"C": args.C, "point": args.point, "size": len(s), "members": list(s.members)}
        return res, "\n".join(f"{c.deg} {c.res}" for c in s.members) + f"\n# size {len(s)}"
    idx = DS.delta_line(curve, args.B, args.C, args.point)
    res = {"B": args.B, "C": args.C, "point": args.point, "indices": idx, "size": len(idx)}
    if args.count:
        dual = DS.count_identity_check(curve, args.B, args.C, args.point)[1]
        res["dual_size"] = dual
        return res, f"{len(idx)} {dual}"
    return res, " ".join(map(str, idx))


def cmd_table(args) -> tuple[dict, str]:
    curve = _curve(args)
    if args.kind == "6g":
        parts = DS.partition_6g(curve, args.B0, args.C0, args.point)
        return parts, "\n".join(f"{k} = {v}" for k, v in parts.items())
    rows = []
    if args.kind == "kn":
        _need(args, "l", "i", "j")
        for kind in ("K", "N"):
            rows.append(DS.tables(curve, args.B0, args.C0, kind, {"l": args.l, "i": args.i},
                                  parse_range(args.j)))
    else:
        _need(args, "i", "j", "l_range")
        try:
            j = int(args.j)
        except ValueError:
            raise UsageError(f"--j must be an integer for kpm, got {args.j!r}") from None
        sign = args.sign
        for kind in ("K" + sign, "N" + sign):
            rows.append(DS.tables(curve, args.B0, args.C0, kind, {"i": args.i, "j": j},
                                  parse_range(args.l_range)))
    if args.csv:
        return {"rows": [r.to_json() for r in rows]}, DS.tables_csv(rows).rstrip()
    idx = list(rows[0].cells)
    width = max(4, *(len(c) for r in rows for c in r.render()))
    head = "idx ".ljust(6) + " ".join(str(i).rjust(width) for i in idx)
    lines = [head] + [r.kind.ljust(6) + " ".join(c.rjust(width) for c in r.render()) for r in rows]
    return {"rows": [r.to_json() for r in rows]}, "\n".join(lines)


def _bound(args, curve: TwoPointCurve) -> B.BoundResult:
    m = args.method
    pts = tuple(args.S) if args.S else (P, Q)
    if m == "feng-rao":
        _need(args, "rho")
        v = B.feng_rao(curve.semigroup(args.point), args.rho, args.variant)
        return B.BoundResult("feng_rao", v, {"rho": args.rho, "variant": args.variant})
    if m == "hermitian-closed":
        _need(args, "q", "d", "a", "b")
        return B.hermitian_closed_form(args.q, args.d, args.a, args.b, args.target)
    _need(args, "C")
    C = args.C
    if m == "goppa":
        return B.BoundResult("goppa", B.goppa_bound(C), {"C": C})
    if m in ("floor", "abz-code"):
        if args.Z is None:
            return (B.best_floor if m == "floor" else B.best_abz_code)(curve, C, args.cap, pts)
        _need(args, "A", "B")
        fn = B.floor_bound if m == "floor" else B.abz_code_bound
        return fn(curve, args.A, args.B, args.Z, C)
    if m == "order":
        return B.order_bound(curve, C, points=pts)
    if m == "abz-coset":
        if args.A is None and args.B is None:
            return B.best_abz_coset(curve, C, args.point, args.cap, pts)
        _need(args, "B")
        A = args.A if args.A is not None else LatticeDivisor(0, 0)
        return B.abz_coset_bound(curve, C, A, args.B, args.point, args.Z)
    if m == "chain":
        return B.chain_bound(curve, C, args.point, S=pts)
    if m == "gamma-star":
        return B.gamma_star_lower(curve, C, pts, args.strategy)
    if m == "best":
        cands = [B.order_bound(curve, C, points=pts), B.best_floor(curve, C, args.cap, pts),
                 B.best_abz_code(curve, C, args.cap, pts)]
        cands = [r for r in cands if r.applicable]
        return max(cands, key=lambda r: r.value)
    raise UsageError(f"unknown bound {m!r}")


def cmd_bound(args) -> tuple[dict, str]:
    res = _bound(args, _curve(args))
    out = res.to_json()
    if not res.applicable:
        raise Failure("bound not applicable", out)
    text = f"{res.method}: {res.value}"
    chain = res.witness.get("chain") if isinstance(res.witness, dict) else None
    if chain:
        text += "\nchain " + " ".join(str(A) for A in chain)
    return out, text


# code / ss / decode need the Hermitian backend

def _code_args(args):
    _need(args, "q", "G")
    D = parse_range(args.D) if args.D else None
    return args.q, args.G, D


def cmd_code(args) -> tuple[dict, str]:
    from .gf_codes import (build_code_l, build_code_omega, coset_distance, min_distance)
    q, G, D = _code_args(args)
    build = build_code_omega if args.kind == "omega" else build_code_l
    code = build(q, G.k, G.l, D)
    if args.action == "build":
        return code.to_json(), f"n={code.n} k={code.k}\n" + "\n".join(
            " ".join(map(str, row)) for row in code.generator)
    if args.action == "distance":
        if code.k == 0:
            raise Failure("zero code", {"n": code.n, "k": 0})
        d = min_distance(code, args.strategy)
        return {"n": code.n, "k": code.k, "d": d}, f"[{code.n}, {code.k}, {d}]"
    step = LatticeDivisor(1, 0) if args.point == P else LatticeDivisor(0, 1)
    if args.action == "coset-distance":
        # C_L(D, G) over C_L(D, G - pt), or the Omega pair C_Omega(D, G - pt) over C_Omega(D, G)
        H = G - step
        big, small = ((code, build(q, H.k, H.l, D)) if args.kind == "l"
                      else (build(q, H.k, H.l, D), code))
        if big.k == small.k:
            raise Failure("trivial extension", {"k": big.k})
        d = coset_distance(big, small, args.strategy)
        return {"k": big.k, "sub_k": small.k, "coset_distance": d}, str(d)
    if args.action == "verify-bounds":
        return _verify_bounds(q, G, D, args)
    raise UsageError(f"unknown code action {args.action!r}")


def _verify_bounds(q: int, G: LatticeDivisor, D, args) -> tuple[dict, str]:
    from .curve_model import hermitian_profile
    from .gf_codes import build_code_omega, min_distance
    curve = hermitian_profile(q)
    code = build_code_omega(q, G.k, G.l, D)
    if code.k == 0:
        raise Failure("zero code", {"k": 0})
    d = min_distance(code)
    C = curve.sub(G, curve.canonical)
    vals = oracle_bounds(curve, C)
    bad = {k: v for k, v in vals.items() if v is not None and v > d}
    res = {"G": G, "n": code.n, "k": code.k, "d": d, "bounds": vals, "violations": bad}
    text = f"d={d} " + " ".join(f"{k}={v}" for k, v in vals.items())
    if bad:
        raise Failure("bound exceeds true distance", res)
    return res, text


def oracle_bounds(curve: TwoPointCurve, C: DivClass) -> dict:
    """Every generic lower bound for ``d(C_Omega(D, K + C))`` (D avoiding P and Q)."""
    out = {"goppa": B.goppa_bound(C),
           "floor": B.best_floor(curve, C).value,
           "abz_code": B.best_abz_code(curve, C).value,
           "order": B.order_bound(curve, C).value,
           "gamma_abz": B.gamma_star_lower(curve, C, strategy="abz").value,
           "gamma_chain": B.gamma_star_lower(curve, C, strategy="chain").value}
    return out


def cmd_ss(args) -> tuple[dict, str]:
    from .gf_codes import build_code_omega
    from .gf_codes.secret_sharing import access_structure, duality_check
    q, G, D = _code_args(args)
    step = LatticeDivisor(1, 0) if args.point == P else LatticeDivisor(0, 1)
    H = G - step
    big, small = build_code_omega(q, H.k, H.l, D), build_code_omega(q, G.k, G.l, D)
    if big.k - small.k != 1:
        raise Failure("extension is not of codimension one", {"k": big.k, "sub_k": small.k})
    summ = access_structure(big, small, args.max_size)
    res = summ.to_json()
    if args.check:
        chk = duality_check(big, small)
        res["duality"] = {k: v for k, v in chk.items() if isinstance(v, bool)}
    lines = [f"min qualified {summ.min_qualified}", f"max unqualified {summ.max_unqualified}"]
    lines += [f"size {s}: {qc} qualified, {uc} unqualified" for s, (qc, uc) in summ.counts.items()]
    return res, "\n".join(lines)


def cmd_decode(args) -> tuple[dict, str]:
    from . import coset_decoder as CD
    q, G, D = _code_args(args)
    try:
        if args.action == "witness-build":
            ws = CD.build_witnesses(q, G, args.point, D=D)
            return ws.to_json(), f"w={ws.w} chain " + " ".join(str(A) for A in ws.chain)
        _need(args, "y")
        y = np.array(parse_vector(args.y), dtype=np.int64)
        if args.action == "step":
            ws = CD.build_witnesses(q, G, args.point, D=D)
            if len(y) != ws.ext.code.n:
                raise UsageError(f"received word must have length {ws.ext.code.n}")
            r = CD.coset_decode_step(ws, y, args.t)
            if not r.ok:
                raise Failure("no majority", r.to_json())
            return r.to_json(), f"x.c = {r.value} (label {r.label})"
        filt = CD.build_filtration(q, G, args.t or 0, D)
        if len(y) != len(filt.D):
            raise UsageError(f"received word must have length {len(filt.D)}")
        c = CD.decode(filt, y, args.t or 0)
        return {"codeword": c.tolist(), "steps": [s.w for s in filt.steps]}, " ".join(map(str, c))
    except (CD.WitnessError, CD.DecodingFailure) as exc:
        raise Failure(str(exc)) from None


def cmd_sweep(args) -> tuple[dict, str]:
    """Bound versus brute-force distance over lattice ``G`` for a Hermitian code family."""
    from .curve_model import hermitian_profile
    from .gf_codes import build_code_omega, min_distance
    _need(args, "q")
    q = args.q
    curve = hermitian_profile(q)
    D = parse_range(args.D) if args.D else None
    rows = []
    for a in parse_range(args.a_range):
        for b in parse_range(args.b_range):
            code = build_code_omega(q, a, b, D)
            if code.k == 0:
                continue
            d = min_distance(code)
            C = curve.sub(LatticeDivisor(a, b), curve.canonical)
            vals = oracle_bounds(curve, C)
            rows.append({"a": a, "b": b, "k": code.k, "d": d, **vals})
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return {"rows": rows}, buf.getvalue().rstrip()


COMMANDS = {"profile": cmd_profile, "dim": cmd_dim, "gamma": cmd_gamma, "delta": cmd_delta,
            "table": cmd_table, "bound": cmd_bound, "code": cmd_code, "ss": cmd_ss,
            "decode": cmd_decode, "sweep": cmd_sweep}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--curve", default="hermitian:3",
                        help="hermitian:q, suzuki:q0 or file:path (default hermitian:3)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--point", choices=[P, Q], default=P)
    common.add_argument("-v", "--verbose", action="store_true")
    div = dict(type=parse_divisor, metavar="k,l")

    ap = argparse.ArgumentParser(prog="cosetbounds", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", parents=[common], help="show, validate or dump a curve profile")
    p.add_argument("action", nargs="?", choices=["show", "validate", "dump"], default="show")

    p = sub.add_parser("dim", parents=[common], help="dim L(A)")
    p.add_argument("--A", **div)

    p = sub.add_parser("gamma", parents=[common], help="membership of A in Gamma at --point")
    p.add_argument("--A", **div)

    p = sub.add_parser("delta", parents=[common], help="delta sets and their lines")
    p.add_argument("--C", **div)
    p.add_argument("--B", **div, help="restrict to the line through B")
    p.add_argument("--count", action="store_true", help="also report the dual line size")

    p = sub.add_parser("table", parents=[common], help="K/N tables and the 6g partition")
    p.add_argument("kind", choices=["kn", "kpm", "6g"])
    p.add_argument("--B0", **div, default=LatticeDivisor(0, 0))
    p.add_argument("--C0", **div, default=LatticeDivisor(0, 0))
    p.add_argument("--l", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--j", help="integer (kpm) or range a..b (kn)")
    p.add_argument("--l-range", dest="l_range", help="range a..b of l for kpm")
    p.add_argument("--sign", choices=["+", "-"], default="+")
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("bound", parents=[common], help="distance and coset bounds")
    p.add_argument("method", choices=["goppa", "floor", "abz-code", "order", "abz-coset", "chain",
                                      "gamma-star", "feng-rao", "hermitian-closed", "best"])
    p.add_argument("--C", **div)
    p.add_argument("--A", **div)
    p.add_argument("--B", **div)
    p.add_argument("--Z", **div)
    p.add_argument("--S", nargs="+", choices=[P, Q], help="points allowed in supports")
    p.add_argument("--cap", type=int, help="degree cap for decomposition searches")
    p.add_argument("--strategy", choices=["order", "abz", "chain", "best"], default="best")
    p.add_argument("--rho", type=int)
    p.add_argument("--variant", choices=["A", "B"], default="A")
    for name in ("q", "d", "a", "b"):
        p.add_argument("--" + name, type=int)
    p.add_argument("--target", choices=["coset", "distance"], default="coset")

    def code_opts(p):
        p.add_argument("--q", type=int)
        p.add_argument("--G", **div)
        p.add_argument("--D", help="evaluation point indices, e.g. 1..7")

    p = sub.add_parser("code", parents=[common], help="Hermitian codes and exact distances")
    p.add_argument("action", choices=["build", "distance", "coset-distance", "verify-bounds"])
    code_opts(p)
    p.add_argument("--kind", choices=["l", "omega"], default="omega")
    p.add_argument("--strategy", choices=["auto", "enumerate", "support"], default="auto")

    p = sub.add_parser("ss", parents=[common], help="secret-sharing access structure")
    code_opts(p)
    p.add_argument("--max-size", dest="max_size", type=int)
    p.add_argument("--check", action="store_true", help="also run the duality checks")

    p = sub.add_parser("decode", parents=[common], help="majority coset decoding")
    p.add_argument("action", choices=["witness-build", "step", "full"])
    code_opts(p)
    p.add_argument("--y", help="received word, comma separated or JSON array")
    p.add_argument("--t", type=int)

    p = sub.add_parser("sweep", parents=[common], help="bounds against exact distances (CSV)")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--a-range", dest="a_range", default="0..10")
    p.add_argument("--b-range", dest="b_range", default="0..2")
    p.add_argument("--D")
    return ap


def _emit(args, inputs: dict, payload: Any, text: str, elapsed: float, ok: bool = True) -> None:
    if args.json:
        env = {"command": args.command, "inputs": inputs, "ok": ok, "result": payload,
               "timing": round(elapsed, 4)}
        print(json.dumps(_jsonable(env), sort_keys=True))
    elif text:
        print(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    inputs = {k: v for k, v in vars(args).items() if k not in ("json", "verbose") and v is not None}
    t0 = time.perf_counter()
    try:
        payload, text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"cosetbounds: error: {exc}", file=sys.stderr)
        return 2
    except Failure as exc:
        _emit(args, inputs, {"error": str(exc), **exc.payload}, "", time.perf_counter() - t0, False)
        print(f"cosetbounds: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"cosetbounds: error: {exc}", file=sys.stderr)
        return 2
    _emit(args, inputs, payload, text, time.perf_counter() - t0)
    return 0


if __name__ == "__main__":
    sys.exit(main())
